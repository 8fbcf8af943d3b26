//! Random terms and random single-identity rewrites.

use rand::seq::IndexedRandom;
use rand::Rng;
use smallvec::SmallVec;

use crate::normal::{FreeAlgebra, NormalTerm};
use crate::term::{Children, TermRef, TermStore};

pub const VARIABLES: [&str; 8] = ["x", "y", "z", "u", "v", "s", "q", "r"];

pub fn variables(store: &TermStore, n: usize) -> Vec<TermRef> {
    VARIABLES[..n]
        .iter()
        .map(|v| store.variable(v).expect("valid name"))
        .collect()
}

/// A random syntactic term of depth at most `depth`. Nodes are biased
/// towards the shapes the wnu identities act on: all arguments equal, or one
/// odd argument among equal ones.
pub fn raw_term<R: Rng>(store: &TermStore, rng: &mut R, vars: &[TermRef], depth: u32) -> TermRef {
    if depth == 0 || rng.random_bool(0.3) {
        return *vars.choose(rng).expect("nonempty variable list");
    }
    let k = store.arity().get();
    let children: Children = match rng.random_range(0..5) {
        0 => {
            let c = raw_term(store, rng, vars, depth - 1);
            SmallVec::from_elem(c, k)
        }
        1 | 2 => {
            let common = raw_term(store, rng, vars, depth - 1);
            let odd = raw_term(store, rng, vars, depth - 1);
            let mut ch: Children = SmallVec::from_elem(common, k);
            ch[rng.random_range(0..k)] = odd;
            ch
        }
        _ => (0..k).map(|_| raw_term(store, rng, vars, depth - 1)).collect(),
    };
    store.app(&children).expect("arity")
}

/// A random syntactic term with at most `max_w` occurrences of `w`.
pub fn bounded_term<R: Rng>(store: &TermStore, rng: &mut R, vars: &[TermRef], max_w: u64) -> TermRef {
    let depth = if max_w <= 1 { max_w as u32 } else { 3 };
    loop {
        let t = raw_term(store, rng, vars, depth);
        if store.w_count(t) <= max_w {
            return t;
        }
    }
}

/// A random normal term with at most `max_w` occurrences of `w`.
pub fn normal_term<R: Rng>(alg: &FreeAlgebra, rng: &mut R, vars: &[TermRef], max_w: u64) -> NormalTerm {
    alg.normalize(bounded_term(alg.store(), rng, vars, max_w))
}

/// A uniformly chosen node of the tree of `t` (sharing expanded).
pub fn random_subterm<R: Rng>(store: &TermStore, rng: &mut R, t: TermRef) -> TermRef {
    let mut nodes = Vec::new();
    collect_nodes(store, t, &mut nodes);
    *nodes.choose(rng).expect("a term has at least one node")
}

fn collect_nodes(store: &TermStore, t: TermRef, out: &mut Vec<TermRef>) {
    out.push(t);
    if let Some(children) = store.children(t) {
        for c in children {
            collect_nodes(store, c, out);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rewrite {
    /// `w(c,…,c) → c`
    Collapse,
    /// Move the single odd argument to another position.
    MoveOdd { from: usize, to: usize },
}

fn odd_position(children: &[TermRef]) -> Option<usize> {
    let k = children.len();
    (0..k).find(|&i| {
        let other = children[(i + 1) % k];
        children[i] != other && children.iter().enumerate().all(|(j, &c)| j == i || c == other)
    })
}

/// Rebuilds `t` with the node at `path` replaced by `f(node)`.
fn rewrite_at(store: &TermStore, t: TermRef, path: &[usize], f: &mut dyn FnMut(TermRef) -> TermRef) -> TermRef {
    match path.split_first() {
        None => f(t),
        Some((&i, rest)) => {
            let mut children = store.children(t).expect("path follows applications");
            children[i] = rewrite_at(store, children[i], rest, f);
            store.app(&children).expect("arity")
        }
    }
}

fn candidate_sites(store: &TermStore, t: TermRef, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Rewrite)>) {
    match store.children(t) {
        None => {}
        Some(children) => {
            if children.iter().all(|&c| c == children[0]) {
                out.push((path.clone(), Rewrite::Collapse));
            } else if let Some(from) = odd_position(&children) {
                for to in 0..children.len() {
                    if to != from {
                        out.push((path.clone(), Rewrite::MoveOdd { from, to }));
                    }
                }
            }
            for (i, &c) in children.iter().enumerate() {
                path.push(i);
                candidate_sites(store, c, path, out);
                path.pop();
            }
        }
    }
}

fn all_paths(store: &TermStore, t: TermRef, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(path.clone());
    if let Some(children) = store.children(t) {
        for (i, &c) in children.iter().enumerate() {
            path.push(i);
            all_paths(store, c, path, out);
            path.pop();
        }
    }
}

/// Applies one instance of a k-wnu identity, in either direction, at a
/// random position of `t`. Expansion is only chosen while the result keeps
/// at most `max_w` occurrences of `w`.
pub fn rewrite_once<R: Rng>(store: &TermStore, rng: &mut R, t: TermRef, max_w: u64) -> TermRef {
    let k = store.arity().get();
    let mut sites = Vec::new();
    candidate_sites(store, t, &mut Vec::new(), &mut sites);
    let try_expand = sites.is_empty() || rng.random_bool(0.25);
    if try_expand {
        let mut paths = Vec::new();
        all_paths(store, t, &mut Vec::new(), &mut paths);
        let path = paths.choose(rng).expect("root path").clone();
        let expanded = rewrite_at(store, t, &path, &mut |s| {
            store.app(&SmallVec::<[TermRef; 6]>::from_elem(s, k)).expect("arity")
        });
        if store.w_count(expanded) <= max_w || sites.is_empty() {
            return expanded;
        }
    }
    let (path, rw) = sites.choose(rng).expect("nonempty").clone();
    rewrite_at(store, t, &path, &mut |s| {
        let mut children = store.children(s).expect("site is an application");
        match rw {
            Rewrite::Collapse => children[0],
            Rewrite::MoveOdd { from, to } => {
                children.swap(from, to);
                store.app(&children).expect("arity")
            }
        }
    })
}
