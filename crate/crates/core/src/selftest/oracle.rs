//! Reference computations that share no code with the engine. Terms are
//! generated and tested for normality as strings, the subterm order is a
//! fixed point over an explicit relation, and projections are evaluated by
//! truth table over {0,1}.

use std::collections::{HashMap, HashSet};

use crate::maltsev::{CondTerm, ProjectionAssignment};
use crate::normal::{FreeAlgebra, NormalTerm};
use crate::term::TermRef;

/// A syntactic term as text, with its normality.
type Node = (String, bool);

/// Every syntactic term over `vars` with at most `max_w` occurrences of `w`,
/// filtered to the normal ones, as rendered strings.
pub fn brute_force_normal(vars: &[&str], k: usize, max_w: usize) -> HashSet<String> {
    let mut out = HashSet::new();
    brute_force_each(vars, k, max_w, &mut |s| {
        out.insert(s.to_string());
    });
    out
}

/// Number of normal terms over `vars` with at most `max_w` occurrences of `w`.
pub fn brute_force_normal_count(vars: &[&str], k: usize, max_w: usize) -> usize {
    let mut n = 0;
    brute_force_each(vars, k, max_w, &mut |_| n += 1);
    n
}

/// Levels of syntactic terms `(text, normal)`; the top level is streamed.
fn brute_force_each(vars: &[&str], k: usize, max_w: usize, emit: &mut dyn FnMut(&str)) {
    let mut names: Vec<&str> = vars.to_vec();
    names.sort_unstable();
    names.dedup();
    let mut levels: Vec<Vec<Node>> = vec![names.iter().map(|v| (v.to_string(), true)).collect()];
    for v in &names {
        emit(v);
    }
    for n in 1..=max_w {
        let store_level = n < max_w;
        let mut level = Vec::new();
        let mut parts = vec![0usize; k];
        compositions(n - 1, &mut parts, 0, &mut |parts| {
            let mut picked: Vec<&Node> = Vec::with_capacity(k);
            product(&levels, parts, &mut picked, &mut |picked| {
                let normal =
                    picked.iter().all(|c| c.1) && picked[1..].iter().filter(|c| c.0 != picked[0].0).count() >= 2;
                let text = format!(
                    "w({})",
                    picked.iter().map(|c| c.0.as_str()).collect::<Vec<_>>().join(",")
                );
                if normal {
                    emit(&text);
                }
                if store_level {
                    level.push((text, normal));
                }
            });
        });
        levels.push(level);
    }
}

fn compositions(total: usize, parts: &mut [usize], i: usize, f: &mut dyn FnMut(&[usize])) {
    if i + 1 == parts.len() {
        parts[i] = total;
        f(parts);
        return;
    }
    for v in 0..=total {
        parts[i] = v;
        compositions(total - v, parts, i + 1, f);
    }
}

fn product<'a>(levels: &'a [Vec<Node>], parts: &[usize], picked: &mut Vec<&'a Node>, f: &mut dyn FnMut(&[&'a Node])) {
    let i = picked.len();
    if i == parts.len() {
        f(picked);
        return;
    }
    for c in &levels[parts[i]] {
        picked.push(c);
        product(levels, parts, picked, f);
        picked.pop();
    }
}

/// Normality of a rendered term, decided on the text alone.
pub fn normal_text(text: &str) -> bool {
    let Some(inner) = text.strip_prefix("w(").and_then(|s| s.strip_suffix(')')) else {
        return !text.contains(['(', ')', ',']);
    };
    let mut args = Vec::new();
    let (mut depth, mut start) = (0, 0);
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                args.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    args.push(&inner[start..]);
    args.iter().all(|a| normal_text(a)) && args[1..].iter().filter(|a| **a != args[0]).count() >= 2
}

/// Reflexive-transitive closure of the immediate-subterm relation on the
/// set of all subterms of `roots`, computed by iterating to a fixed point.
pub fn explicit_subterm_closure(alg: &FreeAlgebra, roots: &[NormalTerm]) -> (Vec<TermRef>, Vec<Vec<bool>>) {
    let store = alg.store();
    let mut nodes: Vec<TermRef> = Vec::new();
    let mut index: HashMap<TermRef, usize> = HashMap::new();
    let mut stack: Vec<TermRef> = roots.iter().map(|r| r.term()).collect();
    while let Some(t) = stack.pop() {
        if index.contains_key(&t) {
            continue;
        }
        index.insert(t, nodes.len());
        nodes.push(t);
        if let Some(children) = store.children(t) {
            stack.extend(children);
        }
    }
    let n = nodes.len();
    let mut rel = vec![vec![false; n]; n];
    for (i, &t) in nodes.iter().enumerate() {
        rel[i][i] = true;
        if let Some(children) = store.children(t) {
            for c in children {
                rel[index[&c]][i] = true;
            }
        }
    }
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                if !rel[a][b] {
                    continue;
                }
                let row_b = rel[b].clone();
                for (c, &bc) in row_b.iter().enumerate() {
                    if bc && !rel[a][c] {
                        rel[a][c] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    (nodes, rel)
}

/// Evaluates `term` over {0,1}, reading every symbol as the projection
/// `asg` gives it.
pub fn eval_projections(term: &CondTerm, asg: &ProjectionAssignment, valuation: &HashMap<String, u8>) -> u8 {
    match term {
        CondTerm::Var(v) => valuation[v],
        CondTerm::App(s, args) => {
            let vals: Vec<u8> = args.iter().map(|a| eval_projections(a, asg, valuation)).collect();
            vals[asg.get(s).expect("assigned") - 1]
        }
    }
}

/// Do the two terms agree as functions on {0,1} under `asg`?
pub fn agree_on_two_elements(lhs: &CondTerm, rhs: &CondTerm, asg: &ProjectionAssignment) -> bool {
    let mut vars: Vec<&str> = lhs.variables();
    for v in rhs.variables() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    (0..1u64 << vars.len()).all(|bits| {
        let valuation: HashMap<String, u8> = vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.to_string(), ((bits >> i) & 1) as u8))
            .collect();
        eval_projections(lhs, asg, &valuation) == eval_projections(rhs, asg, &valuation)
    })
}
