//! The syntactic subterm order on normal terms, the incomparability relation
//! S, and bounded enumeration of normal terms.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::normal::{head_condition, FreeAlgebra, NormalTerm};
use crate::term::{Children, TermRef};

impl FreeAlgebra {
    /// `a ⪯ b`: `a` occurs in `b` as a (not necessarily proper) subterm.
    pub fn is_subterm(&self, a: NormalTerm, b: NormalTerm) -> bool {
        self.subterm_raw(a.term(), b.term())
    }

    pub(crate) fn subterm_raw(&self, a: TermRef, b: TermRef) -> bool {
        if a == b {
            return true;
        }
        let store = self.store();
        // a proper subterm is strictly shallower
        if store.height(a) >= store.height(b) {
            return false;
        }
        if let Some(&r) = self.subterm_memo.read().get(&(a, b)) {
            return r;
        }
        let children = store.children(b).expect("height > 0 implies an application");
        let r = children.iter().any(|&c| self.subterm_raw(a, c));
        self.subterm_memo.write().insert((a, b), r);
        r
    }

    /// Membership in S: `a` and `b` are incomparable under `⪯`.
    pub fn in_s(&self, a: NormalTerm, b: NormalTerm) -> bool {
        !self.is_subterm(a, b) && !self.is_subterm(b, a)
    }

    /// All normal terms over `vars` with at most `max_w` occurrences of `w`,
    /// ordered by w-count and then by rendered form.
    pub fn enumerate_normal(&self, vars: &[&str], max_w: usize) -> Result<NormalEnumerator<'_>> {
        NormalEnumerator::new(self, vars, max_w)
    }
}

/// Level-by-level generator behind [`FreeAlgebra::enumerate_normal`].
///
/// Level `n` holds the normal terms with exactly `n` occurrences of `w`; it is
/// built from the lower levels the first time it is needed.
pub struct NormalEnumerator<'a> {
    alg: &'a FreeAlgebra,
    max_w: usize,
    levels: Vec<Vec<NormalTerm>>,
    level: usize,
    pos: usize,
}

impl<'a> NormalEnumerator<'a> {
    fn new(alg: &'a FreeAlgebra, vars: &[&str], max_w: usize) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::EmptyVariables);
        }
        let names: BTreeSet<&str> = vars.iter().copied().collect();
        let mut level0 = Vec::with_capacity(names.len());
        for name in names {
            level0.push(alg.variable(name)?);
        }
        Ok(NormalEnumerator {
            alg,
            max_w,
            levels: vec![level0],
            level: 0,
            pos: 0,
        })
    }

    fn build_level(&self, n: usize) -> Vec<NormalTerm> {
        let k = self.alg.k();
        let mut out = Vec::new();
        let mut parts = vec![0usize; k];
        let mut children: Children = Children::from_elem(self.levels[0][0].term(), k);
        for_each_composition(n - 1, &mut parts, 0, &mut |parts| {
            self.product(parts, 0, &mut children, &mut out);
        });
        let mut keyed: Vec<(String, NormalTerm)> = out.into_iter().map(|t| (self.alg.render(t), t)).collect();
        keyed.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        keyed.into_iter().map(|(_, t)| t).collect()
    }

    fn product(&self, parts: &[usize], i: usize, children: &mut Children, out: &mut Vec<NormalTerm>) {
        if i == parts.len() {
            if head_condition(children) {
                let t = self.alg.store().app(children).expect("arity matches");
                out.push(self.alg.certify(t).expect("children normal and head condition holds"));
            }
            return;
        }
        for &c in &self.levels[parts[i]] {
            children[i] = c.term();
            self.product(parts, i + 1, children, out);
        }
    }
}

/// Calls `f` on every weak composition of `total` into `parts.len()` parts.
fn for_each_composition(total: usize, parts: &mut [usize], i: usize, f: &mut dyn FnMut(&[usize])) {
    if i + 1 == parts.len() {
        parts[i] = total;
        f(parts);
        return;
    }
    for v in 0..=total {
        parts[i] = v;
        for_each_composition(total - v, parts, i + 1, f);
    }
}

impl Iterator for NormalEnumerator<'_> {
    type Item = NormalTerm;

    fn next(&mut self) -> Option<NormalTerm> {
        loop {
            if let Some(&t) = self.levels[self.level].get(self.pos) {
                self.pos += 1;
                return Some(t);
            }
            if self.level == self.max_w {
                return None;
            }
            self.level += 1;
            self.pos = 0;
            if self.levels.len() <= self.level {
                let next = self.build_level(self.level);
                self.levels.push(next);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(k: usize) -> FreeAlgebra {
        FreeAlgebra::with_arity(k).unwrap()
    }

    fn n(a: &FreeAlgebra, text: &str) -> NormalTerm {
        a.certify(a.parse(text).unwrap()).unwrap()
    }

    #[test]
    fn subterm_examples() {
        let a = alg(3);
        assert!(!a.is_subterm(n(&a, "x"), n(&a, "y")));
        assert!(a.is_subterm(n(&a, "x"), n(&a, "w(w(x,y,z),y,y)")));
        assert!(a.is_subterm(n(&a, "w(x,y,z)"), n(&a, "w(w(x,y,z),y,y)")));
        assert!(!a.is_subterm(n(&a, "w(y,x,x)"), n(&a, "w(x,y,z)")));
        assert!(a.is_subterm(n(&a, "w(x,y,z)"), n(&a, "w(x,y,z)")));
        assert!(!a.is_subterm(n(&a, "w(x,y,z)"), n(&a, "x")));
    }

    #[test]
    fn s_examples() {
        let a = alg(3);
        assert!(a.in_s(n(&a, "x"), n(&a, "y")));
        let t = n(&a, "w(y,x,x)");
        assert!(!a.in_s(t, t));
        assert!(!a.in_s(n(&a, "x"), t));
        assert!(!a.in_s(t, n(&a, "x")));
        assert!(a.in_s(n(&a, "z"), t));
        assert!(a.in_s(n(&a, "w(x,y,y)"), t));
    }

    #[test]
    fn enumerate_small_cases() {
        let a = alg(3);
        let got: Vec<String> = a.enumerate_normal(&["x"], 0).unwrap().map(|t| a.render(t)).collect();
        assert_eq!(got, ["x"]);

        let got: Vec<String> = a
            .enumerate_normal(&["y", "x"], 1)
            .unwrap()
            .map(|t| a.render(t))
            .collect();
        assert_eq!(got, ["x", "y", "w(x,y,y)", "w(y,x,x)"]);

        // a single variable admits no normal application
        assert_eq!(a.enumerate_normal(&["x"], 3).unwrap().count(), 1);
        // 3 variables, one w: 3 choices of head, 2*2 choices of tail
        assert_eq!(a.enumerate_normal(&["x", "y", "z"], 1).unwrap().count(), 3 + 12);
        assert!(matches!(a.enumerate_normal(&[], 1), Err(Error::EmptyVariables)));
    }

    #[test]
    fn enumeration_is_ordered_and_normal() {
        let a = alg(3);
        let terms: Vec<NormalTerm> = a.enumerate_normal(&["x", "y", "z"], 2).unwrap().collect();
        let keys: Vec<(u64, String)> = terms.iter().map(|&t| (a.w_count(t), a.render(t))).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
        assert!(terms.iter().all(|t| a.is_normal(t.term())));
    }

    #[test]
    fn enumeration_counts_four_variables() {
        // heads over {x,y,z,u}: 4 * 3 * 3 at level 1; level 2 is 576 + 2 * 432
        let a = alg(3);
        assert_eq!(
            a.enumerate_normal(&["x", "y", "z", "u"], 2).unwrap().count(),
            4 + 36 + 1440
        );
    }
}
