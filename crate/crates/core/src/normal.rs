//! Normal forms modulo the k-wnu identities and the free algebra they carry.
//!
//! A term is normal when it is a variable, or `w(a1,…,ak)` with every `ai`
//! normal and `a1` differing from the arguments at two or more other
//! positions. Normal terms are the elements of the free algebra; the
//! operation [`FreeAlgebra::wa`] acts on them by
//!
//! * `wA(a,…,a) = a`;
//! * `wA(…)` with a single odd argument `c` among copies of `d` is `w(c,d,…,d)`;
//! * otherwise `wA(a1,…,ak) = w(a1,…,ak)`.
//!
//! Normalizing a term is evaluating it with `wA` in place of `w`.

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::term::{Arity, Children, Shape, TermRef, TermStore};

/// A term certified to be in normal form by the [`FreeAlgebra`] that made it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalTerm(TermRef);

impl NormalTerm {
    pub fn term(self) -> TermRef {
        self.0
    }
}

impl From<NormalTerm> for TermRef {
    fn from(n: NormalTerm) -> TermRef {
        n.0
    }
}

/// How `wA` treats an argument tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WaCase {
    /// All arguments equal.
    Constant(TermRef),
    /// Exactly one argument differs from all the others, which agree.
    OddOne { odd: TermRef, common: TermRef },
    /// Anything else.
    General,
}

pub fn wa_case(args: &[TermRef]) -> WaCase {
    let first = args[0];
    let Some(&second) = args.iter().find(|&&a| a != first) else {
        return WaCase::Constant(first);
    };
    let mut n_first = 0usize;
    let mut n_second = 0usize;
    for &a in args {
        if a == first {
            n_first += 1;
        } else if a == second {
            n_second += 1;
        } else {
            return WaCase::General;
        }
    }
    match (n_first, n_second) {
        (1, _) => WaCase::OddOne {
            odd: first,
            common: second,
        },
        (_, 1) => WaCase::OddOne {
            odd: second,
            common: first,
        },
        _ => WaCase::General,
    }
}

/// The local normality condition on an application node: the first argument
/// differs from at least two of the others.
pub fn head_condition(args: &[TermRef]) -> bool {
    args[1..].iter().filter(|&&a| a != args[0]).count() >= 2
}

/// The free algebra of the k-wnu variety over an open-ended set of variables.
///
/// Memo tables are owned by the instance and are safe to share between
/// threads; racing writers always store identical values.
pub struct FreeAlgebra {
    store: TermStore,
    normal_memo: RwLock<HashMap<TermRef, bool>>,
    normalize_memo: RwLock<HashMap<TermRef, TermRef>>,
    pub(crate) subterm_memo: RwLock<HashMap<(TermRef, TermRef), bool>>,
}

impl std::fmt::Debug for FreeAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FreeAlgebra").field("store", &self.store).finish()
    }
}

impl FreeAlgebra {
    pub fn new(arity: Arity) -> Self {
        FreeAlgebra {
            store: TermStore::new(arity),
            normal_memo: RwLock::new(HashMap::new()),
            normalize_memo: RwLock::new(HashMap::new()),
            subterm_memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn with_arity(k: usize) -> Result<Self> {
        Ok(FreeAlgebra::new(Arity::new(k)?))
    }

    pub fn store(&self) -> &TermStore {
        &self.store
    }

    pub fn arity(&self) -> Arity {
        self.store.arity()
    }

    pub fn k(&self) -> usize {
        self.store.arity().get()
    }

    pub fn variable(&self, name: &str) -> Result<NormalTerm> {
        self.store.variable(name).map(NormalTerm)
    }

    pub fn parse(&self, text: &str) -> Result<TermRef> {
        self.store.parse(text)
    }

    /// Parses and normalizes.
    pub fn parse_normal(&self, text: &str) -> Result<NormalTerm> {
        Ok(self.normalize(self.store.parse(text)?))
    }

    pub fn render(&self, t: impl Into<TermRef>) -> String {
        self.store.render(t.into())
    }

    pub fn w_count(&self, t: impl Into<TermRef>) -> u64 {
        self.store.w_count(t.into())
    }

    pub fn certify(&self, t: TermRef) -> Option<NormalTerm> {
        self.is_normal(t).then_some(NormalTerm(t))
    }

    /// Membership in the normal-form set.
    pub fn is_normal(&self, t: TermRef) -> bool {
        if let Some(&b) = self.normal_memo.read().get(&t) {
            return b;
        }
        let result = match self.store.children(t) {
            None => true,
            Some(children) => head_condition(&children) && children.iter().all(|&c| self.is_normal(c)),
        };
        self.normal_memo.write().insert(t, result);
        result
    }

    /// The free-algebra operation.
    pub fn wa(&self, args: &[NormalTerm]) -> Result<NormalTerm> {
        let raw: Children = args.iter().map(|a| a.0).collect();
        self.wa_unchecked(&raw)
    }

    /// `wA` on plain handles, rejecting any argument that is not normal.
    pub fn wa_terms(&self, args: &[TermRef]) -> Result<NormalTerm> {
        if let Some(&bad) = args.iter().find(|&&a| !self.is_normal(a)) {
            return Err(Error::NotNormal(self.store.render(bad)));
        }
        self.wa_unchecked(args)
    }

    fn wa_unchecked(&self, args: &[TermRef]) -> Result<NormalTerm> {
        let k = self.k();
        if args.len() != k {
            return Err(Error::ArityMismatch {
                expected: k,
                found: args.len(),
            });
        }
        let t = match wa_case(args) {
            WaCase::Constant(a) => a,
            WaCase::OddOne { odd, common } => {
                let mut children: Children = SmallVec::from_elem(common, k);
                children[0] = odd;
                self.store.app(&children)?
            }
            WaCase::General => self.store.app(args)?,
        };
        Ok(NormalTerm(t))
    }

    /// Evaluates `t` in the free algebra, giving its unique normal form.
    pub fn normalize(&self, t: TermRef) -> NormalTerm {
        if let Some(&n) = self.normalize_memo.read().get(&t) {
            return NormalTerm(n);
        }
        let n = match self.store.children(t) {
            None => NormalTerm(t),
            Some(children) => {
                let args: Children = children.iter().map(|&c| self.normalize(c).0).collect();
                self.wa_unchecked(&args).expect("children have the store's arity")
            }
        };
        self.normalize_memo.write().insert(t, n.0);
        n
    }

    /// Whether `s ≈ t` holds in the k-wnu variety.
    pub fn free_equal(&self, s: TermRef, t: TermRef) -> bool {
        self.normalize(s) == self.normalize(t)
    }

    /// Evaluates `body` with its variables bound by `env`.
    ///
    /// Substitution is simultaneous; the result is the normal form of the
    /// substituted term.
    pub fn substitute(&self, body: TermRef, env: &HashMap<TermRef, NormalTerm>) -> Result<NormalTerm> {
        let mut memo = HashMap::new();
        self.substitute_rec(body, env, &mut memo)
    }

    /// [`substitute`](Self::substitute) with the environment keyed by
    /// variable name.
    pub fn substitute_named(&self, body: TermRef, env: &[(&str, NormalTerm)]) -> Result<NormalTerm> {
        let mut map = HashMap::with_capacity(env.len());
        for &(name, value) in env {
            map.insert(self.store.variable(name)?, value);
        }
        self.substitute(body, &map)
    }

    fn substitute_rec(
        &self,
        t: TermRef,
        env: &HashMap<TermRef, NormalTerm>,
        memo: &mut HashMap<TermRef, NormalTerm>,
    ) -> Result<NormalTerm> {
        if let Some(&n) = memo.get(&t) {
            return Ok(n);
        }
        let n = match self.store.shape(t) {
            Shape::Leaf(name) => *env
                .get(&t)
                .ok_or_else(|| Error::UnboundVariable(Arc::clone(&name).to_string()))?,
            Shape::App(children) => {
                let mut args: Children = SmallVec::with_capacity(children.len());
                for c in children {
                    args.push(self.substitute_rec(c, env, memo)?.0);
                }
                self.wa_unchecked(&args)?
            }
        };
        memo.insert(t, n);
        Ok(n)
    }
}
