//! Triviality: satisfaction by projections on a two-element set.
//!
//! Under an assignment of projections a composed term selects exactly one of
//! its variables. Over a set with at least two elements two such terms agree
//! as functions iff they select the same variable, so identities can be
//! compared symbolically.

use std::collections::HashMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::condition::{CondTerm, Identity, MaltsevCondition};
use crate::error::{Error, Result};

/// Operation symbol to 1-based projection coordinate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProjectionAssignment {
    entries: Vec<(String, usize)>,
}

impl ProjectionAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assigns `symbol ↦ π_index`, replacing any previous choice.
    pub fn with(mut self, symbol: &str, index: usize) -> Self {
        self.set(symbol, index);
        self
    }

    pub fn set(&mut self, symbol: &str, index: usize) {
        match self.entries.iter_mut().find(|(s, _)| s == symbol) {
            Some(e) => e.1 = index,
            None => self.entries.push((symbol.to_string(), index)),
        }
    }

    pub fn get(&self, symbol: &str) -> Option<usize> {
        self.entries.iter().find(|(s, _)| s == symbol).map(|e| e.1)
    }

    pub fn entries(&self) -> &[(String, usize)] {
        &self.entries
    }

    /// Checks every index against the symbol's arity in `cond`.
    pub fn validate(&self, cond: &MaltsevCondition) -> Result<()> {
        for (s, i) in &self.entries {
            let arity = cond.symbol(s).map_or(0, |sym| sym.arity);
            if *i == 0 || *i > arity {
                return Err(Error::ProjectionOutOfRange {
                    symbol: s.clone(),
                    index: *i,
                    arity,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for ProjectionAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("{}");
        }
        for (i, (s, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}↦π{c}")?;
        }
        Ok(())
    }
}

impl Serialize for ProjectionAssignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len()))?;
        for (s, c) in &self.entries {
            map.serialize_entry(s, c)?;
        }
        map.end()
    }
}

/// The variable that `term` selects once every symbol is read as the
/// projection `asg` assigns to it.
pub fn project_eval<'t>(term: &'t CondTerm, asg: &ProjectionAssignment) -> Result<&'t str> {
    match term {
        CondTerm::Var(v) => Ok(v),
        CondTerm::App(s, args) => {
            let i = asg.get(s).ok_or_else(|| Error::UnassignedSymbol(s.clone()))?;
            let arg = args.get(i.wrapping_sub(1)).ok_or_else(|| Error::ProjectionOutOfRange {
                symbol: s.clone(),
                index: i,
                arity: args.len(),
            })?;
            project_eval(arg, asg)
        }
    }
}

fn select<'t>(term: &'t CondTerm, index: &HashMap<&str, usize>, coords: &[usize]) -> &'t str {
    match term {
        CondTerm::Var(v) => v,
        CondTerm::App(s, args) => select(&args[coords[index[s.as_str()]] - 1], index, coords),
    }
}

fn max_symbol(term: &CondTerm, index: &HashMap<&str, usize>) -> Option<usize> {
    match term {
        CondTerm::Var(_) => None,
        CondTerm::App(s, args) => args
            .iter()
            .filter_map(|a| max_symbol(a, index))
            .chain(std::iter::once(index[s.as_str()]))
            .max(),
    }
}

/// Does `asg` make every identity of `cond` hold?
pub fn satisfies(cond: &MaltsevCondition, asg: &ProjectionAssignment) -> Result<bool> {
    for Identity { lhs, rhs } in &cond.identities {
        if project_eval(lhs, asg)? != project_eval(rhs, asg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches all projection assignments for one satisfying `cond`.
///
/// Symbols are assigned in order of first occurrence and each symbol's
/// coordinates are tried from the highest down, so the witness returned is
/// the first in that order. An identity is checked as soon as all of its
/// symbols are assigned.
pub fn is_trivial(cond: &MaltsevCondition) -> Option<ProjectionAssignment> {
    let index: HashMap<&str, usize> = cond
        .symbols
        .iter()
        .enumerate()
        .map(|(i, s)| (s.name.as_str(), i))
        .collect();
    let n = cond.symbols.len();
    // identities grouped by the last symbol they need
    let mut ready: Vec<Vec<&Identity>> = vec![Vec::new(); n];
    for id in &cond.identities {
        let last = max_symbol(&id.lhs, &index).max(max_symbol(&id.rhs, &index));
        match last {
            Some(i) => ready[i].push(id),
            None => {
                if id.lhs != id.rhs {
                    return None;
                }
            }
        }
    }
    let mut coords = vec![0usize; n];
    if !assign(cond, &index, &ready, &mut coords, 0) {
        return None;
    }
    let mut asg = ProjectionAssignment::new();
    for (s, c) in cond.symbols.iter().zip(&coords) {
        asg.set(&s.name, *c);
    }
    Some(asg)
}

fn assign(
    cond: &MaltsevCondition,
    index: &HashMap<&str, usize>,
    ready: &[Vec<&Identity>],
    coords: &mut [usize],
    i: usize,
) -> bool {
    if i == coords.len() {
        return true;
    }
    for c in (1..=cond.symbols[i].arity).rev() {
        coords[i] = c;
        let ok = ready[i]
            .iter()
            .all(|id| select(&id.lhs, index, coords) == select(&id.rhs, index, coords));
        if ok && assign(cond, index, ready, coords, i + 1) {
            return true;
        }
    }
    false
}

/// Shape of a single linear identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SlemcShape {
    /// `r(x̄) = s(ȳ)` with `r ≠ s`.
    TwoSymbols,
    /// `t(x̄) = y`, either way round.
    TermEqualsVariable,
    /// `t(x̄) = t(ȳ)`.
    SameSymbol,
    /// `z = r`.
    VariableEqualsVariable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Satisfied by projections.
    Trivial,
    /// Only one-element idempotent algebras satisfy it.
    Collapsing,
    /// `t(x̄) = t(ȳ)` with `xᵢ ≠ yᵢ` at every coordinate.
    CandidateNontrivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub shape: SlemcShape,
    pub verdict: Verdict,
    pub witness: Option<ProjectionAssignment>,
    pub explanation: String,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.shape, self.verdict)
    }
}

fn split_app(t: &CondTerm) -> Option<(&str, Vec<&str>)> {
    match t {
        CondTerm::Var(_) => None,
        CondTerm::App(s, args) => Some((
            s.as_str(),
            args.iter()
                .map(|a| match a {
                    CondTerm::Var(v) => v.as_str(),
                    CondTerm::App(..) => unreachable!("linearity checked"),
                })
                .collect(),
        )),
    }
}

const COLLAPSE_NOTE: &str = "the two sides share no variable: substituting one variable for all \
     variables of each side and applying idempotence yields x = y, so only a one-element \
     idempotent algebra can satisfy it";

/// Classifies a single linear identity by shape and decides its triviality.
///
/// Any returned projection witness is the one [`is_trivial`] finds first.
pub fn classify_slemc(cond: &MaltsevCondition) -> Result<Classification> {
    let [id] = cond.identities.as_slice() else {
        return Err(Error::NotLinearSingle(format!(
            "expected exactly one identity, found {}",
            cond.identities.len()
        )));
    };
    if !id.lhs.is_linear() || !id.rhs.is_linear() {
        return Err(Error::NotLinearSingle(format!("`{id}` composes operation symbols")));
    }
    let last_pos = |xs: &[&str], v: &str| xs.iter().rposition(|x| *x == v).map(|i| i + 1);

    let c = match (split_app(&id.lhs), split_app(&id.rhs)) {
        (None, None) => {
            let (CondTerm::Var(z), CondTerm::Var(r)) = (&id.lhs, &id.rhs) else {
                unreachable!()
            };
            if z == r {
                Classification {
                    shape: SlemcShape::VariableEqualsVariable,
                    verdict: Verdict::Trivial,
                    witness: Some(ProjectionAssignment::new()),
                    explanation: "both sides are the same variable".into(),
                }
            } else {
                Classification {
                    shape: SlemcShape::VariableEqualsVariable,
                    verdict: Verdict::Collapsing,
                    witness: None,
                    explanation: format!("{z} = {r} holds only in a one-element algebra"),
                }
            }
        }
        (Some((t, xs)), None) | (None, Some((t, xs))) => {
            let y = match (&id.lhs, &id.rhs) {
                (CondTerm::Var(y), _) | (_, CondTerm::Var(y)) => y.as_str(),
                _ => unreachable!(),
            };
            match last_pos(&xs, y) {
                Some(i) => Classification {
                    shape: SlemcShape::TermEqualsVariable,
                    verdict: Verdict::Trivial,
                    witness: Some(ProjectionAssignment::new().with(t, i)),
                    explanation: format!("{y} is argument {i} of {t}; take {t} to be π{i}"),
                },
                None => Classification {
                    shape: SlemcShape::TermEqualsVariable,
                    verdict: Verdict::Collapsing,
                    witness: None,
                    explanation: format!(
                        "{y} does not occur among the arguments: substituting one variable for all \
                         arguments and applying idempotence yields x = {y}, so only a one-element \
                         idempotent algebra can satisfy it"
                    ),
                },
            }
        }
        (Some((r, xs)), Some((s, ys))) if r != s => {
            let shared = xs
                .iter()
                .enumerate()
                .rev()
                .find_map(|(i, x)| last_pos(&ys, x).map(|j| (i + 1, j, *x)));
            match shared {
                Some((i, j, v)) => Classification {
                    shape: SlemcShape::TwoSymbols,
                    verdict: Verdict::Trivial,
                    witness: Some(ProjectionAssignment::new().with(r, i).with(s, j)),
                    explanation: format!("{v} is argument {i} of {r} and argument {j} of {s}"),
                },
                None => Classification {
                    shape: SlemcShape::TwoSymbols,
                    verdict: Verdict::Collapsing,
                    witness: None,
                    explanation: COLLAPSE_NOTE.into(),
                },
            }
        }
        (Some((t, xs)), Some((_, ys))) => {
            let shared = (0..xs.len()).rev().find(|&i| xs[i] == ys[i]);
            match shared {
                Some(i) => Classification {
                    shape: SlemcShape::SameSymbol,
                    verdict: Verdict::Trivial,
                    witness: Some(ProjectionAssignment::new().with(t, i + 1)),
                    explanation: format!("coordinate {} agrees on both sides; take {t} to be π{}", i + 1, i + 1),
                },
                None => Classification {
                    shape: SlemcShape::SameSymbol,
                    verdict: Verdict::CandidateNontrivial,
                    witness: None,
                    explanation: "every coordinate differs between the two sides, so no projection \
                                  satisfies the identity"
                        .into(),
                },
            }
        }
    };
    Ok(c)
}

/// The identity `t(x1,…,xm) = t(y1,…,ym)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slemc {
    pub symbol: String,
    pub xs: Vec<String>,
    pub ys: Vec<String>,
}

impl Slemc {
    pub fn new(symbol: &str, xs: &[&str], ys: &[&str]) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::InconsistentArity {
                symbol: symbol.to_string(),
                expected: xs.len(),
                found: ys.len(),
            });
        }
        if xs.is_empty() {
            return Err(Error::NotSameSymbol(format!("{symbol} has no arguments")));
        }
        Ok(Slemc {
            symbol: symbol.to_string(),
            xs: xs.iter().map(|s| s.to_string()).collect(),
            ys: ys.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn from_condition(cond: &MaltsevCondition) -> Result<Self> {
        let c = classify_slemc(cond)?;
        if c.shape != SlemcShape::SameSymbol {
            return Err(Error::NotSameSymbol(cond.to_string()));
        }
        let id = &cond.identities[0];
        let (t, xs) = split_app(&id.lhs).expect("same-symbol shape");
        let (_, ys) = split_app(&id.rhs).expect("same-symbol shape");
        Slemc::new(t, &xs, &ys)
    }

    pub fn arity(&self) -> usize {
        self.xs.len()
    }

    /// Whether some coordinate agrees, making the identity trivial.
    pub fn shared_coordinate(&self) -> Option<usize> {
        (0..self.arity())
            .rev()
            .find(|&i| self.xs[i] == self.ys[i])
            .map(|i| i + 1)
    }

    pub fn to_condition(&self) -> MaltsevCondition {
        let side = |vs: &[String]| CondTerm::App(self.symbol.clone(), vs.iter().map(|v| CondTerm::var(v)).collect());
        MaltsevCondition {
            symbols: vec![super::condition::OpSymbol {
                name: self.symbol.clone(),
                arity: self.arity(),
            }],
            identities: vec![Identity {
                lhs: side(&self.xs),
                rhs: side(&self.ys),
            }],
        }
    }
}

impl fmt::Display for Slemc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({}) = {}({})",
            self.symbol,
            self.xs.join(","),
            self.symbol,
            self.ys.join(",")
        )
    }
}
