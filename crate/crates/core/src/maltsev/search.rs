//! Witness search and refutation of `t(x̄) = t(ȳ)` in the k-wnu free algebra.

use std::collections::HashMap;
use std::time::Instant;

use serde::Serialize;

use super::projection::{classify_slemc, Slemc};
use crate::closure::{close_pairs, ClosureBudget, ClosureReport, PairGeneratorSet};
use crate::error::Result;
use crate::normal::{FreeAlgebra, NormalTerm};

/// Names of the formal variables standing for the arguments of `t`.
pub fn formal_variables(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("p{i}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// The first candidate satisfying the identity, as a term over the
    /// formal variables.
    pub witness: Option<NormalTerm>,
    pub candidates_examined: usize,
}

/// Looks for a term `t` with at most `max_w` occurrences of `w` such that
/// `t(x̄) = t(ȳ)` holds in the free algebra.
///
/// Candidates are the normal terms over the formal variables `p1, …, pm` in
/// enumeration order; bare formal variables (projections) come first.
pub fn search_wnu_witness(alg: &FreeAlgebra, slemc: &Slemc, max_w: usize) -> Result<SearchOutcome> {
    let m = slemc.arity();
    let formals = formal_variables(m);
    let mut env_x = HashMap::with_capacity(m);
    let mut env_y = HashMap::with_capacity(m);
    for (i, f) in formals.iter().enumerate() {
        let f = alg.store().variable(f)?;
        env_x.insert(f, alg.variable(&slemc.xs[i])?);
        env_y.insert(f, alg.variable(&slemc.ys[i])?);
    }
    let names: Vec<&str> = formals.iter().map(String::as_str).collect();
    let mut examined = 0;
    for candidate in alg.enumerate_normal(&names, max_w)? {
        examined += 1;
        let lhs = alg.substitute(candidate.term(), &env_x)?;
        let rhs = alg.substitute(candidate.term(), &env_y)?;
        if lhs == rhs {
            return Ok(SearchOutcome {
                witness: Some(candidate),
                candidates_examined: examined,
            });
        }
    }
    Ok(SearchOutcome {
        witness: None,
        candidates_examined: examined,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum BudgetOrBound {
    Bound { max_w: usize },
    Budget(ClosureBudget),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    WitnessFound,
    Absent,
    ConfirmedAtBudget,
    DiagonalFound,
    SViolation,
    PreconditionViolation,
}

/// Report shared by the witness search and the refutation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub condition: String,
    pub classification: String,
    pub k: usize,
    pub budget_or_bound: BudgetOrBound,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub candidates_examined: usize,
    pub elapsed_ms: u64,
    pub note: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure: Option<ClosureReport>,
}

impl CheckReport {
    /// Zeroes the timing field so that reports compare byte for byte.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = 0;
        self
    }
}

fn classification_label(slemc: &Slemc) -> String {
    classify_slemc(&slemc.to_condition())
        .map(|c| c.to_string())
        .unwrap_or_else(|e| e.to_string())
}

/// Runs [`search_wnu_witness`] and wraps the outcome in a report.
pub fn search_report(alg: &FreeAlgebra, slemc: &Slemc, max_w: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let out = search_wnu_witness(alg, slemc, max_w)?;
    let (outcome, note) = match out.witness {
        Some(_) => (
            Outcome::WitnessFound,
            "the witness term satisfies the identity in the free algebra, so the whole variety satisfies it"
                .to_string(),
        ),
        None => (
            Outcome::Absent,
            format!(
                "bounded search: no term with at most {max_w} occurrences of w satisfies the identity; \
                 the refutation report covers every size"
            ),
        ),
    };
    Ok(CheckReport {
        condition: slemc.to_string(),
        classification: classification_label(slemc),
        k: alg.k(),
        budget_or_bound: BudgetOrBound::Bound { max_w },
        outcome,
        witness: out.witness.map(|t| alg.render(t)),
        candidates_examined: out.candidates_examined,
        elapsed_ms: start.elapsed().as_millis() as u64,
        note,
        closure: None,
    })
}

/// Closes `gens` and checks the closure against the diagonal and against S.
pub fn refute_generators(
    alg: &FreeAlgebra,
    label: &str,
    classification: &str,
    gens: &PairGeneratorSet,
    budget: &ClosureBudget,
) -> Result<CheckReport> {
    let start = Instant::now();
    let closure = close_pairs(alg, gens, budget)?;
    let report = ClosureReport::build(alg, gens, budget, &closure, false);
    let (outcome, note) = if !report.generator_violations.is_empty() {
        (
            Outcome::PreconditionViolation,
            "a generator is not in S (its coordinates are comparable under the subterm order); \
             the argument needs every generator in S"
                .to_string(),
        )
    } else if report.diagonal_witness.is_some() {
        (
            Outcome::DiagonalFound,
            "a diagonal pair was generated; this contradicts closure of S and indicates an engine fault".to_string(),
        )
    } else if !report.s_violations.is_empty() {
        (
            Outcome::SViolation,
            "a generated pair left S; this contradicts closure of S and indicates an engine fault".to_string(),
        )
    } else {
        (
            Outcome::ConfirmedAtBudget,
            format!(
                "bounded check: {} pairs generated ({:?}), none on the diagonal, all in S. S contains the \
                 generators and is closed under coordinatewise wA, so the generated relation never meets \
                 the diagonal at any budget; hence no term t satisfies the identity in the {}-wnu variety",
                report.pair_count,
                report.stop_reason,
                alg.k()
            ),
        )
    };
    Ok(CheckReport {
        condition: label.to_string(),
        classification: classification.to_string(),
        k: alg.k(),
        budget_or_bound: BudgetOrBound::Budget(*budget),
        outcome,
        witness: report.diagonal_witness.as_ref().map(|[a, b]| format!("({a}, {b})")),
        candidates_examined: report.pair_count,
        elapsed_ms: start.elapsed().as_millis() as u64,
        note,
        closure: Some(report),
    })
}

/// Generates the relation from the pairs `(xᵢ, yᵢ)` and checks it never
/// reaches the diagonal within `budget`.
pub fn refute_via_s(alg: &FreeAlgebra, slemc: &Slemc, budget: &ClosureBudget) -> Result<CheckReport> {
    budget.validate()?;
    let mut pairs = Vec::with_capacity(slemc.arity());
    for (x, y) in slemc.xs.iter().zip(&slemc.ys) {
        pairs.push((alg.variable(x)?, alg.variable(y)?));
    }
    let gens = PairGeneratorSet::new(pairs);
    refute_generators(alg, &slemc.to_string(), &classification_label(slemc), &gens, budget)
}
