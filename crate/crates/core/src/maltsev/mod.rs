//! Strong Maltsev conditions and their triviality test. Single linear
//! identities `t(x̄) = t(ȳ)` also get a witness search and a refutation in
//! the k-wnu free algebra.

mod condition;
pub mod finite;
mod projection;
mod search;

pub use condition::{parse_condition, parse_condition_strict, CondTerm, Identity, MaltsevCondition, OpSymbol};
pub use finite::{find_counterexample, wnu_identities, Counterexample, FiniteAlgebra};
pub use projection::{
    classify_slemc, is_trivial, project_eval, satisfies, Classification, ProjectionAssignment, Slemc, SlemcShape,
    Verdict,
};
pub use search::{
    formal_variables, refute_generators, refute_via_s, search_report, search_wnu_witness, BudgetOrBound, CheckReport,
    Outcome, SearchOutcome,
};
