//! Symbolic engine for the free algebras of k-ary weak near-unanimity
//! varieties (k ≥ 3), with checkers for single linear-equality Maltsev
//! conditions.
//!
//! The free algebra over a set of variables is realized by its normal forms
//! ([`FreeAlgebra`]). The subterm order and bounded closure of relations on
//! the squared algebra ([`closure`]) are built on top of it. The [`maltsev`]
//! module uses both to decide and refute conditions.

pub mod closure;
pub mod error;
pub mod maltsev;
pub mod normal;
pub mod selftest;
pub mod subterm;
pub mod term;

pub use closure::{
    close_pairs, close_pairs_naive, closure_report, diagonal_witness, verify_pairs_in_s, ClosureBudget, ClosureReport,
    ClosureSet, Pair, PairGeneratorSet, StopReason,
};
pub use error::{Error, Result};
pub use normal::{FreeAlgebra, NormalTerm, WaCase};
pub use subterm::NormalEnumerator;
pub use term::{Arity, Shape, TermRef, TermStore};
