//! Synchronizing automata with idempotent letters.
//!
//! * [`dfa`]: the automaton model, words, state sets, subautomata, congruences
//!   and quotients.
//! * [`generators`]: the Černý, ladder, Gusev-like and flip-flop families,
//!   random automata, and the doubling transform `H(A)` with its word
//!   encoding `σ_j ↦ b·a_j`.
//! * [`analysis`]: synchronizability, exact reset thresholds and the checks
//!   relating `A` and `H(A)`.
//! * [`idem2`]: automata with two idempotent letters.
//! * [`saf`], [`dot`], [`harness`]: file formats and the claim harness.
//!
//! States are 0-based throughout.

pub mod analysis;
pub mod dfa;
pub mod dot;
pub mod error;
pub mod generators;
pub mod harness;
pub mod idem2;
pub mod saf;

pub use analysis::{
    analyze, is_proper, is_synchronizing, reset_threshold, verify_reset_word, AnalysisReport,
    SearchBudget, SyncResult,
};
pub use dfa::{Congruence, Dfa, StateSet, Word};
pub use error::{Error, Result};
pub use generators::{chi_decode, chi_encode, higgins_transform, HigginsImage, NotInImage};
