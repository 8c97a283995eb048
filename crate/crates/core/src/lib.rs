//! A workbench for three-valued modal logic.
//!
//! Formulas are built from atoms with `~`, `&`, `|` and `[]`. The
//! propositional connectives follow weak Kleene logic, where U is
//! infectious. Two readings of `[]` are provided: a deontic one where U at
//! any successor makes `[]A` U, and an epistemic one where `[]A` is U
//! exactly when A is U at the current world. Each reading comes with the
//! four-valued evaluator it simulates, a natural deduction checker, and
//! bounded search harnesses for countermodels, rule soundness and the
//! three-/four-valued correspondence.

pub mod arena;
pub mod kripke;
pub mod proof;
pub mod search;
pub mod semantics;
pub mod syntax;
pub mod truthval;

pub use kripke::{KripkeModel, KripkeModel3, KripkeModel4, ModelClass};
pub use semantics::SemanticsId;
pub use syntax::{parse, render, Formula};
pub use truthval::{TruthValue3, TruthValue4};
