//! Workbench for the minimum many-valued modal logics over finite
//! residuated lattices: exact finite algebra arithmetic, graded Kripke
//! semantics, bounded countermodel search and Hilbert-style calculi.

pub mod algebra;
pub mod calculus;
pub mod formula;
pub mod gen;
pub mod scenarios;
pub mod search;
pub mod semantics;
