//! Workbench for the non-injectivity assertion schema: the characteristic
//! clause-set family, its constructive resolution refutation, an
//! independent verifier and a saturation prover used as an oracle.

pub mod clause;
pub mod io;
pub mod prover;
pub mod refutation;
pub mod schema;
pub mod term;
