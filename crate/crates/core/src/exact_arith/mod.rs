//! Exact arithmetic in the eighth cyclotomic field and matrices over it.
//!
//! Every entry of the Ising braid matrices (`e^{iπ/4}`, `i`, `1/√2`) lives in
//! `Q(ζ)` with `ζ = e^{iπ/4}`, so all constructions below are exact and the
//! floating embedding is only used by the numerical oracle.

mod cyclo;
mod json;
mod matrix;

pub use cyclo::CycloNumber;
pub use json::{cyclo_from_json, cyclo_to_json, matrix_from_json, matrix_to_json, MatrixJson};
pub use matrix::CMatrix;
