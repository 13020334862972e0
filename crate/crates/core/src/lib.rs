//! Exact braid-group representations carried by `2n` Ising anyons.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact_arith`]: the cyclotomic field `Q(ζ)`, `ζ = e^{iπ/4}`, and dense
//!   square matrices over it.
//! - [`rep_builder`]: tensor-product braid generators built from the spinor
//!   `R` matrices, the fermion-parity projector and the qubit encoding.
//! - [`group_tools`]: Dimino enumeration of the finite images, braid-relation
//!   checks and membership queries.
//! - [`compiler`]: braid words, gate verification and breadth-first synthesis.
//! - [`continuation_oracle`]: floating-point analytic continuation of the
//!   4-quasihole Pfaffian wave functions, used to cross-check the exact
//!   4-anyon generators.

pub mod compiler;
pub mod continuation_oracle;
pub mod error;
pub mod exact_arith;
pub mod group_tools;
pub mod rep_builder;

pub use compiler::{BraidWord, SynthesisResult};
pub use error::{Error, Result};
pub use exact_arith::{CMatrix, CycloNumber};
pub use group_tools::GroupImage;
pub use rep_builder::{Convention, QubitEncoding, RepSpec};
