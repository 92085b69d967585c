//! Gauge-fixed surgery for CSS codes.
//!
//! The crate builds ancilla systems that measure logical Pauli operators of a
//! CSS code, checks their distance properties with exact small-scale oracles,
//! simulates the measurement protocol under phenomenological noise and
//! decodes it, and reproduces the gross-code Clifford synthesis search.

pub mod cliffords;
pub mod code;
pub mod decoder;
pub mod distance;
pub mod error;
pub mod gf2;
pub mod montecarlo;
pub mod pauli;
pub mod protocol;
pub mod registry;
pub mod stats;
pub mod surgery;

pub use code::{CssCode, InducedGraph, LogicalBasis};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use pauli::{PauliKind, PauliOperator};
