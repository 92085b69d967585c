//! Logical Pauli algebra on a code block and closure searches for Pauli
//! rotations and measurements built from a native set.
//!
//! A word on `m` logical qubits packs the X part in bits `0..m` and the Z part
//! in bits `m..2m`. Qubit `i` of a word is read off a symplectic logical basis
//! `(X̄_i, Z̄_i)`.

mod closure;
mod native;

use serde::Serialize;

use crate::code::{CssCode, LogicalBasis};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

pub use closure::{measurement_closure, rotation_closure, SynthesisTable};
pub use native::{automorphism_action, logical_automorphism_order, native_set, NativeKind, NativeOp, NativeSet, PIVOT};

/// `±` a Hermitian Pauli on up to 16 logical qubits. A qubit with both bits
/// set is `Y = iXZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LogicalPauli {
    pub x: u32,
    pub z: u32,
    pub negative: bool,
}

impl LogicalPauli {
    #[must_use]
    pub fn identity() -> Self {
        Self { x: 0, z: 0, negative: false }
    }

    #[must_use]
    pub fn new(x: u32, z: u32) -> Self {
        Self { x, z, negative: false }
    }

    #[must_use]
    pub fn from_word(word: u32, m: usize) -> Self {
        let mask = (1u32 << m) - 1;
        Self::new(word & mask, word >> m)
    }

    #[must_use]
    pub fn word(&self, m: usize) -> u32 {
        self.x | self.z << m
    }

    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    #[must_use]
    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    #[must_use]
    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() % 2 == 0
    }

    /// `self · other = i^k · result` with `result` Hermitian; returns `(k, result)`,
    /// `k` odd exactly when the two anticommute.
    #[must_use]
    pub fn mul(&self, other: &Self) -> (u32, Self) {
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let k = (self.x & self.z).count_ones() + (other.x & other.z).count_ones() + 2 * (self.z & other.x).count_ones() + 4 - (x & z).count_ones() % 4;
        let k = k + 2 * u32::from(self.negative ^ other.negative);
        let k = k % 4;
        (k % 2, Self { x, z, negative: k >= 2 })
    }

    /// Drops qubit `q`, shifting higher qubits down.
    #[must_use]
    pub fn without_qubit(&self, q: usize) -> Self {
        let squeeze = |v: u32| (v & ((1 << q) - 1)) | (v >> (q + 1)) << q;
        Self { x: squeeze(self.x), z: squeeze(self.z), negative: self.negative }
    }

    /// Restriction to qubit `q` as `(x, z)`.
    #[must_use]
    pub fn on_qubit(&self, q: usize) -> (bool, bool) {
        (self.x >> q & 1 == 1, self.z >> q & 1 == 1)
    }

    /// Letters, qubit 0 first, e.g. `XIZY`.
    #[must_use]
    pub fn to_letters(&self, m: usize) -> String {
        (0..m)
            .map(|q| match self.on_qubit(q) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            })
            .collect()
    }
}

/// Logical coordinates of a physical operator that commutes with every check.
/// Bit `i` of the X part is the parity against `Z̄_i`, of the Z part against `X̄_i`.
pub fn logical_action(code: &CssCode, op: &PauliOperator, basis: &LogicalBasis) -> Result<LogicalPauli> {
    code.check_commutes(op)?;
    if basis.len() > 16 {
        return Err(Error::Invalid("at most 16 logical qubits".into()));
    }
    let mut out = LogicalPauli::identity();
    for i in 0..basis.len() {
        if !op.commutes_with(&basis.zops[i]) {
            out.x |= 1 << i;
        }
        if !op.commutes_with(&basis.xops[i]) {
            out.z |= 1 << i;
        }
    }
    Ok(out)
}
