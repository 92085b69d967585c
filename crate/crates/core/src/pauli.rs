//! Pauli operators in binary symplectic form.
//!
//! An operator is `i^phase · X^x Z^z` with the X factor to the left on every
//! qubit, so a single-qubit `Y` is `phase = 1, x = z = 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::gf2::BitVector;

/// The two Pauli types of a CSS code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PauliKind {
    X,
    Z,
}

impl PauliKind {
    #[must_use]
    pub fn other(self) -> Self {
        match self {
            Self::X => Self::Z,
            Self::Z => Self::X,
        }
    }

    #[must_use]
    pub fn letter(self) -> char {
        match self {
            Self::X => 'X',
            Self::Z => 'Z',
        }
    }
}

impl fmt::Display for PauliKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVector,
    z: BitVector,
    phase: u8,
}

impl PauliOperator {
    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self { x: BitVector::zeros(n), z: BitVector::zeros(n), phase: 0 }
    }

    #[must_use]
    pub fn new(x: BitVector, z: BitVector) -> Self {
        assert_eq!(x.len(), z.len(), "x and z parts must have equal length");
        Self { x, z, phase: 0 }
    }

    /// A pure operator of the given type on the given vector.
    #[must_use]
    pub fn pure(kind: PauliKind, v: BitVector) -> Self {
        let zero = BitVector::zeros(v.len());
        match kind {
            PauliKind::X => Self::new(v, zero),
            PauliKind::Z => Self::new(zero, v),
        }
    }

    #[must_use]
    pub fn from_support(kind: PauliKind, n: usize, support: &[usize]) -> Self {
        Self::pure(kind, BitVector::from_indices(n, support))
    }

    /// Splits a `2n`-bit word `[x | z]`.
    #[must_use]
    pub fn from_symplectic(v: &BitVector) -> Self {
        assert!(v.len() % 2 == 0);
        let n = v.len() / 2;
        let idx: Vec<usize> = (0..n).collect();
        let zi: Vec<usize> = (n..2 * n).collect();
        Self::new(v.select(&idx), v.select(&zi))
    }

    #[must_use]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    #[must_use]
    pub fn xbits(&self) -> &BitVector {
        &self.x
    }

    #[must_use]
    pub fn zbits(&self) -> &BitVector {
        &self.z
    }

    /// Power of `i` in front of `X^x Z^z`.
    #[must_use]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    #[must_use]
    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    #[must_use]
    pub fn part(&self, kind: PauliKind) -> &BitVector {
        match kind {
            PauliKind::X => &self.x,
            PauliKind::Z => &self.z,
        }
    }

    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Whether the operator has no component of the other type.
    #[must_use]
    pub fn is_pure(&self, kind: PauliKind) -> bool {
        self.part(kind.other()).is_zero()
    }

    #[must_use]
    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).ones_indices()
    }

    #[must_use]
    pub fn weight(&self) -> usize {
        self.x.or(&self.z).weight()
    }

    #[must_use]
    pub fn commutes_with(&self, other: &Self) -> bool {
        self.x.dot(&other.z) == self.z.dot(&other.x)
    }

    /// `[x | z]` as one `2n`-bit vector.
    #[must_use]
    pub fn symplectic(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    /// Product `self · other`, tracking the power of `i`.
    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        let swap = self.z.dot(&other.x);
        let phase = (self.phase + other.phase + if swap { 2 } else { 0 }) % 4;
        Self { x: self.x.xor(&other.x), z: self.z.xor(&other.z), phase }
    }

    /// Multiplies by `other` on the right, ignoring phase.
    pub fn mul_assign_unsigned(&mut self, other: &Self) {
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// Exchanges the X and Z parts.
    #[must_use]
    pub fn swap_xz(&self) -> Self {
        Self::new(self.z.clone(), self.x.clone())
    }

    /// Pads with identity up to `n` qubits.
    #[must_use]
    pub fn extend(&self, n: usize) -> Self {
        assert!(n >= self.num_qubits());
        let pad = BitVector::zeros(n - self.num_qubits());
        Self { x: self.x.concat(&pad), z: self.z.concat(&pad), phase: self.phase }
    }

    /// Restriction to the given qubits, in order.
    #[must_use]
    pub fn restrict(&self, qubits: &[usize]) -> Self {
        Self::new(self.x.select(qubits), self.z.select(qubits))
    }

    /// Moves qubit `i` to `perm[i]`.
    #[must_use]
    pub fn permute(&self, perm: &[usize]) -> Self {
        let n = self.num_qubits();
        assert_eq!(perm.len(), n);
        let mut x = BitVector::zeros(n);
        let mut z = BitVector::zeros(n);
        for i in self.x.iter_ones() {
            x.set(perm[i], true);
        }
        for i in self.z.iter_ones() {
            z.set(perm[i], true);
        }
        Self { x, z, phase: self.phase }
    }

    /// Compact text form such as `X0 Z3 Y7`.
    #[must_use]
    pub fn to_sparse_string(&self) -> String {
        let mut parts = Vec::new();
        for q in self.support() {
            let c = match (self.x.get(q), self.z.get(q)) {
                (true, true) => 'Y',
                (true, false) => 'X',
                _ => 'Z',
            };
            parts.push(format!("{c}{q}"));
        }
        if parts.is_empty() {
            "I".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli[{}]", self.to_sparse_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_products() {
        let x = PauliOperator::from_support(PauliKind::X, 1, &[0]);
        let z = PauliOperator::from_support(PauliKind::Z, 1, &[0]);
        assert!(!x.commutes_with(&z));
        let xz = x.mul(&z);
        let zx = z.mul(&x);
        // XZ = -ZX
        assert_eq!((xz.phase() + 2) % 4, zx.phase());
        let y = PauliOperator::new(BitVector::ones(1), BitVector::ones(1)).with_phase(1);
        // Y·Y = I
        let yy = y.mul(&y);
        assert!(yy.is_identity());
        assert_eq!(yy.phase(), 0);
    }

    #[test]
    fn weight_and_support() {
        let p = PauliOperator::new(BitVector::from_bitstring("1100"), BitVector::from_bitstring("0110"));
        assert_eq!(p.weight(), 3);
        assert_eq!(p.to_sparse_string(), "X0 Y1 Z2");
        assert_eq!(p.swap_xz().to_sparse_string(), "Z0 Y1 X2");
    }
}
