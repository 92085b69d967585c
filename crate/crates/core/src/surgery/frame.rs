//! Logical operators that survive a measurement.

use crate::code::{logical_basis, symplectic_gram_schmidt};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::{PauliKind, PauliOperator};

use super::MergedCode;

/// The measured operator `p`, a partner `q` anticommuting with it, and the
/// remaining logical pairs cleaned to commute with every merged check. All
/// operators act on the merged qubit count.
#[derive(Clone, Debug)]
pub struct Frame {
    pub p: PauliOperator,
    pub q: PauliOperator,
    pub pairs: Vec<(PauliOperator, PauliOperator)>,
}

impl Frame {
    /// Every operator of the unmeasured pairs, in pair order.
    #[must_use]
    pub fn logical_ops(&self) -> Vec<PauliOperator> {
        self.pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect()
    }
}

/// Multiplies `op` by base stabilizers and single-qubit ancilla
/// stabilizers of the same type so that it commutes with every check.
/// Interface and bridge qubits are tried first, then every ancilla qubit.
fn clean(merged: &MergedCode, op: &PauliOperator) -> Result<PauliOperator> {
    let n = merged.num_qubits;
    let base = &merged.base;
    let kinds: Vec<PauliKind> = match (op.xbits().is_zero(), op.zbits().is_zero()) {
        (true, false) => vec![PauliKind::Z],
        (false, true) => vec![PauliKind::X],
        _ => vec![PauliKind::X, PauliKind::Z],
    };
    let mut stabs: Vec<PauliOperator> = Vec::new();
    for &kind in &kinds {
        for r in base.checks(kind).row_vectors() {
            stabs.push(PauliOperator::pure(kind, r).extend(n));
        }
    }
    let mut interface: Vec<usize> = merged.systems.iter().flat_map(|s| s.cell_layer(1).iter().copied()).collect();
    if let Some(b) = &merged.bridge {
        interface.extend_from_slice(&b.qubits);
    }
    let everything: Vec<usize> = (merged.base_qubits()..n).collect();
    let b = BitVector::from_bools(&merged.checks.iter().map(|c| !op.commutes_with(c)).collect::<Vec<_>>());
    for qubits in [interface, everything] {
        let mut gens = stabs.clone();
        for &q in &qubits {
            let kind = merged.prep_kind(q).expect("ancilla qubit");
            if kinds.contains(&kind) {
                gens.push(PauliOperator::from_support(kind, n, &[q]));
            }
        }
        let mut a = BitMatrix::zeros(gens.len(), merged.checks.len());
        for (i, s) in gens.iter().enumerate() {
            for (j, c) in merged.checks.iter().enumerate() {
                if !s.commutes_with(c) {
                    a.set(i, j, true);
                }
            }
        }
        if let Some(coeff) = a.solve(&b) {
            let mut out = op.clone();
            for i in coeff.iter_ones() {
                out.mul_assign_unsigned(&gens[i]);
            }
            return Ok(out);
        }
    }
    Err(Error::Internal("logical cannot be cleaned off the ancilla checks".into()))
}

pub fn logical_frame(merged: &MergedCode) -> Result<Frame> {
    let n = merged.num_qubits;
    let nb = merged.base_qubits();
    let base_qubits: Vec<usize> = (0..nb).collect();
    let p = merged.measured_op.restrict(&base_qubits);
    let basis = logical_basis(&merged.base);
    let candidates: Vec<PauliOperator> = basis.xops.iter().chain(&basis.zops).cloned().collect();
    let q = candidates.iter().find(|c| !c.commutes_with(&p)).cloned().ok_or_else(|| Error::Internal("measured operator has no logical partner".into()))?;
    let mut ops = vec![p.clone(), q.clone()];
    ops.extend(basis.xops.iter().cloned());
    ops.extend(basis.zops.iter().cloned());
    let mut pairs = symplectic_gram_schmidt(ops);
    let (p0, q0) = pairs.remove(0);
    debug_assert_eq!(p0, p);
    let mut cleaned = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        cleaned.push((clean(merged, &a.extend(n))?, clean(merged, &b.extend(n))?));
    }
    Ok(Frame { p: p0.extend(n), q: q0.extend(n), pairs: cleaned })
}
