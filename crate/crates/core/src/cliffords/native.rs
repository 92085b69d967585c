//! Native logical measurements of the gross code: eight operators measured by
//! the ancilla system, each conjugated by the shift automorphisms.

use serde::Serialize;

use crate::code::{bb_automorphism, gross_code, gross_operators, gross_spec, logical_basis_with_leading, BBCodeSpec, CssCode, GrossOperators, LogicalBasis, Monomial};
use crate::error::Result;
use crate::pauli::{PauliKind, PauliOperator};

use super::{logical_action, LogicalPauli};

/// Logical qubit `(X̄, Z̄)` sacrificed to turn measurements into rotations.
pub const PIVOT: usize = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NativeKind {
    X,
    Z,
    Y,
    XPrime,
    ZPrime,
    YPrime,
    XXPrime,
    ZZPrime,
}

impl NativeKind {
    pub const ALL: [Self; 8] = [Self::X, Self::Z, Self::Y, Self::XPrime, Self::ZPrime, Self::YPrime, Self::XXPrime, Self::ZZPrime];

    /// Whether the operator lives on the primed block only.
    #[must_use]
    pub fn primed_only(self) -> bool {
        matches!(self, Self::XPrime | Self::ZPrime | Self::YPrime)
    }

    #[must_use]
    pub fn tag(self) -> &'static str {
        match self {
            Self::X => "X",
            Self::Z => "Z",
            Self::Y => "Y",
            Self::XPrime => "X'",
            Self::ZPrime => "Z'",
            Self::YPrime => "Y'",
            Self::XXPrime => "XX'",
            Self::ZZPrime => "ZZ'",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NativeOp {
    pub kind: NativeKind,
    /// Automorphism shift `x^i y^j` as `(i, j)`.
    pub shift: (usize, usize),
    pub word: LogicalPauli,
}

#[derive(Clone, Debug, Serialize)]
pub struct NativeSet {
    /// One entry per shift class and operator.
    pub measurements: Vec<NativeOp>,
    /// Indices into `measurements` of operators not confined to the primed block.
    pub useful: Vec<usize>,
    /// Indices of useful measurements supported on the pivot and elsewhere.
    pub pivot_supported: Vec<usize>,
    /// Distinct rotation words on the non-pivot qubits, in first-seen order.
    pub rotations: Vec<LogicalPauli>,
    /// Rotation index of each pivot-supported measurement.
    pub rotation_of: Vec<usize>,
    pub num_qubits: usize,
}

/// The eight physical operators shifted by `α`.
fn shifted(spec: &BBCodeSpec, ops: &GrossOperators, alpha: Monomial) -> [PauliOperator; 8] {
    let sh = |v: &[Monomial]| spec.shift(v, alpha);
    let x = spec.operator(PauliKind::X, &sh(&ops.p), &sh(&ops.q));
    let z = spec.operator(PauliKind::Z, &sh(&ops.r), &sh(&ops.s));
    let perm = bb_automorphism(spec, alpha);
    let permute = |op: &PauliOperator| {
        let mut out = PauliOperator::identity(op.num_qubits());
        let xs: Vec<usize> = op.xbits().iter_ones().map(|q| perm[q]).collect();
        let zs: Vec<usize> = op.zbits().iter_ones().map(|q| perm[q]).collect();
        out.mul_assign_unsigned(&PauliOperator::from_support(PauliKind::X, op.num_qubits(), &xs));
        out.mul_assign_unsigned(&PauliOperator::from_support(PauliKind::Z, op.num_qubits(), &zs));
        out
    };
    let xp = permute(&ops.xbar_dual);
    let zp = permute(&ops.zbar_dual);
    [x.clone(), z.clone(), x.mul(&z), xp.clone(), zp.clone(), xp.mul(&zp), x.mul(&xp), z.mul(&zp)]
}

fn basis(code: &CssCode, ops: &GrossOperators) -> Result<LogicalBasis> {
    logical_basis_with_leading(code, &ops.xbar, &ops.zbar)
}

/// Builds the 36 × 8 native measurements over shift representatives
/// `x^i y^j`, `i < 6`, `j < 6`, and the rotation subsets.
pub fn native_set() -> Result<NativeSet> {
    let spec = gross_spec();
    let code = gross_code();
    let ops = gross_operators();
    let basis = basis(&code, &ops)?;
    let m = basis.len();
    let mut measurements = Vec::with_capacity(288);
    for i in 0..6 {
        for j in 0..spec.m {
            let phys = shifted(&spec, &ops, Monomial(i, j));
            for (kind, op) in NativeKind::ALL.into_iter().zip(phys.iter()) {
                measurements.push(NativeOp { kind, shift: (i, j), word: logical_action(&code, op, &basis)? });
            }
        }
    }
    let useful: Vec<usize> = (0..measurements.len()).filter(|&i| !measurements[i].kind.primed_only()).collect();
    let mut pivot_supported = Vec::new();
    let mut rotations: Vec<LogicalPauli> = Vec::new();
    let mut rotation_of = Vec::new();
    for &i in &useful {
        let w = measurements[i].word;
        let rest = w.without_qubit(PIVOT);
        if w.on_qubit(PIVOT) != (false, false) && !rest.is_identity() {
            pivot_supported.push(i);
            let r = LogicalPauli::new(rest.x, rest.z);
            let pos = rotations.iter().position(|&q| q == r).unwrap_or_else(|| {
                rotations.push(r);
                rotations.len() - 1
            });
            rotation_of.push(pos);
        }
    }
    Ok(NativeSet { measurements, useful, pivot_supported, rotations, rotation_of, num_qubits: m })
}

/// Logical action of the shift `α` as the images of `X̄_0, …, Z̄_{m−1}`.
pub fn automorphism_action(alpha: Monomial) -> Result<Vec<u32>> {
    let spec = gross_spec();
    let code = gross_code();
    let ops = gross_operators();
    let basis = basis(&code, &ops)?;
    let perm = bb_automorphism(&spec, alpha);
    let m = basis.len();
    let mut out = Vec::with_capacity(2 * m);
    for op in basis.xops.iter().chain(&basis.zops) {
        let kind = if op.zbits().is_zero() { PauliKind::X } else { PauliKind::Z };
        let supp: Vec<usize> = op.part(kind).iter_ones().map(|q| perm[q]).collect();
        let image = PauliOperator::from_support(kind, code.n(), &supp);
        out.push(logical_action(&code, &image, &basis)?.word(m));
    }
    Ok(out)
}

/// Number of distinct logical actions among all shift automorphisms.
pub fn logical_automorphism_order() -> Result<usize> {
    let spec = gross_spec();
    let mut seen: Vec<Vec<u32>> = Vec::new();
    for a in spec.monomials() {
        let act = automorphism_action(a)?;
        if !seen.contains(&act) {
            seen.push(act);
        }
    }
    Ok(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stabilizers_and_basis_words() {
        let code = gross_code();
        let ops = gross_operators();
        let b = basis(&code, &ops).unwrap();
        assert!(b.xops[0] == ops.xbar && b.zops[0] == ops.zbar);
        let row = PauliOperator::pure(PauliKind::X, code.hx.row(3).clone());
        assert!(logical_action(&code, &row, &b).unwrap().is_identity());
        let w = logical_action(&code, &ops.xbar, &b).unwrap();
        assert_eq!((w.x, w.z), (1, 0));
    }

    #[test]
    fn x6_shift_is_logically_trivial() {
        let spec = gross_spec();
        let code = gross_code();
        let ops = gross_operators();
        let a = shifted(&spec, &ops, Monomial(0, 0));
        let b = shifted(&spec, &ops, Monomial(6, 0));
        for (p, q) in a.iter().zip(b.iter()) {
            assert!(code.is_stabilizer(&p.mul(q)));
        }
        assert_eq!(automorphism_action(Monomial(6, 0)).unwrap(), automorphism_action(Monomial(0, 0)).unwrap());
    }
}
