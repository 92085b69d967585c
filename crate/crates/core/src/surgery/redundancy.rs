//! Dropping gauge checks already generated by other checks, and splitting heavy
//! gauge checks by cellulation.

use serde::Serialize;

use crate::code::{induced_graph, pure_kind, CssCode, InducedGraph};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, EchelonBasis};
use crate::pauli::PauliOperator;

use super::{CheckRole, MergedCode};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GaugeReport {
    /// `(system, gauge row)` pairs still measured.
    pub kept: Vec<(usize, usize)>,
    pub removed: Vec<(usize, usize)>,
}

fn rank_of(checks: &[PauliOperator], skip: &[usize], n: usize) -> usize {
    let mut span = EchelonBasis::new(2 * n);
    let mut r = 0;
    for (i, c) in checks.iter().enumerate() {
        if !skip.contains(&i) && span.insert(&c.symplectic()) {
            r += 1;
        }
    }
    r
}

/// Removes, one at a time in system/row order, each system gauge check whose
/// removal leaves the stabilizer rank unchanged.
#[must_use]
pub fn prune_redundant_gauge_checks(merged: &MergedCode) -> (MergedCode, GaugeReport) {
    let n = merged.num_qubits;
    let full = rank_of(&merged.checks, &[], n);
    let mut dropped: Vec<usize> = Vec::new();
    let mut report = GaugeReport::default();
    for (id, role) in merged.roles.iter().enumerate() {
        let CheckRole::Gauge { system, index } = *role else { continue };
        dropped.push(id);
        if rank_of(&merged.checks, &dropped, n) == full {
            report.removed.push((system, index));
        } else {
            dropped.pop();
            report.kept.push((system, index));
        }
    }
    (merged.without_checks(&dropped), report)
}

#[derive(Clone, Debug)]
pub struct Cellulation {
    /// The base code with the extra redundant row appended to the
    /// opposite-type checks.
    pub code: CssCode,
    pub graph: InducedGraph,
    /// The two pieces over the new `c0`; the new row is the last column.
    pub pieces: (BitVector, BitVector),
    /// A full gauge basis over the new `c0` containing both pieces.
    pub gauge: BitMatrix,
}

/// Splits the gauge vector `gauge` (over the `c0` of `op`) along `subset`, a
/// nonempty proper subset of its support, by appending the product of the
/// checks in `subset` as a new redundant check.
pub fn cellulate(code: &CssCode, op: &PauliOperator, gauge: &BitVector, subset: &[usize]) -> Result<Cellulation> {
    let kind = pure_kind(op)?;
    let graph = induced_graph(code, op, kind)?;
    let nc = graph.c0.len();
    if gauge.len() != nc || !graph.f.left_mul(gauge).is_zero() || gauge.is_zero() {
        return Err(Error::Invalid("not a gauge vector of the induced graph".into()));
    }
    let support = gauge.ones_indices();
    if subset.is_empty() || subset.len() >= support.len() || subset.iter().any(|i| !support.contains(i)) {
        return Err(Error::Invalid("subset must be a nonempty proper subset of the gauge support".into()));
    }
    let opposite = code.checks(kind.other());
    let mut extra = BitVector::zeros(code.n());
    for &i in subset {
        extra.xor_assign(&opposite.row(graph.c0[i]));
    }
    if extra.and(op.part(kind)).is_zero() {
        return Err(Error::Invalid("subset product does not touch the operator support".into()));
    }
    let mut rows = opposite.clone();
    rows.push_row(&extra);
    let new_code = match kind.other() {
        crate::pauli::PauliKind::Z => CssCode::new(code.hx.clone(), rows, format!("{}+cell", code.name))?,
        crate::pauli::PauliKind::X => CssCode::new(rows, code.hz.clone(), format!("{}+cell", code.name))?,
    };
    let new_graph = induced_graph(&new_code, op, kind)?;
    debug_assert_eq!(new_graph.c0.len(), nc + 1);
    let mut p1 = BitVector::zeros(nc + 1);
    for &i in subset {
        p1.set(i, true);
    }
    p1.set(nc, true);
    let mut p2 = BitVector::zeros(nc + 1);
    for &i in &support {
        if !subset.contains(&i) {
            p2.set(i, true);
        }
    }
    p2.set(nc, true);
    let mut span = EchelonBasis::new(nc + 1);
    let mut basis = Vec::new();
    let padded = super::expansion::gauge_basis(&graph.f).row_vectors().map(|r| r.concat(&BitVector::zeros(1))).collect::<Vec<_>>();
    for v in [p1.clone(), p2.clone()].into_iter().chain(padded) {
        if span.insert(&v) {
            basis.push(v);
        }
    }
    let gauge = BitMatrix::from_rows(&basis, nc + 1)?;
    debug_assert!(gauge.matmul(&new_graph.f)?.is_zero());
    Ok(Cellulation { code: new_code, graph: new_graph, pieces: (p1, p2), gauge })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{circulant, hgp, hgp_logical_basis};
    use crate::surgery::{build_system_with_gauge, build_x_system};

    #[test]
    fn toric_gauge_is_redundant() {
        let h = circulant(3);
        let code = hgp(&h);
        let x = hgp_logical_basis(&h).xops[0].clone();
        let m = build_x_system(&code, &x, 1, true).unwrap();
        let (p, rep) = prune_redundant_gauge_checks(&m);
        assert_eq!(rep.removed.len(), 1);
        assert!(rep.kept.is_empty());
        assert_eq!(p.num_logicals(), m.num_logicals());
        assert!(p.gauge_check_ids().is_empty());
    }

    #[test]
    fn toric_cellulation() {
        let h = circulant(3);
        let code = hgp(&h);
        let x = hgp_logical_basis(&h).xops[0].clone();
        let c = BitVector::ones(3);
        let cell = cellulate(&code, &x, &c, &[0]).unwrap();
        assert_eq!(cell.code.hz.rank(), code.hz.rank());
        assert_eq!(cell.pieces.0.weight(), 2);
        assert_eq!(cell.pieces.1.weight(), 3);
        let m = build_system_with_gauge(&cell.code, &x, 1, cell.gauge.clone()).unwrap();
        assert_eq!(m.num_logicals(), code.num_logicals() - 1);
        assert!(cellulate(&code, &x, &c, &[0, 1, 2]).is_err());
        assert!(cellulate(&code, &x, &c, &[]).is_err());
    }
}
