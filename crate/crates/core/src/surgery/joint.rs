//! Bridged systems: joint `X̄₁X̄₂` measurements, two-block adapters and Y systems.

use serde::Serialize;

use crate::code::CssCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::{PauliKind, PauliOperator};

use super::assemble::{all_vertex_checks, attach_system, Assembly};
use super::expansion::min_weight_solution;
use super::{BridgeSpec, CheckRole, MergedCode, MergedKind, QubitRole};

/// Nullspace dimension up to which lifts are minimized exhaustively.
const LIFT_BUDGET: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JointOptions {
    pub layers: (usize, usize),
    /// Odd layers the bridge attaches to; defaults to the last layers.
    pub attach: Option<(usize, usize)>,
}

impl JointOptions {
    #[must_use]
    pub fn mono_layer() -> Self {
        Self { layers: (1, 1), attach: None }
    }
}

/// Bridge wiring data: `t1·f1 = c_r·s1ᵀ` and `t2·f2 = c_r·s2ᵀ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BridgeWeights {
    #[serde(skip)]
    pub c_r: BitMatrix,
    #[serde(skip)]
    pub s1: BitMatrix,
    #[serde(skip)]
    pub s2: BitMatrix,
    #[serde(skip)]
    pub t1: BitMatrix,
    #[serde(skip)]
    pub t2: BitMatrix,
    pub max_row_weight: usize,
}

/// Connection matrix sending bridge qubit `b` to check `b`.
fn sorted_connection(checks: usize, b: usize) -> BitMatrix {
    let mut s = BitMatrix::zeros(checks, b);
    for i in 0..b {
        s.set(i, i, true);
    }
    s
}

/// Lifts of `e_i + e_j` through both graphs for every bridge pair, then a
/// minimum spanning tree over pair costs `|t1| + |t2|`.
fn pairwise_tree(f1: &BitMatrix, f2: &BitMatrix, s1: &BitMatrix, s2: &BitMatrix) -> Option<Vec<(usize, usize, BitVector, BitVector)>> {
    let b = s1.cols();
    let col_target = |s: &BitMatrix, i: usize, j: usize| s.column(i).xor(&s.column(j));
    let mut edges = Vec::new();
    for i in 0..b {
        for j in i + 1..b {
            let t1 = min_weight_solution(f1, &col_target(s1, i, j), LIFT_BUDGET)?;
            let t2 = min_weight_solution(f2, &col_target(s2, i, j), LIFT_BUDGET)?;
            edges.push((t1.weight() + t2.weight(), i, j, t1, t2));
        }
    }
    edges.sort_by_key(|e| (e.0, e.1, e.2));
    let mut parent: Vec<usize> = (0..b).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut tree = Vec::new();
    for (_, i, j, t1, t2) in edges {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
            tree.push((i, j, t1, t2));
        }
    }
    (tree.len() + 1 == b || b == 0).then_some(tree)
}

/// Bridge gauge rows for two induced graphs with `|B| = min(|V1|, |V2|)`.
/// Equal graphs reuse `f1`'s rows directly; otherwise pair rows are lifted and
/// joined by a spanning tree. Returns `None` when a row weight exceeds `cap`.
#[must_use]
pub fn solve_bridge_weights(f1: &BitMatrix, f2: &BitMatrix, cap: usize) -> Option<BridgeWeights> {
    let b = f1.cols().min(f2.cols());
    if b == 0 {
        return None;
    }
    let s1 = sorted_connection(f1.cols(), b);
    let s2 = sorted_connection(f2.cols(), b);
    let (c_r, t1, t2) = if f1 == f2 {
        let rows: Vec<BitVector> = crate::code::independent_rows(f1);
        let mut t = BitMatrix::zeros(rows.len(), f1.rows());
        for (k, r) in rows.iter().enumerate() {
            let i = (0..f1.rows()).find(|&i| &f1.row(i) == r).expect("row of f1");
            t.set(k, i, true);
        }
        (BitMatrix::from_rows(&rows, b).ok()?, t.clone(), t)
    } else {
        let tree = pairwise_tree(f1, f2, &s1, &s2)?;
        let mut c_r = BitMatrix::zeros(tree.len(), b);
        let mut t1 = BitMatrix::zeros(tree.len(), f1.rows());
        let mut t2 = BitMatrix::zeros(tree.len(), f2.rows());
        for (k, (i, j, a, c)) in tree.iter().enumerate() {
            c_r.set(k, *i, true);
            c_r.set(k, *j, true);
            t1.set_row(k, a);
            t2.set_row(k, c);
        }
        (c_r, t1, t2)
    };
    let max_row_weight = (0..c_r.rows()).map(|k| c_r.row_weight(k) + t1.row_weight(k) + t2.row_weight(k)).max().unwrap_or(0);
    if max_row_weight > cap {
        return None;
    }
    Some(BridgeWeights { c_r, s1, s2, t1, t2, max_row_weight })
}

fn joint(base: CssCode, blocks: Vec<usize>, op1: &PauliOperator, op2: &PauliOperator, opts: JointOptions, kind_label: MergedKind) -> Result<MergedCode> {
    let kind = crate::code::pure_kind(op1)?;
    if crate::code::pure_kind(op2)? != kind {
        return Err(Error::WrongType(kind.letter()));
    }
    if !op1.part(kind).and(op2.part(kind)).is_zero() {
        return Err(Error::NotDisjoint);
    }
    let (l1, l2) = opts.layers;
    let (j1, j2) = opts.attach.unwrap_or((l1, l2));
    if j1 % 2 == 0 || j2 % 2 == 0 || j1 > l1 || j2 > l2 {
        return Err(Error::Invalid(format!("attach layers ({j1}, {j2}) must be odd and within the systems")));
    }
    let mut asm = Assembly::from_base(&base);
    let (sys1, _) = attach_system(&mut asm, &base, op1, kind, l1, None, true, 0)?;
    let (sys2, _) = attach_system(&mut asm, &base, op2, kind, l2, None, true, 1)?;
    let (v1, v2) = (sys1.graph.v0.len(), sys2.graph.v0.len());
    let b = v1.min(v2);
    let s1 = sorted_connection(v1, b);
    let s2 = sorted_connection(v2, b);
    let tree = pairwise_tree(&sys1.graph.f, &sys2.graph.f, &s1, &s2).ok_or_else(|| Error::Internal("bridge lift has no solution".into()))?;
    let bridge_q = asm.add_qubits((0..b).map(QubitRole::Bridge));
    let other = kind.other();
    for (i, &q) in bridge_q.iter().enumerate() {
        let c1 = sys1.vertex_check_layer(j1)[i].expect("vertex check");
        let c2 = sys2.vertex_check_layer(j2)[i].expect("vertex check");
        asm.touch(c1, kind, q);
        asm.touch(c2, kind, q);
    }
    let mut ub = BitMatrix::zeros(tree.len(), b);
    let mut check_ids = Vec::new();
    for (k, (i, j, t1, t2)) in tree.iter().enumerate() {
        let id = asm.add_check(CheckRole::Bridge(k));
        for c in t1.iter_ones() {
            asm.touch(id, other, sys1.cell_layer(j1)[c]);
        }
        for c in t2.iter_ones() {
            asm.touch(id, other, sys2.cell_layer(j2)[c]);
        }
        asm.touch(id, other, bridge_q[*i]);
        asm.touch(id, other, bridge_q[*j]);
        ub.set(k, *i, true);
        ub.set(k, *j, true);
        check_ids.push(id);
    }
    let mut measure = all_vertex_checks(&sys1);
    measure.extend(all_vertex_checks(&sys2));
    let measured = op1.mul(op2);
    let bridge = BridgeSpec { b_count: b, qubits: bridge_q, s1, s2, ub, check_ids, attach_layers: (j1, j2), prep: other };
    asm.finish(kind_label, base, blocks, vec![sys1, sys2], Some(bridge), &measured, measure, Vec::new())
}

/// Joint measurement of two disjoint same-type logicals of one code.
pub fn build_xx_system(code: &CssCode, op1: &PauliOperator, op2: &PauliOperator, opts: JointOptions) -> Result<MergedCode> {
    joint(code.clone(), vec![code.n()], op1, op2, opts, MergedKind::XX)
}

/// Joint measurement of same-type logicals living in two different code blocks.
pub fn build_adapter(code1: &CssCode, op1: &PauliOperator, code2: &CssCode, op2: &PauliOperator, opts: JointOptions) -> Result<MergedCode> {
    let base = code1.direct_sum(code2);
    let n = base.n();
    let a = op1.extend(n);
    let mut perm: Vec<usize> = (0..code2.n()).map(|q| q + code1.n()).collect();
    perm.extend(0..code1.n());
    let b = op2.extend(n).permute(&perm);
    joint(base, vec![code1.n(), code2.n()], &a, &b, opts, MergedKind::Adapter)
}

/// Y system for an X logical and a Z logical overlapping on exactly one qubit.
pub fn build_y_system(code: &CssCode, xbar: &PauliOperator, zbar: &PauliOperator, lx: usize, lz: usize) -> Result<MergedCode> {
    let shared = xbar.xbits().and(zbar.zbits());
    if shared.weight() != 1 || !xbar.is_pure(PauliKind::X) || !zbar.is_pure(PauliKind::Z) {
        return Err(Error::Overlap(shared.weight()));
    }
    let q0 = shared.ones_indices()[0];
    let mut asm = Assembly::from_base(code);
    let (mut sx, _) = attach_system(&mut asm, code, xbar, PauliKind::X, lx, None, true, 0)?;
    let (mut sz, _) = attach_system(&mut asm, code, zbar, PauliKind::Z, lz, None, true, 1)?;
    let ax = sx.graph.v0.iter().position(|&q| q == q0).expect("q0 in X support");
    let az = sz.graph.v0.iter().position(|&q| q == q0).expect("q0 in Z support");
    let cx = sx.vertex_checks[0][ax].expect("vertex check");
    let cz = sz.vertex_checks[0][az].expect("vertex check");
    let zpart = std::mem::take(&mut asm.z[cz]);
    asm.x[cz].clear();
    asm.z[cx] = zpart;
    asm.roles[cx] = CheckRole::Mixed;
    asm.removed.push(cz);
    sz.vertex_checks[0][az] = None;

    let xs: Vec<usize> = (0..sx.graph.v0.len()).filter(|&a| a != ax).collect();
    let zs: Vec<usize> = (0..sz.graph.v0.len()).filter(|&a| a != az).collect();
    let b = xs.len().min(zs.len());
    let bridge_q = asm.add_qubits((0..b).map(QubitRole::Bridge));
    let mut s1 = BitMatrix::zeros(sx.graph.v0.len(), b);
    let mut s2 = BitMatrix::zeros(sz.graph.v0.len(), b);
    let mut check_ids = Vec::new();
    let nvx = sx.graph.v0.len();
    let nvz = sz.graph.v0.len();
    for i in 0..b {
        let (a1, a2) = (xs[i], zs[i]);
        s1.set(a1, i, true);
        s2.set(a2, i, true);
        asm.touch(sx.vertex_checks[0][a1].expect("vertex check"), PauliKind::Z, bridge_q[i]);
        asm.touch(sz.vertex_checks[0][a2].expect("vertex check"), PauliKind::Z, bridge_q[i]);
        let vz = min_weight_solution(&sx.graph.f, &BitVector::from_indices(nvx, &[a1, ax]), LIFT_BUDGET).ok_or_else(|| Error::Internal("Y bridge lift (X side)".into()))?;
        let vx = min_weight_solution(&sz.graph.f, &BitVector::from_indices(nvz, &[a2, az]), LIFT_BUDGET).ok_or_else(|| Error::Internal("Y bridge lift (Z side)".into()))?;
        let id = asm.add_check(CheckRole::Bridge(i));
        asm.touch(id, PauliKind::X, bridge_q[i]);
        for c in vz.iter_ones() {
            asm.touch(id, PauliKind::Z, sx.cell_layer(1)[c]);
        }
        for c in vx.iter_ones() {
            asm.touch(id, PauliKind::X, sz.cell_layer(1)[c]);
        }
        check_ids.push(id);
    }
    let mut measure = all_vertex_checks(&sx);
    measure.extend(all_vertex_checks(&sz));
    let measured = xbar.mul(zbar);
    let bridge = BridgeSpec { b_count: b, qubits: bridge_q, s1, s2, ub: BitMatrix::identity(b), check_ids, attach_layers: (1, 1), prep: PauliKind::X };
    sx.op = xbar.clone();
    asm.finish(MergedKind::Y, code.clone(), vec![code.n()], vec![sx, sz], Some(bridge), &measured, measure, Vec::new())
}
