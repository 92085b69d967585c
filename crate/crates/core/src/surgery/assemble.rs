use crate::code::{induced_graph, is_irreducible, pure_kind, CssCode};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::{PauliKind, PauliOperator};

use super::expansion::gauge_basis;
use super::{ensure_valid, AncillaSystem, CheckRole, MergedCode, MergedKind, QubitRole};

/// Sparse check rows accumulated while wiring systems together.
pub(crate) struct Assembly {
    pub qubits: Vec<QubitRole>,
    pub x: Vec<Vec<usize>>,
    pub z: Vec<Vec<usize>>,
    pub roles: Vec<CheckRole>,
    pub removed: Vec<usize>,
    mx: usize,
}

impl Assembly {
    pub fn from_base(code: &CssCode) -> Self {
        let mut a = Self { qubits: (0..code.n()).map(QubitRole::Original).collect(), x: Vec::new(), z: Vec::new(), roles: Vec::new(), removed: Vec::new(), mx: code.hx.rows() };
        for (kind, m) in [(PauliKind::X, &code.hx), (PauliKind::Z, &code.hz)] {
            for i in 0..m.rows() {
                let id = a.add_check(CheckRole::Original { kind, index: i });
                for q in m.row_support(i) {
                    a.touch(id, kind, q);
                }
            }
        }
        a
    }

    pub fn original_check(&self, kind: PauliKind, index: usize) -> usize {
        match kind {
            PauliKind::X => index,
            PauliKind::Z => self.mx + index,
        }
    }

    pub fn add_qubits(&mut self, roles: impl IntoIterator<Item = QubitRole>) -> Vec<usize> {
        roles
            .into_iter()
            .map(|r| {
                self.qubits.push(r);
                self.qubits.len() - 1
            })
            .collect()
    }

    pub fn add_check(&mut self, role: CheckRole) -> usize {
        self.x.push(Vec::new());
        self.z.push(Vec::new());
        self.roles.push(role);
        self.roles.len() - 1
    }

    pub fn touch(&mut self, check: usize, kind: PauliKind, qubit: usize) {
        match kind {
            PauliKind::X => self.x[check].push(qubit),
            PauliKind::Z => self.z[check].push(qubit),
        }
    }

    pub fn op(&self, check: usize) -> PauliOperator {
        let n = self.qubits.len();
        let mut x = BitVector::zeros(n);
        let mut z = BitVector::zeros(n);
        for &q in &self.x[check] {
            x.flip(q);
        }
        for &q in &self.z[check] {
            z.flip(q);
        }
        PauliOperator::new(x, z)
    }

    /// Materializes the checks; removed checks are dropped and ids remapped
    /// by the caller via [`MergedCode::without_checks`].
    pub fn finish(self, kind: MergedKind, base: CssCode, blocks: Vec<usize>, systems: Vec<AncillaSystem>, bridge: Option<super::BridgeSpec>, measured: &PauliOperator, measure_checks: Vec<usize>, gauge_ops: Vec<PauliOperator>) -> Result<MergedCode> {
        let n = self.qubits.len();
        let checks: Vec<PauliOperator> = (0..self.roles.len()).map(|i| self.op(i)).collect();
        let gauge_ops = gauge_ops.into_iter().map(|g| g.extend(n)).collect();
        let merged = MergedCode {
            kind,
            base,
            blocks,
            num_qubits: n,
            qubits: self.qubits,
            checks,
            roles: self.roles,
            systems,
            bridge,
            measured_op: measured.extend(n),
            measure_checks,
            gauge_ops,
        };
        let merged = if self.removed.is_empty() { merged } else { merged.without_checks(&self.removed) };
        ensure_valid(&merged)?;
        Ok(merged)
    }
}

/// Wires one ancilla system for the pure `kind` operator `op` of `base` into
/// the assembly. `gauge` rows are vectors over the system's `c0`.
pub(crate) fn attach_system(asm: &mut Assembly, base: &CssCode, op: &PauliOperator, kind: PauliKind, layers: usize, gauge: Option<BitMatrix>, gauge_fix: bool, system: usize) -> Result<(AncillaSystem, Vec<PauliOperator>)> {
    if layers % 2 == 0 {
        return Err(Error::EvenLayers(layers));
    }
    if pure_kind(op)? != kind {
        return Err(Error::WrongType(kind.letter()));
    }
    let graph = induced_graph(base, op, kind)?;
    if !is_irreducible(base, op)? {
        return Err(Error::Reducible { nullity: graph.f.kernel().rows() });
    }
    let gauge = match gauge {
        Some(g) => {
            if !g.matmul(&graph.f)?.is_zero() {
                return Err(Error::Invalid("gauge rows are not in the left nullspace of the induced graph".into()));
            }
            g
        }
        None => gauge_basis(&graph.f),
    };
    let other = kind.other();
    let f = &graph.f;
    let (nc, nv) = f.shape();
    let mut cell_qubits = Vec::new();
    let mut vertex_qubits = Vec::new();
    for j in 1..=layers {
        if j % 2 == 1 {
            cell_qubits.push(asm.add_qubits((0..nc).map(|index| QubitRole::Cell { system, layer: j, index })));
        } else {
            vertex_qubits.push(asm.add_qubits((0..nv).map(|index| QubitRole::Vertex { system, layer: j, index })));
        }
    }
    for (c, &row) in graph.c0.iter().enumerate() {
        let id = asm.original_check(other, row);
        asm.touch(id, other, cell_qubits[0][c]);
    }
    let mut vertex_checks = Vec::new();
    let mut cell_checks = Vec::new();
    for j in 1..=layers {
        if j % 2 == 1 {
            let cells = &cell_qubits[(j - 1) / 2];
            let mut ids = Vec::with_capacity(nv);
            for a in 0..nv {
                let id = asm.add_check(CheckRole::Vertex { system, layer: j, index: a });
                let below = if j == 1 { graph.v0[a] } else { vertex_qubits[(j - 1) / 2 - 1][a] };
                asm.touch(id, kind, below);
                if j < layers {
                    asm.touch(id, kind, vertex_qubits[j.div_ceil(2) - 1][a]);
                }
                for c in 0..nc {
                    if f.get(c, a) {
                        asm.touch(id, kind, cells[c]);
                    }
                }
                ids.push(Some(id));
            }
            vertex_checks.push(ids);
        } else {
            let verts = &vertex_qubits[j / 2 - 1];
            let mut ids = Vec::with_capacity(nc);
            for c in 0..nc {
                let id = asm.add_check(CheckRole::Cell { system, layer: j, index: c });
                asm.touch(id, other, cell_qubits[(j - 1) / 2][c]);
                asm.touch(id, other, cell_qubits[j.div_ceil(2)][c]);
                for a in 0..nv {
                    if f.get(c, a) {
                        asm.touch(id, other, verts[a]);
                    }
                }
                ids.push(id);
            }
            cell_checks.push(ids);
        }
    }
    let last = cell_qubits.last().expect("at least one layer").clone();
    let mut gauge_checks = Vec::new();
    let mut unfixed = Vec::new();
    for (index, g) in gauge.row_vectors().enumerate() {
        let support: Vec<usize> = g.iter_ones().map(|c| last[c]).collect();
        if gauge_fix {
            let id = asm.add_check(CheckRole::Gauge { system, index });
            for q in support {
                asm.touch(id, other, q);
            }
            gauge_checks.push(Some(id));
        } else {
            let n = asm.qubits.len();
            unfixed.push(PauliOperator::from_support(other, n, &support));
            gauge_checks.push(None);
        }
    }
    let sys = AncillaSystem { kind, op: op.clone(), graph, layers, gauge, gauge_fixed: gauge_fix, cell_qubits, vertex_qubits, vertex_checks, cell_checks, gauge_checks };
    Ok((sys, unfixed))
}

pub(crate) fn all_vertex_checks(s: &AncillaSystem) -> Vec<usize> {
    s.vertex_checks.iter().flatten().filter_map(|c| *c).collect()
}

fn build_single(code: &CssCode, op: &PauliOperator, kind: PauliKind, layers: usize, gauge_fix: bool, gauge: Option<BitMatrix>) -> Result<MergedCode> {
    let mut asm = Assembly::from_base(code);
    let (sys, unfixed) = attach_system(&mut asm, code, op, kind, layers, gauge, gauge_fix, 0)?;
    let measure = all_vertex_checks(&sys);
    let mk = match kind {
        PauliKind::X => MergedKind::X,
        PauliKind::Z => MergedKind::Z,
    };
    asm.finish(mk, code.clone(), vec![code.n()], vec![sys], None, op, measure, unfixed)
}

/// Ancilla system measuring the pure X logical `xbar` with `layers` odd layers.
/// Without gauge fixing the gauge generators are kept in `gauge_ops`.
pub fn build_x_system(code: &CssCode, xbar: &PauliOperator, layers: usize, gauge_fix: bool) -> Result<MergedCode> {
    build_single(code, xbar, PauliKind::X, layers, gauge_fix, None)
}

/// Ancilla system measuring the pure Z logical `zbar`.
pub fn build_z_system(code: &CssCode, zbar: &PauliOperator, layers: usize, gauge_fix: bool) -> Result<MergedCode> {
    build_single(code, zbar, PauliKind::Z, layers, gauge_fix, None)
}

/// A gauge-fixed system with caller-supplied gauge rows over `c0`.
pub fn build_system_with_gauge(code: &CssCode, op: &PauliOperator, layers: usize, gauge: BitMatrix) -> Result<MergedCode> {
    build_single(code, op, pure_kind(op)?, layers, true, Some(gauge))
}
