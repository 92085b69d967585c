//! On-disk bundles and count summaries of merged codes.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::code::io::save_matrix;
use crate::error::Result;
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::PauliKind;

use super::{BridgeSpec, CheckRole, MergedCode, MergedKind, QubitRole};

/// Qubit, check and degree counts by category.
#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub kind: MergedKind,
    pub base_qubits: usize,
    pub qubits: usize,
    pub ancilla_qubits: usize,
    pub checks: usize,
    pub gauge_checks: usize,
    pub bridge_qubits: usize,
    pub logicals: usize,
    pub layers: Vec<usize>,
    pub max_check_weight: usize,
    pub max_qubit_degree: usize,
    /// Count of checks per role label.
    pub check_roles: BTreeMap<String, usize>,
    /// Count of qubits per degree.
    pub qubit_degrees: BTreeMap<usize, usize>,
}

fn role_label(r: &CheckRole) -> String {
    match r {
        CheckRole::Original { kind, .. } => format!("original_{}", kind.letter()),
        CheckRole::Vertex { layer, .. } => format!("vertex_layer{layer}"),
        CheckRole::Cell { layer, .. } => format!("cell_layer{layer}"),
        CheckRole::Gauge { .. } => "gauge".into(),
        CheckRole::Mixed => "mixed".into(),
        CheckRole::Bridge(_) => "bridge_gauge".into(),
    }
}

#[must_use]
pub fn summarize(m: &MergedCode) -> Summary {
    let mut degree = vec![0usize; m.num_qubits];
    for c in &m.checks {
        for q in c.support() {
            degree[q] += 1;
        }
    }
    let mut check_roles = BTreeMap::new();
    for r in &m.roles {
        *check_roles.entry(role_label(r)).or_insert(0) += 1;
    }
    let mut qubit_degrees = BTreeMap::new();
    for &d in &degree {
        *qubit_degrees.entry(d).or_insert(0) += 1;
    }
    Summary {
        kind: m.kind,
        base_qubits: m.base_qubits(),
        qubits: m.num_qubits,
        ancilla_qubits: m.num_qubits - m.base_qubits(),
        checks: m.num_checks(),
        gauge_checks: m.gauge_check_ids().len(),
        bridge_qubits: m.bridge.as_ref().map_or(0, |b| b.b_count),
        logicals: m.num_logicals(),
        layers: m.systems.iter().map(|s| s.layers).collect(),
        max_check_weight: m.checks.iter().map(crate::pauli::PauliOperator::weight).max().unwrap_or(0),
        max_qubit_degree: degree.iter().copied().max().unwrap_or(0),
        check_roles,
        qubit_degrees,
    }
}

#[derive(Serialize)]
struct SystemMeta<'a> {
    kind: PauliKind,
    layers: usize,
    v0: &'a [usize],
    c0: &'a [usize],
    gauge_rows: Vec<Vec<usize>>,
    gauge_checks: &'a [Option<usize>],
    cell_qubits: &'a [Vec<usize>],
    vertex_qubits: &'a [Vec<usize>],
    vertex_checks: &'a [Vec<Option<usize>>],
    cell_checks: &'a [Vec<usize>],
}

#[derive(Serialize)]
struct Meta<'a> {
    kind: MergedKind,
    base: &'a str,
    blocks: &'a [usize],
    num_qubits: usize,
    measured_op: String,
    measure_checks: &'a [usize],
    systems: Vec<SystemMeta<'a>>,
    bridge: Option<&'a BridgeSpec>,
    bridge_rows: Vec<Vec<usize>>,
    qubits: &'a [QubitRole],
    checks: &'a [CheckRole],
    summary: Summary,
    extra: &'a serde_json::Value,
}

fn rows(m: &BitMatrix) -> Vec<Vec<usize>> {
    (0..m.rows()).map(|i| m.row_support(i)).collect()
}

/// Writes `checks_x.txt`, `checks_z.txt` (aligned x and z parts of every
/// check) and `meta.json` into `dir`. `extra` is embedded verbatim.
pub fn save_bundle(m: &MergedCode, dir: &Path, extra: &serde_json::Value) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let xs: Vec<BitVector> = m.checks.iter().map(|c| c.xbits().clone()).collect();
    let zs: Vec<BitVector> = m.checks.iter().map(|c| c.zbits().clone()).collect();
    save_matrix(&BitMatrix::from_rows(&xs, m.num_qubits)?, &dir.join("checks_x.txt"))?;
    save_matrix(&BitMatrix::from_rows(&zs, m.num_qubits)?, &dir.join("checks_z.txt"))?;
    let meta = Meta {
        kind: m.kind,
        base: &m.base.name,
        blocks: &m.blocks,
        num_qubits: m.num_qubits,
        measured_op: m.measured_op.to_sparse_string(),
        measure_checks: &m.measure_checks,
        systems: m
            .systems
            .iter()
            .map(|s| SystemMeta {
                kind: s.kind,
                layers: s.layers,
                v0: &s.graph.v0,
                c0: &s.graph.c0,
                gauge_rows: rows(&s.gauge),
                gauge_checks: &s.gauge_checks,
                cell_qubits: &s.cell_qubits,
                vertex_qubits: &s.vertex_qubits,
                vertex_checks: &s.vertex_checks,
                cell_checks: &s.cell_checks,
            })
            .collect(),
        bridge: m.bridge.as_ref(),
        bridge_rows: m.bridge.as_ref().map(|b| rows(&b.ub)).unwrap_or_default(),
        qubits: &m.qubits,
        checks: &m.roles,
        summary: summarize(m),
        extra,
    };
    let text = serde_json::to_string_pretty(&meta).map_err(|e| crate::error::Error::Internal(e.to_string()))?;
    std::fs::write(dir.join("meta.json"), text + "\n")?;
    Ok(())
}
