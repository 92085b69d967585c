//! Gauge-fixed ancilla systems fused onto a base code.
//!
//! An ancilla system for a pure logical `P` of type `K` has odd `L` layers.
//! Odd layers `j` carry `K`-type checks `V_j` (one per qubit of `supp P`) and
//! qubits `C_j` (one per opposite-type check touching `supp P`); even layers
//! carry qubits `V_j` and opposite-type checks `C_j`. Gauge checks `U_L` act
//! on the last layer. The product of all `V_j` checks is `P`.
//!
//! Joint systems add bridge qubits between two systems, and the Y system
//! replaces the two first-layer checks on the shared qubit by one mixed check.

mod assemble;
mod bundle;
pub mod expansion;
mod frame;
mod joint;
mod redundancy;

use serde::Serialize;

use crate::code::{CssCode, InducedGraph};
use crate::error::Result;
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::{PauliKind, PauliOperator};

pub use assemble::{build_system_with_gauge, build_x_system, build_z_system};
pub use bundle::{save_bundle, summarize, Summary};
pub use frame::{logical_frame, Frame};
pub use expansion::{boundary_cheeger, gauge_basis, min_layers, Cheeger, Ratio};
pub use joint::{build_adapter, build_xx_system, build_y_system, solve_bridge_weights, BridgeWeights, JointOptions};
pub use redundancy::{cellulate, prune_redundant_gauge_checks, Cellulation, GaugeReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MergedKind {
    X,
    Z,
    XX,
    Y,
    Adapter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QubitRole {
    Original(usize),
    /// Qubit of `C_layer` (odd layer) indexed by position in `c0`.
    Cell { system: usize, layer: usize, index: usize },
    /// Qubit of `V_layer` (even layer) indexed by position in `v0`.
    Vertex { system: usize, layer: usize, index: usize },
    Bridge(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckRole {
    Original { kind: PauliKind, index: usize },
    Vertex { system: usize, layer: usize, index: usize },
    Cell { system: usize, layer: usize, index: usize },
    Gauge { system: usize, index: usize },
    /// First-layer check on the shared qubit of a Y system.
    Mixed,
    Bridge(usize),
}

/// One ancilla system and where its pieces live in the merged code.
#[derive(Clone, Debug, Serialize)]
pub struct AncillaSystem {
    /// Type of the measured operator.
    pub kind: PauliKind,
    #[serde(skip)]
    pub op: PauliOperator,
    pub graph: InducedGraph,
    pub layers: usize,
    #[serde(skip)]
    pub gauge: BitMatrix,
    pub gauge_fixed: bool,
    /// Qubit ids of `C_1, C_3, …, C_L`.
    pub cell_qubits: Vec<Vec<usize>>,
    /// Qubit ids of `V_2, V_4, …, V_{L−1}`.
    pub vertex_qubits: Vec<Vec<usize>>,
    /// Check ids of `V_1, V_3, …, V_L`; `None` where a check was merged away.
    pub vertex_checks: Vec<Vec<Option<usize>>>,
    /// Check ids of `C_2, C_4, …, C_{L−1}`.
    pub cell_checks: Vec<Vec<usize>>,
    /// Check id per gauge row; `None` once pruned.
    pub gauge_checks: Vec<Option<usize>>,
}

impl AncillaSystem {
    /// Qubit ids of `C_j` for odd `j`.
    #[must_use]
    pub fn cell_layer(&self, j: usize) -> &[usize] {
        &self.cell_qubits[(j - 1) / 2]
    }

    /// Qubit ids of `V_i` for even `i ≥ 2`.
    #[must_use]
    pub fn vertex_layer(&self, i: usize) -> &[usize] {
        &self.vertex_qubits[i / 2 - 1]
    }

    /// Check ids of `V_j` for odd `j`.
    #[must_use]
    pub fn vertex_check_layer(&self, j: usize) -> &[Option<usize>] {
        &self.vertex_checks[(j - 1) / 2]
    }

    #[must_use]
    pub fn ancilla_count(&self) -> usize {
        self.cell_qubits.iter().chain(&self.vertex_qubits).map(Vec::len).sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BridgeSpec {
    pub b_count: usize,
    pub qubits: Vec<usize>,
    /// Rows: first-system checks of the attach layer; columns: bridge qubits.
    #[serde(skip)]
    pub s1: BitMatrix,
    #[serde(skip)]
    pub s2: BitMatrix,
    /// Bridge-qubit restriction of the bridge gauge checks.
    #[serde(skip)]
    pub ub: BitMatrix,
    pub check_ids: Vec<usize>,
    pub attach_layers: (usize, usize),
    /// Basis in which bridge qubits are prepared and read out.
    pub prep: PauliKind,
}

#[derive(Clone, Debug)]
pub struct MergedCode {
    pub kind: MergedKind,
    /// The base code; a direct sum for adapters.
    pub base: CssCode,
    /// Qubit counts of the base blocks.
    pub blocks: Vec<usize>,
    pub num_qubits: usize,
    pub qubits: Vec<QubitRole>,
    pub checks: Vec<PauliOperator>,
    pub roles: Vec<CheckRole>,
    pub systems: Vec<AncillaSystem>,
    pub bridge: Option<BridgeSpec>,
    pub measured_op: PauliOperator,
    /// Checks whose product is `measured_op` up to phase.
    pub measure_checks: Vec<usize>,
    /// Gauge generators left unfixed; nonempty only without gauge fixing.
    pub gauge_ops: Vec<PauliOperator>,
}

impl MergedCode {
    #[must_use]
    pub fn base_qubits(&self) -> usize {
        self.base.n()
    }

    #[must_use]
    pub fn num_checks(&self) -> usize {
        self.checks.len()
    }

    #[must_use]
    pub fn layers(&self) -> usize {
        self.systems.iter().map(|s| s.layers).max().unwrap_or(0)
    }

    #[must_use]
    pub fn is_css(&self) -> bool {
        self.checks.iter().all(|c| c.xbits().is_zero() || c.zbits().is_zero())
    }

    /// Type of a pure check, `None` for mixed checks.
    #[must_use]
    pub fn check_kind(&self, id: usize) -> Option<PauliKind> {
        let c = &self.checks[id];
        if c.zbits().is_zero() {
            Some(PauliKind::X)
        } else if c.xbits().is_zero() {
            Some(PauliKind::Z)
        } else {
            None
        }
    }

    /// Ids of checks of pure type `kind`.
    #[must_use]
    pub fn checks_of(&self, kind: PauliKind) -> Vec<usize> {
        (0..self.checks.len()).filter(|&i| self.check_kind(i) == Some(kind)).collect()
    }

    /// The `kind` parts of the pure `kind` checks.
    #[must_use]
    pub fn check_matrix(&self, kind: PauliKind) -> BitMatrix {
        let rows: Vec<BitVector> = self.checks_of(kind).into_iter().map(|i| self.checks[i].part(kind).clone()).collect();
        BitMatrix::from_rows(&rows, self.num_qubits).expect("rows span all qubits")
    }

    /// Rows `[x | z]` of every check.
    #[must_use]
    pub fn symplectic_matrix(&self) -> BitMatrix {
        let rows: Vec<BitVector> = self.checks.iter().map(PauliOperator::symplectic).collect();
        BitMatrix::from_rows(&rows, 2 * self.num_qubits).expect("symplectic rows")
    }

    /// Anticommuting check pairs.
    #[must_use]
    pub fn violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.checks.len() {
            for j in i + 1..self.checks.len() {
                if !self.checks[i].commutes_with(&self.checks[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<(usize, usize)>> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }

    /// Logical qubits of the stabilizer group generated by the checks.
    #[must_use]
    pub fn num_logicals(&self) -> usize {
        self.num_qubits - self.symplectic_matrix().rank()
    }

    /// Ids of gauge checks (system gauges and bridge gauges).
    #[must_use]
    pub fn gauge_check_ids(&self) -> Vec<usize> {
        (0..self.roles.len()).filter(|&i| matches!(self.roles[i], CheckRole::Gauge { .. } | CheckRole::Bridge(_))).collect()
    }

    /// Basis an ancilla qubit is prepared in, `None` for base qubits.
    #[must_use]
    pub fn prep_kind(&self, q: usize) -> Option<PauliKind> {
        match self.qubits[q] {
            QubitRole::Original(_) => None,
            QubitRole::Cell { system, .. } | QubitRole::Vertex { system, .. } => Some(self.systems[system].kind.other()),
            QubitRole::Bridge(_) => self.bridge.as_ref().map(|b| b.prep),
        }
    }

    /// Product of the `measure_checks`, ignoring phase.
    #[must_use]
    pub fn product_of_measure_checks(&self) -> PauliOperator {
        let mut acc = PauliOperator::identity(self.num_qubits);
        for &i in &self.measure_checks {
            acc.mul_assign_unsigned(&self.checks[i]);
        }
        acc
    }

    /// Drops the given checks, remapping every stored check id.
    pub(crate) fn without_checks(&self, drop: &[usize]) -> Self {
        let mut map = vec![None; self.checks.len()];
        let mut next = 0;
        for (i, m) in map.iter_mut().enumerate() {
            if !drop.contains(&i) {
                *m = Some(next);
                next += 1;
            }
        }
        let remap = |id: usize| map[id];
        let mut out = self.clone();
        out.checks = (0..self.checks.len()).filter(|i| map[*i].is_some()).map(|i| self.checks[i].clone()).collect();
        out.roles = (0..self.roles.len()).filter(|i| map[*i].is_some()).map(|i| self.roles[i]).collect();
        for s in &mut out.systems {
            for layer in &mut s.vertex_checks {
                for c in layer.iter_mut() {
                    *c = c.and_then(remap);
                }
            }
            for layer in &mut s.cell_checks {
                for c in layer.iter_mut() {
                    *c = remap(*c).expect("cell checks are never dropped");
                }
            }
            for g in &mut s.gauge_checks {
                *g = g.and_then(remap);
            }
        }
        if let Some(b) = &mut out.bridge {
            b.check_ids = b.check_ids.iter().filter_map(|&c| remap(c)).collect();
        }
        out.measure_checks = self.measure_checks.iter().filter_map(|&c| remap(c)).collect();
        out
    }
}

pub(crate) fn ensure_valid(m: &MergedCode) -> Result<()> {
    if let Err(v) = m.validate() {
        return Err(crate::error::Error::Internal(format!("merged checks anticommute: {:?}", &v[..v.len().min(5)])));
    }
    Ok(())
}
