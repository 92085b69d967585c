//! Measurement schedule, detectors and phenomenological error mechanisms.
//!
//! Round 0 measures the base code, the module stabilizers and reads the
//! prepared single-qubit states; rounds `1..=R` measure every merged check;
//! round `R+1` repeats round 0. Both boundary rounds are ideal: the state
//! before the merge is taken to be a code state, and the final round closes
//! the time boundary. Only merged rounds carry measurement errors.
//!
//! Detector step `t` compares rounds `t` and `t+1`. A qubit error in slot `s`
//! happens between rounds `s−1` and `s`.

mod sample;
mod text;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, EchelonBasis, Solver};
use crate::pauli::{PauliKind, PauliOperator};
use crate::surgery::{logical_frame, CheckRole, MergedCode, MergedKind};

pub use sample::{inject, sample, NoiseModel, Shot};
pub use text::{emit_circuit_text, parse_circuit_annotations, CircuitAnnotations};

/// How ancilla qubits start out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InitMode {
    /// Module layers start in their stabilizer state; only the interface and
    /// bridge qubits are prepared individually. Falls back to [`InitMode::AllZero`]
    /// for bridged systems.
    Module,
    /// Every ancilla qubit is prepared in its own basis.
    AllZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OutcomeSource {
    Base { kind: PauliKind, index: usize },
    Merged(usize),
    /// Module part of a merged check.
    Module(usize),
    Single { qubit: usize, kind: PauliKind },
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub op: PauliOperator,
    pub source: OutcomeSource,
    pub noisy: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Round {
    pub outcomes: Vec<Outcome>,
}

/// Which errors a detector can see.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sector {
    /// X-type parities, flipped by Z errors.
    X,
    Z,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DetectorLabel {
    /// Compares base-code checks only.
    Base,
    /// Compares copies of one first-kind ancilla check.
    Vertex { system: usize, layer: usize, index: usize },
    Other,
}

#[derive(Clone, Debug)]
pub struct Detector {
    pub step: usize,
    /// `(round, outcome)` terms.
    pub terms: Vec<(usize, usize)>,
    pub sector: Sector,
    pub label: DetectorLabel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MechanismKind {
    Qubit { qubit: usize, slot: usize, pauli: PauliKind },
    Measurement { round: usize, outcome: usize },
}

#[derive(Clone, Debug)]
pub struct Mechanism {
    pub kind: MechanismKind,
    pub detectors: Vec<usize>,
    pub observable: bool,
    /// Bit `j` set when logical operator `j` is flipped.
    pub logicals: u64,
}

impl Mechanism {
    #[must_use]
    pub fn is_measurement(&self) -> bool {
        matches!(self.kind, MechanismKind::Measurement { .. })
    }
}

#[derive(Clone, Debug)]
pub struct DetectorGraph {
    pub kind: MergedKind,
    pub num_qubits: usize,
    pub rounds_r: usize,
    pub init: InitMode,
    pub rounds: Vec<Round>,
    pub detectors: Vec<Detector>,
    pub mechanisms: Vec<Mechanism>,
    /// Terms whose parity is the raw measurement outcome.
    pub observable_terms: Vec<(usize, usize)>,
    /// Logical operators tracked for logical failures: the unmeasured pairs,
    /// then the measured operator. The last bit is the parity of the measured
    /// operator's flips plus the observable's, which is set when the
    /// post-measurement state disagrees with the recorded outcome.
    pub logical_ops: Vec<PauliOperator>,
    /// Detectors per step.
    pub step_ranges: Vec<std::ops::Range<usize>>,
}

impl DetectorGraph {
    #[must_use]
    pub fn num_detectors(&self) -> usize {
        self.detectors.len()
    }

    #[must_use]
    pub fn num_mechanisms(&self) -> usize {
        self.mechanisms.len()
    }

    /// Detectors triggered by a set of mechanisms, with observable and logical flips.
    #[must_use]
    pub fn syndrome_of(&self, mechs: &[usize]) -> (BitVector, bool, u64) {
        let mut d = BitVector::zeros(self.detectors.len());
        let mut obs = false;
        let mut log = 0u64;
        for &m in mechs {
            let mech = &self.mechanisms[m];
            for &i in &mech.detectors {
                d.flip(i);
            }
            obs ^= mech.observable;
            log ^= mech.logicals;
        }
        (d, obs, log)
    }

    /// Dense detector × mechanism matrix.
    #[must_use]
    pub fn check_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.detectors.len(), self.mechanisms.len());
        for (j, mech) in self.mechanisms.iter().enumerate() {
            for &i in &mech.detectors {
                m.set(i, j, true);
            }
        }
        m
    }

    /// Index of the qubit mechanism `(qubit, slot, pauli)`.
    #[must_use]
    pub fn qubit_mechanism(&self, qubit: usize, slot: usize, pauli: PauliKind) -> usize {
        assert!((1..=self.rounds_r + 1).contains(&slot));
        ((slot - 1) * self.num_qubits + qubit) * 2 + usize::from(pauli == PauliKind::Z)
    }

    /// Index of the measurement mechanism of a noisy outcome.
    #[must_use]
    pub fn measurement_mechanism(&self, round: usize, outcome: usize) -> Option<usize> {
        let base = 2 * self.num_qubits * (self.rounds_r + 1);
        self.mechanisms[base..].iter().position(|m| m.kind == MechanismKind::Measurement { round, outcome }).map(|p| base + p)
    }

    /// Position of the outcome of merged check `check` in a bulk round.
    #[must_use]
    pub fn merged_outcome(&self, round: usize, check: usize) -> Option<usize> {
        self.rounds[round].outcomes.iter().position(|o| o.source == OutcomeSource::Merged(check))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScheduleOptions {
    pub rounds: usize,
    pub init: InitMode,
}

impl ScheduleOptions {
    #[must_use]
    pub fn new(rounds: usize) -> Self {
        Self { rounds, init: InitMode::Module }
    }
}

fn effective_init(merged: &MergedCode, init: InitMode) -> InitMode {
    match merged.kind {
        MergedKind::X | MergedKind::Z => init,
        _ => InitMode::AllZero,
    }
}

/// Module parts of merged checks measured at the boundaries, as `(check id, op)`.
fn module_ops(merged: &MergedCode) -> Vec<(usize, PauliOperator)> {
    let mut out = Vec::new();
    for s in &merged.systems {
        if s.layers == 1 {
            continue;
        }
        let interface: Vec<usize> = s.cell_layer(1).to_vec();
        let keep: Vec<bool> = (0..merged.num_qubits).map(|q| !interface.contains(&q)).collect();
        for (id, role) in merged.roles.iter().enumerate() {
            let mine = match *role {
                CheckRole::Vertex { system, layer, .. } => layer >= 3 && std::ptr::eq(&merged.systems[system], s),
                CheckRole::Cell { system, .. } | CheckRole::Gauge { system, .. } => std::ptr::eq(&merged.systems[system], s),
                _ => false,
            };
            if !mine {
                continue;
            }
            let c = &merged.checks[id];
            let mut x = c.xbits().clone();
            let mut z = c.zbits().clone();
            for q in 0..merged.num_qubits {
                if !keep[q] {
                    x.set(q, false);
                    z.set(q, false);
                }
            }
            out.push((id, PauliOperator::new(x, z)));
        }
    }
    out
}

/// Operators measured at the two boundary rounds: base checks, module
/// stabilizers and single-qubit readouts of individually prepared qubits.
#[must_use]
pub fn boundary_outcomes(merged: &MergedCode, init: InitMode) -> Vec<Outcome> {
    let init = effective_init(merged, init);
    let n = merged.num_qubits;
    let mut out = Vec::new();
    for (kind, m) in [(PauliKind::X, &merged.base.hx), (PauliKind::Z, &merged.base.hz)] {
        for (index, r) in m.row_vectors().enumerate() {
            out.push(Outcome { op: PauliOperator::pure(kind, r).extend(n), source: OutcomeSource::Base { kind, index }, noisy: false });
        }
    }
    let mut prepped: Vec<usize> = Vec::new();
    match init {
        InitMode::Module => {
            for (id, op) in module_ops(merged) {
                out.push(Outcome { op, source: OutcomeSource::Module(id), noisy: false });
            }
            for s in &merged.systems {
                prepped.extend_from_slice(s.cell_layer(1));
            }
            if let Some(b) = &merged.bridge {
                prepped.extend_from_slice(&b.qubits);
            }
        }
        InitMode::AllZero => prepped.extend(merged.base_qubits()..n),
    }
    prepped.sort_unstable();
    for q in prepped {
        let kind = merged.prep_kind(q).expect("ancilla qubit");
        out.push(Outcome { op: PauliOperator::from_support(kind, n, &[q]), source: OutcomeSource::Single { qubit: q, kind }, noisy: false });
    }
    out
}

/// Generators of the group fixed before the merge: the round-0 operators.
#[must_use]
pub fn initial_group(merged: &MergedCode, init: InitMode) -> Vec<PauliOperator> {
    boundary_outcomes(merged, init).into_iter().map(|o| o.op).collect()
}

fn sector_of(op: &PauliOperator, css: bool) -> Sector {
    if !css {
        Sector::Mixed
    } else if op.zbits().is_zero() {
        Sector::X
    } else {
        Sector::Z
    }
}

fn vector_of(op: &PauliOperator, sector: Sector) -> BitVector {
    match sector {
        Sector::X => op.xbits().clone(),
        Sector::Z => op.zbits().clone(),
        Sector::Mixed => op.symplectic(),
    }
}

/// Detectors between two rounds within one sector: identical operators first,
/// then operators of one round in the span of the other, then the rest of
/// the intersection of the two spans.
fn transition(a: &[(usize, BitVector)], b: &[(usize, BitVector)], width: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mat = |v: &[(usize, BitVector)]| BitMatrix::from_rows(&v.iter().map(|(_, r)| r.clone()).collect::<Vec<_>>(), width).expect("width");
    let ma = mat(a);
    let mb = mat(b);
    let ra = ma.rank();
    let rb = mb.rank();
    let rab = ma.stack_rows(&mb).expect("same width").rank();
    let target = ra + rb - rab;
    let mut found = EchelonBasis::new(width);
    let mut out = Vec::new();
    let mut by_vec: HashMap<&BitVector, Vec<usize>> = HashMap::new();
    for (i, (_, v)) in a.iter().enumerate() {
        by_vec.entry(v).or_default().push(i);
    }
    let mut used_b = vec![false; b.len()];
    for (j, (_, v)) in b.iter().enumerate() {
        if let Some(list) = by_vec.get_mut(v) {
            if let Some(i) = list.first().copied() {
                if found.insert(v) {
                    list.remove(0);
                    used_b[j] = true;
                    out.push((vec![a[i].0], vec![b[j].0]));
                }
            }
        }
    }
    if found.rank() < target {
        let sa = Solver::new(&ma);
        for (j, (_, v)) in b.iter().enumerate() {
            if used_b[j] || found.contains(v) {
                continue;
            }
            if let Some(c) = sa.solve(v) {
                found.insert(v);
                out.push((c.iter_ones().map(|i| a[i].0).collect(), vec![b[j].0]));
            }
        }
    }
    if found.rank() < target {
        let sb = Solver::new(&mb);
        for (ia, v) in a {
            if found.contains(v) {
                continue;
            }
            if let Some(c) = sb.solve(v) {
                found.insert(v);
                out.push((vec![*ia], c.iter_ones().map(|j| b[j].0).collect()));
            }
        }
    }
    if found.rank() < target {
        let null = ma.stack_rows(&mb).expect("same width").nullspace_basis();
        for row in null.row_vectors() {
            let alpha: Vec<usize> = (0..a.len()).filter(|&i| row.get(i)).collect();
            let beta: Vec<usize> = (0..b.len()).filter(|&j| row.get(a.len() + j)).collect();
            let mut v = BitVector::zeros(width);
            for &i in &alpha {
                v.xor_assign(&a[i].1);
            }
            if v.is_zero() || !found.insert(&v) {
                continue;
            }
            out.push((alpha.iter().map(|&i| a[i].0).collect(), beta.iter().map(|&j| b[j].0).collect()));
            if found.rank() == target {
                break;
            }
        }
    }
    debug_assert_eq!(found.rank(), target);
    out
}

fn label_of(merged: &MergedCode, rounds: &[Round], terms: &[(usize, usize)]) -> DetectorLabel {
    let mut base = true;
    let mut vertex: Option<(usize, usize, usize)> = None;
    let mut vertex_ok = true;
    for &(r, o) in terms {
        let src = rounds[r].outcomes[o].source;
        let role = match src {
            OutcomeSource::Base { .. } => None,
            OutcomeSource::Merged(id) | OutcomeSource::Module(id) => Some(merged.roles[id]),
            OutcomeSource::Single { .. } => {
                base = false;
                vertex_ok = false;
                continue;
            }
        };
        match role {
            None | Some(CheckRole::Original { .. }) => vertex_ok = false,
            Some(CheckRole::Vertex { system, layer, index }) => {
                base = false;
                if vertex.is_some_and(|v| v != (system, layer, index)) {
                    vertex_ok = false;
                }
                vertex = Some((system, layer, index));
            }
            Some(_) => {
                base = false;
                vertex_ok = false;
            }
        }
    }
    if base {
        DetectorLabel::Base
    } else if vertex_ok {
        let (system, layer, index) = vertex.expect("vertex terms");
        DetectorLabel::Vertex { system, layer, index }
    } else {
        DetectorLabel::Other
    }
}

/// Builds rounds, detectors and mechanisms for `R = opts.rounds` merged rounds.
pub fn build_schedule(merged: &MergedCode, opts: ScheduleOptions) -> Result<DetectorGraph> {
    let r = opts.rounds;
    if r == 0 {
        return Err(Error::Invalid("at least one merged round is required".into()));
    }
    let init = effective_init(merged, opts.init);
    let n = merged.num_qubits;
    let css = merged.is_css();
    let boundary = boundary_outcomes(merged, init);
    let bulk: Vec<Outcome> = merged.checks.iter().enumerate().map(|(id, c)| Outcome { op: c.clone(), source: OutcomeSource::Merged(id), noisy: true }).collect();
    let mut rounds = Vec::with_capacity(r + 2);
    rounds.push(Round { outcomes: boundary.clone() });
    for _ in 0..r {
        rounds.push(Round { outcomes: bulk.clone() });
    }
    rounds.push(Round { outcomes: boundary });

    let sectors: Vec<Sector> = if css { vec![Sector::X, Sector::Z] } else { vec![Sector::Mixed] };
    let width = if css { n } else { 2 * n };
    let mut detectors = Vec::new();
    let mut step_ranges = Vec::with_capacity(r + 1);
    for t in 0..=r {
        let start = detectors.len();
        for &sec in &sectors {
            let pick = |round: &Round| -> Vec<(usize, BitVector)> {
                round.outcomes.iter().enumerate().filter(|(_, o)| sector_of(&o.op, css) == sec).map(|(i, o)| (i, vector_of(&o.op, sec))).collect()
            };
            let a = pick(&rounds[t]);
            let b = pick(&rounds[t + 1]);
            for (ta, tb) in transition(&a, &b, width) {
                let mut terms: Vec<(usize, usize)> = ta.into_iter().map(|i| (t, i)).collect();
                terms.extend(tb.into_iter().map(|j| (t + 1, j)));
                let label = label_of(merged, &rounds, &terms);
                detectors.push(Detector { step: t, terms, sector: sec, label });
            }
        }
        step_ranges.push(start..detectors.len());
    }

    let frame = logical_frame(merged)?;
    let mut logical_ops = frame.logical_ops();
    let post = logical_ops.len();
    logical_ops.push(frame.p.clone());
    if logical_ops.len() > 64 {
        return Err(Error::Invalid("more than 64 tracked logical operators".into()));
    }
    let observable_terms: Vec<(usize, usize)> = merged.measure_checks.iter().map(|&c| (1, c)).collect();
    let measured = merged.product_of_measure_checks();

    let slots = r + 1;
    let mut mech_dets: Vec<Vec<usize>> = vec![Vec::new(); 2 * n * slots];
    for (d, det) in detectors.iter().enumerate() {
        for &(round, o) in &det.terms {
            let op = &rounds[round].outcomes[o].op;
            for s in 1..=round.min(slots) {
                for q in op.xbits().iter_ones() {
                    mech_dets[((s - 1) * n + q) * 2 + 1].push(d);
                }
                for q in op.zbits().iter_ones() {
                    mech_dets[((s - 1) * n + q) * 2].push(d);
                }
            }
        }
    }
    let mut mechanisms = Vec::with_capacity(mech_dets.len());
    for (idx, mut dets) in mech_dets.into_iter().enumerate() {
        dets.sort_unstable();
        let dets = parity_reduce(dets);
        let pauli = if idx % 2 == 1 { PauliKind::Z } else { PauliKind::X };
        let q = (idx / 2) % n;
        let slot = idx / 2 / n + 1;
        let e = PauliOperator::from_support(pauli, n, &[q]);
        let observable = slot == 1 && !e.commutes_with(&measured);
        let mut logicals = 0u64;
        for (j, l) in logical_ops.iter().enumerate() {
            if !e.commutes_with(l) ^ (j == post && observable) {
                logicals |= 1 << j;
            }
        }
        mechanisms.push(Mechanism { kind: MechanismKind::Qubit { qubit: q, slot, pauli }, detectors: dets, observable, logicals });
    }
    let mut term_dets: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (d, det) in detectors.iter().enumerate() {
        for &t in &det.terms {
            term_dets.entry(t).or_default().push(d);
        }
    }
    for (round, rd) in rounds.iter().enumerate() {
        for (o, out) in rd.outcomes.iter().enumerate() {
            if !out.noisy {
                continue;
            }
            let dets = parity_reduce(term_dets.get(&(round, o)).cloned().unwrap_or_default());
            let observable = observable_terms.contains(&(round, o));
            let logicals = u64::from(observable) << post;
            mechanisms.push(Mechanism { kind: MechanismKind::Measurement { round, outcome: o }, detectors: dets, observable, logicals });
        }
    }
    Ok(DetectorGraph { kind: merged.kind, num_qubits: n, rounds_r: r, init, rounds, detectors, mechanisms, observable_terms, logical_ops, step_ranges })
}

/// Keeps indices occurring an odd number of times; input must be sorted.
fn parity_reduce(sorted: Vec<usize>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(sorted.len());
    for d in sorted {
        if out.last() == Some(&d) {
            out.pop();
        } else {
            out.push(d);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{hgp, hgp_logical_basis, repetition_parity};
    use crate::surgery::build_x_system;

    fn rep3_system(l: usize) -> MergedCode {
        let h = repetition_parity(3);
        build_x_system(&hgp(&h), &hgp_logical_basis(&h).xops[0], l, true).unwrap()
    }

    #[test]
    fn detectors_are_parities_of_commuting_ops() {
        for l in [1, 3] {
            let m = rep3_system(l);
            for init in [InitMode::Module, InitMode::AllZero] {
                let g = build_schedule(&m, ScheduleOptions { rounds: 3, init }).unwrap();
                for d in &g.detectors {
                    let mut acc: Vec<PauliOperator> = Vec::new();
                    for &(r, o) in &d.terms {
                        acc.push(g.rounds[r].outcomes[o].op.clone());
                    }
                    let mut before = PauliOperator::identity(m.num_qubits);
                    let mut after = PauliOperator::identity(m.num_qubits);
                    for &(r, o) in &d.terms {
                        if r == d.step {
                            before.mul_assign_unsigned(&g.rounds[r].outcomes[o].op);
                        } else {
                            after.mul_assign_unsigned(&g.rounds[r].outcomes[o].op);
                        }
                    }
                    assert_eq!(before.symplectic(), after.symplectic());
                }
                for step in 1..3 {
                    assert_eq!(g.step_ranges[step].len(), m.num_checks());
                }
            }
        }
    }

    #[test]
    fn bulk_vertex_measurement_errors_hit_two_detectors() {
        let m = rep3_system(1);
        let g = build_schedule(&m, ScheduleOptions::new(3)).unwrap();
        let v1 = m.systems[0].vertex_checks[0][0].unwrap();
        for round in 1..=3 {
            let o = g.merged_outcome(round, v1).unwrap();
            let mech = g.measurement_mechanism(round, o).unwrap();
            let want = if round == 1 || round == 3 { 1 } else { 2 };
            assert_eq!(g.mechanisms[mech].detectors.len(), want.max(1), "round {round}");
        }
    }
}
