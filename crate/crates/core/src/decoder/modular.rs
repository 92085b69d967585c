//! Modular decoding of a single X or Z system measurement.
//!
//! With `K` the measured type, errors of type `E = K.other()` and measurement
//! errors of `K` checks show up in the `K` sector. That sector is decoded in
//! stages: the base-code detectors by BP+OSD, the per-step parity of the
//! vertex detectors by matching on the time line, odd layer groups by chains
//! of `V`-even qubit errors, and whatever remains per step by a linear lift
//! onto `C`-odd qubits. The opposite sector goes to BP+OSD directly.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, Solver};
use crate::pauli::PauliKind;
use crate::protocol::{DetectorGraph, DetectorLabel, MechanismKind, NoiseModel, OutcomeSource, Sector};
use crate::surgery::{CheckRole, MergedCode, MergedKind, QubitRole};

use super::{line_match, priors, xor_reduce, BpOsdConfig, DecodeOutcome, SubDecoder};

/// Linear lift of one step's residual onto qubit errors of one slot.
#[derive(Clone, Debug)]
struct StepLift {
    dets: Vec<usize>,
    mechs: Vec<usize>,
    solver: Solver,
}

#[derive(Clone, Debug)]
pub struct ModularDecoder {
    rounds: usize,
    sector: Sector,
    base: SubDecoder,
    other: SubDecoder,
    /// Fallback for the ancilla part of the `K` sector.
    rest: SubDecoder,
    /// Vertex detectors per step as `(detector, layer)`.
    vertex: Vec<Vec<(usize, usize)>>,
    /// `V_1` check whose measurement errors carry the time-line chains.
    v_star: usize,
    /// `V_2, V_4, …` qubit of index 0.
    rungs: Vec<usize>,
    lifts: Vec<StepLift>,
    in_sector: Vec<bool>,
    e_type: PauliKind,
}

impl ModularDecoder {
    pub fn new(merged: &MergedCode, g: &DetectorGraph, noise: NoiseModel, config: BpOsdConfig) -> Result<Self> {
        let k = match merged.kind {
            MergedKind::X => PauliKind::X,
            MergedKind::Z => PauliKind::Z,
            other => return Err(Error::Invalid(format!("modular decoding needs an X or Z system, got {other:?}"))),
        };
        let sys = &merged.systems[0];
        let e_type = k.other();
        let sector = if k == PauliKind::X { Sector::X } else { Sector::Z };
        let p = priors(g, noise);
        let r = g.rounds_r;
        let usable = |m: usize| p[m] > 0.0;
        let in_sector: Vec<bool> = g.detectors.iter().map(|d| d.sector == sector).collect();
        let touches = |m: usize, want: bool| g.mechanisms[m].detectors.iter().any(|&d| in_sector[d] == want);

        let original = |q: usize| matches!(merged.qubits[q], QubitRole::Original(_));
        let mut base_mechs = Vec::new();
        let mut rest_mechs = Vec::new();
        for (m, mech) in g.mechanisms.iter().enumerate() {
            if !usable(m) || !touches(m, true) {
                continue;
            }
            let is_base = match mech.kind {
                MechanismKind::Qubit { qubit, pauli, .. } => pauli == e_type && original(qubit),
                MechanismKind::Measurement { round, outcome } => match g.rounds[round].outcomes[outcome].source {
                    OutcomeSource::Merged(id) => matches!(merged.roles[id], CheckRole::Original { .. }),
                    _ => false,
                },
            };
            if is_base {
                base_mechs.push(m);
            } else {
                rest_mechs.push(m);
            }
        }
        let base_dets: Vec<usize> = (0..g.num_detectors()).filter(|&d| in_sector[d] && g.detectors[d].label == DetectorLabel::Base).collect();
        let anc_dets: Vec<usize> = (0..g.num_detectors()).filter(|&d| in_sector[d] && g.detectors[d].label != DetectorLabel::Base).collect();
        let other_mechs: Vec<usize> = (0..g.num_mechanisms()).filter(|&m| usable(m) && touches(m, false)).collect();
        let other_dets: Vec<usize> = (0..g.num_detectors()).filter(|&d| !in_sector[d]).collect();

        let mut vertex = vec![Vec::new(); r + 1];
        for (d, det) in g.detectors.iter().enumerate() {
            if let (true, DetectorLabel::Vertex { layer, .. }) = (in_sector[d], det.label) {
                vertex[det.step].push((d, layer));
            }
        }
        let v_star = sys.vertex_checks[0].iter().flatten().copied().next().ok_or(Error::Internal("no first-layer vertex check".into()))?;
        let rungs: Vec<usize> = sys.vertex_qubits.iter().map(|l| l[0]).collect();

        let cells: Vec<usize> = sys.cell_qubits.iter().flatten().copied().collect();
        let mut lifts = Vec::with_capacity(r + 1);
        for t in 0..=r {
            let dets: Vec<usize> = g.step_ranges[t].clone().filter(|&d| in_sector[d] && g.detectors[d].label != DetectorLabel::Base).collect();
            let mechs: Vec<usize> = cells.iter().map(|&q| g.qubit_mechanism(q, t + 1, e_type)).collect();
            let mut m = BitMatrix::zeros(mechs.len(), dets.len());
            for (i, &mech) in mechs.iter().enumerate() {
                for &d in &g.mechanisms[mech].detectors {
                    if let Ok(j) = dets.binary_search(&d) {
                        m.set(i, j, true);
                    }
                }
            }
            lifts.push(StepLift { solver: Solver::new(&m), dets, mechs });
        }
        Ok(Self {
            rounds: r,
            sector,
            base: SubDecoder::new(g, base_mechs, base_dets, &p, config),
            other: SubDecoder::new(g, other_mechs, other_dets, &p, config),
            rest: SubDecoder::new(g, rest_mechs, anc_dets, &p, config),
            vertex,
            v_star,
            rungs,
            lifts,
            in_sector,
            e_type,
        })
    }

    /// Sector decoded by the staged pipeline.
    #[must_use]
    pub fn sector(&self) -> Sector {
        self.sector
    }

    #[must_use]
    pub fn decode(&self, g: &DetectorGraph, syndrome: &BitVector) -> DecodeOutcome {
        let start = Instant::now();
        let mut correction = Vec::new();
        let mut ok = true;

        let (c, good) = self.other.decode(syndrome);
        ok &= good;
        correction.extend(c);

        let (c, good) = self.base.decode(syndrome);
        ok &= good;
        correction.extend(c);
        let mut residual = syndrome.xor(&g.syndrome_of(&correction).0);
        let apply = |ids: Vec<usize>, residual: &mut BitVector, correction: &mut Vec<usize>| {
            for &m in &ids {
                for &d in &g.mechanisms[m].detectors {
                    residual.flip(d);
                }
            }
            correction.extend(ids);
        };

        let r = self.rounds;
        let odd: Vec<usize> = (1..r).filter(|&t| self.vertex[t].iter().filter(|&&(d, _)| residual.get(d)).count() % 2 == 1).collect();
        let chain: Vec<usize> = line_match(&odd, r)
            .rounds(r)
            .into_iter()
            .filter_map(|round| g.merged_outcome(round, self.v_star).and_then(|o| g.measurement_mechanism(round, o)))
            .collect();
        apply(chain, &mut residual, &mut correction);

        for t in 0..=r {
            let ids = self.even_out(g, t, &residual);
            apply(ids, &mut residual, &mut correction);
            let lift = &self.lifts[t];
            let mut target = BitVector::zeros(lift.dets.len());
            for (j, &d) in lift.dets.iter().enumerate() {
                target.set(j, residual.get(d));
            }
            if target.is_zero() {
                continue;
            }
            if let Some(x) = lift.solver.solve(&target) {
                apply(x.iter_ones().map(|i| lift.mechs[i]).collect(), &mut residual, &mut correction);
            }
        }

        if residual.iter_ones().any(|d| self.in_sector[d]) {
            let (c, good) = self.rest.decode(&residual);
            ok &= good;
            apply(c, &mut residual, &mut correction);
        }

        let correction = xor_reduce(correction);
        let (s, observable, logicals) = g.syndrome_of(&correction);
        DecodeOutcome { converged: ok && s == *syndrome, correction, observable, logicals, nanos: start.elapsed().as_nanos() }
    }

    /// Chains of `V`-even qubit errors pairing layers with odd residual at step `t`.
    /// At the two boundary steps an unpaired layer is joined to the first layer.
    fn even_out(&self, g: &DetectorGraph, t: usize, residual: &BitVector) -> Vec<usize> {
        let mut odd_layers: Vec<usize> = Vec::new();
        for &(d, layer) in &self.vertex[t] {
            if residual.get(d) {
                match odd_layers.iter().position(|&l| l == layer) {
                    Some(i) => {
                        odd_layers.remove(i);
                    }
                    None => odd_layers.push(layer),
                }
            }
        }
        odd_layers.sort_unstable();
        if odd_layers.len() % 2 == 1 {
            if t != 0 && t != self.rounds {
                return Vec::new();
            }
            if odd_layers[0] == 1 {
                odd_layers.remove(0);
            } else {
                odd_layers.insert(0, 1);
            }
        }
        let mut out = Vec::new();
        for pair in odd_layers.chunks(2) {
            // V_i qubits with a < i < b, i even
            for i in (pair[0] + 1..pair[1]).filter(|i| i % 2 == 0) {
                out.push(g.qubit_mechanism(self.rungs[i / 2 - 1], t + 1, self.e_type));
            }
        }
        out
    }
}
