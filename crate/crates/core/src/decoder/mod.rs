//! Decoders for detector graphs: a modular decoder for single-system
//! measurements and whole-graph BP+OSD.

mod bp;
mod line;
mod modular;

use std::time::Instant;

use serde::Serialize;

use crate::gf2::BitVector;
use crate::protocol::{DetectorGraph, NoiseModel};

pub use bp::{bp_decode, bp_osd, osd_decode, BpResult, SparseChecks, DEFAULT_BP_ITERS, MIN_SUM_SCALE};
pub use line::{line_match, Endpoint, LineMatching};
pub use modular::ModularDecoder;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BpOsdConfig {
    pub max_iters: usize,
    pub osd_order: usize,
}

impl Default for BpOsdConfig {
    fn default() -> Self {
        Self { max_iters: DEFAULT_BP_ITERS, osd_order: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct DecodeOutcome {
    /// Mechanism ids of the correction.
    pub correction: Vec<usize>,
    pub observable: bool,
    pub logicals: u64,
    pub converged: bool,
    pub nanos: u128,
}

/// Per-mechanism probabilities under a noise model.
#[must_use]
pub fn priors(g: &DetectorGraph, noise: NoiseModel) -> Vec<f64> {
    g.mechanisms.iter().map(|m| if m.is_measurement() { noise.p_meas } else { noise.p_qubit }).collect()
}

/// BP+OSD over a subset of mechanisms and detectors.
#[derive(Clone, Debug)]
pub(crate) struct SubDecoder {
    mechs: Vec<usize>,
    dets: Vec<usize>,
    /// Row of each graph detector, if included.
    det_row: Vec<Option<usize>>,
    checks: SparseChecks,
    priors: Vec<f64>,
    config: BpOsdConfig,
}

impl SubDecoder {
    pub(crate) fn new(g: &DetectorGraph, mechs: Vec<usize>, dets: Vec<usize>, all_priors: &[f64], config: BpOsdConfig) -> Self {
        let mut det_row = vec![None; g.num_detectors()];
        for (r, &d) in dets.iter().enumerate() {
            det_row[d] = Some(r);
        }
        let mut supports = Vec::with_capacity(dets.len());
        supports.resize(dets.len(), Vec::new());
        for (c, &m) in mechs.iter().enumerate() {
            for &d in &g.mechanisms[m].detectors {
                if let Some(r) = det_row[d] {
                    supports[r].push(c);
                }
            }
        }
        let h = crate::gf2::BitMatrix::from_supports(mechs.len(), &supports);
        let priors = mechs.iter().map(|&m| all_priors[m]).collect();
        Self { mechs, dets, det_row, checks: SparseChecks::new(&h), priors, config }
    }

    /// Decodes the included detectors of `syndrome`; returns mechanism ids.
    pub(crate) fn decode(&self, syndrome: &BitVector) -> (Vec<usize>, bool) {
        let mut s = BitVector::zeros(self.dets.len());
        for d in syndrome.iter_ones() {
            if let Some(r) = self.det_row[d] {
                s.set(r, true);
            }
        }
        if s.is_zero() {
            return (Vec::new(), true);
        }
        match bp_osd(&self.checks, &s, &self.priors, self.config.max_iters, self.config.osd_order) {
            Ok((e, _)) => (e.iter_ones().map(|c| self.mechs[c]).collect(), true),
            Err(_) => (Vec::new(), false),
        }
    }
}

/// BP+OSD over every mechanism and detector of the graph.
#[derive(Clone, Debug)]
pub struct WholeGraphDecoder {
    inner: SubDecoder,
}

impl WholeGraphDecoder {
    #[must_use]
    pub fn new(g: &DetectorGraph, noise: NoiseModel, config: BpOsdConfig) -> Self {
        let p = priors(g, noise);
        let mechs: Vec<usize> = (0..g.num_mechanisms()).filter(|&m| p[m] > 0.0).collect();
        Self { inner: SubDecoder::new(g, mechs, (0..g.num_detectors()).collect(), &p, config) }
    }

    #[must_use]
    pub fn decode(&self, g: &DetectorGraph, syndrome: &BitVector) -> DecodeOutcome {
        let start = Instant::now();
        let (correction, ok) = self.inner.decode(syndrome);
        let (s, observable, logicals) = g.syndrome_of(&correction);
        DecodeOutcome { converged: ok && s == *syndrome, correction, observable, logicals, nanos: start.elapsed().as_nanos() }
    }
}

/// Whole-graph BP+OSD in one call.
#[must_use]
pub fn bposd_whole_graph(g: &DetectorGraph, syndrome: &BitVector, noise: NoiseModel, config: BpOsdConfig) -> DecodeOutcome {
    WholeGraphDecoder::new(g, noise, config).decode(g, syndrome)
}

/// Removes mechanisms listed an even number of times.
pub(crate) fn xor_reduce(mut ids: Vec<usize>) -> Vec<usize> {
    ids.sort_unstable();
    let mut out: Vec<usize> = Vec::with_capacity(ids.len());
    for m in ids {
        if out.last() == Some(&m) {
            out.pop();
        } else {
            out.push(m);
        }
    }
    out
}
