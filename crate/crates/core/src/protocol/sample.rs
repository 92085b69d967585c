//! Monte Carlo sampling of the phenomenological noise model.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::gf2::BitVector;

use super::DetectorGraph;

/// Independent X and Z flips per qubit and slot with `p_qubit`, and
/// independent flips of every noisy outcome with `p_meas`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NoiseModel {
    pub p_qubit: f64,
    pub p_meas: f64,
}

impl NoiseModel {
    #[must_use]
    pub fn uniform(p: f64) -> Self {
        Self { p_qubit: p, p_meas: p }
    }

    fn prob(&self, g: &DetectorGraph, mech: usize) -> f64 {
        if g.mechanisms[mech].is_measurement() {
            self.p_meas
        } else {
            self.p_qubit
        }
    }
}

#[derive(Clone, Debug)]
pub struct Shot {
    pub detectors: BitVector,
    pub observable: bool,
    pub logicals: u64,
    pub fired: Vec<usize>,
}

/// The outcome of a fixed set of mechanisms.
#[must_use]
pub fn inject(g: &DetectorGraph, fired: &[usize]) -> Shot {
    let (detectors, observable, logicals) = g.syndrome_of(fired);
    Shot { detectors, observable, logicals, fired: fired.to_vec() }
}

/// Indices in `0..len` hit by independent Bernoulli(`p`) trials, by geometric skipping.
fn bernoulli_hits(rng: &mut ChaCha8Rng, start: usize, len: usize, p: f64, out: &mut Vec<usize>) {
    if p <= 0.0 || len == 0 {
        return;
    }
    if p >= 1.0 {
        out.extend(start..start + len);
        return;
    }
    let log_q = (1.0 - p).ln();
    let mut i = 0usize;
    loop {
        let u: f64 = rng.gen::<f64>();
        // Number of failures before the next success.
        let skip = ((1.0 - u).ln() / log_q).floor();
        if !skip.is_finite() || skip >= (len - i) as f64 {
            return;
        }
        i += skip as usize;
        out.push(start + i);
        i += 1;
        if i >= len {
            return;
        }
    }
}

/// Draws shot number `shot` of the run seeded with `seed`; each shot has its own stream.
#[must_use]
pub fn sample(g: &DetectorGraph, noise: NoiseModel, seed: u64, shot: u64) -> Shot {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    let nq = 2 * g.num_qubits * (g.rounds_r + 1);
    let mut fired = Vec::new();
    debug_assert!(nq == 0 || !g.mechanisms[nq - 1].is_measurement());
    bernoulli_hits(&mut rng, 0, nq, noise.p_qubit, &mut fired);
    bernoulli_hits(&mut rng, nq, g.mechanisms.len() - nq, noise.p_meas, &mut fired);
    debug_assert!(fired.iter().all(|&m| noise.prob(g, m) > 0.0));
    inject(g, &fired)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_skipping_matches_rate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut out = Vec::new();
        for _ in 0..200 {
            bernoulli_hits(&mut rng, 0, 1000, 0.05, &mut out);
        }
        let rate = out.len() as f64 / 200_000.0;
        assert!((rate - 0.05).abs() < 0.003, "{rate}");
        let mut all = Vec::new();
        bernoulli_hits(&mut rng, 3, 4, 1.0, &mut all);
        assert_eq!(all, vec![3, 4, 5, 6]);
    }
}
