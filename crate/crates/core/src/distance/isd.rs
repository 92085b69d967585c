//! Randomized information-set search for light logical operators.
//!
//! Each iteration permutes the columns, brings the checks to reduced echelon
//! form and inspects the kernel vectors with one or two free columns set.
//! Finding nothing is evidence, not proof.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::{pure_logicals, CssCode};
use crate::error::Result;
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::PauliKind;
use crate::surgery::MergedCode;

/// Seconds granted when `GFSURGERY_ISD_SECONDS` is unset.
pub const DEFAULT_ISD_SECONDS: f64 = 600.0;

/// Find `v` with `checks·v = 0` and `detect·v ≠ 0`.
#[derive(Clone, Debug)]
pub struct IsdProblem {
    pub checks: BitMatrix,
    pub detect: BitMatrix,
}

impl IsdProblem {
    /// Nontrivial `kind` logicals of a CSS code.
    #[must_use]
    pub fn css(code: &CssCode, kind: PauliKind) -> Self {
        let other = kind.other();
        let rows = pure_logicals(code, other);
        let detect = BitMatrix::from_rows(&rows, code.n()).expect("logical rows");
        Self { checks: code.checks(other).clone(), detect }
    }

    /// Nontrivial `kind` logicals of a CSS merged code.
    pub fn merged(merged: &MergedCode, kind: PauliKind) -> Result<Self> {
        let code = CssCode::new(merged.check_matrix(PauliKind::X), merged.check_matrix(PauliKind::Z), "merged")?;
        Ok(Self::css(&code, kind))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IsdBudget {
    pub seconds: f64,
    pub max_iterations: Option<u64>,
    pub seed: u64,
}

/// Time budget from `GFSURGERY_ISD_SECONDS`, else [`DEFAULT_ISD_SECONDS`].
#[must_use]
pub fn default_isd_budget(seed: u64) -> IsdBudget {
    let seconds = std::env::var("GFSURGERY_ISD_SECONDS").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_ISD_SECONDS);
    IsdBudget { seconds, max_iterations: None, seed }
}

#[derive(Clone, Debug)]
pub enum IsdOutcome {
    Found { witness: BitVector, weight: usize, iterations: u64 },
    NoneWithinBudget { iterations: u64, seconds: f64, lightest_seen: Option<usize> },
}

impl IsdOutcome {
    #[must_use]
    pub fn found_weight(&self) -> Option<usize> {
        match self {
            Self::Found { weight, .. } => Some(*weight),
            Self::NoneWithinBudget { .. } => None,
        }
    }
}

/// Searches for an operator of weight below `target`.
#[must_use]
pub fn probabilistic_distance_lower_bound(problem: &IsdProblem, target: usize, budget: IsdBudget) -> IsdOutcome {
    let n = problem.checks.cols();
    let start = Instant::now();
    let limit = Duration::from_secs_f64(budget.seconds.max(0.0));
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut lightest: Option<usize> = None;
    let mut it = 0u64;
    if problem.detect.rows() == 0 {
        return IsdOutcome::NoneWithinBudget { iterations: 0, seconds: 0.0, lightest_seen: None };
    }
    loop {
        if budget.max_iterations.is_some_and(|m| it >= m) || (budget.max_iterations.is_none() && start.elapsed() >= limit) {
            break;
        }
        it += 1;
        perm.shuffle(&mut rng);
        let h = problem.checks.select_cols(&perm);
        let d = problem.detect.select_cols(&perm);
        let kernel = h.kernel();
        let rows: Vec<BitVector> = kernel.row_vectors().collect();
        let syn: Vec<BitVector> = rows.iter().map(|r| d.mul_vec(r)).collect();
        let mut best: Option<(usize, BitVector)> = None;
        let mut offer = |w: usize, v: BitVector| {
            if best.as_ref().map_or(true, |(bw, _)| w < *bw) {
                best = Some((w, v));
            }
        };
        for (i, r) in rows.iter().enumerate() {
            if !syn[i].is_zero() {
                offer(r.weight(), r.clone());
            }
        }
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if syn[i] == syn[j] {
                    continue;
                }
                let v = rows[i].xor(&rows[j]);
                offer(v.weight(), v);
            }
        }
        if let Some((w, v)) = best {
            lightest = Some(lightest.map_or(w, |l| l.min(w)));
            if w < target {
                let mut witness = BitVector::zeros(n);
                for q in v.iter_ones() {
                    witness.set(perm[q], true);
                }
                return IsdOutcome::Found { witness, weight: w, iterations: it };
            }
        }
    }
    IsdOutcome::NoneWithinBudget { iterations: it, seconds: start.elapsed().as_secs_f64(), lightest_seen: lightest }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{hgp, repetition_parity};

    fn budget(iters: u64) -> IsdBudget {
        IsdBudget { seconds: 0.0, max_iterations: Some(iters), seed: 3 }
    }

    #[test]
    fn rep3_hgp_targets() {
        let code = hgp(&repetition_parity(3));
        let p = IsdProblem::css(&code, PauliKind::X);
        assert!(matches!(probabilistic_distance_lower_bound(&p, 3, budget(200)), IsdOutcome::NoneWithinBudget { .. }));
        match probabilistic_distance_lower_bound(&p, 4, budget(200)) {
            IsdOutcome::Found { witness, weight, .. } => {
                assert_eq!(weight, 3);
                assert!(code.hz.mul_vec(&witness).is_zero());
                assert!(!code.hx.in_rowspace(&witness));
            }
            other => panic!("{other:?}"),
        }
    }
}
