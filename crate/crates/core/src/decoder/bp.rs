//! Normalized min-sum belief propagation and ordered-statistics post-processing.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Scaling applied to check-to-variable messages.
pub const MIN_SUM_SCALE: f64 = 0.625;
pub const DEFAULT_BP_ITERS: usize = 100;

#[derive(Clone, Debug)]
pub struct BpResult {
    /// Posterior log-likelihood ratios; negative means "flipped" is likelier.
    pub posteriors: Vec<f64>,
    pub hard: BitVector,
    pub converged: bool,
    pub iterations: usize,
}

/// A parity-check matrix prepared for repeated decoding.
#[derive(Clone, Debug)]
pub struct SparseChecks {
    pub rows: usize,
    pub cols: usize,
    /// Variables of each check.
    pub check_vars: Vec<Vec<usize>>,
    /// `(check, edge index)` pairs of each variable.
    pub var_edges: Vec<Vec<(usize, usize)>>,
    edge_offsets: Vec<usize>,
    dense: BitMatrix,
}

impl SparseChecks {
    #[must_use]
    pub fn new(h: &BitMatrix) -> Self {
        let (rows, cols) = h.shape();
        let check_vars: Vec<Vec<usize>> = (0..rows).map(|i| h.row_support(i)).collect();
        let mut edge_offsets = Vec::with_capacity(rows + 1);
        let mut e = 0;
        let mut var_edges = vec![Vec::new(); cols];
        for (i, vars) in check_vars.iter().enumerate() {
            edge_offsets.push(e);
            for &j in vars {
                var_edges[j].push((i, e));
                e += 1;
            }
        }
        edge_offsets.push(e);
        Self { rows, cols, check_vars, var_edges, edge_offsets, dense: h.clone() }
    }

    #[must_use]
    pub fn dense(&self) -> &BitMatrix {
        &self.dense
    }

    #[must_use]
    pub fn syndrome(&self, e: &BitVector) -> BitVector {
        let mut s = BitVector::zeros(self.rows);
        for j in e.iter_ones() {
            for &(i, _) in &self.var_edges[j] {
                s.flip(i);
            }
        }
        s
    }

    fn edges(&self) -> usize {
        self.edge_offsets[self.rows]
    }
}

fn llr(p: f64) -> f64 {
    let p = p.clamp(1e-12, 1.0 - 1e-12);
    ((1.0 - p) / p).ln()
}

/// Parallel-schedule min-sum BP for `h·e = syndrome`.
#[must_use]
pub fn bp_decode(h: &SparseChecks, syndrome: &BitVector, priors: &[f64], max_iters: usize) -> BpResult {
    assert_eq!(priors.len(), h.cols);
    let prior: Vec<f64> = priors.iter().map(|&p| llr(p)).collect();
    if syndrome.is_zero() {
        return BpResult { posteriors: prior, hard: BitVector::zeros(h.cols), converged: true, iterations: 0 };
    }
    let ne = h.edges();
    let mut q = vec![0.0f64; ne];
    let mut r = vec![0.0f64; ne];
    for (j, edges) in h.var_edges.iter().enumerate() {
        for &(_, e) in edges {
            q[e] = prior[j];
        }
    }
    let mut total = prior.clone();
    let mut hard = BitVector::zeros(h.cols);
    for it in 1..=max_iters {
        for i in 0..h.rows {
            let (a, b) = (h.edge_offsets[i], h.edge_offsets[i + 1]);
            let mut sign = syndrome.get(i);
            let (mut m1, mut m2, mut arg) = (f64::INFINITY, f64::INFINITY, usize::MAX);
            for e in a..b {
                let v = q[e];
                sign ^= v < 0.0;
                let av = v.abs();
                if av < m1 {
                    m2 = m1;
                    m1 = av;
                    arg = e;
                } else if av < m2 {
                    m2 = av;
                }
            }
            for e in a..b {
                let mag = if e == arg { m2 } else { m1 };
                let s = sign ^ (q[e] < 0.0);
                r[e] = MIN_SUM_SCALE * if s { -mag } else { mag };
            }
        }
        for (j, edges) in h.var_edges.iter().enumerate() {
            let t = prior[j] + edges.iter().map(|&(_, e)| r[e]).sum::<f64>();
            total[j] = t;
            for &(_, e) in edges {
                q[e] = t - r[e];
            }
            hard.set(j, t < 0.0);
        }
        if h.syndrome(&hard) == *syndrome {
            return BpResult { posteriors: total, hard, converged: true, iterations: it };
        }
    }
    BpResult { posteriors: total, hard, converged: false, iterations: max_iters }
}

/// Ordered-statistics decoding: columns sorted from least to most reliable,
/// the first independent ones solve the syndrome; order `λ > 0` also tries
/// every combination of the first `λ` remaining columns and keeps the
/// lightest solution under the prior weights.
pub fn osd_decode(h: &SparseChecks, syndrome: &BitVector, posteriors: &[f64], priors: &[f64], order: usize) -> Result<BitVector> {
    let n = h.cols;
    if syndrome.is_zero() {
        return Ok(BitVector::zeros(n));
    }
    let mut cols: Vec<usize> = (0..n).collect();
    cols.sort_by(|&a, &b| posteriors[a].total_cmp(&posteriors[b]).then(a.cmp(&b)));
    let permuted = h.dense.select_cols(&cols);
    let red = permuted.row_reduce();
    let s = red.transform.mul_vec(syndrome);
    let rank = red.pivots.len();
    if (rank..h.rows).any(|i| s.get(i)) {
        return Err(Error::InconsistentSyndrome);
    }
    let mut e = BitVector::zeros(n);
    for (r, &p) in red.pivots.iter().enumerate() {
        if s.get(r) {
            e.set(cols[p], true);
        }
    }
    if order == 0 {
        return Ok(e);
    }
    let cost: Vec<f64> = priors.iter().map(|&p| llr(p)).collect();
    let weight = |v: &BitVector| v.iter_ones().map(|j| cost[j]).sum::<f64>();
    let mut is_pivot = vec![false; n];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).take(order.min(20)).collect();
    let mut best = weight(&e);
    let mut best_e = e;
    for mask in 1u64..(1u64 << free.len()) {
        let mut t = s.clone();
        let mut cand = BitVector::zeros(n);
        for (b, &c) in free.iter().enumerate() {
            if mask >> b & 1 == 1 {
                cand.set(cols[c], true);
                for row in 0..rank {
                    if red.rref.get(row, c) {
                        t.flip(row);
                    }
                }
            }
        }
        for (row, &p) in red.pivots.iter().enumerate() {
            if t.get(row) {
                cand.set(cols[p], true);
            }
        }
        let w = weight(&cand);
        if w < best {
            best = w;
            best_e = cand;
        }
    }
    Ok(best_e)
}

/// BP, then OSD when BP does not converge.
pub fn bp_osd(h: &SparseChecks, syndrome: &BitVector, priors: &[f64], max_iters: usize, order: usize) -> Result<(BitVector, bool)> {
    let bp = bp_decode(h, syndrome, priors, max_iters);
    if bp.converged {
        return Ok((bp.hard, true));
    }
    let e = osd_decode(h, syndrome, &bp.posteriors, priors, order)?;
    Ok((e, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_syndrome() {
        let h = SparseChecks::new(&crate::code::repetition_parity(5));
        let r = bp_decode(&h, &BitVector::zeros(4), &[0.1; 5], 10);
        assert!(r.converged && r.hard.is_zero());
        assert!(osd_decode(&h, &BitVector::zeros(4), &[1.0; 5], &[0.1; 5], 0).unwrap().is_zero());
    }

    #[test]
    fn single_error_on_a_tree() {
        // path of 5 bits with 4 checks: a tree
        let h = SparseChecks::new(&crate::code::repetition_parity(5));
        for j in 0..5 {
            let e = BitVector::unit(5, j);
            let s = h.syndrome(&e);
            let r = bp_decode(&h, &s, &[0.05; 5], 50);
            assert!(r.converged);
            assert_eq!(r.hard, e);
        }
    }

    #[test]
    fn four_cycle_trap_goes_to_osd() {
        // two checks over the same two bits, both unsatisfied: no solution with equal
        // priors breaks the tie for BP; an extra column makes it solvable.
        let m = BitMatrix::from_dense(&[[1u8, 1, 1, 0], [1, 1, 0, 1]]);
        let h = SparseChecks::new(&m);
        let s = BitVector::from_bitstring("11");
        let priors = [0.1, 0.1, 0.1, 0.1];
        let r = bp_decode(&h, &s, &priors, 30);
        assert!(!r.converged);
        let e = osd_decode(&h, &s, &r.posteriors, &priors, 0).unwrap();
        assert_eq!(h.syndrome(&e), s);
        let e2 = osd_decode(&h, &s, &r.posteriors, &priors, 2).unwrap();
        assert_eq!(h.syndrome(&e2), s);
        assert_eq!(e2.weight(), 1);
    }

    #[test]
    fn identity_checks_recover_weight_one() {
        let h = SparseChecks::new(&BitMatrix::identity(4));
        let s = BitVector::unit(4, 2);
        assert_eq!(osd_decode(&h, &s, &[1.0; 4], &[0.1; 4], 0).unwrap(), s);
    }

    #[test]
    fn inconsistent_syndrome() {
        let h = SparseChecks::new(&BitMatrix::from_dense(&[[1u8, 1], [1, 1]]));
        let s = BitVector::from_bitstring("10");
        assert!(matches!(osd_decode(&h, &s, &[1.0; 2], &[0.1; 2], 0), Err(Error::InconsistentSyndrome)));
    }
}
