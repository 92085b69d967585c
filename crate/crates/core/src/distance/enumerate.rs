//! Exhaustive minimum-weight searches over GF(2) affine spaces.
//!
//! Two strategies are provided. [`gray_min_weight`] walks every element of a
//! coset `o + span(G)` in Gray-code order. [`SupportSearch`] walks candidate
//! supports by increasing weight and keeps those with the right syndrome,
//! which wins when the span is large but the answer is light.

use std::collections::HashMap;

use crate::gf2::{xor_into, BitMatrix, BitVector};

/// Minimum weight element of `offset + span(gens)` with its coefficient vector.
#[must_use]
pub fn gray_min_weight(offset: &BitVector, gens: &[BitVector]) -> (BitVector, BitVector) {
    let k = gens.len();
    assert!(k < 40, "gray enumeration over 2^{k} elements");
    let mut cur = offset.clone();
    let mut coeff = BitVector::zeros(k);
    let mut best = cur.clone();
    let mut best_coeff = coeff.clone();
    let mut best_w = cur.weight();
    for i in 1u64..(1u64 << k) {
        let g = i.trailing_zeros() as usize;
        cur.xor_assign(&gens[g]);
        coeff.flip(g);
        let w = cur.weight();
        if w < best_w {
            best_w = w;
            best = cur.clone();
            best_coeff = coeff.clone();
        }
    }
    (best_coeff, best)
}

/// Minimum weight of `a·L + b·S` over `a ≠ 0`, by Gray enumeration of the
/// combined generator list. Returns `None` when `logicals` is empty.
#[must_use]
pub fn gray_min_outside(logicals: &[BitVector], stabs: &[BitVector]) -> Option<BitVector> {
    if logicals.is_empty() {
        return None;
    }
    let k = logicals.len() + stabs.len();
    assert!(k < 40, "gray enumeration over 2^{k} elements");
    let n = logicals[0].len();
    let gens: Vec<&BitVector> = logicals.iter().chain(stabs).collect();
    let mut cur = BitVector::zeros(n);
    let mut lmask = 0u64;
    let mut best: Option<(usize, BitVector)> = None;
    for i in 1u64..(1u64 << k) {
        let g = i.trailing_zeros() as usize;
        cur.xor_assign(gens[g]);
        if g < logicals.len() {
            lmask ^= 1 << g;
        }
        if lmask != 0 {
            let w = cur.weight();
            if best.as_ref().map_or(true, |(bw, _)| w < *bw) {
                best = Some((w, cur.clone()));
            }
        }
    }
    best.map(|(_, v)| v)
}

/// Finds minimum-weight vectors `v` with `checks·v = target` and, when
/// `detect` is non-empty, `detect·v ≠ 0`, by enumerating supports of
/// increasing size.
///
/// Columns may be grouped by owner (for example the X, Z and Y columns of one
/// qubit); at most one column per owner is chosen and weight counts owners.
#[derive(Clone, Debug)]
pub struct SupportSearch {
    n: usize,
    target: Vec<u64>,
    check_words: usize,
    /// Per column: check syndrome words followed by detector words.
    cols: Vec<Vec<u64>>,
    has_detect: bool,
    /// First column whose owner differs from column `j`'s, for each `j`.
    next: Vec<usize>,
    owners: Option<Vec<usize>>,
}

impl SupportSearch {
    #[must_use]
    pub fn new(checks: &BitMatrix, detect: &BitMatrix, target: &BitVector) -> Self {
        let n = checks.cols();
        assert_eq!(detect.cols(), n);
        assert_eq!(target.len(), checks.rows());
        let ct = checks.transpose();
        let dt = detect.transpose();
        let check_words = checks.rows().div_ceil(64);
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut w = ct.row_words(j).to_vec();
            w.extend_from_slice(dt.row_words(j));
            cols.push(w);
        }
        let mut t = target.words().to_vec();
        t.resize(check_words, 0);
        let next = (1..=n).collect();
        Self { n, target: t, check_words, cols, has_detect: detect.rows() > 0, next, owners: None }
    }

    /// Search over qubits of a symplectic check matrix `[x | z]`: each qubit
    /// contributes one of its X, Z or Y columns. Returned supports index
    /// `3·q + {0: X, 1: Z, 2: Y}`.
    #[must_use]
    pub fn symplectic(checks: &BitMatrix, detect: &BitMatrix, target: &BitVector) -> Self {
        assert_eq!(checks.cols() % 2, 0);
        let n = checks.cols() / 2;
        let expand = |m: &BitMatrix| {
            let mut out = BitMatrix::zeros(m.rows(), 3 * n);
            for i in 0..m.rows() {
                for q in 0..n {
                    let x = m.get(i, q);
                    let z = m.get(i, n + q);
                    out.set(i, 3 * q, x);
                    out.set(i, 3 * q + 1, z);
                    out.set(i, 3 * q + 2, x ^ z);
                }
            }
            out
        };
        let mut s = Self::new(&expand(checks), &expand(detect), target);
        s.next = (0..3 * n).map(|j| (j / 3 + 1) * 3).collect();
        s.owners = Some((0..3 * n).map(|j| j / 3).collect());
        s
    }

    /// Owner (qubit) of each column.
    #[must_use]
    pub fn owner(&self, j: usize) -> usize {
        self.owners.as_ref().map_or(j, |o| o[j])
    }

    fn accept(&self, acc: &[u64]) -> bool {
        acc[..self.check_words] == self.target[..] && (!self.has_detect || acc[self.check_words..].iter().any(|&w| w != 0))
    }

    /// Smallest support of size at most `wmax`, or `None`.
    #[must_use]
    pub fn search(&self, wmax: usize) -> Option<Vec<usize>> {
        let width = self.cols.first().map_or(self.check_words, Vec::len);
        let zero = vec![0u64; width];
        if self.accept(&zero) {
            return Some(Vec::new());
        }
        let owners = self.owners.as_ref().map_or(self.n, |o| o.last().map_or(0, |l| l + 1));
        for w in 1..=wmax.min(owners) {
            if let Some(s) = self.search_exact(w) {
                return Some(s);
            }
        }
        None
    }

    /// A support of exactly `w` columns, found by enumerating `w − 1` columns
    /// and looking up the last one by its check syndrome.
    fn search_exact(&self, w: usize) -> Option<Vec<usize>> {
        let mut by_syndrome: HashMap<&[u64], Vec<usize>> = HashMap::new();
        for (j, c) in self.cols.iter().enumerate() {
            by_syndrome.entry(&c[..self.check_words]).or_default().push(j);
        }
        let width = self.cols.first().map_or(self.check_words, Vec::len);
        let mut acc = vec![0u64; width];
        let mut chosen = Vec::with_capacity(w);
        self.dfs(w - 1, 0, &mut acc, &mut chosen, &by_syndrome)
    }

    fn dfs(
        &self,
        remaining: usize,
        start: usize,
        acc: &mut Vec<u64>,
        chosen: &mut Vec<usize>,
        table: &HashMap<&[u64], Vec<usize>>,
    ) -> Option<Vec<usize>> {
        if remaining == 0 {
            let need: Vec<u64> = acc[..self.check_words].iter().zip(&self.target).map(|(a, t)| a ^ t).collect();
            let last_min = chosen.last().map_or(0, |&c| self.next[c]);
            if let Some(cands) = table.get(need.as_slice()) {
                for &j in cands {
                    if j < last_min {
                        continue;
                    }
                    let mut full = acc.clone();
                    xor_into(&mut full, &self.cols[j]);
                    if self.accept(&full) {
                        let mut s = chosen.clone();
                        s.push(j);
                        return Some(s);
                    }
                }
            }
            return None;
        }
        for j in start..self.n {
            xor_into(acc, &self.cols[j]);
            chosen.push(j);
            let found = self.dfs(remaining - 1, self.next[j], acc, chosen, table);
            chosen.pop();
            xor_into(acc, &self.cols[j]);
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Number of supports of size at most `w` among `n` columns, saturating.
#[must_use]
pub fn supports_up_to(n: usize, w: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for k in 0..=w.min(n) {
        if k > 0 {
            c = c * (n - k + 1) as u128 / k as u128;
        }
        total = total.saturating_add(c);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gray_finds_lightest_coset_element() {
        let o = BitVector::from_bitstring("111100");
        let gens = vec![BitVector::from_bitstring("110000"), BitVector::from_bitstring("001100"), BitVector::from_bitstring("000011")];
        let (_, best) = gray_min_weight(&o, &gens);
        assert_eq!(best.weight(), 0);
    }

    #[test]
    fn support_search_matches_gray() {
        // repetition code of length 5: min weight nonzero codeword of its dual's kernel
        let h = crate::code::repetition_parity(5);
        let detect = BitMatrix::from_dense(&[[1u8, 0, 0, 0, 0]]);
        let s = SupportSearch::new(&h, &detect, &BitVector::zeros(4));
        assert_eq!(s.search(5).unwrap().len(), 5);
        assert!(s.search(4).is_none());
        assert_eq!(supports_up_to(5, 2), 1 + 5 + 10);
    }

    #[test]
    fn symplectic_search_uses_one_column_per_qubit() {
        // x1 + x2 = 0, z1 + z2 = 0, x1 = 1: XX, XY, YX or YY
        let checks = BitMatrix::from_dense(&[[1u8, 1, 0, 0], [0, 0, 1, 1]]);
        let detect = BitMatrix::from_dense(&[[1u8, 0, 0, 0]]);
        let s = SupportSearch::symplectic(&checks, &detect, &BitVector::zeros(2));
        let sup = s.search(2).unwrap();
        assert_eq!(sup.len(), 2);
        assert_ne!(s.owner(sup[0]), s.owner(sup[1]));
    }
}
