//! Boundary Cheeger constants, layer counts and gauge bases of induced graphs.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{popcount, xor_into, BitMatrix, BitVector};

/// Default cap on `|V0|` for exhaustive Cheeger enumeration.
pub const CHEEGER_CAP: usize = 24;

/// A non-negative rational `num / den` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub num: usize,
    pub den: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Ratio {
    #[must_use]
    pub fn new(num: usize, den: usize) -> Self {
        assert!(den > 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Self { num: num / g, den: den / g }
    }

    #[must_use]
    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cheeger {
    pub beta: Ratio,
    /// Column indices of `f` achieving the minimum.
    pub witness: Vec<usize>,
}

/// `min |∂v| / |v|` over nonempty vertex subsets with `|v| ≤ |V|/2`, where
/// vertices are the columns of `f` and `∂v` is the set of rows meeting `v` an
/// odd number of times. Subsets are visited in Gray-code order and the first
/// minimizer is kept.
pub fn boundary_cheeger(f: &BitMatrix, cap: usize) -> Result<Cheeger> {
    let nv = f.cols();
    if nv > cap {
        return Err(Error::CapExceeded { size: nv, cap });
    }
    if nv < 2 {
        return Err(Error::Invalid("Cheeger constant needs at least two vertices".into()));
    }
    let ft = f.transpose();
    let words = f.rows().div_ceil(64).max(1);
    let cols: Vec<Vec<u64>> = (0..nv)
        .map(|j| {
            let mut w = ft.row_words(j).to_vec();
            w.resize(words, 0);
            w
        })
        .collect();
    let half = nv / 2;
    let mut acc = vec![0u64; words];
    let mut mask = 0u64;
    let mut size = 0usize;
    let mut best: Option<(Ratio, u64)> = None;
    for i in 1u64..(1u64 << nv) {
        let j = i.trailing_zeros() as usize;
        xor_into(&mut acc, &cols[j]);
        mask ^= 1 << j;
        if mask >> j & 1 == 1 {
            size += 1;
        } else {
            size -= 1;
        }
        if size == 0 || size > half {
            continue;
        }
        let r = Ratio::new(popcount(&acc), size);
        if best.map_or(true, |(b, _)| r < b) {
            best = Some((r, mask));
        }
    }
    let (beta, m) = best.expect("at least one subset");
    let witness = (0..nv).filter(|&j| m >> j & 1 == 1).collect();
    Ok(Cheeger { beta, witness })
}

/// Smallest odd `L` with `⌈L/2⌉ ≥ 1/β`.
pub fn min_layers(beta: Ratio) -> Result<usize> {
    if beta.num == 0 {
        return Err(Error::Invalid("expansion constant is zero".into()));
    }
    let t = beta.den.div_ceil(beta.num);
    Ok(2 * t - 1)
}

/// Rows spanning the left nullspace of `f`, greedily lightened by pairwise XOR.
#[must_use]
pub fn gauge_basis(f: &BitMatrix) -> BitMatrix {
    let mut rows: Vec<BitVector> = f.nullspace_basis().row_vectors().collect();
    loop {
        let mut improved = false;
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                if i == j {
                    continue;
                }
                let cand = rows[i].xor(&rows[j]);
                if cand.weight() < rows[i].weight() {
                    rows[i] = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    BitMatrix::from_rows(&rows, f.rows()).expect("rows have |C0| columns")
}

/// A lightest `t` with `t·f = target`, exhaustive over the nullspace when its
/// dimension is at most `budget`.
pub(crate) fn min_weight_solution(f: &BitMatrix, target: &BitVector, budget: usize) -> Option<BitVector> {
    let t = f.solve(target)?;
    let null: Vec<BitVector> = gauge_basis(f).row_vectors().collect();
    if null.len() <= budget {
        Some(crate::distance::enumerate::gray_min_weight(&t, &null).1)
    } else {
        let mut cur = t;
        loop {
            let mut improved = false;
            for g in &null {
                let c = cur.xor(g);
                if c.weight() < cur.weight() {
                    cur = c;
                    improved = true;
                }
            }
            if !improved {
                return Some(cur);
            }
        }
    }
}
