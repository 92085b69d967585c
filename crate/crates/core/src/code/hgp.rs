//! Hypergraph products of a classical parity-check matrix with itself.
//!
//! For `h` of shape `m × n` the code has `n² + m²` qubits: the left block is
//! indexed `a·n + b` and the right block `n² + a·m + b`.

use crate::code::{pair_against, pure_logicals, CssCode, LogicalBasis};
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::{PauliKind, PauliOperator};

/// `(n−1) × n` parity checks of the length-`n` repetition code.
#[must_use]
pub fn repetition_parity(n: usize) -> BitMatrix {
    let mut h = BitMatrix::zeros(n.saturating_sub(1), n);
    for i in 0..n.saturating_sub(1) {
        h.set(i, i, true);
        h.set(i, i + 1, true);
    }
    h
}

/// `n × n` cyclic repetition checks; its product with itself is the toric code.
#[must_use]
pub fn circulant(n: usize) -> BitMatrix {
    let mut h = BitMatrix::zeros(n, n);
    for i in 0..n {
        h.set(i, i, true);
        h.flip(i, (i + 1) % n);
    }
    h
}

#[must_use]
pub fn hgp(h: &BitMatrix) -> CssCode {
    let (m, n) = h.shape();
    let ht = h.transpose();
    let hz = h.kron(&BitMatrix::identity(n)).stack_cols(&BitMatrix::identity(m).kron(&ht)).expect("rows m·n");
    let hx = BitMatrix::identity(n).kron(h).stack_cols(&ht.kron(&BitMatrix::identity(m))).expect("rows n·m");
    CssCode { hx, hz, name: format!("hgp({m}x{n})") }
}

/// Columns of `h` that are not pivots of its reduced row echelon form.
fn non_pivots(h: &BitMatrix) -> Vec<usize> {
    let piv = h.row_reduce().pivots;
    (0..h.cols()).filter(|c| !piv.contains(c)).collect()
}

/// The explicit product basis of X logicals, with Z partners completed
/// symplectically.
#[must_use]
pub fn hgp_logical_basis(h: &BitMatrix) -> LogicalBasis {
    let (m, n) = h.shape();
    let total = n * n + m * m;
    let ht = h.transpose();
    let mut xs = Vec::new();
    for w in h.kernel().row_vectors() {
        for r in non_pivots(h) {
            let mut v = BitVector::zeros(total);
            for a in w.iter_ones() {
                v.set(a * n + r, true);
            }
            xs.push(PauliOperator::pure(PauliKind::X, v));
        }
    }
    for v in ht.kernel().row_vectors() {
        for s in non_pivots(&ht) {
            let mut x = BitVector::zeros(total);
            for b in v.iter_ones() {
                x.set(n * n + s * m + b, true);
            }
            xs.push(PauliOperator::pure(PauliKind::X, x));
        }
    }
    let code = hgp(h);
    let zs = pure_logicals(&code, PauliKind::Z).into_iter().map(|v| PauliOperator::pure(PauliKind::Z, v)).collect();
    pair_against(xs, zs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters_of_small_products() {
        let rep3 = hgp(&repetition_parity(3));
        assert_eq!((rep3.n(), rep3.num_logicals()), (13, 1));
        assert!(rep3.validate().is_ok());
        let toric = hgp(&circulant(3));
        assert_eq!((toric.n(), toric.num_logicals()), (18, 2));
        let trivial = hgp(&BitMatrix::identity(1));
        assert_eq!((trivial.n(), trivial.num_logicals()), (2, 0));
    }

    #[test]
    fn rep3_basis_logical_sits_on_last_column() {
        let b = hgp_logical_basis(&repetition_parity(3));
        assert_eq!(b.len(), 1);
        assert_eq!(b.xops[0].xbits().ones_indices(), vec![2, 5, 8]);
        assert!(b.is_symplectic());
    }

    #[test]
    fn full_rank_square_has_no_logicals() {
        assert!(hgp_logical_basis(&BitMatrix::identity(3)).is_empty());
    }

    #[test]
    fn circulant_basis_has_two_weight_three_logicals() {
        let b = hgp_logical_basis(&circulant(3));
        assert_eq!(b.len(), 2);
        assert!(b.xops.iter().all(|x| x.weight() == 3));
    }
}
