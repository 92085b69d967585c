//! Bivariate bicycle codes on the group `Z_l × Z_m` generated by `x` and `y`.
//!
//! Qubits are split into an `L` block followed by an `R` block; within a block
//! the monomial `x^i y^j` has index `i·m + j`. Transposition inverts a
//! monomial, `x^{-a} = x^{l-a}`.

use serde::{Deserialize, Serialize};

use crate::code::CssCode;
use crate::gf2::BitMatrix;
use crate::pauli::{PauliKind, PauliOperator};

/// A monomial `x^i y^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub usize, pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BBCodeSpec {
    pub l: usize,
    pub m: usize,
    pub a_terms: Vec<Monomial>,
    pub b_terms: Vec<Monomial>,
}

impl BBCodeSpec {
    #[must_use]
    pub fn group_order(&self) -> usize {
        self.l * self.m
    }

    #[must_use]
    pub fn n(&self) -> usize {
        2 * self.group_order()
    }

    #[must_use]
    pub fn reduce(&self, a: Monomial) -> Monomial {
        Monomial(a.0 % self.l, a.1 % self.m)
    }

    #[must_use]
    pub fn mul(&self, a: Monomial, b: Monomial) -> Monomial {
        Monomial((a.0 + b.0) % self.l, (a.1 + b.1) % self.m)
    }

    #[must_use]
    pub fn inv(&self, a: Monomial) -> Monomial {
        Monomial((self.l - a.0 % self.l) % self.l, (self.m - a.1 % self.m) % self.m)
    }

    #[must_use]
    pub fn index(&self, a: Monomial) -> usize {
        let a = self.reduce(a);
        a.0 * self.m + a.1
    }

    #[must_use]
    pub fn monomial(&self, index: usize) -> Monomial {
        Monomial(index / self.m, index % self.m)
    }

    /// Qubit index of `L(a)`.
    #[must_use]
    pub fn left(&self, a: Monomial) -> usize {
        self.index(a)
    }

    /// Qubit index of `R(a)`.
    #[must_use]
    pub fn right(&self, a: Monomial) -> usize {
        self.group_order() + self.index(a)
    }

    #[must_use]
    pub fn monomials(&self) -> Vec<Monomial> {
        (0..self.group_order()).map(|i| self.monomial(i)).collect()
    }

    /// `w · poly`.
    #[must_use]
    pub fn shift(&self, poly: &[Monomial], w: Monomial) -> Vec<Monomial> {
        poly.iter().map(|&a| self.mul(a, w)).collect()
    }

    /// `poly^T`.
    #[must_use]
    pub fn transpose(&self, poly: &[Monomial]) -> Vec<Monomial> {
        poly.iter().map(|&a| self.inv(a)).collect()
    }

    /// Operator of the given type on `L(left) ∪ R(right)`; repeated monomials cancel.
    #[must_use]
    pub fn operator(&self, kind: PauliKind, left: &[Monomial], right: &[Monomial]) -> PauliOperator {
        let mut idx: Vec<usize> = left.iter().map(|&a| self.left(a)).collect();
        idx.extend(right.iter().map(|&a| self.right(a)));
        PauliOperator::from_support(kind, self.n(), &idx)
    }
}

#[must_use]
pub fn bb_code(spec: &BBCodeSpec) -> CssCode {
    let lm = spec.group_order();
    let mut hx = BitMatrix::zeros(lm, spec.n());
    let mut hz = BitMatrix::zeros(lm, spec.n());
    for (row, a) in spec.monomials().into_iter().enumerate() {
        for &t in &spec.a_terms {
            hx.flip(row, spec.left(spec.mul(t, a)));
            hz.flip(row, spec.right(spec.mul(spec.inv(t), a)));
        }
        for &t in &spec.b_terms {
            hx.flip(row, spec.right(spec.mul(t, a)));
            hz.flip(row, spec.left(spec.mul(spec.inv(t), a)));
        }
    }
    CssCode { hx, hz, name: format!("bb(l={},m={})", spec.l, spec.m) }
}

/// Qubit permutation of the shift by `w`: `L(u) → L(wu)`, `R(u) → R(wu)`.
#[must_use]
pub fn bb_automorphism(spec: &BBCodeSpec, w: Monomial) -> Vec<usize> {
    let mut perm = vec![0; spec.n()];
    for a in spec.monomials() {
        perm[spec.left(a)] = spec.left(spec.mul(w, a));
        perm[spec.right(a)] = spec.right(spec.mul(w, a));
    }
    perm
}

/// ZX-duality: `L(u) → R(u^T)`, `R(u) → L(u^T)`, to be combined with an X/Z swap.
#[must_use]
pub fn bb_zx_duality(spec: &BBCodeSpec) -> Vec<usize> {
    let mut perm = vec![0; spec.n()];
    for a in spec.monomials() {
        perm[spec.left(a)] = spec.right(spec.inv(a));
        perm[spec.right(a)] = spec.left(spec.inv(a));
    }
    perm
}

/// The `[[144,12,12]]` gross code: `l = 12, m = 6, A = x³ + y + y², B = y³ + x + x²`.
#[must_use]
pub fn gross_spec() -> BBCodeSpec {
    BBCodeSpec {
        l: 12,
        m: 6,
        a_terms: vec![Monomial(3, 0), Monomial(0, 1), Monomial(0, 2)],
        b_terms: vec![Monomial(0, 3), Monomial(1, 0), Monomial(2, 0)],
    }
}

#[must_use]
pub fn gross_code() -> CssCode {
    let mut c = bb_code(&gross_spec());
    c.name = "gross".to_string();
    c
}

/// The mono-layer logical operators of the gross code and their duals.
#[derive(Clone, Debug)]
pub struct GrossOperators {
    pub xbar: PauliOperator,
    pub zbar: PauliOperator,
    pub xbar_dual: PauliOperator,
    pub zbar_dual: PauliOperator,
    pub p: Vec<Monomial>,
    pub q: Vec<Monomial>,
    pub r: Vec<Monomial>,
    pub s: Vec<Monomial>,
    /// Shift applied to the duals.
    pub w: Monomial,
}

fn monos(terms: &[(usize, usize)]) -> Vec<Monomial> {
    terms.iter().map(|&(i, j)| Monomial(i, j)).collect()
}

#[must_use]
pub fn gross_operators() -> GrossOperators {
    let spec = gross_spec();
    let p = monos(&[(0, 1), (1, 5), (2, 2), (2, 4), (3, 1), (3, 2), (4, 1), (4, 2), (9, 3), (10, 0), (11, 0), (11, 3)]);
    let q = monos(&[(0, 2), (1, 1), (1, 5), (6, 0)]);
    let r = monos(&[(2, 3), (2, 5), (3, 0), (3, 3), (3, 4), (3, 5)]);
    let s = monos(&[(1, 3), (1, 5), (2, 0), (2, 4), (3, 2), (3, 4)]);
    let w = Monomial(10, 5);
    let xbar = spec.operator(PauliKind::X, &p, &q);
    let zbar = spec.operator(PauliKind::Z, &r, &s);
    let xbar_dual = spec.operator(PauliKind::X, &spec.shift(&spec.transpose(&s), w), &spec.shift(&spec.transpose(&r), w));
    let zbar_dual = spec.operator(PauliKind::Z, &spec.shift(&spec.transpose(&q), w), &spec.shift(&spec.transpose(&p), w));
    GrossOperators { xbar, zbar, xbar_dual, zbar_dual, p, q, r, s, w }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gross_parameters() {
        let code = gross_code();
        assert_eq!(code.n(), 144);
        assert!(code.validate().is_ok());
        assert_eq!(code.num_logicals(), 12);
        assert_eq!(code.hx.rank(), 66);
        for i in 0..72 {
            assert_eq!(code.hx.row_weight(i), 6);
            assert_eq!(code.hz.row_weight(i), 6);
        }
    }

    #[test]
    fn gross_operators_are_logical() {
        let code = gross_code();
        let ops = gross_operators();
        for op in [&ops.xbar, &ops.zbar, &ops.xbar_dual, &ops.zbar_dual] {
            assert!(code.is_nontrivial_logical(op), "{op:?}");
        }
        assert_eq!(ops.xbar.weight(), 16);
        assert_eq!(ops.zbar.weight(), 12);
        let spec = gross_spec();
        let overlap = ops.xbar.xbits().and(ops.zbar.zbits()).ones_indices();
        assert_eq!(overlap, vec![spec.right(Monomial(1, 5))]);
        let overlap_dual = ops.xbar_dual.xbits().and(ops.zbar_dual.zbits()).weight();
        assert_eq!(overlap_dual, 1);
        assert!(ops.xbar.xbits().and(ops.xbar_dual.xbits()).is_zero());
    }

    #[test]
    fn automorphisms_preserve_check_sets() {
        let spec = gross_spec();
        let code = bb_code(&spec);
        let rows = |m: &BitMatrix| {
            let mut v: Vec<Vec<usize>> = (0..m.rows()).map(|i| m.row_support(i)).collect();
            v.sort();
            v
        };
        let shift = bb_automorphism(&spec, Monomial(1, 0));
        let permuted = |m: &BitMatrix, perm: &[usize]| {
            let sup: Vec<Vec<usize>> = (0..m.rows()).map(|i| m.row_support(i).iter().map(|&q| perm[q]).collect()).collect();
            BitMatrix::from_supports(m.cols(), &sup)
        };
        assert_eq!(rows(&permuted(&code.hx, &shift)), rows(&code.hx));
        let dual = bb_zx_duality(&spec);
        assert_eq!(rows(&permuted(&code.hx, &dual)), rows(&code.hz));
        let twice: Vec<usize> = (0..spec.n()).map(|i| dual[dual[i]]).collect();
        assert_eq!(twice, (0..spec.n()).collect::<Vec<_>>());
        assert_eq!(bb_automorphism(&spec, Monomial(0, 0)), (0..spec.n()).collect::<Vec<_>>());
    }

    #[test]
    fn degenerate_spec_validates() {
        let spec = BBCodeSpec { l: 3, m: 2, a_terms: vec![Monomial(1, 0)], b_terms: vec![Monomial(0, 1)] };
        assert!(bb_code(&spec).validate().is_ok());
    }
}
