//! CSS codes, logical operators and induced Tanner graphs.

mod bb;
mod hgp;
pub mod io;

pub use bb::{bb_automorphism, bb_code, bb_zx_duality, gross_code, gross_operators, gross_spec, BBCodeSpec, GrossOperators, Monomial};
pub use hgp::{hgp, hgp_logical_basis, circulant, repetition_parity};

use serde::Serialize;

use crate::distance::enumerate::gray_min_weight;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, EchelonBasis, Solver};
use crate::pauli::{PauliKind, PauliOperator};

/// A CSS code given by its two check matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    pub hx: BitMatrix,
    pub hz: BitMatrix,
    pub name: String,
}

impl CssCode {
    pub fn new(hx: BitMatrix, hz: BitMatrix, name: impl Into<String>) -> Result<Self> {
        if hx.cols() != hz.cols() {
            return Err(Error::Shape(format!("hx has {} columns, hz has {}", hx.cols(), hz.cols())));
        }
        Ok(Self { hx, hz, name: name.into() })
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.hx.cols()
    }

    #[must_use]
    pub fn checks(&self, kind: PauliKind) -> &BitMatrix {
        match kind {
            PauliKind::X => &self.hx,
            PauliKind::Z => &self.hz,
        }
    }

    /// All anticommuting `(x-check, z-check)` pairs; empty means the code is valid.
    #[must_use]
    pub fn violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.hx.rows() {
            let xi = self.hx.row(i);
            for j in 0..self.hz.rows() {
                if xi.dot(&self.hz.row(j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<(usize, usize)>> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }

    #[must_use]
    pub fn num_logicals(&self) -> usize {
        self.n() - self.hx.rank() - self.hz.rank()
    }

    /// The code with X and Z exchanged.
    #[must_use]
    pub fn dual(&self) -> Self {
        Self { hx: self.hz.clone(), hz: self.hx.clone(), name: format!("{}^dual", self.name) }
    }

    /// Two codes side by side on disjoint qubits.
    #[must_use]
    pub fn direct_sum(&self, other: &Self) -> Self {
        let block = |a: &BitMatrix, b: &BitMatrix| {
            let mut m = BitMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
            for i in 0..a.rows() {
                for j in a.row(i).iter_ones() {
                    m.set(i, j, true);
                }
            }
            for i in 0..b.rows() {
                for j in b.row(i).iter_ones() {
                    m.set(a.rows() + i, a.cols() + j, true);
                }
            }
            m
        };
        Self {
            hx: block(&self.hx, &other.hx),
            hz: block(&self.hz, &other.hz),
            name: format!("{}+{}", self.name, other.name),
        }
    }

    /// Errors with the first anticommuting check if `op` is not in the normalizer.
    pub fn check_commutes(&self, op: &PauliOperator) -> Result<()> {
        if op.num_qubits() != self.n() {
            return Err(Error::Shape(format!("operator on {} qubits, code has {}", op.num_qubits(), self.n())));
        }
        if let Some(i) = (0..self.hz.rows()).find(|&i| dot_row(&self.hz, i, op.xbits())) {
            return Err(Error::NotLogical { kind: 'Z', index: i });
        }
        if let Some(i) = (0..self.hx.rows()).find(|&i| dot_row(&self.hx, i, op.zbits())) {
            return Err(Error::NotLogical { kind: 'X', index: i });
        }
        Ok(())
    }

    #[must_use]
    pub fn commutes_with_checks(&self, op: &PauliOperator) -> bool {
        self.check_commutes(op).is_ok()
    }

    /// Whether `op` is a stabilizer up to phase.
    #[must_use]
    pub fn is_stabilizer(&self, op: &PauliOperator) -> bool {
        self.hx.in_rowspace(op.xbits()) && self.hz.in_rowspace(op.zbits())
    }

    /// Whether `op` is a logical operator outside the stabilizer group.
    #[must_use]
    pub fn is_nontrivial_logical(&self, op: &PauliOperator) -> bool {
        self.commutes_with_checks(op) && !self.is_stabilizer(op)
    }
}

fn dot_row(m: &BitMatrix, i: usize, v: &BitVector) -> bool {
    crate::gf2::dot_words(m.row_words(i), v.words())
}

/// A symplectic basis of logical operators: `xops[i]` anticommutes with
/// `zops[i]` and commutes with every other element.
#[derive(Clone, Debug, Default)]
pub struct LogicalBasis {
    pub xops: Vec<PauliOperator>,
    pub zops: Vec<PauliOperator>,
}

impl LogicalBasis {
    #[must_use]
    pub fn len(&self) -> usize {
        self.xops.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.xops.is_empty()
    }

    /// Symplectic Gram matrix entry check: `xops[i]` vs `zops[j]` anticommute iff `i == j`,
    /// and X–X, Z–Z pairs all commute.
    #[must_use]
    pub fn is_symplectic(&self) -> bool {
        let k = self.len();
        for i in 0..k {
            for j in 0..k {
                if self.xops[i].commutes_with(&self.zops[j]) == (i == j) {
                    return false;
                }
                if i < j && (!self.xops[i].commutes_with(&self.xops[j]) || !self.zops[i].commutes_with(&self.zops[j])) {
                    return false;
                }
            }
        }
        true
    }
}

/// Pairs up operators into anticommuting pairs, cleaning later operators
/// against each chosen pair. Operators left without a partner are dropped.
/// Pure operators stay pure when the input pairs are X/Z.
#[must_use]
pub fn symplectic_gram_schmidt(ops: Vec<PauliOperator>) -> Vec<(PauliOperator, PauliOperator)> {
    let mut pool: Vec<PauliOperator> = ops;
    let mut pairs = Vec::new();
    while !pool.is_empty() {
        let v = pool.remove(0);
        let Some(pos) = pool.iter().position(|w| !w.commutes_with(&v)) else {
            continue;
        };
        let w = pool.remove(pos);
        for u in &mut pool {
            let cu_w = !u.commutes_with(&w);
            let cu_v = !u.commutes_with(&v);
            if cu_w {
                u.mul_assign_unsigned(&v);
            }
            if cu_v {
                u.mul_assign_unsigned(&w);
            }
        }
        pairs.push((v, w));
    }
    pairs
}

/// Basis of pure `kind` logical operators modulo stabilizers.
#[must_use]
pub fn pure_logicals(code: &CssCode, kind: PauliKind) -> Vec<BitVector> {
    let same = code.checks(kind);
    let opposite = code.checks(kind.other());
    let mut span = EchelonBasis::new(code.n());
    for r in same.row_vectors() {
        span.insert(&r);
    }
    let mut out = Vec::new();
    for v in opposite.kernel().row_vectors() {
        if span.insert(&v) {
            out.push(v);
        }
    }
    out
}

/// A symplectic logical basis of pure X and pure Z operators.
#[must_use]
pub fn logical_basis(code: &CssCode) -> LogicalBasis {
    let xs: Vec<PauliOperator> = pure_logicals(code, PauliKind::X).into_iter().map(|v| PauliOperator::pure(PauliKind::X, v)).collect();
    let zs: Vec<PauliOperator> = pure_logicals(code, PauliKind::Z).into_iter().map(|v| PauliOperator::pure(PauliKind::Z, v)).collect();
    pair_against(xs, zs)
}

/// Completes given X logicals with Z partners drawn from `zs` so that the
/// result is symplectic; `xs` is kept verbatim.
pub(crate) fn pair_against(xs: Vec<PauliOperator>, zs: Vec<PauliOperator>) -> LogicalBasis {
    let k = xs.len();
    assert_eq!(k, zs.len(), "X and Z logical counts differ");
    if k == 0 {
        return LogicalBasis::default();
    }
    let mut m = BitMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            if !xs[i].commutes_with(&zs[j]) {
                m.set(i, j, true);
            }
        }
    }
    // transform · m = I, so transform = m^{-1}; partner j is Σ_l (m^{-1})_{lj} z_l.
    let red = m.row_reduce();
    assert_eq!(red.rank(), k, "logical pairing matrix is singular");
    let inv = red.transform;
    let n = xs[0].num_qubits();
    let mut out_z = Vec::with_capacity(k);
    for j in 0..k {
        let mut acc = PauliOperator::identity(n);
        for l in 0..k {
            if inv.get(l, j) {
                acc.mul_assign_unsigned(&zs[l]);
            }
        }
        out_z.push(acc);
    }
    LogicalBasis { xops: xs, zops: out_z }
}

/// A symplectic basis whose first pair is the given anticommuting pure pair.
pub fn logical_basis_with_leading(code: &CssCode, xbar: &PauliOperator, zbar: &PauliOperator) -> Result<LogicalBasis> {
    code.check_commutes(xbar)?;
    code.check_commutes(zbar)?;
    if xbar.commutes_with(zbar) {
        return Err(Error::Invalid("leading pair must anticommute".into()));
    }
    let mut ops = vec![xbar.clone(), zbar.clone()];
    ops.extend(pure_logicals(code, PauliKind::X).into_iter().map(|v| PauliOperator::pure(PauliKind::X, v)));
    ops.extend(pure_logicals(code, PauliKind::Z).into_iter().map(|v| PauliOperator::pure(PauliKind::Z, v)));
    let pairs = symplectic_gram_schmidt(ops);
    let mut basis = LogicalBasis::default();
    for (a, b) in pairs {
        let (x, z) = if a.zbits().is_zero() { (a, b) } else { (b, a) };
        basis.xops.push(x);
        basis.zops.push(z);
    }
    if basis.len() != code.num_logicals() {
        return Err(Error::Internal(format!("basis has {} pairs, expected {}", basis.len(), code.num_logicals())));
    }
    Ok(basis)
}

/// The restriction of the Tanner graph to a logical operator's support and
/// the opposite-type checks touching it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedGraph {
    #[serde(skip)]
    pub f: BitMatrix,
    pub v0: Vec<usize>,
    pub c0: Vec<usize>,
}

/// Determines whether `op` is pure X or pure Z.
pub fn pure_kind(op: &PauliOperator) -> Result<PauliKind> {
    if op.zbits().is_zero() && !op.xbits().is_zero() {
        Ok(PauliKind::X)
    } else if op.xbits().is_zero() && !op.zbits().is_zero() {
        Ok(PauliKind::Z)
    } else {
        Err(Error::Invalid("operator is not pure X or pure Z".into()))
    }
}

pub fn induced_graph(code: &CssCode, op: &PauliOperator, kind: PauliKind) -> Result<InducedGraph> {
    if !op.is_pure(kind) {
        return Err(Error::WrongType(kind.letter()));
    }
    code.check_commutes(op)?;
    let support = op.part(kind);
    let v0 = support.ones_indices();
    let checks = code.checks(kind.other());
    let c0: Vec<usize> = (0..checks.rows())
        .filter(|&i| checks.row_words(i).iter().zip(support.words()).any(|(a, b)| a & b != 0))
        .collect();
    let f = checks.submatrix(&c0, &v0)?;
    Ok(InducedGraph { f, v0, c0 })
}

/// True iff the column nullspace of the induced graph is `{0, all-ones}`.
pub fn is_irreducible(code: &CssCode, op: &PauliOperator) -> Result<bool> {
    let kind = pure_kind(op)?;
    let g = induced_graph(code, op, kind)?;
    if code.is_stabilizer(op) {
        return Err(Error::TrivialLogical);
    }
    Ok(g.f.kernel().rows() == 1)
}

/// Result of [`reduce_weight`].
#[derive(Clone, Debug)]
pub struct Reduced {
    pub op: PauliOperator,
    /// True when the stabilizer group was enumerated completely.
    pub exact: bool,
}

/// Finds a lighter representative of `op` modulo stabilizers of the same type.
/// Exhaustive when the stabilizer dimension is at most `budget`, greedy
/// single-generator descent otherwise.
pub fn reduce_weight(code: &CssCode, op: &PauliOperator, budget: usize) -> Result<Reduced> {
    code.check_commutes(op)?;
    let kind = pure_kind(op)?;
    let checks = code.checks(kind);
    let v = op.part(kind).clone();
    let basis = independent_rows(checks);
    let (best, exact) = if basis.len() <= budget {
        let (_, w) = gray_min_weight(&v, &basis);
        (w, true)
    } else {
        (greedy_descent(&v, &basis), false)
    };
    let diff = best.xor(&v);
    if Solver::new(checks).solve(&diff).is_none() {
        return Err(Error::Internal("reduced operator is not stabilizer-equivalent".into()));
    }
    Ok(Reduced { op: PauliOperator::pure(kind, best), exact })
}

pub(crate) fn independent_rows(m: &BitMatrix) -> Vec<BitVector> {
    let mut span = EchelonBasis::new(m.cols());
    m.row_vectors().filter(|r| span.insert(r)).collect()
}

fn greedy_descent(v: &BitVector, gens: &[BitVector]) -> BitVector {
    let mut cur = v.clone();
    let mut w = cur.weight();
    loop {
        let mut improved = false;
        for g in gens {
            let cand = cur.xor(g);
            let cw = cand.weight();
            if cw < w {
                cur = cand;
                w = cw;
                improved = true;
            }
        }
        if !improved {
            return cur;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep3() -> BitMatrix {
        BitMatrix::from_dense(&[[1u8, 1, 0], [0, 1, 1]])
    }

    #[test]
    fn validate_examples() {
        let ok = CssCode::new(BitMatrix::from_dense(&[[1u8, 1]]), BitMatrix::from_dense(&[[1u8, 1]]), "t").unwrap();
        assert!(ok.validate().is_ok());
        let bad = CssCode::new(BitMatrix::from_dense(&[[1u8, 0]]), BitMatrix::from_dense(&[[1u8, 0]]), "t").unwrap();
        assert_eq!(bad.validate().unwrap_err(), vec![(0, 0)]);
    }

    #[test]
    fn logical_basis_is_symplectic() {
        let code = hgp(&circulant(3));
        let b = logical_basis(&code);
        assert_eq!(b.len(), 2);
        assert!(b.is_symplectic());
        for op in b.xops.iter().chain(&b.zops) {
            assert!(code.is_nontrivial_logical(op));
        }
        let empty = hgp(&BitMatrix::identity(1));
        assert!(logical_basis(&empty).is_empty());
    }

    #[test]
    fn induced_graph_of_rep3_logical_is_a_path() {
        let code = hgp(&rep3());
        let x = hgp_logical_basis(&rep3()).xops[0].clone();
        assert_eq!(x.weight(), 3);
        let g = induced_graph(&code, &x, PauliKind::X).unwrap();
        assert_eq!(g.v0.len(), 3);
        assert_eq!(g.c0.len(), 2);
        for i in 0..2 {
            assert_eq!(g.f.row_weight(i), 2);
        }
        assert!(is_irreducible(&code, &x).unwrap());
    }

    #[test]
    fn induced_graph_of_toric_logical_is_a_cycle() {
        let code = hgp(&circulant(3));
        let x = hgp_logical_basis(&circulant(3)).xops[0].clone();
        let g = induced_graph(&code, &x, PauliKind::X).unwrap();
        assert_eq!((g.c0.len(), g.v0.len()), (3, 3));
        assert_eq!(g.f.nullspace_basis().rows(), 1);
    }

    #[test]
    fn reducible_and_non_logical_operators() {
        let code = hgp(&circulant(3));
        let b = hgp_logical_basis(&circulant(3));
        let prod = b.xops[0].mul(&b.xops[1]);
        // the two basis logicals of the toric code have disjoint supports
        assert_eq!(prod.weight(), 6);
        assert!(!is_irreducible(&code, &prod).unwrap());
        let stab = PauliOperator::pure(PauliKind::X, code.hx.row(0));
        assert!(matches!(is_irreducible(&code, &stab), Err(Error::TrivialLogical)));
        let single = PauliOperator::from_support(PauliKind::X, code.n(), &[0]);
        assert!(matches!(induced_graph(&code, &single, PauliKind::X), Err(Error::NotLogical { .. })));
    }

    #[test]
    fn reduce_weight_examples() {
        let code = hgp(&rep3());
        let x = hgp_logical_basis(&rep3()).xops[0].clone();
        let fixed = reduce_weight(&code, &x, 20).unwrap();
        assert_eq!(fixed.op.weight(), 3);
        assert!(fixed.exact);
        let mut heavy = x.clone();
        heavy.mul_assign_unsigned(&PauliOperator::pure(PauliKind::X, code.hx.row(1)));
        let r = reduce_weight(&code, &heavy, 20).unwrap();
        assert_eq!(r.op.weight(), 3);
        let g = reduce_weight(&code, &heavy, 0).unwrap();
        assert!(!g.exact);
        assert!(g.op.weight() <= heavy.weight());
    }

    #[test]
    fn direct_sum_adds_logicals() {
        let a = hgp(&rep3());
        let s = a.direct_sum(&a);
        assert_eq!(s.n(), 26);
        assert_eq!(s.num_logicals(), 2);
        assert!(s.validate().is_ok());
    }
}
