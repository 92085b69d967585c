//! Minimum weights of logical classes, cosets and fault sets.
//!
//! Groups are handled through their symplectic rows. A type filter restricts
//! a group to its pure X or pure Z elements, which are again a linear space.
//! Small spans are enumerated completely; larger ones are searched by support
//! size up to a caller-given weight, which yields a lower bound on failure.

pub mod enumerate;
mod fault;
mod isd;

use serde::Serialize;

use crate::code::{pure_logicals, CssCode};
use crate::gf2::{BitMatrix, BitVector, EchelonBasis};
use crate::pauli::{PauliKind, PauliOperator};

use enumerate::SupportSearch;

pub use fault::{fault_distance_exhaustive, subsystem_fault_distances, subsystem_fault_distances_generic, ExhaustiveFaults, FaultDistances};
pub use isd::{default_isd_budget, probabilistic_distance_lower_bound, IsdBudget, IsdOutcome, IsdProblem, DEFAULT_ISD_SECONDS};

/// Spans up to this dimension are enumerated element by element.
pub const GRAY_LIMIT: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GroupLabel {
    /// Stabilizers before the merge.
    S,
    /// Merged-code stabilizers.
    SMerged,
    /// Stabilizers before the merge together with the measured operator.
    SPrime,
    /// Both of the above.
    U,
    Logical,
    Other,
}

#[derive(Clone, Debug)]
pub struct PauliGroupSpec {
    pub generators: Vec<PauliOperator>,
    pub label: GroupLabel,
}

impl PauliGroupSpec {
    #[must_use]
    pub fn new(generators: Vec<PauliOperator>, label: GroupLabel) -> Self {
        Self { generators, label }
    }

    /// The group generated by both, labelled `label`.
    #[must_use]
    pub fn join(&self, other: &Self, label: GroupLabel) -> Self {
        Self { generators: self.generators.iter().chain(&other.generators).cloned().collect(), label }
    }

    #[must_use]
    pub fn num_qubits(&self) -> usize {
        self.generators.first().map_or(0, PauliOperator::num_qubits)
    }

    #[must_use]
    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TypeFilter {
    X,
    Z,
    Any,
}

impl From<PauliKind> for TypeFilter {
    fn from(k: PauliKind) -> Self {
        match k {
            PauliKind::X => Self::X,
            PauliKind::Z => Self::Z,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DistanceValue {
    Exact(usize),
    AtLeast(usize),
    AtMost(usize),
    /// The searched set is empty.
    Undefined,
}

impl DistanceValue {
    /// The value when exact.
    #[must_use]
    pub fn exact(self) -> Option<usize> {
        match self {
            Self::Exact(w) => Some(w),
            _ => None,
        }
    }

    /// Lower bound implied by the value; empty sets are unbounded.
    #[must_use]
    pub fn lower(self) -> Option<usize> {
        match self {
            Self::Exact(w) | Self::AtLeast(w) => Some(w),
            Self::AtMost(_) => Some(0),
            Self::Undefined => None,
        }
    }

    /// Minimum of two results, treating `Undefined` as infinity.
    #[must_use]
    pub fn min(self, other: Self) -> Self {
        use DistanceValue::{AtLeast, AtMost, Exact, Undefined};
        match (self, other) {
            (Undefined, o) | (o, Undefined) => o,
            (Exact(a), Exact(b)) => Exact(a.min(b)),
            (Exact(a), AtLeast(b)) | (AtLeast(b), Exact(a)) => {
                if a <= b {
                    Exact(a)
                } else {
                    AtLeast(b)
                }
            }
            (AtLeast(a), AtLeast(b)) => AtLeast(a.min(b)),
            (AtMost(a), o) | (o, AtMost(a)) => match o {
                Exact(b) | AtMost(b) => AtMost(a.min(b)),
                _ => AtMost(a),
            },
        }
    }
}

impl std::fmt::Display for DistanceValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Exact(w) => write!(f, "{w}"),
            Self::AtLeast(w) => write!(f, ">={w}"),
            Self::AtMost(w) => write!(f, "<={w}"),
            Self::Undefined => write!(f, "undefined"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DistanceResult {
    pub value: DistanceValue,
    pub exact: bool,
    pub witness: Option<PauliOperator>,
    /// Elements or supports examined.
    pub budget_spent: u128,
}

impl DistanceResult {
    fn undefined() -> Self {
        Self { value: DistanceValue::Undefined, exact: true, witness: None, budget_spent: 0 }
    }

    /// Whichever of the two has the smaller value, keeping its witness.
    #[must_use]
    pub fn min(self, other: Self) -> Self {
        let value = self.value.min(other.value);
        let spent = self.budget_spent + other.budget_spent;
        let exact = value.exact().is_some();
        let witness = if value == self.value { self.witness } else { other.witness };
        Self { value, exact, witness, budget_spent: spent }
    }

    /// Caps the value at `r` (exact).
    #[must_use]
    pub fn cap(self, r: usize) -> Self {
        match self.value {
            DistanceValue::Exact(w) if w <= r => self,
            DistanceValue::AtMost(w) if w <= r => self,
            _ => Self { value: DistanceValue::Exact(r), exact: true, witness: None, budget_spent: self.budget_spent },
        }
    }
}

/// Vectors used for a filtered search: plain parts of one type, or symplectic rows.
fn project(ops: &[PauliOperator], filter: TypeFilter) -> Vec<BitVector> {
    ops.iter()
        .map(|o| match filter {
            TypeFilter::X => o.xbits().clone(),
            TypeFilter::Z => o.zbits().clone(),
            TypeFilter::Any => o.symplectic(),
        })
        .collect()
}

fn width(n: usize, filter: TypeFilter) -> usize {
    if filter == TypeFilter::Any {
        2 * n
    } else {
        n
    }
}

fn weight(v: &BitVector, filter: TypeFilter) -> usize {
    if filter == TypeFilter::Any {
        let n = v.len() / 2;
        let mut w = 0;
        for q in 0..n {
            if v.get(q) || v.get(n + q) {
                w += 1;
            }
        }
        w
    } else {
        v.weight()
    }
}

fn to_operator(v: &BitVector, filter: TypeFilter) -> PauliOperator {
    match filter {
        TypeFilter::X => PauliOperator::pure(PauliKind::X, v.clone()),
        TypeFilter::Z => PauliOperator::pure(PauliKind::Z, v.clone()),
        TypeFilter::Any => PauliOperator::from_symplectic(v),
    }
}

fn matrix(rows: &[BitVector], cols: usize) -> BitMatrix {
    BitMatrix::from_rows(rows, cols).expect("uniform row length")
}

/// Pure `filter`-type elements of `⟨gens⟩` as vectors (all of them for `Any`).
fn filtered_span(gens: &[PauliOperator], n: usize, filter: TypeFilter) -> Vec<BitVector> {
    let (keep, kill) = match filter {
        TypeFilter::Any => return independent(&project(gens, TypeFilter::Any), 2 * n),
        TypeFilter::X => (TypeFilter::X, TypeFilter::Z),
        TypeFilter::Z => (TypeFilter::Z, TypeFilter::X),
    };
    if gens.is_empty() {
        return Vec::new();
    }
    let killm = matrix(&project(gens, kill), n);
    let keepm = matrix(&project(gens, keep), n);
    let combos = killm.nullspace_basis();
    let rows: Vec<BitVector> = combos.row_vectors().map(|c| keepm.left_mul(&c)).collect();
    independent(&rows, n)
}

/// The `filter`-type elements of `offset·⟨gens⟩`: a particular element and
/// the filtered span, or `None` when there are none.
fn filtered_coset(offset: &PauliOperator, gens: &[PauliOperator], n: usize, filter: TypeFilter) -> Option<(BitVector, Vec<BitVector>)> {
    let span = filtered_span(gens, n, filter);
    let (keep, kill) = match filter {
        TypeFilter::Any => return Some((offset.symplectic(), span)),
        TypeFilter::X => (offset.xbits(), offset.zbits()),
        TypeFilter::Z => (offset.zbits(), offset.xbits()),
    };
    let kill_kind = if filter == TypeFilter::X { TypeFilter::Z } else { TypeFilter::X };
    let keep_kind = if filter == TypeFilter::X { TypeFilter::X } else { TypeFilter::Z };
    let mut particular = keep.clone();
    if !kill.is_zero() {
        if gens.is_empty() {
            return None;
        }
        let c = matrix(&project(gens, kill_kind), n).solve(kill)?;
        particular.xor_assign(&matrix(&project(gens, keep_kind), n).left_mul(&c));
    }
    Some((particular, span))
}

/// A maximal independent subset, in order.
fn independent(rows: &[BitVector], cols: usize) -> Vec<BitVector> {
    let mut e = EchelonBasis::new(cols);
    rows.iter().filter(|r| e.insert(r)).cloned().collect()
}

/// Minimum weight over `offset + span(gens)`, skipping `offset + span(inner)`
/// when `outside` is set (then `offset` is zero and `gens` extends `inner`).
fn gray_search(offset: &BitVector, outer: &[BitVector], inner: &[BitVector], filter: TypeFilter, outside: bool) -> Option<(usize, BitVector, u128)> {
    // outer[..k] are independent of inner; enumerate a over 2^k, b over inner.
    let k = outer.len();
    let gens: Vec<&BitVector> = outer.iter().chain(inner).collect();
    let total = gens.len();
    let mut cur = offset.clone();
    let mut amask = 0u64;
    let mut best: Option<(usize, BitVector)> = None;
    let mut consider = |cur: &BitVector, amask: u64| {
        if outside && amask == 0 {
            return;
        }
        let w = weight(cur, filter);
        if best.as_ref().map_or(true, |(bw, _)| w < *bw) {
            best = Some((w, cur.clone()));
        }
    };
    consider(&cur, amask);
    for i in 1u64..(1u64 << total) {
        let g = i.trailing_zeros() as usize;
        cur.xor_assign(gens[g]);
        if g < k {
            amask ^= 1 << g;
        }
        consider(&cur, amask);
    }
    best.map(|(w, v)| (w, v, 1u128 << total))
}

/// Support search for `v ∈ offset + span(all)` (and `v ∉ span(inner)` when `outside`).
fn support_search(offset: &BitVector, all: &[BitVector], inner: &[BitVector], filter: TypeFilter, outside: bool, wmax: usize) -> (Option<BitVector>, u128) {
    let cols = offset.len();
    let checks = if all.is_empty() { BitMatrix::identity(cols) } else { matrix(all, cols).kernel() };
    let target = checks.mul_vec(offset);
    let detect = if outside {
        if inner.is_empty() {
            BitMatrix::identity(cols)
        } else {
            matrix(inner, cols).kernel()
        }
    } else {
        BitMatrix::zeros(0, cols)
    };
    let (s, units) = if filter == TypeFilter::Any {
        (SupportSearch::symplectic(&checks, &detect, &target), 3)
    } else {
        (SupportSearch::new(&checks, &detect, &target), 1)
    };
    let n_own = cols / if filter == TypeFilter::Any { 2 } else { 1 };
    let spent = enumerate::supports_up_to(n_own * units, wmax);
    let found = s.search(wmax).map(|sup| {
        let mut v = BitVector::zeros(cols);
        for j in sup {
            if units == 3 {
                let q = j / 3;
                let n = cols / 2;
                match j % 3 {
                    0 => v.flip(q),
                    1 => v.flip(n + q),
                    _ => {
                        v.flip(q);
                        v.flip(n + q);
                    }
                }
            } else {
                v.flip(j);
            }
        }
        v
    });
    (found, spent)
}

fn finish(found: Option<(usize, BitVector)>, filter: TypeFilter, wmax: usize, exhaustive: bool, spent: u128) -> DistanceResult {
    match found {
        Some((w, v)) => DistanceResult { value: DistanceValue::Exact(w), exact: true, witness: Some(to_operator(&v, filter)), budget_spent: spent },
        None if exhaustive => DistanceResult { budget_spent: spent, ..DistanceResult::undefined() },
        None => DistanceResult { value: DistanceValue::AtLeast(wmax + 1), exact: false, witness: None, budget_spent: spent },
    }
}

/// Minimum weight over `offset · ⟨stab, logicals⟩` restricted to `filter`-type elements.
#[must_use]
pub fn coset_min_weight(stab: &PauliGroupSpec, logicals: &[PauliOperator], offset: &PauliOperator, filter: TypeFilter, wmax: usize) -> DistanceResult {
    let n = offset.num_qubits();
    let gens: Vec<PauliOperator> = stab.generators.iter().chain(logicals).cloned().collect();
    let Some((o, span)) = filtered_coset(offset, &gens, n, filter) else {
        return DistanceResult::undefined();
    };
    if span.len() <= GRAY_LIMIT {
        let best = gray_search(&o, &span, &[], filter, false).expect("nonempty coset");
        return finish(Some((best.0, best.1)), filter, wmax, true, best.2);
    }
    let (found, spent) = support_search(&o, &span, &[], filter, false, wmax);
    finish(found.map(|v| (weight(&v, filter), v)), filter, wmax, false, spent)
}

/// Minimum weight of `filter`-type elements of `⟨stab, logicals⟩ \ ⟨stab⟩`.
#[must_use]
pub fn outside_min_weight(stab: &PauliGroupSpec, logicals: &[PauliOperator], filter: TypeFilter, wmax: usize) -> DistanceResult {
    let n = stab.num_qubits().max(logicals.first().map_or(0, PauliOperator::num_qubits));
    let w = width(n, filter);
    let inner = filtered_span(&stab.generators, n, filter);
    let all_gens: Vec<PauliOperator> = stab.generators.iter().chain(logicals).cloned().collect();
    let all = filtered_span(&all_gens, n, filter);
    let mut e = EchelonBasis::new(w);
    for r in &inner {
        e.insert(r);
    }
    let extra: Vec<BitVector> = all.iter().filter(|r| e.insert(r)).cloned().collect();
    if extra.is_empty() {
        return DistanceResult::undefined();
    }
    let zero = BitVector::zeros(w);
    if extra.len() + inner.len() <= GRAY_LIMIT {
        let best = gray_search(&zero, &extra, &inner, filter, true).expect("nonempty difference");
        return finish(Some((best.0, best.1)), filter, wmax, true, best.2);
    }
    let (found, spent) = support_search(&zero, &all, &inner, filter, true, wmax);
    finish(found.map(|v| (weight(&v, filter), v)), filter, wmax, false, spent)
}

/// Minimum weight of a nontrivial `kind` logical: `d_X` or `d_Z`.
#[must_use]
pub fn css_distance(code: &CssCode, kind: PauliKind, wmax: usize) -> DistanceResult {
    let n = code.n();
    let stab = PauliGroupSpec::new(code.checks(kind).row_vectors().map(|r| PauliOperator::pure(kind, r)).collect(), GroupLabel::S);
    let logicals: Vec<PauliOperator> = pure_logicals(code, kind).into_iter().map(|v| PauliOperator::pure(kind, v)).collect();
    if logicals.is_empty() {
        return DistanceResult::undefined();
    }
    let stab = if stab.generators.is_empty() { PauliGroupSpec::new(vec![PauliOperator::identity(n)], GroupLabel::S) } else { stab };
    outside_min_weight(&stab, &logicals, kind.into(), wmax)
}

/// `min(d_X, d_Z)`.
#[must_use]
pub fn code_distance(code: &CssCode, wmax: usize) -> DistanceResult {
    css_distance(code, PauliKind::X, wmax).min(css_distance(code, PauliKind::Z, wmax))
}

/// Stabilizer group of a CSS code.
#[must_use]
pub fn css_group(code: &CssCode, label: GroupLabel) -> PauliGroupSpec {
    let mut g: Vec<PauliOperator> = code.hx.row_vectors().map(|r| PauliOperator::pure(PauliKind::X, r)).collect();
    g.extend(code.hz.row_vectors().map(|r| PauliOperator::pure(PauliKind::Z, r)));
    PauliGroupSpec::new(g, label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{circulant, hgp, hgp_logical_basis, repetition_parity};

    fn in_span(m: &BitMatrix, v: &BitVector) -> bool {
        crate::gf2::Solver::new(m).contains(v)
    }

    /// Minimum weight of a nontrivial X logical by brute force over all 2^n vectors.
    fn brute_dx(code: &CssCode) -> Option<usize> {
        let n = code.n();
        let mut best = None;
        for bits in 1u64..(1u64 << n) {
            let v = BitVector::from_bools(&(0..n).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>());
            if code.hz.mul_vec(&v).is_zero() && !in_span(&code.hx, &v) {
                let w = v.weight();
                if best.map_or(true, |b| w < b) {
                    best = Some(w);
                }
            }
        }
        best
    }

    #[test]
    fn rep3_and_toric_distances() {
        let rep = hgp(&repetition_parity(3));
        assert_eq!(brute_dx(&rep), Some(3));
        assert_eq!(css_distance(&rep, PauliKind::X, 5).value, DistanceValue::Exact(3));
        assert_eq!(css_distance(&rep, PauliKind::Z, 5).value, DistanceValue::Exact(3));
        let toric = hgp(&circulant(3));
        assert_eq!(brute_dx(&toric), Some(3));
        assert_eq!(code_distance(&toric, 5).value, DistanceValue::Exact(3));
    }

    #[test]
    fn zero_logicals_is_undefined() {
        let h = BitMatrix::identity(3);
        let code = CssCode::new(h.clone(), BitMatrix::zeros(0, 3), "trivial").unwrap();
        assert_eq!(css_distance(&code, PauliKind::X, 3).value, DistanceValue::Undefined);
    }

    #[test]
    fn identity_offset_gives_zero() {
        let code = hgp(&repetition_parity(3));
        let g = css_group(&code, GroupLabel::S);
        let r = coset_min_weight(&g, &[], &PauliOperator::identity(13), TypeFilter::Any, 3);
        assert_eq!(r.value, DistanceValue::Exact(0));
    }

    #[test]
    fn gray_and_support_search_agree() {
        let code = hgp(&circulant(3));
        let basis = hgp_logical_basis(&circulant(3));
        let z = PauliGroupSpec::new(code.hz.row_vectors().map(|r| PauliOperator::pure(PauliKind::Z, r)).collect(), GroupLabel::S);
        let gray = coset_min_weight(&z, &basis.zops[1..], &basis.zops[0], TypeFilter::Z, 6);
        let zero = BitVector::zeros(18);
        let span = filtered_span(&z.generators.iter().chain(&basis.zops[1..]).cloned().collect::<Vec<_>>(), 18, TypeFilter::Z);
        let (o, _) = filtered_coset(&basis.zops[0], &z.generators, 18, TypeFilter::Z).unwrap();
        let (found, _) = support_search(&o, &span, &[], TypeFilter::Z, false, 6);
        assert_eq!(gray.value.exact(), found.map(|v| v.weight()));
        let (found, _) = support_search(&zero, &span, &filtered_span(&z.generators, 18, TypeFilter::Z), TypeFilter::Z, true, 6);
        assert_eq!(found.map(|v| v.weight()), Some(3));
    }

    #[test]
    fn any_filter_counts_qubits() {
        // Y on one qubit: stabilizer group trivial, logical Y has weight 1.
        let y = PauliOperator::new(BitVector::from_bitstring("10"), BitVector::from_bitstring("10"));
        let id = PauliGroupSpec::new(vec![PauliOperator::identity(2)], GroupLabel::Other);
        assert_eq!(outside_min_weight(&id, &[y], TypeFilter::Any, 2).value, DistanceValue::Exact(1));
    }
}
