//! Fault distances of a measurement: from group formulas and by direct
//! enumeration of error mechanisms.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Result;
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::{PauliKind, PauliOperator};
use crate::protocol::{initial_group, DetectorGraph, InitMode};
use crate::surgery::{logical_frame, MergedCode, MergedKind};

use super::enumerate::{supports_up_to, SupportSearch};
use super::{coset_min_weight, outside_min_weight, DistanceResult, DistanceValue, GroupLabel, PauliGroupSpec, TypeFilter};

#[derive(Clone, Debug)]
pub struct FaultDistances {
    pub logical: DistanceResult,
    pub measurement: DistanceResult,
}

fn groups(merged: &MergedCode, init: InitMode) -> (PauliGroupSpec, PauliGroupSpec) {
    let s = PauliGroupSpec::new(initial_group(merged, init), GroupLabel::S);
    let sm = PauliGroupSpec::new(merged.checks.clone(), GroupLabel::SMerged);
    (s, sm)
}

/// Logical and measurement fault distances of `R` merged rounds from the
/// before/after stabilizer groups. X and Z systems use the type-split form;
/// other kinds search `⟨S, S_M⟩` over all Pauli types. The logical distance
/// also covers operators that flip the measured operator once the merge is
/// over: the partner coset `q·⟨L, S⟩`.
pub fn subsystem_fault_distances(merged: &MergedCode, rounds: usize, init: InitMode, wmax: usize) -> Result<FaultDistances> {
    let frame = logical_frame(merged)?;
    let l = frame.logical_ops();
    let (s, sm) = groups(merged, init);
    match merged.kind {
        MergedKind::X | MergedKind::Z => {
            let k = if merged.kind == MergedKind::X { PauliKind::X } else { PauliKind::Z };
            let other: TypeFilter = k.other().into();
            let logical = outside_min_weight(&s, &l, other, wmax)
                .min(outside_min_weight(&sm, &l, k.into(), wmax))
                .min(coset_min_weight(&s, &l, &frame.q, other, wmax));
            let measurement = coset_min_weight(&s, &l, &frame.q, other, wmax).cap(rounds);
            Ok(FaultDistances { logical, measurement })
        }
        _ => Ok(generic(merged, &frame.p, &frame.q, &l, &s, &sm, rounds, wmax)),
    }
}

#[allow(clippy::too_many_arguments)]
fn generic(merged: &MergedCode, p: &PauliOperator, q: &PauliOperator, l: &[PauliOperator], s: &PauliGroupSpec, sm: &PauliGroupSpec, rounds: usize, wmax: usize) -> FaultDistances {
    let u = s.join(sm, GroupLabel::U);
    let post = coset_min_weight(s, l, q, TypeFilter::Any, wmax).min(coset_min_weight(s, l, &q.mul(p), TypeFilter::Any, wmax));
    let logical = outside_min_weight(&u, l, TypeFilter::Any, wmax).min(post);
    let mut measurement = coset_min_weight(&u, l, q, TypeFilter::Any, wmax);
    if merged.kind == MergedKind::Y {
        measurement = measurement.min(coset_min_weight(&u, l, &q.mul(p), TypeFilter::Any, wmax));
    }
    FaultDistances { logical, measurement: measurement.cap(rounds) }
}

/// The generic (all Pauli types) form for any kind; agrees with the type-split
/// form on CSS systems.
pub fn subsystem_fault_distances_generic(merged: &MergedCode, rounds: usize, init: InitMode, wmax: usize) -> Result<FaultDistances> {
    let frame = logical_frame(merged)?;
    let (s, sm) = groups(merged, init);
    Ok(generic(merged, &frame.p, &frame.q, &frame.logical_ops(), &s, &sm, rounds, wmax))
}

#[derive(Clone, Debug, Serialize)]
pub struct ExhaustiveFaults {
    pub logical: DistanceValue,
    pub measurement: DistanceValue,
    /// Mechanism ids of a minimal fault of each class.
    pub logical_witness: Option<Vec<usize>>,
    pub measurement_witness: Option<Vec<usize>>,
    /// Distinct mechanism columns after merging identical ones.
    pub distinct_mechanisms: usize,
    pub supports_examined: u128,
}

/// Minimum numbers of mechanisms that trigger no detector and flip the
/// observable (measurement) or a tracked logical without the observable
/// (logical), by enumerating mechanism sets of size up to `wmax`.
/// Mechanisms with identical effects are merged first.
#[must_use]
pub fn fault_distance_exhaustive(g: &DetectorGraph, wmax: usize) -> ExhaustiveFaults {
    let mut reps: Vec<usize> = Vec::new();
    let mut seen: HashMap<(&[usize], bool, u64), usize> = HashMap::new();
    for (i, m) in g.mechanisms.iter().enumerate() {
        if m.detectors.is_empty() && !m.observable && m.logicals == 0 {
            continue;
        }
        seen.entry((&m.detectors, m.observable, m.logicals)).or_insert_with(|| {
            reps.push(i);
            i
        });
    }
    let nd = g.num_detectors();
    let cols = reps.len();
    let mut det = BitMatrix::zeros(nd + 1, cols);
    let nl = g.logical_ops.len();
    let mut obs = BitMatrix::zeros(1, cols);
    let mut log = BitMatrix::zeros(nl, cols);
    for (j, &i) in reps.iter().enumerate() {
        let m = &g.mechanisms[i];
        for &d in &m.detectors {
            det.set(d, j, true);
        }
        if m.observable {
            det.set(nd, j, true);
            obs.set(0, j, true);
        }
        for b in 0..nl {
            if m.logicals >> b & 1 == 1 {
                log.set(b, j, true);
            }
        }
    }
    let spent = 2 * supports_up_to(cols, wmax);
    let to_ids = |s: Vec<usize>| s.into_iter().map(|j| reps[j]).collect::<Vec<_>>();
    let value = |found: &Option<Vec<usize>>| found.as_ref().map_or(DistanceValue::AtLeast(wmax + 1), |s| DistanceValue::Exact(s.len()));

    let det_only = det.select_rows(&(0..nd).collect::<Vec<_>>());
    let meas = SupportSearch::new(&det_only, &obs, &BitVector::zeros(nd)).search(wmax);
    let found = SupportSearch::new(&det, &log, &BitVector::zeros(nd + 1)).search(wmax);
    let (logical, logical_witness) = (value(&found), found.map(to_ids));
    ExhaustiveFaults {
        logical,
        measurement: value(&meas),
        logical_witness,
        measurement_witness: meas.map(to_ids),
        distinct_mechanisms: cols,
        supports_examined: spent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{circulant, hgp, hgp_logical_basis, repetition_parity};
    use crate::protocol::{build_schedule, ScheduleOptions};
    use crate::surgery::build_x_system;

    fn system(h: &BitMatrix) -> MergedCode {
        build_x_system(&hgp(h), &hgp_logical_basis(h).xops[0], 1, true).unwrap()
    }

    #[test]
    fn rep3_measurement_fault_distance() {
        let m = system(&repetition_parity(3));
        let f = subsystem_fault_distances(&m, 3, InitMode::Module, 4).unwrap();
        assert_eq!(f.measurement.value, DistanceValue::Exact(3));
        assert_eq!(f.logical.value, DistanceValue::Exact(3));
        let one = subsystem_fault_distances(&m, 1, InitMode::Module, 4).unwrap();
        assert_eq!(one.measurement.value, DistanceValue::Exact(1));
        let g = build_schedule(&m, ScheduleOptions::new(3)).unwrap();
        let e = fault_distance_exhaustive(&g, 3);
        assert_eq!(e.measurement, DistanceValue::Exact(3));
        assert_eq!(e.logical, DistanceValue::Exact(3));
    }

    #[test]
    fn toric_formulas_agree() {
        let m = system(&circulant(3));
        let f = subsystem_fault_distances(&m, 3, InitMode::Module, 4).unwrap();
        let gen = subsystem_fault_distances_generic(&m, 3, InitMode::Module, 4).unwrap();
        assert_eq!(f.logical.value, DistanceValue::Exact(3));
        assert_eq!(f.measurement.value, DistanceValue::Exact(3));
        assert_eq!(gen.logical.value, f.logical.value);
        assert_eq!(gen.measurement.value, f.measurement.value);
    }
}
