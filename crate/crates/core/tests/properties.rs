use proptest::prelude::*;

use gfsurgery::cliffords::{rotation_closure, LogicalPauli};
use gfsurgery::code::{hgp, hgp_logical_basis, repetition_parity};
use gfsurgery::decoder::{line_match, BpOsdConfig, ModularDecoder, WholeGraphDecoder};
use gfsurgery::gf2::{BitMatrix, BitVector, Solver};
use gfsurgery::protocol::{build_schedule, sample, NoiseModel, ScheduleOptions};
use gfsurgery::stats::wilson;
use gfsurgery::surgery::build_x_system;
use gfsurgery::PauliOperator;

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
            let mut m = BitMatrix::zeros(r, c);
            for (k, b) in bits.into_iter().enumerate() {
                m.set(k / c, k % c, b);
            }
            m
        })
    })
}

fn pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
    (proptest::collection::vec(any::<bool>(), n), proptest::collection::vec(any::<bool>(), n)).prop_map(|(x, z)| PauliOperator::new(BitVector::from_bools(&x), BitVector::from_bools(&z)))
}

proptest! {
    #[test]
    fn rank_nullity(m in matrix(12, 90)) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.rows(), m.cols());
        prop_assert!(k.row_vectors().all(|v| m.mul_vec(&v).is_zero()));
        let left = m.nullspace_basis();
        prop_assert_eq!(m.rank() + left.rows(), m.rows());
        prop_assert!(left.row_vectors().all(|v| m.left_mul(&v).is_zero()));
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn solutions_reproduce_the_target(m in matrix(10, 70), seed in proptest::collection::vec(any::<bool>(), 10)) {
        let x = BitVector::from_bools(&seed[..m.rows()]);
        let b = m.left_mul(&x);
        let s = Solver::new(&m);
        let y = s.solve(&b).expect("target is in the row span");
        prop_assert_eq!(m.left_mul(&y), b);
    }

    #[test]
    fn pauli_products_are_associative_and_commutation_is_symmetric(a in pauli(7), b in pauli(7), c in pauli(7)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.commutes_with(&b), b.commutes_with(&a));
        prop_assert!(a.commutes_with(&a));
        let ab = a.mul(&b);
        prop_assert_eq!(ab.xbits(), &a.xbits().xor(b.xbits()));
    }

    #[test]
    fn logical_pauli_products(a in 0u32..1 << 8, b in 0u32..1 << 8) {
        let (p, q) = (LogicalPauli::from_word(a, 4), LogicalPauli::from_word(b, 4));
        let (k, r) = p.mul(&q);
        let (k2, r2) = q.mul(&p);
        prop_assert_eq!(r.word(4), r2.word(4));
        prop_assert_eq!(k, k2);
        // anticommuting pairs differ by a sign when swapped
        prop_assert_eq!(r.negative != r2.negative, k == 1);
    }

    #[test]
    fn line_matching_is_short(bits in proptest::collection::vec(any::<bool>(), 1..20)) {
        let r = bits.len() + 1;
        let odd: Vec<usize> = bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i + 1).collect();
        let lm = line_match(&odd, r);
        prop_assert_eq!(lm.length + lm.other_length, r);
        prop_assert!(lm.length <= r / 2);
        prop_assert_eq!(lm.rounds(r).len(), lm.length);
    }

    #[test]
    fn wilson_brackets_the_estimate(k in 0u64..500, extra in 0u64..5000, z in 0.5f64..4.0) {
        let n = k + extra + 1;
        let (lo, hi) = wilson(k, n, z);
        let p = k as f64 / n as f64;
        prop_assert!(lo <= p + 1e-12 && p <= hi + 1e-12);
        prop_assert!((0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi));
    }

    #[test]
    fn witnesses_replay_to_their_words(gens in proptest::collection::vec((0u32..8, 0u32..8), 1..5)) {
        let natives: Vec<LogicalPauli> = gens.into_iter().map(|(x, z)| LogicalPauli::new(x, z)).filter(|p| !p.is_identity()).collect();
        prop_assume!(!natives.is_empty());
        let t = rotation_closure(3, &natives);
        prop_assert_eq!(&t, &rotation_closure(3, &natives));
        for w in 1..64u32 {
            if let Some(wit) = t.witness(w) {
                prop_assert_eq!(t.replay(&wit), w);
                prop_assert_eq!(t.cost(w), Some(wit.moves.len() as u32 * 2 + 1));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn corrections_reproduce_the_syndrome(seed in any::<u64>(), r in 1usize..5) {
        let h = repetition_parity(3);
        let m = build_x_system(&hgp(&h), &hgp_logical_basis(&h).xops[0], 1, true).unwrap();
        let g = build_schedule(&m, ScheduleOptions::new(r)).unwrap();
        let noise = NoiseModel::uniform(0.02);
        let modular = ModularDecoder::new(&m, &g, noise, BpOsdConfig::default()).unwrap();
        let whole = WholeGraphDecoder::new(&g, noise, BpOsdConfig::default());
        for shot in 0..8 {
            let s = sample(&g, noise, seed, shot);
            for out in [modular.decode(&g, &s.detectors), whole.decode(&g, &s.detectors)] {
                let (syn, obs, logicals) = g.syndrome_of(&out.correction);
                prop_assert_eq!((obs, logicals), (out.observable, out.logicals));
                if out.converged {
                    prop_assert_eq!(&syn, &s.detectors);
                }
            }
        }
    }
}
