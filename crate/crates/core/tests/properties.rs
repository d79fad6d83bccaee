use proptest::prelude::*;

use schoenberg::complex_coeffs::{indices_up_to, ComplexSchoenbergSequence};
use schoenberg::io::{complex_to_json, parse_complex_sequence, parse_real_sequence, real_to_json};
use schoenberg::real_coeffs::RealSchoenbergSequence;
use schoenberg::spd::{check_progressions, support_pattern, support_transfer_mismatch};
use schoenberg::walk_complex::{walk_down_complex, walk_up_complex};
use schoenberg::walk_real::{walk_down, walk_up, DEFAULT_TAIL_TOL};

fn normalize(w: &mut [f64]) {
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
}

prop_compose! {
    fn real_seq()(d in 1usize..8, raw in prop::collection::vec(0.0f64..1.0, 1..30)) -> RealSchoenbergSequence {
        let mut coeffs = raw;
        coeffs[0] += 1e-3;
        normalize(&mut coeffs);
        coeffs.extend([0.0, 0.0]);
        RealSchoenbergSequence::new(d, coeffs).unwrap()
    }
}

prop_compose! {
    fn complex_seq()(q in 2usize..7, big_m in 2usize..12)
        (q in Just(q), big_m in Just(big_m),
         picks in prop::collection::btree_map(
            (0..=big_m - 2, 0..=big_m - 2), 1e-3f64..1.0, 1..8))
        -> ComplexSchoenbergSequence {
        let mut entries: Vec<_> = picks.into_iter().filter(|((m, n), _)| m + n + 2 <= big_m).collect();
        if entries.is_empty() {
            entries.push(((0, 0), 1.0));
        }
        let mut w: Vec<f64> = entries.iter().map(|e| e.1).collect();
        normalize(&mut w);
        ComplexSchoenbergSequence::new(q, big_m, entries.iter().map(|e| e.0).zip(w)).unwrap()
    }
}

proptest! {
    #[test]
    fn real_walk_roundtrip(seq in real_seq()) {
        let up = walk_up(&seq).unwrap();
        prop_assert!((up.mass() - 1.0).abs() < 1e-10);
        let back = walk_down(&up, up.truncation(), DEFAULT_TAIL_TOL).unwrap().sequence;
        for (a, b) in back.coeffs().iter().zip(seq.coeffs()) {
            prop_assert!((a - b).abs() < 1e-11);
        }
    }

    #[test]
    fn complex_walk_roundtrip(seq in complex_seq()) {
        let up = walk_up_complex(&seq).unwrap();
        prop_assert!(up.diagonals().is_subset(&seq.diagonals()));
        prop_assert!((up.mass() - 1.0).abs() < 1e-10);
        let back = walk_down_complex(&up, DEFAULT_TAIL_TOL).unwrap().sequence;
        for (m, n) in indices_up_to(back.max_degree()) {
            prop_assert!((back.get(m, n) - seq.get(m, n)).abs() < 1e-10);
        }
    }

    #[test]
    fn support_transfers_down(seq in complex_seq()) {
        prop_assume!(seq.q() >= 3);
        let lower = walk_down_complex(&seq, 0.0).unwrap().sequence;
        prop_assert_eq!(support_transfer_mismatch(&seq, &lower), None);
    }

    #[test]
    fn violations_are_stable_in_k(seq in complex_seq(), k in 1usize..10) {
        let p = support_pattern(&seq, 1e-12);
        let small = check_progressions(&p, k).unwrap();
        let large = check_progressions(&p, k + 5).unwrap();
        if let Some(v) = small.first_violation() {
            prop_assert_eq!(large.first_violation(), Some(v));
            let (modulus, residue) = v;
            prop_assert!(p.diffs.iter().all(|d| d.rem_euclid(modulus as i64) != residue as i64));
        }
    }

    #[test]
    fn json_is_lossless(seq in real_seq(), c in complex_seq()) {
        prop_assert_eq!(parse_real_sequence(&real_to_json(&seq).to_string()).unwrap(), seq);
        prop_assert_eq!(parse_complex_sequence(&complex_to_json(&c).to_string()).unwrap(), c);
    }
}
