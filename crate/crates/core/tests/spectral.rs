use autoconvex::matcore::{haar_unitary, hermitian_eigenvalues, ComplexMatrix, C64};
use autoconvex::spectral_faces::{
    apply_pinching, extreme_point_test_qk, lemma35_witnesses, majorizes, minimal_face_k, minimal_face_qk_dimension,
    pinching_sequence, random_qk_point, PinchingStep, WeightVector,
};
use autoconvex::Error;
use proptest::prelude::*;

// Prefix-sum definition of b ≺ c, for sorted inputs.
fn majorized_oracle(b: &[f64], c: &[f64]) -> bool {
    let tol = 1e-9 * c.iter().chain(b).fold(1.0f64, |m, x| m.max(x.abs())) * c.len() as f64;
    let (mut sb, mut sc) = (0.0, 0.0);
    for (x, y) in b.iter().zip(c) {
        sb += x;
        sc += y;
        if sb > sc + tol {
            return false;
        }
    }
    (sb - sc).abs() <= tol
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

// τ(A^m) for m = 1..n determines the spectrum.
fn power_traces(a: &ComplexMatrix) -> Vec<C64> {
    let mut p = a.clone();
    let mut out = vec![p.trace()];
    for _ in 1..a.n() {
        p = &p * a;
        out.push(p.trace());
    }
    out
}

fn conj_diag(d: &[f64], u: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_diag_real(d).conjugate_by(u)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pinching_round_trip(
        c in prop::collection::vec(-5.0f64..5.0, 2..8),
        pinches in prop::collection::vec((0usize..8, 0usize..8, 0.0f64..1.0), 0..10),
    ) {
        let c = sorted_desc(c);
        let n = c.len();
        let mut b = c.clone();
        for &(i, j, l) in &pinches {
            let (i, j) = (i % n, j % n);
            if i != j {
                b = apply_pinching(&b, &PinchingStep::new(i, j, l).unwrap()).unwrap();
            }
        }
        let b = sorted_desc(b);
        prop_assert!(majorized_oracle(&b, &c));
        prop_assert!(majorizes(&b, &c).unwrap());
        let steps = pinching_sequence(&c, &b).unwrap();
        prop_assert!(steps.len() < n);
        let mut x = c.clone();
        for s in &steps {
            x = apply_pinching(&x, s).unwrap();
        }
        let x = sorted_desc(x);
        let err = x.iter().zip(&b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-9, "error {err}");
    }

    #[test]
    fn majorizes_agrees_with_prefix_sums(
        b in prop::collection::vec(-3i32..4, 1..7),
        c in prop::collection::vec(-3i32..4, 1..7),
    ) {
        let n = b.len().min(c.len());
        let b = sorted_desc(b[..n].iter().map(|&x| x as f64).collect());
        let mut c = sorted_desc(c[..n].iter().map(|&x| x as f64).collect());
        // force equal totals on the smallest entry, then re-sort
        let diff: f64 = b.iter().sum::<f64>() - c.iter().sum::<f64>();
        c[n - 1] += diff;
        let c = sorted_desc(c);
        prop_assert_eq!(majorizes(&b, &c).unwrap(), majorized_oracle(&b, &c));
    }
}

#[test]
fn pinching_identity_and_swap() {
    let v = [3.0, 1.0, -2.0];
    assert_eq!(apply_pinching(&v, &PinchingStep::new(0, 2, 1.0).unwrap()).unwrap(), v.to_vec());
    assert_eq!(apply_pinching(&v, &PinchingStep::new(0, 2, 0.0).unwrap()).unwrap(), vec![-2.0, 1.0, 3.0]);
}

#[test]
fn one_step_pinch_example() {
    let steps = pinching_sequence(&[4.0, 2.0, 0.0], &[3.0, 2.0, 1.0]).unwrap();
    assert_eq!(steps.len(), 1);
    let x = apply_pinching(&[4.0, 2.0, 0.0], &steps[0]).unwrap();
    assert_eq!(sorted_desc(x), vec![3.0, 2.0, 1.0]);
}

#[test]
fn non_majorized_target_is_rejected() {
    assert!(!majorizes(&[5.0, 0.0], &[3.0, 2.0]).unwrap());
    assert_eq!(pinching_sequence(&[3.0, 2.0], &[5.0, 0.0]).unwrap_err(), Error::NotMajorized);
    assert_eq!(majorizes(&[0.0, 1.0], &[1.0, 0.0]).unwrap_err(), Error::Unsorted);
}

#[test]
fn witnesses_share_the_spectrum_of_a() {
    for trial in 0..30u64 {
        let n = 2 + trial as usize % 4;
        let a: Vec<f64> = (0..n).map(|i| ((i * 7 + trial as usize * 3) % 11) as f64 / 5.0 - 1.0).collect();
        let (i, j) = (trial as usize % n, (trial as usize + 1) % n);
        if (a[i] - a[j]).abs() < 1e-3 {
            continue;
        }
        let u = haar_unitary(n, trial);
        let w = lemma35_witnesses(&a, i, j, 0.2 + 0.02 * trial as f64, &u).unwrap();
        let expected: Vec<f64> = (1..=n as i32).map(|m| a.iter().map(|x| x.powi(m)).sum()).collect();
        for m in w.all() {
            assert!(m.hermitian_deviation() <= 1e-12);
            for (got, want) in power_traces(m).iter().zip(&expected) {
                assert!((got.re - want).abs() <= 1e-10 && got.im.abs() <= 1e-10, "trial {trial}");
            }
        }
        assert!(w.midpoint_error() <= 1e-12);
        assert!(w.full_affine_rank() >= 3);
        assert_eq!(w.rotated_affine_rank(), 2);
    }
}

#[test]
fn qk_face_dimension_matches_constructed_spectrum() {
    // (spectrum, k, expected dimension m² − 1 with m eigenvalues in (0,1))
    let cases: &[(&[f64], usize, usize)] = &[
        (&[1.0, 0.0, 0.0], 1, 0),
        (&[1.0, 1.0, 0.0, 0.0], 2, 0),
        (&[0.5, 0.5, 0.0], 1, 3),
        (&[1.0, 0.3, 0.7, 0.0], 2, 3),
        (&[0.2, 0.3, 0.5, 1.0], 2, 8),
        (&[0.25, 0.25, 0.25, 0.25], 1, 15),
        (&[0.1, 0.2, 0.3, 0.4, 0.6, 0.4], 2, 35),
    ];
    for (seed, &(d, k, dim)) in cases.iter().enumerate() {
        let a = conj_diag(d, &haar_unitary(d.len(), seed as u64 + 1));
        assert_eq!(minimal_face_qk_dimension(&a, k).unwrap(), dim, "spectrum {d:?}");
        assert_eq!(extreme_point_test_qk(&a, k).unwrap(), dim == 0);
        let desc = minimal_face_k(&a).unwrap();
        assert_eq!(desc.rank_p, d.iter().filter(|&&x| x == 1.0).count());
    }
}

#[test]
fn qk_rejects_points_outside() {
    let u = haar_unitary(3, 5);
    // a single fractional eigenvalue forces a non-integer trace
    assert!(matches!(minimal_face_qk_dimension(&conj_diag(&[1.0, 0.5, 0.0], &u), 1), Err(Error::NotInQk(_))));
    assert!(minimal_face_qk_dimension(&conj_diag(&[1.2, 0.0, 0.0], &u), 1).is_err());
    assert!(matches!(minimal_face_qk_dimension(&conj_diag(&[0.5, 0.5, 0.0], &u), 2), Err(Error::NotInQk(_))));
}

#[test]
fn random_qk_points_follow_the_square_law() {
    let allowed = [0, 3, 8, 15, 24, 35];
    for seed in 0..100u64 {
        let n = 2 + seed as usize % 5;
        let (a, k) = random_qk_point(n, seed);
        let ev = hermitian_eigenvalues(&a).unwrap();
        let m = ev.iter().filter(|&&x| x > 1e-6 && x < 1.0 - 1e-6).count();
        let dim = minimal_face_qk_dimension(&a, k).unwrap();
        assert!(allowed.contains(&dim));
        assert_eq!(dim, if m == 0 { 0 } else { m * m - 1 }, "seed {seed}");
    }
}

#[test]
fn weight_vector_validation() {
    assert_eq!(WeightVector::new(vec![0.0, 1.0]).unwrap_err(), Error::Unsorted);
    assert!(WeightVector::new(vec![1.0, f64::NAN]).is_err());
    assert!(matches!(WeightVector::projection_spectrum(3, 0), Err(Error::BadRank { .. })));
    let w = WeightVector::from_unsorted(vec![0.0, 2.0, 1.0]).unwrap();
    assert_eq!(w.as_slice(), &[2.0, 1.0, 0.0]);
}
