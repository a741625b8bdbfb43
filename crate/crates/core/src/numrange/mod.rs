//! k- and c-numerical ranges: support functions from eigenvalues of the
//! rotated Hermitian parts `H_θ`, Monte Carlo samples as an independent
//! oracle, and convexity and attainment certificates.
//!
//! The plane is identified with `C` by `z ↦ (Re z, Im z)`.

mod polygon;
mod sample;
mod support;

pub use polygon::SupportPolygon;
pub use sample::{
    attainment_check, attainment_details, certify_against, certify_convexity, sample_range, AttainmentReport,
    RegionReport, MIDPOINT_PAIRS, MIDPOINT_SEED, REPRODUCTION_TOL, WITNESS_TOL,
};
pub use support::{
    boundary_polygon, support_point, support_point_c, support_point_k, BoundarySupportCurve, CurveRow, RangeMode,
    SupportPoint, Witness, DEFAULT_ANGLES, FLAT_GAP,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{random_complex, random_hermitian, ComplexMatrix};
    use crate::spectral_faces::WeightVector;

    #[test]
    fn identity_samples_are_exact() {
        let pts = sample_range(&ComplexMatrix::identity(3), &RangeMode::K(2), 50, 1).unwrap();
        assert!(pts.iter().all(|z| (z[0] - 1.0).abs() < 1e-14 && z[1].abs() < 1e-14));
    }

    #[test]
    fn samples_are_reproducible_and_chunked() {
        let b = random_complex(3, 4);
        let a = sample_range(&b, &RangeMode::K(1), 5000, 9).unwrap();
        assert_eq!(a, sample_range(&b, &RangeMode::K(1), 5000, 9).unwrap());
        assert_eq!(a.len(), 5000);
        // the first chunk does not depend on the total
        assert_eq!(&a[..100], &sample_range(&b, &RangeMode::K(1), 100, 9).unwrap()[..]);
    }

    #[test]
    fn diag_k2_real_extent() {
        let b = ComplexMatrix::from_diag_real(&[3.0, 2.0, 1.0]);
        let pts = sample_range(&b, &RangeMode::K(2), 100_000, 5).unwrap();
        let lo = pts.iter().map(|z| z[0]).fold(f64::INFINITY, f64::min);
        let hi = pts.iter().map(|z| z[0]).fold(f64::NEG_INFINITY, f64::max);
        assert!((lo - 1.5).abs() < 0.01 && (hi - 2.5).abs() < 0.01, "{lo} {hi}");
        assert!(pts.iter().all(|z| z[1].abs() < 1e-12));
    }

    #[test]
    fn certify_and_negative_control() {
        let b = ComplexMatrix::from_diag_real(&[3.0, 2.0, 1.0]);
        let curve = boundary_polygon(&b, &RangeMode::K(2), 720).unwrap();
        let mut pts = sample_range(&b, &RangeMode::K(2), 20_000, 3).unwrap();
        let rep = certify_convexity(&pts, &curve, 1e-8);
        assert_eq!(rep.n_outside, 0);
        assert!(rep.max_violation <= 1e-8 && rep.midpoint_defect <= 1e-8);
        pts.push([2.7, 0.0]);
        let rep = certify_convexity(&pts, &curve, 1e-8);
        assert_eq!(rep.n_outside, 1);
        assert!((rep.max_violation - 0.2).abs() < 1e-9);
        let single = certify_convexity(&[[2.0, 0.0]], &curve, 1e-8);
        assert_eq!(single.midpoint_defect, 0.0);
    }

    #[test]
    fn attainment() {
        let b = random_complex(4, 8);
        let mut curve = boundary_polygon(&b, &RangeMode::K(2), 72).unwrap();
        assert!(attainment_check(&curve).unwrap());
        let c = WeightVector::from_hermitian(&random_hermitian(4, 1)).unwrap();
        let cc = boundary_polygon(&b, &RangeMode::C(c), 72).unwrap();
        assert!(attainment_check(&cc).unwrap());

        let full = boundary_polygon(&b, &RangeMode::K(4), 16).unwrap();
        let tr = b.trace() / 4.0;
        assert!(full.support_points.iter().all(|z| (z[0] - tr.re).abs() < 1e-12 && (z[1] - tr.im).abs() < 1e-12));

        curve.witnesses[3] = Some(Witness::Projection(ComplexMatrix::identity(4).scale_real(0.5)));
        assert!(!attainment_check(&curve).unwrap());
        curve.witnesses[5] = None;
        assert_eq!(attainment_check(&curve), Err(crate::Error::MissingWitness(5)));
    }

    #[test]
    fn containment_chain_and_covariance() {
        let b = random_complex(5, 21);
        let h = |k| boundary_polygon(&b, &RangeMode::K(k), 90).unwrap().support_values;
        let hs: Vec<Vec<f64>> = (1..=5).map(h).collect();
        for w in hs.windows(2) {
            for (hi, lo) in w[0].iter().zip(&w[1]) {
                assert!(lo <= &(hi + 1e-10));
            }
        }
        let (alpha, beta) = (2.5, crate::matcore::C64::new(-1.0, 0.75));
        let moved = &b.scale_real(alpha) + &ComplexMatrix::identity(5).scale(beta);
        let c0 = boundary_polygon(&b, &RangeMode::K(2), 90).unwrap();
        let c1 = boundary_polygon(&moved, &RangeMode::K(2), 90).unwrap();
        for (z0, z1) in c0.support_points.iter().zip(&c1.support_points) {
            assert!((alpha * z0[0] + beta.re - z1[0]).abs() < 1e-9);
            assert!((alpha * z0[1] + beta.im - z1[1]).abs() < 1e-9);
        }
    }

    #[test]
    fn oracle_agreement() {
        let b = random_complex(4, 13);
        let curve = boundary_polygon(&b, &RangeMode::K(2), 180).unwrap();
        let pts = sample_range(&b, &RangeMode::K(2), 100_000, 2).unwrap();
        let diam = curve.polygon().diameter();
        for (j, &t) in curve.angles.iter().enumerate() {
            let emp = pts.iter().map(|z| z[0] * t.cos() + z[1] * t.sin()).fold(f64::NEG_INFINITY, f64::max);
            assert!(emp <= curve.support_values[j] + 1e-8);
            assert!(emp >= curve.support_values[j] - 0.05 * diam);
        }
    }
}
