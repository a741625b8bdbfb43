use crate::exact::{q, qi};
use crate::faces_geom::{check_intersection_theorem, run_random_suite, AffineSubspace, SuiteConfig, VPolytope};
use crate::lyap::{convexity_defect, extreme_solutions, random_measure, range_bruteforce};
use crate::matcore::{hermitian_eig, random_complex, random_hermitian};
use crate::numrange::{
    attainment_check, boundary_polygon, certify_convexity, sample_range, support_point_c, support_point_k, RangeMode,
};
use crate::spectral_faces::{
    apply_pinching, lemma35_witnesses, majorizes, minimal_face_qk_dimension, pinching_sequence, random_qk_point,
    WeightVector,
};

#[derive(Clone, Debug)]
pub struct SelftestLine {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn line(name: &'static str, pass: bool, detail: String) -> SelftestLine {
    SelftestLine { name, pass, detail }
}

/// Small, fast versions of the invariants each module promises.
pub fn run_selftest() -> Vec<SelftestLine> {
    let mut out = Vec::new();

    let a = random_hermitian(6, 1);
    let err = hermitian_eig(&a).map(|e| (&e.reconstruct() - &a).max_abs()).unwrap_or(f64::INFINITY);
    out.push(line("eigen reconstruction", err < 1e-12, format!("max error {err:.3e}")));

    let b = random_complex(4, 2);
    let c = WeightVector::projection_spectrum(4, 2).expect("valid rank");
    let mut gap = 0.0f64;
    for j in 0..64 {
        let t = j as f64 * 0.1;
        match (support_point_k(&b, 2, t), support_point_c(&b, &c, t)) {
            (Ok(x), Ok(y)) => gap = gap.max((x.h - y.h).abs()),
            _ => gap = f64::INFINITY,
        }
    }
    out.push(line("c reduces to k", gap <= 1e-12, format!("max gap {gap:.3e}")));

    let cert = boundary_polygon(&b, &RangeMode::K(2), 360).and_then(|curve| {
        let pts = sample_range(&b, &RangeMode::K(2), 20_000, 7)?;
        Ok((certify_convexity(&pts, &curve, 1e-8), attainment_check(&curve)?))
    });
    out.push(match cert {
        Ok((rep, att)) => line(
            "k-range certificate",
            rep.passed() && att,
            format!("outside {}, midpoint defect {:.3e}, attainment {att}", rep.n_outside, rep.midpoint_defect),
        ),
        Err(e) => line("k-range certificate", false, e.to_string()),
    });

    let mut cube = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                cube.push(vec![qi(x), qi(y), qi(z)]);
            }
        }
    }
    let hex = VPolytope::new(3, cube)
        .and_then(|k| {
            let h = AffineSubspace::new(vec![vec![qi(1), qi(1), qi(1)]], vec![q(3, 2)])?;
            check_intersection_theorem(&k, &h)
        })
        .map(|r| (r.passed(), r.summary.n_faces));
    out.push(match hex {
        Ok((pass, n)) => line("cube hexagon section", pass && n == 13, format!("{n} faces")),
        Err(e) => line("cube hexagon section", false, e.to_string()),
    });

    let suite = run_random_suite(&SuiteConfig { trials: 20, seed: 99, ..Default::default() });
    out.push(line(
        "intersection identity (20 trials)",
        suite.failures.is_empty(),
        format!("{} checked, {} faces", suite.checked, suite.faces_checked),
    ));

    let cv = [4.0, 2.5, 1.0, -0.5];
    let bv = [2.75, 2.25, 1.5, 0.5];
    let round_trip = majorizes(&bv, &cv).and_then(|ok| {
        let steps = pinching_sequence(&cv, &bv)?;
        let mut x = cv.to_vec();
        for s in &steps {
            x = apply_pinching(&x, s)?;
        }
        x.sort_by(|p, q| q.total_cmp(p));
        Ok((ok, steps.len(), x.iter().zip(&bv).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max)))
    });
    out.push(match round_trip {
        Ok((ok, n, err)) => {
            line("pinching round trip", ok && n <= 3 && err <= 1e-9, format!("{n} steps, error {err:.3e}"))
        }
        Err(e) => line("pinching round trip", false, e.to_string()),
    });

    let mut dims = Vec::new();
    let mut qk_ok = true;
    for seed in 0..40 {
        let (a, k) = random_qk_point(2 + seed as usize % 5, seed);
        match minimal_face_qk_dimension(&a, k) {
            Ok(d) => dims.push(d),
            Err(_) => qk_ok = false,
        }
    }
    let law = qk_ok && dims.iter().all(|&d| d != 1 && d != 2);
    out.push(line("Q_k facial dimensions", law, format!("min nonzero {:?}", dims.iter().filter(|&&d| d > 0).min())));

    let u = crate::matcore::haar_unitary(4, 3);
    let wit = lemma35_witnesses(&[0.9, 0.4, 0.1, -0.3], 0, 2, 0.35, &u);
    out.push(match wit {
        Ok(w) => line(
            "pinch witnesses",
            w.full_affine_rank() >= 3 && w.midpoint_error() <= 1e-12 && w.block_invariant_error(0.9, 0.1) <= 1e-10,
            format!("affine rank {}", w.full_affine_rank()),
        ),
        Err(e) => line("pinch witnesses", false, e.to_string()),
    });

    let m = random_measure(3, 2, 0, 4);
    let defects: Vec<f64> = (0..3)
        .map(|r| {
            let mr = if r == 0 { m.clone() } else { m.refine(r).expect("rounds >= 1") };
            range_bruteforce(&mr).and_then(|s| convexity_defect(&s, 500, 1)).unwrap_or(f64::INFINITY)
        })
        .collect();
    let monotone = defects.windows(2).all(|w| w[1] <= w[0]);
    out.push(line("refinement defect", monotone, format!("{defects:?}")));

    let mv = random_measure(6, 1, 2, 5);
    let verts = extreme_solutions(&mv, 1_000_000).map(|v| (v.vertices.len(), v.max_fractional()));
    out.push(match verts {
        Ok((n, f)) => line("vertex fractional bound", f <= 2, format!("{n} vertices, max fractional {f}")),
        Err(e) => line("vertex fractional bound", false, e.to_string()),
    });
    out
}
