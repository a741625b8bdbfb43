//! Acceptance checks, one PASS/FAIL line each. Exits nonzero if any fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use autoconvex::faces_geom::{run_random_suite, SuiteConfig};
use autoconvex::lyap::{
    constrained_range, convexity_defect, corollary6_range, extreme_solutions, fractional_count, random_measure,
    range_bruteforce,
};
use autoconvex::matcore::{haar_unitary, hermitian_eigenvalues, random_complex, random_hermitian};
use autoconvex::numrange::{
    attainment_check, boundary_polygon, certify_convexity, sample_range, support_point_c, support_point_k, RangeMode,
};
use autoconvex::spectral_faces::{
    apply_pinching, lemma35_witnesses, majorizes, middle_rank, minimal_face_qk_dimension, pinching_sequence,
    random_qk_point, PinchingStep, WeightVector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

// Prefix-sum definition of b ≺ c for sorted vectors.
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

fn intersection_suite() -> Outcome {
    let rep = run_random_suite(&SuiteConfig::default());
    ensure(rep.checked == 1000, || format!("only {} pairs checked", rep.checked))?;
    ensure(rep.failures.is_empty(), || format!("{} failures, first: {:?}", rep.failures.len(), rep.failures[0]))?;
    Ok(format!("{} pairs, {} faces, {} empty sections skipped", rep.checked, rep.faces_checked, rep.skipped_empty))
}

fn certify(b: &autoconvex::matcore::ComplexMatrix, mode: &RangeMode, seed: u64) -> Result<f64, String> {
    let label = mode.label();
    let curve = boundary_polygon(b, mode, 720).map_err(|e| e.to_string())?;
    ensure(curve.len() == 720, || "wrong angle count".into())?;
    let pts = sample_range(b, mode, 100_000, seed).map_err(|e| e.to_string())?;
    let rep = certify_convexity(&pts, &curve, 1e-8);
    ensure(rep.n_outside == 0, || format!("{label} seed {seed}: {} samples outside", rep.n_outside))?;
    ensure(rep.midpoint_defect <= 1e-8, || format!("{label} seed {seed}: midpoint defect {}", rep.midpoint_defect))?;
    ensure(attainment_check(&curve).map_err(|e| e.to_string())?, || format!("{label} seed {seed}: attainment"))?;
    Ok(rep.max_violation)
}

fn proposition2() -> Outcome {
    let mut runs = 0;
    let mut worst = 0.0f64;
    for seed in 1..=20u64 {
        let n = 2 + (seed as usize - 1) % 5;
        let b = random_complex(n, seed);
        for k in 1..n {
            worst = worst.max(certify(&b, &RangeMode::K(k), seed)?);
            runs += 1;
        }
    }
    Ok(format!("{runs} (b, k) pairs, max excess {worst:.2e}"))
}

fn proposition3() -> Outcome {
    let mut worst = 0.0f64;
    let mut gap = 0.0f64;
    for seed in 1..=20u64 {
        let n = 2 + (seed as usize - 1) % 5;
        let b = random_complex(n, seed);
        let c = WeightVector::from_hermitian(&random_hermitian(n, 1000 + seed)).map_err(|e| e.to_string())?;
        worst = worst.max(certify(&b, &RangeMode::C(c), seed)?);
        for k in 1..n {
            let pc = WeightVector::projection_spectrum(n, k).map_err(|e| e.to_string())?;
            for j in 0..720 {
                let t = 2.0 * PI * j as f64 / 720.0;
                let hk = support_point_k(&b, k, t).map_err(|e| e.to_string())?.h;
                let hc = support_point_c(&b, &pc, t).map_err(|e| e.to_string())?.h;
                gap = gap.max((hk - hc).abs());
            }
        }
    }
    ensure(gap <= 1e-12, || format!("projection-spectrum gap {gap:.2e}"))?;
    Ok(format!("20 matrices, max excess {worst:.2e}, c-vs-k gap {gap:.2e}"))
}

fn proposition1() -> Outcome {
    let allowed = [0usize, 3, 8, 15, 24, 35];
    let mut seen = std::collections::BTreeMap::new();
    let mut rank2_gives_3 = false;
    for seed in 0..500u64 {
        let n = 2 + seed as usize % 5;
        let (a, k) = random_qk_point(n, seed);
        let d = minimal_face_qk_dimension(&a, k).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(allowed.contains(&d), || format!("seed {seed}: dimension {d}"))?;
        // oracle: m eigenvalues strictly inside (0, 1) give dimension m² − 1
        let ev = hermitian_eigenvalues(&a).map_err(|e| e.to_string())?;
        let m = ev.iter().filter(|&&x| x > 1e-6 && x < 1.0 - 1e-6).count();
        ensure(d == if m == 0 { 0 } else { m * m - 1 }, || format!("seed {seed}: {d} vs m = {m}"))?;
        if middle_rank(&a, k).map_err(|e| e.to_string())? == 2 && d == 3 {
            rank2_gives_3 = true;
        }
        *seen.entry(d).or_insert(0usize) += 1;
    }
    ensure(!seen.contains_key(&1) && !seen.contains_key(&2), || "dimension 1 or 2 occurred".into())?;
    ensure(seen.contains_key(&0) && seen.contains_key(&3), || format!("0 or 3 missing: {seen:?}"))?;
    ensure(rank2_gives_3, || "no rank-2 middle block".into())?;
    Ok(format!("dimension counts {seen:?}"))
}

fn lemma_witness() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(35);
    let mut min_rank = usize::MAX;
    let mut worst = [0.0f64; 3];
    for trial in 0..100u64 {
        let n = r.gen_range(2..=6);
        let (a, i, j) = loop {
            let a: Vec<f64> = (0..n).map(|_| r.gen_range(-2.0..2.0)).collect();
            let i = r.gen_range(0..n);
            let j = (i + r.gen_range(1..n)) % n;
            if (a[i] - a[j]).abs() > 1e-3 {
                break (a, i, j);
            }
        };
        let t = r.gen_range(0.05..0.95);
        let u = haar_unitary(n, 7000 + trial);
        let w = lemma35_witnesses(&a, i, j, t, &u).map_err(|e| format!("trial {trial}: {e}"))?;
        let herm = w.max_hermitian_deviation();
        let block = w.block_invariant_error(a[i], a[j]);
        let mid = w.midpoint_error();
        let rank = w.full_affine_rank();
        ensure(herm <= 1e-12, || format!("trial {trial}: Hermitian deviation {herm:e}"))?;
        ensure(block <= 1e-10, || format!("trial {trial}: block invariants {block:e}"))?;
        ensure(mid <= 1e-12, || format!("trial {trial}: midpoint {mid:e}"))?;
        ensure(rank >= 3, || format!("trial {trial}: affine rank {rank}"))?;
        min_rank = min_rank.min(rank);
        worst = [worst[0].max(herm), worst[1].max(block), worst[2].max(mid)];
    }
    Ok(format!(
        "hermitian {:.1e}, blocks {:.1e}, midpoints {:.1e}, min affine rank {min_rank}",
        worst[0], worst[1], worst[2]
    ))
}

fn majorization_round_trip() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut longest = 0;
    for trial in 0..500 {
        let n = r.gen_range(2..=8);
        let c = sorted_desc((0..n).map(|_| r.gen_range(-5.0..5.0)).collect());
        let mut b = c.clone();
        for _ in 0..r.gen_range(0..=2 * n) {
            let i = r.gen_range(0..n);
            let j = (i + r.gen_range(1..n)) % n;
            let step = PinchingStep::new(i, j, r.gen_range(0.0..1.0)).map_err(|e| e.to_string())?;
            b = apply_pinching(&b, &step).map_err(|e| e.to_string())?;
        }
        let b = sorted_desc(b);
        ensure(majorized_oracle(&b, &c), || format!("trial {trial}: oracle rejects"))?;
        ensure(majorizes(&b, &c).map_err(|e| e.to_string())?, || format!("trial {trial}: majorizes false"))?;
        let steps = pinching_sequence(&c, &b).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(steps.len() < n, || format!("trial {trial}: {} steps for n = {n}", steps.len()))?;
        let mut x = c.clone();
        for s in &steps {
            x = apply_pinching(&x, s).map_err(|e| e.to_string())?;
        }
        let err = sorted_desc(x).iter().zip(&b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        ensure(err <= 1e-9, || format!("trial {trial}: reconstruction error {err:e}"))?;
        worst = worst.max(err);
        longest = longest.max(steps.len());
    }
    Ok(format!("max error {worst:.1e}, longest sequence {longest}"))
}

fn lyapunov_refinement() -> Outcome {
    let mut worst_ratio = 0.0f64;
    let mut count = 0;
    for n0 in 2..=4usize {
        for s in 0..10u64 {
            let seed = 100 * n0 as u64 + s;
            let m = random_measure(n0, 2, 1, seed);
            let mut last = f64::INFINITY;
            let mut final_mass = 0.0;
            let mut final_defect = 0.0;
            for round in 0..=3 {
                let mr = if round == 0 { m.clone() } else { m.refine(round).map_err(|e| e.to_string())? };
                let d = range_bruteforce(&mr)
                    .and_then(|rs| convexity_defect(&rs, 2000, seed))
                    .map_err(|e| format!("seed {seed} round {round}: {e}"))?;
                ensure(d <= last, || format!("seed {seed} round {round}: defect rose {last:e} -> {d:e}"))?;
                last = d;
                final_mass = mr.max_mass();
                final_defect = d;
                if round == 3 {
                    let eta = mr.max_constraint_increment();
                    let cs = constrained_range(&mr, eta).map_err(|e| e.to_string())?;
                    ensure(!cs.is_empty(), || format!("seed {seed}: constrained range empty"))?;
                    if cs.len() >= 2 {
                        let cd = convexity_defect(&cs, 2000, seed).map_err(|e| e.to_string())?;
                        ensure(cd <= 2.0 * final_mass + eta, || {
                            format!("seed {seed}: constrained defect {cd:e} > 2·{final_mass:e} + {eta:e}")
                        })?;
                    }
                }
            }
            ensure(final_defect <= 2.0 * final_mass, || {
                format!("seed {seed}: final defect {final_defect:e} > 2·{final_mass:e}")
            })?;
            worst_ratio = worst_ratio.max(final_defect / final_mass);
            count += 1;
        }
    }
    Ok(format!("{count} measures, max final defect / max mass {worst_ratio:.3}"))
}

fn corollary6() -> Outcome {
    let mut runs = 0;
    let mut worst = 0.0f64;
    for i in 0..10u64 {
        let n = 3 + i as usize % 3;
        let b = random_complex(n, 600 + i);
        for k in 1..n {
            let rep = corollary6_range(&b, k, 100_000, 60 + i).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || format!("b {i} k {k}: {} outside, max {:e}", rep.n_outside, rep.max_violation))?;
            worst = worst.max(rep.max_violation);
            runs += 1;
        }
    }
    Ok(format!("{runs} (b, k) pairs, max excess {worst:.2e}"))
}

fn vertex_characterization() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(9);
    let (mut systems, mut vertices, mut attempts) = (0, 0, 0u64);
    while systems < 100 {
        attempts += 1;
        let n_atoms = r.gen_range(2..=10);
        let n_cons = r.gen_range(1..=3);
        let m = random_measure(n_atoms, 1, n_cons, 9000 + attempts);
        let v = match extreme_solutions(&m, 1_000_000) {
            Ok(v) => v,
            Err(autoconvex::Error::Infeasible) => continue,
            Err(e) => return Err(e.to_string()),
        };
        ensure(!v.truncated, || format!("system {attempts} truncated"))?;
        for g in &v.vertices {
            ensure(fractional_count(g) <= n_cons, || format!("system {attempts}: {g:?}"))?;
            // independent feasibility check
            ensure(g.iter().all(|&x| (-1e-9..=1.0 + 1e-9).contains(&x)), || format!("{g:?} leaves the cube"))?;
            for (row, z) in m.constraints().iter().zip(m.z()) {
                let val: f64 = row.iter().zip(m.masses()).zip(g).map(|((h, w), x)| h * w * x).sum();
                ensure((val - z).abs() <= 1e-9 * (1.0 + z.abs()), || format!("constraint residual {}", val - z))?;
            }
        }
        systems += 1;
        vertices += v.vertices.len();
    }
    Ok(format!("{systems} feasible systems ({attempts} drawn), {vertices} vertices"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "intersection theorem suite", budget: Some(Duration::from_secs(300)), run: intersection_suite },
        Criterion { id: 2, name: "k-range certification", budget: Some(Duration::from_secs(600)), run: proposition2 },
        Criterion { id: 3, name: "c-range certification", budget: None, run: proposition3 },
        Criterion { id: 4, name: "Q_k facial law", budget: None, run: proposition1 },
        Criterion { id: 5, name: "pinch witnesses", budget: None, run: lemma_witness },
        Criterion { id: 6, name: "majorization round trip", budget: None, run: majorization_round_trip },
        Criterion { id: 7, name: "Lyapunov refinement", budget: Some(Duration::from_secs(120)), run: lyapunov_refinement },
        Criterion { id: 8, name: "scaled k-range of projections", budget: None, run: corollary6 },
        Criterion { id: 9, name: "vertex characterization", budget: None, run: vertex_characterization },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {:.1} s, budget {} s", elapsed.as_secs_f64(), b.as_secs())),
            (o, _) => o,
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {} {}: {detail} [{:.1} s]", c.id, c.name, elapsed.as_secs_f64());
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
