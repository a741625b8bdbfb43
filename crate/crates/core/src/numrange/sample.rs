use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use super::polygon::SupportPolygon;
use super::support::{BoundarySupportCurve, RangeMode, Witness};
use crate::error::{Error, Result};
use crate::matcore::{haar_frame_with, ComplexMatrix, C64};
use crate::rng;

/// Monte Carlo points of the range: Haar frames (mode `k`) or Haar
/// unitaries (mode `c`). Chunk `i` of `rng::CHUNK` samples uses stream `i`
/// of `seed`, so the output does not depend on the thread count.
pub fn sample_range(b: &ComplexMatrix, mode: &RangeMode, n_samples: usize, seed: u64) -> Result<Vec<[f64; 2]>> {
    let n = b.n();
    mode.validate(n)?;
    let chunks = rng::chunks(n_samples);
    let out: Vec<Vec<[f64; 2]>> = chunks
        .par_iter()
        .map(|&(id, len)| {
            let mut r = rng::stream(seed, id);
            (0..len)
                .map(|_| match mode {
                    RangeMode::K(k) => {
                        let frame = haar_frame_with(n, *k, &mut r);
                        let z: C64 = frame.iter().map(|x| b.quadratic_form(x)).sum::<C64>() / *k as f64;
                        [z.re, z.im]
                    }
                    RangeMode::C(c) => {
                        let cs = c.as_slice();
                        let frame = haar_frame_with(n, n, &mut r);
                        let z: C64 = frame.iter().zip(cs).map(|(x, &ci)| b.quadratic_form(x) * ci).sum();
                        [z.re, z.im]
                    }
                })
                .collect()
        })
        .collect();
    Ok(out.into_iter().flatten().collect())
}

/// Outcome of testing samples, and midpoints of sample pairs, against a
/// support polygon.
#[derive(Clone, Debug, Serialize)]
pub struct RegionReport {
    pub n_samples: usize,
    /// Samples whose largest half-plane excess is above `tolerance`.
    pub n_outside: usize,
    /// Largest half-plane excess over all samples, floored at 0.
    pub max_violation: f64,
    pub n_midpoints: usize,
    pub midpoints_outside: usize,
    /// Largest distance from a sampled midpoint to the polygon.
    pub midpoint_defect: f64,
    pub tolerance: f64,
}

impl RegionReport {
    pub fn passed(&self) -> bool {
        self.n_outside == 0 && self.midpoints_outside == 0
    }
}

pub const MIDPOINT_PAIRS: usize = 10_000;
/// Stream used to pick midpoint pairs in [`certify_convexity`].
pub const MIDPOINT_SEED: u64 = 0x6d69_6470;

/// Checks that every sample, and the midpoint of `MIDPOINT_PAIRS` random
/// sample pairs, satisfies every support half-plane of `curve` within `tol`.
pub fn certify_convexity(samples: &[[f64; 2]], curve: &BoundarySupportCurve, tol: f64) -> RegionReport {
    certify_against(samples, &curve.polygon(), tol, MIDPOINT_PAIRS, MIDPOINT_SEED)
}

pub fn certify_against(
    samples: &[[f64; 2]],
    poly: &SupportPolygon,
    tol: f64,
    n_pairs: usize,
    pair_seed: u64,
) -> RegionReport {
    let violations: Vec<f64> = samples.par_iter().map(|&z| poly.violation(z)).collect();
    let n_outside = violations.iter().filter(|&&v| v > tol).count();
    let max_violation = violations.iter().fold(0.0f64, |m, &v| m.max(v));

    let mut r = rng::seeded(pair_seed);
    let mut midpoints_outside = 0;
    let mut midpoint_defect = 0.0f64;
    let n_midpoints = if samples.is_empty() { 0 } else { n_pairs };
    for _ in 0..n_midpoints {
        let i = r.gen_range(0..samples.len());
        let j = if samples.len() > 1 {
            let j = r.gen_range(0..samples.len() - 1);
            if j >= i {
                j + 1
            } else {
                j
            }
        } else {
            i
        };
        let (a, b) = (samples[i], samples[j]);
        let mid = [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])];
        if poly.violation(mid) > tol {
            midpoints_outside += 1;
        }
        midpoint_defect = midpoint_defect.max(poly.distance(mid));
    }
    RegionReport {
        n_samples: samples.len(),
        n_outside,
        max_violation,
        n_midpoints,
        midpoints_outside,
        midpoint_defect,
        tolerance: tol,
    }
}

/// Per-angle verification of the stored witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct AttainmentReport {
    pub n_angles: usize,
    pub n_failed: usize,
    /// Largest gap between the recomputed image of a witness and `z(θ)`.
    pub max_reproduction_error: f64,
    /// Largest `‖p² − p‖` (projections) or `‖u†u − I‖` (unitaries).
    pub max_witness_defect: f64,
}

impl AttainmentReport {
    pub fn passed(&self) -> bool {
        self.n_failed == 0
    }
}

pub const REPRODUCTION_TOL: f64 = 1e-10;
pub const WITNESS_TOL: f64 = 1e-8;

/// Recomputes every support point from its witness by a trace product and
/// checks the witness is an extreme point of the underlying set: a rank-`k`
/// projection, or a unitary.
pub fn attainment_details(curve: &BoundarySupportCurve) -> Result<AttainmentReport> {
    let b = &curve.matrix;
    let n = b.n();
    let mut rep = AttainmentReport { n_angles: curve.len(), n_failed: 0, max_reproduction_error: 0.0, max_witness_defect: 0.0 };
    for (j, w) in curve.witnesses.iter().enumerate() {
        let w = w.as_ref().ok_or(Error::MissingWitness(j))?;
        let (z, defect, rank_ok) = match (w, &curve.mode) {
            (Witness::Projection(p), RangeMode::K(k)) => {
                let z = b.trace_product(p) / *k as f64;
                let defect = (&p.matmul(p) - p).max_abs().max(p.hermitian_deviation());
                let tr = p.trace();
                (z, defect, (tr.re - *k as f64).abs() <= WITNESS_TOL && tr.im.abs() <= WITNESS_TOL)
            }
            (Witness::Unitary(u), RangeMode::C(c)) => {
                let cu = ComplexMatrix::from_diag_real(c.as_slice());
                let z = cu.trace_product(&b.conjugate_by(u));
                let defect = (&u.adjoint().matmul(u) - &ComplexMatrix::identity(n)).max_abs();
                (z, defect, true)
            }
            _ => return Err(Error::MissingWitness(j)),
        };
        let target = curve.support_points[j];
        let err = (z.re - target[0]).abs().max((z.im - target[1]).abs());
        rep.max_reproduction_error = rep.max_reproduction_error.max(err);
        rep.max_witness_defect = rep.max_witness_defect.max(defect);
        if err > REPRODUCTION_TOL || defect > WITNESS_TOL || !rank_ok {
            rep.n_failed += 1;
        }
    }
    Ok(rep)
}

pub fn attainment_check(curve: &BoundarySupportCurve) -> Result<bool> {
    Ok(attainment_details(curve)?.passed())
}
