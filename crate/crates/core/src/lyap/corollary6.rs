use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::matcore::{haar_frame_with, ComplexMatrix, C64};
use crate::numrange::{boundary_polygon, RangeMode, DEFAULT_ANGLES};
use crate::rng;

pub const COROLLARY6_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct Corollary6Report {
    pub n: usize,
    pub k: usize,
    pub n_samples: usize,
    #[serde(skip)]
    pub points: Vec<[f64; 2]>,
    pub n_outside: usize,
    pub max_violation: f64,
    pub tolerance: f64,
}

impl Corollary6Report {
    pub fn passed(&self) -> bool {
        self.n_outside == 0
    }
}

/// Normalized traces `τ(pb)/n` of random rank-`k` projections, checked
/// against the support polygon of `W_k(b)` scaled by `k/n`.
pub fn corollary6_range(b: &ComplexMatrix, k: usize, n_samples: usize, seed: u64) -> Result<Corollary6Report> {
    let n = b.n();
    let curve = boundary_polygon(b, &RangeMode::K(k), DEFAULT_ANGLES)?;
    let poly = curve.polygon().scaled(k as f64 / n as f64);
    let chunks = rng::chunks(n_samples);
    let points: Vec<[f64; 2]> = chunks
        .par_iter()
        .map(|&(id, len)| {
            let mut r = rng::stream(seed, id);
            (0..len)
                .map(|_| {
                    // τ(pb) for p the projection onto the frame
                    let z: C64 = haar_frame_with(n, k, &mut r).iter().map(|x| b.quadratic_form(x)).sum::<C64>()
                        / n as f64;
                    [z.re, z.im]
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let violations: Vec<f64> = points.par_iter().map(|&z| poly.violation(z)).collect();
    let n_outside = violations.iter().filter(|&&v| v > COROLLARY6_TOL).count();
    let max_violation = violations.iter().fold(0.0f64, |m, &v| m.max(v));
    Ok(Corollary6Report { n, k, n_samples, points, n_outside, max_violation, tolerance: COROLLARY6_TOL })
}
