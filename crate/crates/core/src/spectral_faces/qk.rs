use rand::Rng as _;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{haar_unitary_with, hermitian_eig, ComplexMatrix, SpectralDecomposition};
use crate::rng;

/// Eigenvalues within this distance of 0 or 1 are treated as 0 or 1.
pub const EPS_V: f64 = 1e-7;
/// Eigenvalues outside `[-SPECTRUM_TOL, 1 + SPECTRUM_TOL]` are rejected.
pub const SPECTRUM_TOL: f64 = 1e-9;
pub const TRACE_TOL: f64 = 1e-8;
pub const IDEMPOTENT_TOL: f64 = 1e-8;

/// The face `p + rKr` of `K = {0 ≤ x ≤ 1}` generated by a point.
#[derive(Clone, Debug)]
pub struct MatrixFaceDescriptor {
    pub n: usize,
    pub p: ComplexMatrix,
    pub r: ComplexMatrix,
    pub rank_p: usize,
    pub rank_r: usize,
    /// `max(‖pa − p‖, ‖aq − a‖)` with `q = p + r`, entrywise.
    pub residual: f64,
}

impl MatrixFaceDescriptor {
    /// Real dimension `(rank r)²`.
    pub fn dim(&self) -> usize {
        self.rank_r * self.rank_r
    }
}

fn spectrum_in_unit_interval(a: &ComplexMatrix) -> Result<SpectralDecomposition> {
    let eig = hermitian_eig(a).map_err(|e| match e {
        Error::NotHermitian { deviation } => Error::NotInK(format!("not Hermitian (deviation {deviation:e})")),
        other => other,
    })?;
    if let Some(&l) = eig.eigenvalues.iter().find(|&&l| !(-SPECTRUM_TOL..=1.0 + SPECTRUM_TOL).contains(&l)) {
        return Err(Error::NotInK(format!("eigenvalue {l} outside [0, 1]")));
    }
    Ok(eig)
}

/// Smallest face of `K` containing `a`.
pub fn minimal_face_k(a: &ComplexMatrix) -> Result<MatrixFaceDescriptor> {
    let eig = spectrum_in_unit_interval(a)?;
    let top = |l: f64| l >= 1.0 - EPS_V;
    let mid = |l: f64| (EPS_V..1.0 - EPS_V).contains(&l);
    let p = eig.spectral_projection(top);
    let r = eig.spectral_projection(mid);
    let rank_p = eig.eigenvalues.iter().filter(|&&l| top(l)).count();
    let rank_r = eig.eigenvalues.iter().filter(|&&l| mid(l)).count();
    let q = &p + &r;
    let residual = (&p.matmul(a) - &p).max_abs().max((&a.matmul(&q) - a).max_abs());
    Ok(MatrixFaceDescriptor { n: a.n(), p, r, rank_p, rank_r, residual })
}

fn check_qk(a: &ComplexMatrix, k: usize) -> Result<SpectralDecomposition> {
    let eig = spectrum_in_unit_interval(a).map_err(|e| match e {
        Error::NotInK(m) => Error::NotInQk(m),
        other => other,
    })?;
    let tr: f64 = eig.eigenvalues.iter().sum();
    if (tr - k as f64).abs() > TRACE_TOL {
        return Err(Error::NotInQk(format!("trace {tr} differs from {k}")));
    }
    Ok(eig)
}

/// Extreme points of `Q_k = {a ∈ K : τ(a) = k}` are the rank-`k`
/// projections.
pub fn extreme_point_test_qk(a: &ComplexMatrix, k: usize) -> Result<bool> {
    let eig = check_qk(a, k)?;
    let idem = eig.eigenvalues.iter().map(|l| (l * l - l).abs()).fold(0.0, f64::max);
    let big = eig.eigenvalues.iter().filter(|&&l| l >= 0.5).count();
    Ok(idem <= IDEMPOTENT_TOL && big == k)
}

/// Dimension of the smallest face of `Q_k` containing `a`: 0 at extreme
/// points, otherwise `(rank r)² − 1`.
///
/// A one-dimensional middle block cannot occur inside `Q_k` (the trace
/// would not be an integer), so `rank r = 1` is reported as `NotInQk`.
pub fn minimal_face_qk_dimension(a: &ComplexMatrix, k: usize) -> Result<usize> {
    check_qk(a, k)?;
    let face = minimal_face_k(a)?;
    match face.rank_r {
        0 => Ok(0),
        1 => Err(Error::NotInQk("single eigenvalue strictly inside (0, 1)".into())),
        m => Ok(m * m - 1),
    }
}

/// `rank r` of the point, or a `NotInQk` error.
pub fn middle_rank(a: &ComplexMatrix, k: usize) -> Result<usize> {
    check_qk(a, k)?;
    Ok(minimal_face_k(a)?.rank_r)
}

/// Summary used by the CLI and FFI.
#[derive(Clone, Debug, Serialize)]
pub struct QkFaceReport {
    pub n: usize,
    pub k: usize,
    pub extreme: bool,
    pub face_dim: usize,
    pub rank_p: usize,
    pub rank_r: usize,
}

pub fn qk_face_report(a: &ComplexMatrix, k: usize) -> Result<QkFaceReport> {
    let extreme = extreme_point_test_qk(a, k)?;
    let face_dim = minimal_face_qk_dimension(a, k)?;
    let face = minimal_face_k(a)?;
    Ok(QkFaceReport { n: a.n(), k, extreme, face_dim, rank_p: face.rank_p, rank_r: face.rank_r })
}

/// Random point of `Q_k` in a Haar basis, returned with its `k`.
///
/// The spectrum has `m ∈ {0, 2, …, n}` eigenvalues strictly inside `(0, 1)`
/// (each at least a quarter of the way from 0 and 1 relative to their
/// mean), the rest are 0 or 1, and the total is an integer `k ≥ 1`.
pub fn random_qk_point(n: usize, seed: u64) -> (ComplexMatrix, usize) {
    assert!(n >= 2, "need n >= 2");
    let mut r = rng::seeded(seed);
    let m = match r.gen_range(0..n) {
        0 => 0,
        x => x + 1,
    };
    let (s, ones) = if m == 0 {
        (0, r.gen_range(1..=n))
    } else {
        (r.gen_range(1..m), r.gen_range(0..=n - m))
    };
    let mut spec = vec![0.0; n];
    for x in spec.iter_mut().take(ones) {
        *x = 1.0;
    }
    if m > 0 {
        let mean = s as f64 / m as f64;
        let room = 0.5 * mean.min(1.0 - mean);
        let mut delta: Vec<f64> = (0..m).map(|_| r.gen_range(-room..room)).collect();
        let avg = delta.iter().sum::<f64>() / m as f64;
        let mut span = 0.0f64;
        for d in delta.iter_mut() {
            *d -= avg;
            span = span.max(d.abs());
        }
        let shrink = if span > room { room / span } else { 1.0 };
        for (x, d) in spec[ones..ones + m].iter_mut().zip(&delta) {
            *x = mean + d * shrink;
        }
    }
    let u = haar_unitary_with(n, &mut r);
    let a = ComplexMatrix::from_diag_real(&spec).conjugate_by(&u).hermitian_part();
    (a, ones + s)
}
