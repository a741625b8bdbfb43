use rand::Rng as _;
use rand_distr::StandardNormal;

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::rng::{self, Rng};

/// Haar-distributed unitary from an explicit seed.
pub fn haar_unitary(n: usize, seed: u64) -> ComplexMatrix {
    haar_unitary_with(n, &mut rng::seeded(seed))
}

/// Haar unitary drawn from an existing stream.
///
/// QR of a standard complex Gaussian (Ginibre) matrix. Gram-Schmidt with a
/// second orthogonalization pass produces `R` with a positive real diagonal,
/// which is the phase normalization that makes `Q` Haar distributed.
pub fn haar_unitary_with(n: usize, rng: &mut Rng) -> ComplexMatrix {
    let cols = haar_frame_with(n, n, rng);
    let mut u = ComplexMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}

/// First `k` columns of a Haar unitary, as column vectors.
///
/// Consumes the same Gaussian draws, in the same order, as the first `k`
/// columns of [`haar_unitary_with`], so from the same stream state the
/// frame equals those columns exactly.
pub fn haar_frame_with(n: usize, k: usize, rng: &mut Rng) -> Vec<Vec<C64>> {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(k);
    for _ in 0..k {
        let mut v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
        for _pass in 0..2 {
            for q in &cols {
                let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, qi) in v.iter_mut().zip(q) {
                    *x -= proj * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in v.iter_mut() {
            *x /= norm;
        }
        cols.push(v);
    }
    cols
}

/// Uniformly random unit vector in `C^n` (normalized complex Gaussian).
pub fn random_unit_vector(n: usize, rng: &mut Rng) -> Vec<C64> {
    let mut x: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
    let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in x.iter_mut() {
        *z /= norm;
    }
    x
}

/// Random Hermitian matrix with i.i.d. Gaussian entries (GUE up to scale).
pub fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = rng::seeded(seed);
    let mut h = ComplexMatrix::zeros(n);
    for i in 0..n {
        h[(i, i)] = C64::new(rng.sample(StandardNormal), 0.0);
        for j in i + 1..n {
            let z = gaussian(&mut rng);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    h
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn random_complex(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = rng::seeded(seed);
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = gaussian(&mut rng);
        }
    }
    a
}

/// Orthogonal projection onto the span of the first `k` columns of a Haar
/// unitary. `k = n` returns the identity exactly.
pub fn random_rank_k_projection(n: usize, k: usize, seed: u64) -> Result<ComplexMatrix> {
    random_rank_k_projection_with(n, k, &mut rng::seeded(seed))
}

pub fn random_rank_k_projection_with(n: usize, k: usize, rng: &mut Rng) -> Result<ComplexMatrix> {
    if k == 0 || k > n {
        return Err(Error::BadRank { k, n });
    }
    if k == n {
        return Ok(ComplexMatrix::identity(n));
    }
    let u = haar_unitary_with(n, rng);
    let mut p = ComplexMatrix::column_projection(&u, k);
    // exact Hermitian symmetry
    p = p.hermitian_part();
    Ok(p)
}

/// Standard complex Gaussian: real and imaginary parts `N(0, 1/2)`.
fn gaussian(rng: &mut Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}
