use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Absolute tolerance on `max |h_ij - conj(h_ji)|` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Sweeps stop once the off-diagonal Frobenius mass is below this
/// fraction of `‖H‖_F`.
pub const JACOBI_REL_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues sorted non-increasing with matching orthonormal eigenvector
/// columns.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.n();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n);
        for (c, &l) in self.eigenvalues.iter().enumerate() {
            for i in 0..n {
                let vi = v[(i, c)] * l;
                for j in 0..n {
                    out[(i, j)] += vi * v[(j, c)].conj();
                }
            }
        }
        out
    }

    /// Orthogonal projection onto the span of the eigenvectors whose
    /// eigenvalue satisfies `keep`.
    pub fn spectral_projection(&self, keep: impl Fn(f64) -> bool) -> ComplexMatrix {
        let n = self.n();
        let v = &self.eigenvectors;
        let mut p = ComplexMatrix::zeros(n);
        for (c, &l) in self.eigenvalues.iter().enumerate() {
            if !keep(l) {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    p[(i, j)] += v[(i, c)] * v[(j, c)].conj();
                }
            }
        }
        p
    }

    /// Projection onto the first `k` eigenvectors (the `k` largest
    /// eigenvalues, ties resolved by the sort order).
    pub fn top_projection(&self, k: usize) -> ComplexMatrix {
        ComplexMatrix::column_projection(&self.eigenvectors, k)
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// The input is symmetrized after the Hermiticity check. Ties in the
/// eigenvalue order keep the original diagonal position.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<SpectralDecomposition> {
    let n = h.n();
    if n == 0 {
        return Err(Error::ShapeMismatch("empty matrix".into()));
    }
    let deviation = h.hermitian_deviation();
    if !(deviation <= HERMITIAN_TOL) {
        return Err(Error::NotHermitian { deviation });
    }
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_REL_TOL * a.frobenius();

    let mut sweeps = 0;
    loop {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // stable: equal eigenvalues keep column order
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (c, &src) in order.iter().enumerate() {
        for r in 0..n {
            eigenvectors[(r, c)] = v[(r, src)];
        }
    }
    Ok(SpectralDecomposition { eigenvalues, eigenvectors })
}

/// Sorted eigenvalues only.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eig(h).map(|s| s.eigenvalues)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p,q]` with `V = diag(1, e^{-iφ}) · R(c, s)` acting on the
/// `(p, q)` plane, where `a[p,q] = r e^{iφ}`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r; // e^{iφ}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sgn = if theta >= 0.0 { 1.0 } else { -1.0 };
        sgn / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let ph = phase.conj(); // e^{-iφ}
    let vpp = C64::new(c, 0.0);
    let vpq = C64::new(s, 0.0);
    let vqp = ph * (-s);
    let vqq = ph * c;

    let n = a.n();
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_p = akp * vpp + akq * vqp;
        let new_q = akp * vpq + akq * vqq;
        a[(k, p)] = new_p;
        a[(k, q)] = new_q;
        a[(p, k)] = new_p.conj();
        a[(q, k)] = new_q.conj();
    }
    a[(p, p)] = C64::new(app - t * r, 0.0);
    a[(q, q)] = C64::new(aqq + t * r, 0.0);
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * vpp + vkq * vqp;
        v[(k, q)] = vkp * vpq + vkq * vqq;
    }
}
