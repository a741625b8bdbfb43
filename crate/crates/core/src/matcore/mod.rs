//! Dense complex matrix kernel: Hermitian eigensystems, rotated Hermitian
//! parts, traces and seeded Haar sampling.

mod eig;
mod matrix;
mod random;
mod svd;

pub use eig::{
    hermitian_eig, hermitian_eigenvalues, SpectralDecomposition, HERMITIAN_TOL, JACOBI_MAX_SWEEPS,
    JACOBI_REL_TOL,
};
pub use matrix::{ComplexMatrix, MatrixJson, C64};
pub use random::{
    haar_frame_with, haar_unitary, haar_unitary_with, random_complex, random_hermitian, random_rank_k_projection,
    random_rank_k_projection_with, random_unit_vector,
};
pub use svd::{numerical_rank, singular_values};

/// `H_θ = (e^{-iθ} A + e^{iθ} A†) / 2`.
///
/// For Hermitian `q`, `τ(H_θ q) = Re(e^{-iθ} τ(A q))`, so the largest
/// eigenvalues of `H_θ` give support values of trace images of `A` in the
/// direction `(cos θ, sin θ)`. The result is Hermitian to the last bit.
pub fn rotated_hermitian_part(a: &ComplexMatrix, theta: f64) -> ComplexMatrix {
    let n = a.n();
    let w = C64::from_polar(1.0, -theta);
    let mut h = ComplexMatrix::zeros(n);
    for i in 0..n {
        h[(i, i)] = C64::new((w * a[(i, i)]).re, 0.0);
        for j in i + 1..n {
            let z = (w * a[(i, j)] + (w * a[(j, i)]).conj()) * 0.5;
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    h
}

/// Maps a complex number to the plane, `z ↦ (Re z, Im z)`.
pub fn to_plane(z: C64) -> [f64; 2] {
    [z.re, z.im]
}
