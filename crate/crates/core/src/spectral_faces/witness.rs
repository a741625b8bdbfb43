use super::majorization::{apply_pinching, PinchingStep};
use crate::error::{Error, Result};
use crate::matcore::{numerical_rank, ComplexMatrix, C64};

/// Relative singular-value threshold used to count affine dimensions.
pub const AFFINE_RANK_TOL: f64 = 1e-8;

/// The six unitary-orbit matrices around a single pinch `b` of `a`.
///
/// With `s = (t − t²)^{1/2}(a_i − a_j)` the `(i, j)` blocks before
/// conjugation are
///
/// ```text
/// A   = [a_i 0; 0 a_j]            A'   = [a_j 0; 0 a_i]
/// A_1 = [β_i  s; s  β_j]          A_1' = [β_i −s; −s β_j]
/// A_2 = [β_i is; −is β_j]         A_2' = [β_i −is; is β_j]
/// ```
///
/// where `β_i = t a_i + (1 − t) a_j` and `β_j = (1 − t) a_i + t a_j`; every
/// matrix agrees with `[a]` elsewhere and is then conjugated to `U†·U`.
#[derive(Clone, Debug)]
pub struct LemmaWitnesses {
    pub a: ComplexMatrix,
    pub a_prime: ComplexMatrix,
    pub a1: ComplexMatrix,
    pub a1_prime: ComplexMatrix,
    pub a2: ComplexMatrix,
    pub a2_prime: ComplexMatrix,
    /// `U†[b]U` where `b` is the `(i, j, t)` pinch of `a`.
    pub midpoint: ComplexMatrix,
    pub pinched: Vec<f64>,
    /// The six `(i, j)` blocks before conjugation, in the order above.
    pub blocks: [[[C64; 2]; 2]; 6],
}

impl LemmaWitnesses {
    pub fn all(&self) -> [&ComplexMatrix; 6] {
        [&self.a, &self.a_prime, &self.a1, &self.a1_prime, &self.a2, &self.a2_prime]
    }

    pub fn max_hermitian_deviation(&self) -> f64 {
        self.all().iter().map(|m| m.hermitian_deviation()).fold(0.0, f64::max)
    }

    /// Largest deviation of a block's trace from `a_i + a_j` or determinant
    /// from `a_i a_j`.
    pub fn block_invariant_error(&self, ai: f64, aj: f64) -> f64 {
        self.blocks
            .iter()
            .map(|blk| {
                let tr = blk[0][0] + blk[1][1];
                let det = blk[0][0] * blk[1][1] - blk[0][1] * blk[1][0];
                (tr - C64::new(ai + aj, 0.0)).norm().max((det - C64::new(ai * aj, 0.0)).norm())
            })
            .fold(0.0, f64::max)
    }

    /// Largest entrywise gap in `(A_1 + A_1')/2 = (A_2 + A_2')/2 = U†[b]U`.
    pub fn midpoint_error(&self) -> f64 {
        let m1 = (&self.a1 + &self.a1_prime).scale_real(0.5);
        let m2 = (&self.a2 + &self.a2_prime).scale_real(0.5);
        (&m1 - &self.midpoint).max_abs().max((&m2 - &self.midpoint).max_abs())
    }

    /// Affine dimension of the four rotated witnesses about the midpoint.
    pub fn rotated_affine_rank(&self) -> usize {
        affine_rank(&[&self.a1, &self.a1_prime, &self.a2, &self.a2_prime], &self.midpoint)
    }

    /// Affine dimension of all six witnesses about the midpoint.
    pub fn full_affine_rank(&self) -> usize {
        affine_rank(&self.all(), &self.midpoint)
    }
}

/// Dimension of the span of `{m − base}` over the reals, counting singular
/// values of the stacked `(re, im)` vectors at or above
/// `AFFINE_RANK_TOL · σ_max`.
pub fn affine_rank(mats: &[&ComplexMatrix], base: &ComplexMatrix) -> usize {
    let cols: Vec<Vec<f64>> = mats
        .iter()
        .map(|m| (*m - base).as_slice().iter().flat_map(|z| [z.re, z.im]).collect())
        .collect();
    numerical_rank(&cols, AFFINE_RANK_TOL)
}

/// Builds the six witnesses for the pinch of `a` at `(i, j)` with parameter
/// `t ∈ (0, 1)`, conjugated by the unitary `u`.
pub fn lemma35_witnesses(a: &[f64], i: usize, j: usize, t: f64, u: &ComplexMatrix) -> Result<LemmaWitnesses> {
    let n = a.len();
    for idx in [i, j] {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, len: n });
        }
    }
    if u.n() != n {
        return Err(Error::ShapeMismatch(format!("unitary is {}x{}, spectrum has {n} entries", u.n(), u.n())));
    }
    if i == j {
        return Err(Error::DegeneratePinch("indices coincide".into()));
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::DegeneratePinch(format!("t = {t} not in (0, 1)")));
    }
    if a[i] == a[j] {
        return Err(Error::DegeneratePinch("a_i = a_j".into()));
    }
    if (&u.adjoint().matmul(u) - &ComplexMatrix::identity(n)).max_abs() > 1e-8 {
        return Err(Error::InvalidArgument("conjugating matrix is not unitary".into()));
    }

    let (ai, aj) = (a[i], a[j]);
    let bi = t * ai + (1.0 - t) * aj;
    let bj = (1.0 - t) * ai + t * aj;
    let s = (t - t * t).sqrt() * (ai - aj);
    let re = |x: f64| C64::new(x, 0.0);
    let im = |x: f64| C64::new(0.0, x);
    let blocks = [
        [[re(ai), re(0.0)], [re(0.0), re(aj)]],
        [[re(aj), re(0.0)], [re(0.0), re(ai)]],
        [[re(bi), re(s)], [re(s), re(bj)]],
        [[re(bi), re(-s)], [re(-s), re(bj)]],
        [[re(bi), im(s)], [im(-s), re(bj)]],
        [[re(bi), im(-s)], [im(s), re(bj)]],
    ];
    let embed = |blk: &[[C64; 2]; 2]| {
        let mut m = ComplexMatrix::from_diag_real(a);
        m[(i, i)] = blk[0][0];
        m[(i, j)] = blk[0][1];
        m[(j, i)] = blk[1][0];
        m[(j, j)] = blk[1][1];
        m.conjugate_by(u).hermitian_part()
    };
    let pinched = apply_pinching(a, &PinchingStep::new(i, j, t)?)?;
    let midpoint = ComplexMatrix::from_diag_real(&pinched).conjugate_by(u).hermitian_part();
    Ok(LemmaWitnesses {
        a: embed(&blocks[0]),
        a_prime: embed(&blocks[1]),
        a1: embed(&blocks[2]),
        a1_prime: embed(&blocks[3]),
        a2: embed(&blocks[4]),
        a2_prime: embed(&blocks[5]),
        midpoint,
        pinched,
        blocks,
    })
}
