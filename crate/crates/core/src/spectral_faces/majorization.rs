use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{hermitian_eigenvalues, ComplexMatrix};

/// Real weights sorted non-increasing.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("weights must be finite".into()));
        }
        if !is_sorted_desc(&values) {
            return Err(Error::Unsorted);
        }
        Ok(Self(values))
    }

    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self> {
        values.sort_by(|a, b| b.total_cmp(a));
        Self::new(values)
    }

    /// Sorted eigenvalues of a Hermitian matrix; non-Hermitian input is
    /// rejected as non-real weights.
    pub fn from_hermitian(c: &ComplexMatrix) -> Result<Self> {
        match hermitian_eigenvalues(c) {
            Ok(ev) => Self::new(ev),
            Err(Error::NotHermitian { deviation }) => {
                Err(Error::NonRealWeights(format!("weight matrix is not Hermitian (deviation {deviation:e})")))
            }
            Err(e) => Err(e),
        }
    }

    /// `(1/k)(1, …, 1, 0, …, 0)` with `k` ones.
    pub fn projection_spectrum(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::BadRank { k, n });
        }
        Self::new((0..n).map(|i| if i < k { 1.0 / k as f64 } else { 0.0 }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

fn is_sorted_desc(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

fn scale_of(a: &[f64], b: &[f64]) -> f64 {
    a.iter().chain(b).fold(1.0f64, |m, x| m.max(x.abs()))
}

/// Relative tolerance on prefix sums in [`majorizes`].
pub const MAJORIZATION_TOL: f64 = 1e-10;

/// `b ≺ c`: every prefix sum of `b` is at most that of `c` and the totals
/// agree (both sorted non-increasing).
pub fn majorizes(b: &[f64], c: &[f64]) -> Result<bool> {
    if b.len() != c.len() {
        return Err(Error::LengthMismatch { left: b.len(), right: c.len() });
    }
    if !is_sorted_desc(b) || !is_sorted_desc(c) {
        return Err(Error::Unsorted);
    }
    let tol = MAJORIZATION_TOL * scale_of(b, c);
    let (mut sb, mut sc) = (0.0, 0.0);
    for (x, y) in b.iter().zip(c) {
        sb += x;
        sc += y;
        if sb > sc + tol {
            return Ok(false);
        }
    }
    Ok((sb - sc).abs() <= tol)
}

/// T-transform on coordinates `i`, `j` (0-based):
/// `v_i ← λ v_i + (1 − λ) v_j`, `v_j ← (1 − λ) v_i + λ v_j`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PinchingStep {
    pub i: usize,
    pub j: usize,
    pub lambda: f64,
}

impl PinchingStep {
    pub fn new(i: usize, j: usize, lambda: f64) -> Result<Self> {
        if i == j {
            return Err(Error::InvalidArgument("pinching indices must differ".into()));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidArgument(format!("lambda {lambda} outside [0, 1]")));
        }
        Ok(Self { i, j, lambda })
    }
}

/// Applies one pinching. Only coordinates `i` and `j` change and their sum
/// is preserved up to a compensated final rounding; `λ = 1` is the identity
/// and `λ = 0` swaps the two coordinates.
pub fn apply_pinching(v: &[f64], step: &PinchingStep) -> Result<Vec<f64>> {
    let PinchingStep { i, j, lambda } = *step;
    for idx in [i, j] {
        if idx >= v.len() {
            return Err(Error::IndexOutOfRange { index: idx, len: v.len() });
        }
    }
    PinchingStep::new(i, j, lambda)?;
    let mut out = v.to_vec();
    let (a, b) = (v[i], v[j]);
    if lambda == 1.0 {
        return Ok(out);
    }
    if lambda == 0.0 {
        out.swap(i, j);
        return Ok(out);
    }
    let new_i = lambda * a + (1.0 - lambda) * b;
    // two-sum: s + err == a + b exactly
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    out[i] = new_i;
    out[j] = (s - new_i) + err;
    Ok(out)
}

/// Pinchings taking `c` to `b` when `b ≺ c`.
///
/// Each step takes the largest index `i` with `x_i > b_i` and the smallest
/// `j > i` with `x_j < b_j`, then moves mass `min(x_i − b_i, b_j − x_j)`
/// from `i` to `j`. That fixes at least one coordinate and keeps the
/// working vector sorted, so at most `n − 1` steps are produced.
pub fn pinching_sequence(c: &[f64], b: &[f64]) -> Result<Vec<PinchingStep>> {
    if !majorizes(b, c)? {
        return Err(Error::NotMajorized);
    }
    let n = c.len();
    let eps = 1e-12 * scale_of(b, c);
    let mut x = c.to_vec();
    let mut steps = Vec::new();
    while steps.len() < n.saturating_sub(1) {
        let Some(i) = (0..n).rev().find(|&i| x[i] - b[i] > eps) else {
            break;
        };
        let Some(j) = (i + 1..n).find(|&j| b[j] - x[j] > eps) else {
            break;
        };
        let delta = (x[i] - b[i]).min(b[j] - x[j]);
        let lambda = ((x[i] - delta - x[j]) / (x[i] - x[j])).clamp(0.0, 1.0);
        let step = PinchingStep { i, j, lambda };
        x = apply_pinching(&x, &step)?;
        for idx in [i, j] {
            if (x[idx] - b[idx]).abs() <= eps {
                x[idx] = b[idx];
            }
        }
        steps.push(step);
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&[2.0, 2.0], &[3.0, 1.0]).unwrap());
        assert!(!majorizes(&[3.0, 1.0], &[2.0, 2.0]).unwrap());
        assert!(majorizes(&[5.0, -1.0, -2.0], &[5.0, -1.0, -2.0]).unwrap());
        assert!(!majorizes(&[1.0, 1.0], &[2.0, 1.0]).unwrap());
        assert_eq!(majorizes(&[1.0], &[1.0, 0.0]), Err(Error::LengthMismatch { left: 1, right: 2 }));
        assert_eq!(majorizes(&[1.0, 2.0], &[2.0, 1.0]), Err(Error::Unsorted));
    }

    #[test]
    fn pinching_formula() {
        let s = PinchingStep::new(0, 1, 0.5).unwrap();
        assert_eq!(apply_pinching(&[3.0, 1.0], &s).unwrap(), vec![2.0, 2.0]);
        let id = PinchingStep::new(0, 2, 1.0).unwrap();
        assert_eq!(apply_pinching(&[1e20, 7.0, 1.0], &id).unwrap(), vec![1e20, 7.0, 1.0]);
        let swap = PinchingStep::new(0, 2, 0.0).unwrap();
        assert_eq!(apply_pinching(&[1e20, 7.0, 1.0], &swap).unwrap(), vec![1.0, 7.0, 1e20]);
        let far = PinchingStep { i: 0, j: 5, lambda: 0.3 };
        assert_eq!(apply_pinching(&[1.0, 2.0], &far), Err(Error::IndexOutOfRange { index: 5, len: 2 }));
    }

    #[test]
    fn sequence_examples() {
        let s = pinching_sequence(&[3.0, 1.0], &[2.0, 2.0]).unwrap();
        assert_eq!(s, vec![PinchingStep { i: 0, j: 1, lambda: 0.5 }]);
        assert!(pinching_sequence(&[3.0, 1.0], &[3.0, 1.0]).unwrap().is_empty());
        assert_eq!(pinching_sequence(&[2.0, 2.0], &[3.0, 1.0]), Err(Error::NotMajorized));
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::new(vec![1.0, 2.0]).is_err());
        assert_eq!(WeightVector::from_unsorted(vec![1.0, 2.0]).unwrap().as_slice(), &[2.0, 1.0]);
        let p = WeightVector::projection_spectrum(4, 2).unwrap();
        assert_eq!(p.as_slice(), &[0.5, 0.5, 0.0, 0.0]);
        let nonherm = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(WeightVector::from_hermitian(&nonherm), Err(Error::NonRealWeights(_))));
    }
}
