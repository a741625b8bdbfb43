use rayon::prelude::*;
use serde::Serialize;

use super::polygon::SupportPolygon;
use crate::error::{Error, Result};
use crate::matcore::{hermitian_eig, rotated_hermitian_part, ComplexMatrix, C64};
use crate::spectral_faces::WeightVector;

/// Eigenvalue gaps at or below this mark a flat (segment) supporting face.
pub const FLAT_GAP: f64 = 1e-9;
pub const DEFAULT_ANGLES: usize = 720;

/// Which range: `W_k(b)` or `W_c(b)`.
#[derive(Clone, Debug, PartialEq)]
pub enum RangeMode {
    K(usize),
    C(WeightVector),
}

impl RangeMode {
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            RangeMode::K(k) if *k == 0 || *k > n => Err(Error::BadRank { k: *k, n }),
            RangeMode::C(c) if c.len() != n => Err(Error::LengthMismatch { left: c.len(), right: n }),
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            RangeMode::K(k) => format!("k={k}"),
            RangeMode::C(c) => format!("c={:?}", c.as_slice()),
        }
    }
}

/// An extreme point of the underlying convex set attaining a support value.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// Rank-`k` projection `p`, image `τ(bp)/k`.
    Projection(ComplexMatrix),
    /// Unitary `u`, image `τ([c] u† b u)`.
    Unitary(ComplexMatrix),
}

#[derive(Clone, Debug)]
pub struct SupportPoint {
    pub theta: f64,
    pub h: f64,
    pub z: [f64; 2],
    pub flat: bool,
    pub witness: Witness,
}

/// `h(θ)`, the support point and its attaining projection for `W_k(b)`.
pub fn support_point_k(b: &ComplexMatrix, k: usize, theta: f64) -> Result<SupportPoint> {
    let n = b.n();
    RangeMode::K(k).validate(n)?;
    let eig = hermitian_eig(&rotated_hermitian_part(b, theta))?;
    let ev = &eig.eigenvalues;
    let kf = k as f64;
    let h = ev[..k].iter().sum::<f64>() / kf;
    let z: C64 = (0..k).map(|i| b.quadratic_form(&eig.eigenvectors.column(i))).sum::<C64>() / kf;
    let flat = k < n && ev[k - 1] - ev[k] <= FLAT_GAP;
    Ok(SupportPoint { theta, h, z: [z.re, z.im], flat, witness: Witness::Projection(eig.top_projection(k)) })
}

/// `h(θ) = Σ c_i λ_i(H_θ)`, the support point `τ([c] u† b u)` and the
/// ordered eigenbasis `u` of `H_θ`.
///
/// The angle is flagged flat when two eigenvalues within `FLAT_GAP` sit
/// at a position where `c` strictly decreases, so that the pairing is not
/// unique.
pub fn support_point_c(b: &ComplexMatrix, c: &WeightVector, theta: f64) -> Result<SupportPoint> {
    let n = b.n();
    RangeMode::C(c.clone()).validate(n)?;
    let eig = hermitian_eig(&rotated_hermitian_part(b, theta))?;
    let ev = &eig.eigenvalues;
    let cs = c.as_slice();
    let h: f64 = cs.iter().zip(ev).map(|(c, l)| c * l).sum();
    let z: C64 = cs
        .iter()
        .enumerate()
        .filter(|(_, &ci)| ci != 0.0)
        .map(|(i, &ci)| b.quadratic_form(&eig.eigenvectors.column(i)) * ci)
        .sum();
    let flat = (0..n.saturating_sub(1)).any(|i| cs[i] > cs[i + 1] && ev[i] - ev[i + 1] <= FLAT_GAP);
    Ok(SupportPoint { theta, h, z: [z.re, z.im], flat, witness: Witness::Unitary(eig.eigenvectors) })
}

pub fn support_point(b: &ComplexMatrix, mode: &RangeMode, theta: f64) -> Result<SupportPoint> {
    match mode {
        RangeMode::K(k) => support_point_k(b, *k, theta),
        RangeMode::C(c) => support_point_c(b, c, theta),
    }
}

/// Support data of `W_k(b)` or `W_c(b)` on the grid `θ_j = 2πj/m`.
#[derive(Clone, Debug)]
pub struct BoundarySupportCurve {
    pub matrix: ComplexMatrix,
    pub mode: RangeMode,
    pub angles: Vec<f64>,
    pub support_values: Vec<f64>,
    pub support_points: Vec<[f64; 2]>,
    pub flat: Vec<bool>,
    pub witnesses: Vec<Option<Witness>>,
}

impl BoundarySupportCurve {
    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn polygon(&self) -> SupportPolygon {
        SupportPolygon::new(&self.angles, &self.support_values)
    }

    /// Rows `theta,h,x,y,flat` for CSV output.
    pub fn rows(&self) -> impl Iterator<Item = CurveRow> + '_ {
        (0..self.len()).map(|j| CurveRow {
            theta: self.angles[j],
            h: self.support_values[j],
            x: self.support_points[j][0],
            y: self.support_points[j][1],
            flat: self.flat[j],
        })
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CurveRow {
    pub theta: f64,
    pub h: f64,
    pub x: f64,
    pub y: f64,
    pub flat: bool,
}

/// Sweeps the support operation over `m_angles` equally spaced angles.
/// Angles are evaluated independently and assembled by index.
pub fn boundary_polygon(b: &ComplexMatrix, mode: &RangeMode, m_angles: usize) -> Result<BoundarySupportCurve> {
    if m_angles < 8 {
        return Err(Error::InvalidArgument(format!("need at least 8 angles, got {m_angles}")));
    }
    mode.validate(b.n())?;
    let angles: Vec<f64> = (0..m_angles).map(|j| std::f64::consts::TAU * j as f64 / m_angles as f64).collect();
    let points = angles.par_iter().map(|&t| support_point(b, mode, t)).collect::<Result<Vec<_>>>()?;
    Ok(BoundarySupportCurve {
        matrix: b.clone(),
        mode: mode.clone(),
        support_values: points.iter().map(|p| p.h).collect(),
        support_points: points.iter().map(|p| p.z).collect(),
        flat: points.iter().map(|p| p.flat).collect(),
        witnesses: points.into_iter().map(|p| Some(p.witness)).collect(),
        angles,
    })
}
