use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::Serialize;

use super::faces::{faces_with_limit, minimal_face_of_set, PolytopeFace, MAX_FACE_DIM};
use super::intersect::intersect_affine;
use super::polytope::{AffineSubspace, VPolytope};
use crate::error::{Error, Result};
use crate::exact::{format_q, qi, Q};
use crate::rng;

/// Vertex limit applied to sections `K ∩ H` in the theorem checker. A
/// section of a 12-vertex polytope can have more vertices than the public
/// face-lattice guard allows.
pub const SECTION_MAX_VERTICES: usize = 64;

#[derive(Clone, Debug, Serialize)]
pub struct FaceCheck {
    /// Face of `K ∩ H`, as indices into the section's vertices.
    pub face: Vec<usize>,
    pub face_dim: usize,
    /// `G(K, F)` as indices into the vertices of `K`.
    pub g_vertices: Vec<usize>,
    pub g_dim: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremSummary {
    pub n_faces: usize,
    pub n_pass: usize,
    pub n_fail: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub faces: Vec<FaceCheck>,
    pub summary: TheoremSummary,
    /// Vertices of `K ∩ H` as rational strings.
    pub section: Vec<Vec<String>>,
}

impl IntersectionReport {
    pub fn passed(&self) -> bool {
        self.summary.n_fail == 0
    }
}

/// Checks `G(K, F) ∩ H = F` exactly for every face `F` of `K ∩ H`.
pub fn check_intersection_theorem(k: &VPolytope, h: &AffineSubspace) -> Result<IntersectionReport> {
    let section = intersect_affine(k, h)?;
    if section.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    let faces = faces_with_limit(&section, SECTION_MAX_VERTICES, MAX_FACE_DIM)?;
    let mut checks = Vec::with_capacity(faces.len());
    for f in &faces {
        checks.push(check_face(k, h, &section, f)?);
    }
    let n_pass = checks.iter().filter(|c| c.pass).count();
    let summary = TheoremSummary { n_faces: checks.len(), n_pass, n_fail: checks.len() - n_pass };
    let section = section.vertices().iter().map(|v| v.iter().map(format_q).collect()).collect();
    Ok(IntersectionReport { faces: checks, summary, section })
}

fn check_face(k: &VPolytope, h: &AffineSubspace, section: &VPolytope, f: &PolytopeFace) -> Result<FaceCheck> {
    let pts: Vec<Vec<Q>> = f.points(section).into_iter().map(|p| p.to_vec()).collect();
    let g = minimal_face_of_set(k, &pts)?;
    let g_cap_h = intersect_affine(&g.to_polytope(k), h)?;
    let mut expected = pts;
    expected.sort();
    let pass = g_cap_h.sorted_vertices() == expected;
    Ok(FaceCheck { face: f.vertices.clone(), face_dim: f.dim, g_vertices: g.vertices, g_dim: g.dim, pass })
}

/// Random polytope: `n_points` i.i.d. integer points in `[-9, 9]^d`,
/// deduplicated, redundant points removed.
pub fn random_polytope(d: usize, n_points: usize, seed: u64) -> VPolytope {
    let mut r = rng::seeded(seed);
    let pts = (0..n_points).map(|_| (0..d).map(|_| qi(r.gen_range(-9..=9))).collect()).collect();
    VPolytope::new(d, pts).expect("points have the ambient dimension")
}

/// Random affine subspace of the given codimension through a rational point
/// of `K`: a convex combination, with small integer weights, of a random
/// subset of the vertices. Equation coefficients are integers in `[-3, 3]`.
pub fn random_subspace_meeting(k: &VPolytope, codim: usize, seed: u64) -> AffineSubspace {
    let mut r = rng::seeded(seed);
    let d = k.d();
    let verts = k.vertices();
    let mut idx: Vec<usize> = (0..verts.len()).collect();
    idx.shuffle(&mut r);
    let take = r.gen_range(1..=verts.len());
    let weights: Vec<i64> = (0..take).map(|_| r.gen_range(1..=4)).collect();
    let total: i64 = weights.iter().sum();
    let point: Vec<Q> = (0..d)
        .map(|c| {
            idx[..take].iter().zip(&weights).fold(qi(0), |acc, (&i, &w)| acc + &verts[i][c] * qi(w))
                / qi(total)
        })
        .collect();
    let a: Vec<Vec<Q>> = (0..codim).map(|_| (0..d).map(|_| qi(r.gen_range(-3..=3))).collect()).collect();
    let b = a.iter().map(|row| crate::exact::linalg::dot(row, &point)).collect();
    AffineSubspace::new(a, b).expect("consistent shapes")
}

/// Random affine subspace with random integer right-hand side; may miss `K`.
pub fn random_subspace(d: usize, codim: usize, seed: u64) -> AffineSubspace {
    let mut r = rng::seeded(seed);
    let a: Vec<Vec<Q>> = (0..codim).map(|_| (0..d).map(|_| qi(r.gen_range(-3..=3))).collect()).collect();
    let b = (0..codim).map(|_| qi(r.gen_range(-12..=12))).collect();
    AffineSubspace::new(a, b).expect("consistent shapes")
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Number of (K, H) pairs with nonempty intersection to check.
    pub trials: usize,
    pub seed: u64,
    pub max_dim: usize,
    pub max_points: usize,
    pub max_codim: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { trials: 1000, seed: 2024, max_dim: 5, max_points: 12, max_codim: 3 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteFailure {
    pub attempt: usize,
    pub polytope: String,
    pub subspace: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub checked: usize,
    /// Attempts whose subspace missed the polytope.
    pub skipped_empty: usize,
    pub faces_checked: usize,
    pub failures: Vec<SuiteFailure>,
}

/// Randomized check of the intersection identity. Attempt `i` uses seeds
/// derived as `seed + i`; every fourth attempt draws an unconstrained
/// subspace, which is skipped (and counted) when it misses `K`.
pub fn run_random_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport { checked: 0, skipped_empty: 0, faces_checked: 0, failures: Vec::new() };
    let mut attempt = 0usize;
    while report.checked < cfg.trials {
        let seed = cfg.seed.wrapping_add(attempt as u64);
        let mut r = rng::stream(seed, 1);
        let d = r.gen_range(2..=cfg.max_dim.max(2));
        let n_points = r.gen_range(2..=cfg.max_points.max(2));
        let codim = r.gen_range(1..=cfg.max_codim.min(d).max(1));
        let k = random_polytope(d, n_points, seed);
        let h = if attempt % 4 == 3 {
            random_subspace(d, codim, seed ^ 0x5bd1_e995)
        } else {
            random_subspace_meeting(&k, codim, seed ^ 0x5bd1_e995)
        };
        match check_intersection_theorem(&k, &h) {
            Ok(rep) => {
                report.checked += 1;
                report.faces_checked += rep.summary.n_faces;
                if !rep.passed() {
                    report.failures.push(SuiteFailure {
                        attempt,
                        polytope: k.to_json_string(),
                        subspace: h.to_json_string(),
                        detail: format!("{} of {} faces failed", rep.summary.n_fail, rep.summary.n_faces),
                    });
                }
            }
            Err(Error::EmptyIntersection) => report.skipped_empty += 1,
            Err(e) => {
                report.checked += 1;
                report.failures.push(SuiteFailure {
                    attempt,
                    polytope: k.to_json_string(),
                    subspace: h.to_json_string(),
                    detail: e.to_string(),
                });
            }
        }
        attempt += 1;
    }
    report
}
