use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::polytope::VPolytope;
use crate::error::{Error, Result};
use crate::exact::linalg::affine_dim;
use crate::exact::simplex::{FeasibleBasis, Increase};
use crate::exact::{clear_denominators, Q};

/// Vertex-count guard for face-lattice enumeration.
pub const MAX_FACE_VERTICES: usize = 20;
/// Ambient-dimension guard for face-lattice enumeration.
pub const MAX_FACE_DIM: usize = 6;

/// A face of a polytope, as the sorted indices of the parent's vertices it
/// contains.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PolytopeFace {
    pub vertices: Vec<usize>,
    pub dim: usize,
}

impl PolytopeFace {
    pub(crate) fn from_indices(k: &VPolytope, mut idx: Vec<usize>) -> Self {
        idx.sort_unstable();
        idx.dedup();
        let pts: Vec<&[Q]> = idx.iter().map(|&i| k.vertices()[i].as_slice()).collect();
        let dim = affine_dim(&pts).unwrap_or(0);
        Self { vertices: idx, dim }
    }

    pub fn points<'a>(&self, parent: &'a VPolytope) -> Vec<&'a [Q]> {
        self.vertices.iter().map(|&i| parent.vertices()[i].as_slice()).collect()
    }

    pub fn to_polytope(&self, parent: &VPolytope) -> VPolytope {
        VPolytope::from_extreme_points(
            parent.d(),
            self.vertices.iter().map(|&i| parent.vertices()[i].clone()).collect(),
        )
    }

    pub fn contains_vertex(&self, i: usize) -> bool {
        self.vertices.binary_search(&i).is_ok()
    }
}

/// Smallest face `G(K, v)` of `K` containing `v`.
///
/// A vertex `w` belongs to `G(K, v)` iff `(1 + λ) v − λ w ∈ K` for some
/// `λ > 0`. Each candidate is decided by maximizing `λ` in
/// `Σ μ_i x_i + λ (w − v) = v`, `Σ μ_i = 1`, `μ, λ ≥ 0`; the support of every
/// solution found is also recorded as belonging to the face.
pub fn minimal_face(k: &VPolytope, v: &[Q]) -> Result<PolytopeFace> {
    if v.len() != k.d() {
        return Err(Error::ShapeMismatch(format!("point of length {} in dimension {}", v.len(), k.d())));
    }
    // With L the common denominator of v, the λ-LP for w reads
    // Σ ν_i x_i + λ (L w − L v) = L v, Σ ν_i = L in ν = L μ. Every candidate
    // shares these constraints, so phase I runs once and each w only appends
    // its λ column L·A e_w − b.
    let (l, lv) = clear_denominators(v);
    let l = Q::from_integer(l);
    let lv: Vec<Q> = lv.into_iter().map(Q::from_integer).collect();
    let (a, b) = barycentric_system(k, &lv, &l);
    let basis = FeasibleBasis::new(&a, &b).ok_or(Error::NotInPolytope)?;
    let m = k.vertices().len();
    let mut member: Vec<bool> = basis.point().iter().map(|w| w.is_positive()).collect();

    for w in 0..m {
        if member[w] {
            continue;
        }
        match basis.can_increase(&basis.direction_to_column(w, &l)) {
            Increase::Unbounded => member[w] = true,
            Increase::Yes { x } => {
                member[w] = true;
                for (i, xi) in x.iter().enumerate() {
                    if xi.is_positive() {
                        member[i] = true;
                    }
                }
            }
            Increase::No => {}
        }
    }
    let idx = (0..m).filter(|&i| member[i]).collect();
    Ok(PolytopeFace::from_indices(k, idx))
}

/// `Σ ν_i x_i = v`, `Σ ν_i = total`.
fn barycentric_system(k: &VPolytope, v: &[Q], total: &Q) -> (Vec<Vec<Q>>, Vec<Q>) {
    let verts = k.vertices();
    let mut a: Vec<Vec<Q>> = (0..k.d()).map(|c| verts.iter().map(|x| x[c].clone()).collect()).collect();
    a.push(vec![Q::one(); verts.len()]);
    let mut b = v.to_vec();
    b.push(total.clone());
    (a, b)
}

/// Smallest face `G(K, F)` containing every point of `F`. For a finite set
/// this is `G(K, v)` at the barycenter `v` of `F`.
pub fn minimal_face_of_set(k: &VPolytope, f: &[Vec<Q>]) -> Result<PolytopeFace> {
    if f.is_empty() {
        return Err(Error::InvalidArgument("empty point set".into()));
    }
    for p in f {
        if p.len() != k.d() {
            return Err(Error::ShapeMismatch(format!("point of length {} in dimension {}", p.len(), k.d())));
        }
        if !k.contains(p) {
            return Err(Error::NotInPolytope);
        }
    }
    minimal_face(k, &barycenter(f))
}

pub(crate) fn barycenter(f: &[Vec<Q>]) -> Vec<Q> {
    let n = Q::from_integer(f.len().into());
    (0..f[0].len())
        .map(|c| f.iter().fold(Q::zero(), |acc, p| acc + &p[c]) / &n)
        .collect()
}

/// All nonempty faces of `K` (including `K` and its vertices), ordered by
/// dimension then vertex indices.
pub fn faces_of(k: &VPolytope) -> Result<Vec<PolytopeFace>> {
    faces_with_limit(k, MAX_FACE_VERTICES, MAX_FACE_DIM)
}

/// Face lattice with explicit guards.
pub fn faces_with_limit(k: &VPolytope, max_vertices: usize, max_dim: usize) -> Result<Vec<PolytopeFace>> {
    let m = k.vertices().len();
    if m > max_vertices || k.d() > max_dim {
        return Err(Error::TooLarge(format!(
            "{m} vertices in dimension {} (limits {max_vertices}, {max_dim})",
            k.d()
        )));
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    let facets: Vec<BTreeSet<usize>> =
        k.facets().into_iter().map(|f| f.vertices.into_iter().collect()).collect();
    let all: BTreeSet<usize> = (0..m).collect();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(all.clone());
    queue.push_back(all);
    while let Some(s) = queue.pop_front() {
        for f in &facets {
            let t: BTreeSet<usize> = s.intersection(f).copied().collect();
            if !t.is_empty() && t.len() < s.len() && seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    let mut faces: Vec<PolytopeFace> =
        seen.into_iter().map(|s| PolytopeFace::from_indices(k, s.into_iter().collect())).collect();
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp(&b.vertices)));
    Ok(faces)
}

/// `inf{dim Q : Q a nonsingleton face of K}`.
pub fn facial_dimension(k: &VPolytope) -> Result<usize> {
    if k.vertices().len() < 2 {
        return Err(Error::Singleton);
    }
    let faces = faces_of(k)?;
    Ok(faces
        .iter()
        .filter(|f| f.vertices.len() >= 2)
        .map(|f| f.dim)
        .min()
        .expect("polytope itself is a nonsingleton face"))
}
