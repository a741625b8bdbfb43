use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::dd::extreme_rays;
use crate::exact::linalg::{dot, nullspace, rref};
use crate::exact::simplex::feasible_point;
use crate::exact::{clear_denominators, format_q, parse_q, Q};

/// Convex hull of finitely many rational points, kept irredundant.
#[derive(Clone, Debug)]
pub struct VPolytope {
    d: usize,
    vertices: Vec<Vec<Q>>,
    hrep: OnceLock<HRep>,
}

impl PartialEq for VPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.vertices == other.vertices
    }
}

impl Eq for VPolytope {}

/// Hull equations and facets, computed on first use. Rows are stored
/// with integer entries `(n, c)` meaning `n·x + c = 0` (equations) or `≥ 0`.
#[derive(Clone, Debug)]
struct HRep {
    facets: Vec<Facet>,
    equations: Vec<(Vec<BigInt>, BigInt)>,
    inequalities: Vec<(Vec<BigInt>, BigInt)>,
}

fn integral_row(normal: &[Q], offset: Q) -> (Vec<BigInt>, BigInt) {
    let mut row = normal.to_vec();
    row.push(offset);
    let (_, mut ints) = clear_denominators(&row);
    let c = ints.pop().expect("offset entry");
    (ints, c)
}

fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `{x : A x = b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    d: usize,
    a: Vec<Vec<Q>>,
    b: Vec<Q>,
}

/// Facet inequality `normal · x + offset ≥ 0`, valid on the affine hull of
/// the polytope, with the indices of the vertices it contains.
#[derive(Clone, Debug)]
pub struct Facet {
    pub normal: Vec<Q>,
    pub offset: Q,
    pub vertices: Vec<usize>,
}

/// Affine hull of a point set: `x = base + span`, with the coordinates in
/// `pivots` forming a chart and `equations` cutting it out.
#[derive(Clone, Debug)]
pub struct AffineHull {
    pub base: Vec<Q>,
    pub pivots: Vec<usize>,
    pub equations: Vec<(Vec<Q>, Q)>,
}

impl AffineHull {
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
}

impl VPolytope {
    /// Deduplicates the points and removes those lying in the convex hull
    /// of the others.
    pub fn new(d: usize, points: Vec<Vec<Q>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != d) {
            return Err(Error::ShapeMismatch(format!(
                "point of length {} in dimension {d}",
                p.len()
            )));
        }
        let mut pts: Vec<Vec<Q>> = Vec::with_capacity(points.len());
        for p in points {
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let mut keep = vec![true; pts.len()];
        for i in 0..pts.len() {
            let others: Vec<&[Q]> = pts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i && keep[j])
                .map(|(_, p)| p.as_slice())
                .collect();
            if !others.is_empty() && in_hull(&others, &pts[i]) {
                keep[i] = false;
            }
        }
        let vertices = pts.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
        Ok(Self::from_extreme_points(d, vertices))
    }

    /// Wraps points already known to be the distinct extreme points.
    pub(crate) fn from_extreme_points(d: usize, vertices: Vec<Vec<Q>>) -> Self {
        Self { d, vertices, hrep: OnceLock::new() }
    }

    pub fn empty(d: usize) -> Self {
        Self::from_extreme_points(d, Vec::new())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex list in lexicographic order.
    pub fn sorted_vertices(&self) -> Vec<Vec<Q>> {
        let mut v = self.vertices.clone();
        v.sort();
        v
    }

    /// Exact membership test against the hull equations and facets.
    pub fn contains(&self, x: &[Q]) -> bool {
        if self.vertices.is_empty() || x.len() != self.d {
            return false;
        }
        let h = self.hrep();
        let (l, p) = clear_denominators(x);
        h.equations.iter().all(|(n, c)| (int_dot(n, &p) + c * &l).is_zero())
            && h.inequalities.iter().all(|(n, c)| !(int_dot(n, &p) + c * &l).is_negative())
    }

    fn hrep(&self) -> &HRep {
        self.hrep.get_or_init(|| {
            let equations = self
                .affine_hull()
                .map(|h| h.equations)
                .unwrap_or_default()
                .into_iter()
                .map(|(n, rhs)| integral_row(&n, -rhs))
                .collect();
            let facets = self.compute_facets();
            let inequalities = facets.iter().map(|f| integral_row(&f.normal, f.offset.clone())).collect();
            HRep { facets, equations, inequalities }
        })
    }

    /// Convex weights expressing `x` over the vertices.
    pub fn barycentric(&self, x: &[Q]) -> Option<Vec<Q>> {
        let refs: Vec<&[Q]> = self.vertices.iter().map(|v| v.as_slice()).collect();
        hull_weights(&refs, x)
    }

    pub fn affine_hull(&self) -> Option<AffineHull> {
        let (base, rest) = self.vertices.split_first()?;
        let diffs: Vec<Vec<Q>> = rest
            .iter()
            .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let (_, pivots) = rref(&diffs);
        let equations = nullspace(&diffs, self.d)
            .into_iter()
            .map(|n| {
                let rhs = dot(&n, base);
                (n, rhs)
            })
            .collect();
        Some(AffineHull { base: base.clone(), pivots, equations })
    }

    pub fn dim(&self) -> Option<usize> {
        self.affine_hull().map(|h| h.dim())
    }

    /// Facets relative to the affine hull, by double description on the
    /// cone of valid inequalities in the hull's coordinate chart.
    pub fn facets(&self) -> Vec<Facet> {
        self.hrep().facets.clone()
    }

    fn compute_facets(&self) -> Vec<Facet> {
        let Some(hull) = self.affine_hull() else {
            return Vec::new();
        };
        let r = hull.dim();
        if r == 0 {
            return Vec::new();
        }
        let rows: Vec<Vec<Q>> = self
            .vertices
            .iter()
            .map(|v| {
                let mut row = Vec::with_capacity(r + 1);
                row.push(Q::one());
                row.extend(hull.pivots.iter().map(|&c| v[c].clone()));
                row
            })
            .collect();
        let rays = extreme_rays(&rows, r + 1).expect("vertex cone spans its chart");
        let mut facets: Vec<Facet> = rays
            .into_iter()
            .map(|ray| {
                let mut normal = vec![Q::zero(); self.d];
                for (k, &c) in hull.pivots.iter().enumerate() {
                    normal[c] = ray.direction[k + 1].clone();
                }
                Facet { normal, offset: ray.direction[0].clone(), vertices: ray.tight.iter().collect() }
            })
            .collect();
        facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        facets
    }
}

impl AffineSubspace {
    pub fn new(a: Vec<Vec<Q>>, b: Vec<Q>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::ShapeMismatch(format!("{} rows but {} right-hand sides", a.len(), b.len())));
        }
        let d = a.first().map_or(0, |r| r.len());
        if a.iter().any(|r| r.len() != d) {
            return Err(Error::ShapeMismatch("ragged equation matrix".into()));
        }
        Ok(Self { d, a, b })
    }

    /// Whole space in dimension `d` (no equations).
    pub fn whole(d: usize) -> Self {
        Self { d, a: Vec::new(), b: Vec::new() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn equations(&self) -> (&[Vec<Q>], &[Q]) {
        (&self.a, &self.b)
    }

    pub fn codim(&self) -> usize {
        rref(&self.a).1.len()
    }

    /// True when the equations are inconsistent.
    pub fn is_empty(&self) -> bool {
        crate::exact::linalg::solve_particular(&self.a, &self.b, self.d).is_none()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.a.iter().zip(&self.b).all(|(row, rhs)| dot(row, x) == *rhs)
    }
}

fn hull_system(points: &[&[Q]], x: &[Q]) -> (Vec<Vec<Q>>, Vec<Q>) {
    let d = x.len();
    let mut a: Vec<Vec<Q>> = (0..d).map(|c| points.iter().map(|p| p[c].clone()).collect()).collect();
    a.push(vec![Q::one(); points.len()]);
    let mut b: Vec<Q> = x.to_vec();
    b.push(Q::one());
    (a, b)
}

pub(crate) fn hull_weights(points: &[&[Q]], x: &[Q]) -> Option<Vec<Q>> {
    if points.is_empty() {
        return None;
    }
    let (a, b) = hull_system(points, x);
    feasible_point(&a, &b)
}

pub(crate) fn in_hull(points: &[&[Q]], x: &[Q]) -> bool {
    hull_weights(points, x).is_some()
}


#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RatJson {
    Str(String),
    Int(i64),
}

impl RatJson {
    fn parse(&self) -> Result<Q> {
        match self {
            RatJson::Str(s) => parse_q(s).ok_or_else(|| Error::InvalidInput(format!("bad rational `{s}`"))),
            RatJson::Int(i) => Ok(Q::from_integer((*i).into())),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    d: usize,
    vertices: Vec<Vec<RatJson>>,
}

#[derive(Serialize, Deserialize)]
#[allow(non_snake_case)]
struct SubspaceJson {
    A: Vec<Vec<RatJson>>,
    b: Vec<RatJson>,
}

fn parse_row(r: &[RatJson]) -> Result<Vec<Q>> {
    r.iter().map(RatJson::parse).collect()
}

fn fmt_row(r: &[Q]) -> Vec<RatJson> {
    r.iter().map(|x| RatJson::Str(format_q(x))).collect()
}

impl VPolytope {
    /// `{"d": int, "vertices": [["p/q", ...], ...]}`.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: PolytopeJson = serde_json::from_str(s)?;
        let pts = j.vertices.iter().map(|r| parse_row(r)).collect::<Result<Vec<_>>>()?;
        Self::new(j.d, pts).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        let j = PolytopeJson { d: self.d, vertices: self.vertices.iter().map(|v| fmt_row(v)).collect() };
        serde_json::to_string(&j).expect("polytope serializes")
    }
}

impl AffineSubspace {
    /// `{"A": [["p/q", ...]], "b": ["p/q", ...]}`.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: SubspaceJson = serde_json::from_str(s)?;
        let a = j.A.iter().map(|r| parse_row(r)).collect::<Result<Vec<_>>>()?;
        let b = parse_row(&j.b)?;
        Self::new(a, b).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        let j = SubspaceJson { A: self.a.iter().map(|r| fmt_row(r)).collect(), b: fmt_row(&self.b) };
        serde_json::to_string(&j).expect("subspace serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    fn pt(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn redundant_points_removed() {
        let k = VPolytope::new(
            2,
            vec![pt(&[0, 0]), pt(&[2, 0]), pt(&[0, 2]), pt(&[2, 2]), pt(&[1, 1]), pt(&[1, 0]), pt(&[0, 0])],
        )
        .unwrap();
        assert_eq!(k.vertices().len(), 4);
        assert!(k.contains(&[q(1, 2), q(3, 2)]));
        assert!(!k.contains(&[qi(3), qi(0)]));
    }

    #[test]
    fn contains_agrees_with_lp() {
        use rand::Rng;
        let mut r = crate::rng::seeded(5);
        // full-dimensional, a flat triangle in R^3, and a single point
        let polys = [
            VPolytope::new(3, (0..7).map(|_| (0..3).map(|_| qi(r.gen_range(-4..=4))).collect()).collect()).unwrap(),
            VPolytope::new(3, vec![pt(&[0, 0, 1]), pt(&[2, 0, 1]), pt(&[0, 3, 1])]).unwrap(),
            VPolytope::new(3, vec![pt(&[1, 1, 1])]).unwrap(),
        ];
        for k in &polys {
            let refs: Vec<&[Q]> = k.vertices().iter().map(|v| v.as_slice()).collect();
            let mut inside = 0;
            for _ in 0..300 {
                let x: Vec<Q> = (0..3).map(|_| q(r.gen_range(-9..=9), r.gen_range(1..=3))).collect();
                let expect = in_hull(&refs, &x);
                assert_eq!(k.contains(&x), expect, "{x:?}");
                inside += expect as usize;
            }
            for v in k.vertices() {
                assert!(k.contains(v));
            }
            assert!(inside > 0 || k.vertices().len() < 4);
        }
    }

    #[test]
    fn cube_facets() {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(pt(&[x, y, z]));
                }
            }
        }
        let cube = VPolytope::new(3, pts).unwrap();
        let f = cube.facets();
        assert_eq!(f.len(), 6);
        assert!(f.iter().all(|f| f.vertices.len() == 4));
    }

    #[test]
    fn lower_dimensional_hull() {
        // a triangle lying in the plane z = 1 inside R^3
        let t = VPolytope::new(3, vec![pt(&[0, 0, 1]), pt(&[1, 0, 1]), pt(&[0, 1, 1])]).unwrap();
        let hull = t.affine_hull().unwrap();
        assert_eq!(hull.dim(), 2);
        assert_eq!(hull.equations.len(), 1);
        let f = t.facets();
        assert_eq!(f.len(), 3);
        assert!(f.iter().all(|f| f.vertices.len() == 2));
    }

    #[test]
    fn json_roundtrip() {
        let k = VPolytope::from_json_str(r#"{"d":2,"vertices":[["0","0"],["1/2","0"],[0,1]]}"#).unwrap();
        assert_eq!(k.vertices()[1][0], q(1, 2));
        assert_eq!(VPolytope::from_json_str(&k.to_json_string()).unwrap(), k);
        let h = AffineSubspace::from_json_str(r#"{"A":[["1","1"]],"b":["3/2"]}"#).unwrap();
        assert_eq!(h.codim(), 1);
        assert!(matches!(VPolytope::from_json_str(r#"{"d":2,"vertices":[["x","0"]]}"#), Err(Error::InvalidInput(_))));
    }
}
