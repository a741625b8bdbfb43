use num_traits::{One, Signed, Zero};

use super::polytope::{AffineSubspace, VPolytope};
use crate::error::{Error, Result};
use crate::exact::dd::extreme_rays;
use crate::exact::linalg::{dot, nullspace, solve_particular};
use crate::exact::Q;

/// Exact V-representation of `K ∩ H` (possibly empty).
///
/// Facets of `K` are computed first; the equations of `H` and of the affine
/// hull of `K` are then eliminated by an exact parametrization
/// `x = x0 + N t`, and the vertices of the remaining inequality system are
/// enumerated by double description on its homogenization.
pub fn intersect_affine(k: &VPolytope, h: &AffineSubspace) -> Result<VPolytope> {
    let d = k.d();
    if h.d() != d && !h.equations().0.is_empty() {
        return Err(Error::ShapeMismatch(format!("subspace in dimension {} vs polytope in {d}", h.d())));
    }
    let Some(hull) = k.affine_hull() else {
        return Ok(VPolytope::empty(d));
    };
    let (ha, hb) = h.equations();
    let mut eq_a: Vec<Vec<Q>> = ha.to_vec();
    let mut eq_b: Vec<Q> = hb.to_vec();
    for (n, rhs) in &hull.equations {
        eq_a.push(n.clone());
        eq_b.push(rhs.clone());
    }
    let Some(x0) = solve_particular(&eq_a, &eq_b, d) else {
        return Ok(VPolytope::empty(d));
    };
    let basis = nullspace(&eq_a, d);
    let facets = k.facets();

    if hull.dim() == 0 {
        return Ok(if x0 == k.vertices()[0] {
            VPolytope::from_extreme_points(d, vec![x0])
        } else {
            VPolytope::empty(d)
        });
    }

    // inequalities c_f + g_f · t ≥ 0
    let cons: Vec<(Q, Vec<Q>)> = facets
        .iter()
        .map(|f| {
            let c = dot(&f.normal, &x0) + &f.offset;
            let g = basis.iter().map(|col| dot(&f.normal, col)).collect();
            (c, g)
        })
        .collect();

    if basis.is_empty() {
        return Ok(if cons.iter().all(|(c, _)| !c.is_negative()) {
            VPolytope::from_extreme_points(d, vec![x0])
        } else {
            VPolytope::empty(d)
        });
    }

    let dim = basis.len() + 1;
    let mut rows: Vec<Vec<Q>> = cons
        .into_iter()
        .map(|(c, g)| {
            let mut r = Vec::with_capacity(dim);
            r.push(c);
            r.extend(g);
            r
        })
        .collect();
    let mut s_row = vec![Q::zero(); dim];
    s_row[0] = Q::one();
    rows.push(s_row);

    let rays = extreme_rays(&rows, dim).expect("bounded section has a pointed homogenization");
    let mut verts: Vec<Vec<Q>> = rays
        .into_iter()
        .filter(|r| r.direction[0].is_positive())
        .map(|r| {
            let s = &r.direction[0];
            let mut x = x0.clone();
            for (tj, col) in r.direction[1..].iter().zip(&basis) {
                if tj.is_zero() {
                    continue;
                }
                let coef = tj / s;
                for (xi, ci) in x.iter_mut().zip(col) {
                    *xi += &coef * ci;
                }
            }
            x
        })
        .collect();
    verts.sort();
    verts.dedup();
    Ok(VPolytope::from_extreme_points(d, verts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    fn pt(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    fn cube() -> VPolytope {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(pt(&[x, y, z]));
                }
            }
        }
        VPolytope::new(3, pts).unwrap()
    }

    #[test]
    fn cube_coordinate_slice() {
        let h = AffineSubspace::new(vec![pt(&[0, 0, 1])], vec![qi(0)]).unwrap();
        let s = intersect_affine(&cube(), &h).unwrap();
        assert_eq!(s.vertices().len(), 4);
        assert!(s.vertices().iter().all(|v| v[2] == qi(0)));
    }

    #[test]
    fn cube_hexagon() {
        let h = AffineSubspace::new(vec![pt(&[1, 1, 1])], vec![q(3, 2)]).unwrap();
        let s = intersect_affine(&cube(), &h).unwrap();
        assert_eq!(s.vertices().len(), 6);
        assert!(s.vertices().contains(&vec![qi(1), q(1, 2), qi(0)]));
        for v in s.vertices() {
            assert_eq!(v.iter().fold(qi(0), |a, x| a + x), q(3, 2));
        }
    }

    #[test]
    fn disjoint_is_empty() {
        let sq = VPolytope::new(2, vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])]).unwrap();
        let h = AffineSubspace::new(vec![pt(&[1, 0])], vec![qi(2)]).unwrap();
        assert!(intersect_affine(&sq, &h).unwrap().is_empty());
    }

    #[test]
    fn point_section() {
        let sq = VPolytope::new(2, vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])]).unwrap();
        let h = AffineSubspace::new(vec![pt(&[1, 0]), pt(&[0, 1])], vec![q(1, 3), qi(1)]).unwrap();
        let s = intersect_affine(&sq, &h).unwrap();
        assert_eq!(s.vertices(), &[vec![q(1, 3), qi(1)]]);
    }
}
