use serde::Serialize;

use super::measure::DiscreteVectorMeasure;
use super::range::{Generators, Provenance, RangeSample};
use crate::error::{Error, Result};

pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;
/// Coordinates in `[FRACTIONAL_TOL, 1 − FRACTIONAL_TOL]` count as fractional.
pub const FRACTIONAL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct VertexSet {
    pub vertices: Vec<Vec<f64>>,
    /// Candidate bases examined.
    pub candidates: usize,
    /// Set when the candidate cap stopped the enumeration early.
    pub truncated: bool,
}

impl VertexSet {
    pub fn max_fractional(&self) -> usize {
        self.vertices.iter().map(|g| fractional_count(g)).max().unwrap_or(0)
    }

    /// `μ(g)` for each vertex.
    pub fn to_range_sample(&self, m: &DiscreteVectorMeasure) -> RangeSample {
        let pts = self
            .vertices
            .iter()
            .map(|g| m.integrate_target(g).iter().map(|s| s.value()).collect())
            .collect();
        RangeSample::from_points(pts, Provenance::LpVertex, 0.0, Generators::Functions(self.vertices.clone()))
    }
}

pub fn fractional_count(g: &[f64]) -> usize {
    g.iter().filter(|&&x| (FRACTIONAL_TOL..=1.0 - FRACTIONAL_TOL).contains(&x)).count()
}

/// Vertices of `{g ∈ [0, 1]^N : Σ_a g_a m_a h_j(a) = z_j for all j}`.
///
/// A point of the polytope is a vertex iff the constraint columns at its
/// fractional coordinates are linearly independent. Candidates are a set
/// `B` of at most `n` independent columns plus a 0/1 assignment of the
/// others; the values on `B` are solved for and kept when inside `[0, 1]`.
pub fn extreme_solutions(m: &DiscreteVectorMeasure, cap: usize) -> Result<VertexSet> {
    let n_atoms = m.n_atoms();
    let rows: Vec<Vec<f64>> = m
        .constraints()
        .iter()
        .map(|r| r.iter().zip(m.masses()).map(|(h, w)| h * w).collect())
        .collect();
    let n = rows.len();
    let scale = rows.iter().flatten().fold(0.0f64, |a, x| a.max(x.abs())).max(1.0);
    let feas_tol = 1e-9 * scale * n_atoms as f64;

    let mut out = VertexSet { vertices: Vec::new(), candidates: 0, truncated: false };
    'outer: for size in 0..=n.min(n_atoms) {
        for basis in combinations(n_atoms, size) {
            let cols: Vec<Vec<f64>> = basis.iter().map(|&a| rows.iter().map(|r| r[a]).collect()).collect();
            if size > 0 && column_rank(&cols, n) < size {
                continue;
            }
            let rest: Vec<usize> = (0..n_atoms).filter(|a| !basis.contains(a)).collect();
            for mask in 0..(1u64 << rest.len()) {
                if out.candidates >= cap {
                    out.truncated = true;
                    break 'outer;
                }
                out.candidates += 1;
                let mut g = vec![0.0; n_atoms];
                for (bit, &a) in rest.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        g[a] = 1.0;
                    }
                }
                let rhs: Vec<f64> = (0..n)
                    .map(|j| m.z()[j] - rest.iter().map(|&a| rows[j][a] * g[a]).sum::<f64>())
                    .collect();
                let Some(x) = least_squares(&cols, &rhs, n) else {
                    continue;
                };
                if x.iter().any(|&v| !(-FRACTIONAL_TOL..=1.0 + FRACTIONAL_TOL).contains(&v)) {
                    continue;
                }
                for (&a, &v) in basis.iter().zip(&x) {
                    g[a] = v.clamp(0.0, 1.0);
                }
                let residual = (0..n)
                    .map(|j| (rows[j].iter().zip(&g).map(|(r, x)| r * x).sum::<f64>() - m.z()[j]).abs())
                    .fold(0.0, f64::max);
                if residual > feas_tol {
                    continue;
                }
                for v in g.iter_mut() {
                    if *v < FRACTIONAL_TOL {
                        *v = 0.0;
                    } else if *v > 1.0 - FRACTIONAL_TOL {
                        *v = 1.0;
                    }
                }
                if !out.vertices.iter().any(|w| w.iter().zip(&g).all(|(a, b)| (a - b).abs() <= FRACTIONAL_TOL)) {
                    out.vertices.push(g);
                }
            }
        }
    }
    if out.vertices.is_empty() && !out.truncated {
        return Err(Error::Infeasible);
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn column_rank(cols: &[Vec<f64>], n_rows: usize) -> usize {
    crate::matcore::numerical_rank(cols, 1e-10).min(n_rows)
}

/// Solves `Σ_c x_c cols[c] = rhs` for independent columns in the least
/// squares sense (normal equations, Gaussian elimination with partial
/// pivoting); `None` if the system is singular.
fn least_squares(cols: &[Vec<f64>], rhs: &[f64], n_rows: usize) -> Option<Vec<f64>> {
    let s = cols.len();
    if s == 0 {
        return Some(Vec::new());
    }
    let mut a = vec![vec![0.0; s + 1]; s];
    for i in 0..s {
        for j in 0..s {
            a[i][j] = (0..n_rows).map(|r| cols[i][r] * cols[j][r]).sum();
        }
        a[i][s] = (0..n_rows).map(|r| cols[i][r] * rhs[r]).sum();
    }
    for c in 0..s {
        let p = (c..s).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs()))?;
        if a[p][c].abs() < 1e-300 {
            return None;
        }
        a.swap(c, p);
        for r in 0..s {
            if r != c {
                let f = a[r][c] / a[c][c];
                for k in c..=s {
                    a[r][k] -= f * a[c][k];
                }
            }
        }
    }
    Some((0..s).map(|i| a[i][s] / a[i][i]).collect())
}
