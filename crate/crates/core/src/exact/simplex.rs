//! Two-phase tableau simplex over the rationals with Bland's rule.

use num_traits::{Signed, Zero};

use super::Q;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Q>, value: Q },
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    /// Reduced costs; the last entry holds minus the objective value.
    obj: Vec<Q>,
    rhs: usize,
}

impl Tableau {
    fn pivot(&mut self, p: usize, q: usize) {
        let inv = self.rows[p][q].recip();
        for x in self.rows[p].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = self.rows[p].clone();
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == p || row[q].is_zero() {
                continue;
            }
            let f = row[q].clone();
            for &j in &nz {
                row[j] -= &f * &prow[j];
            }
        }
        if !self.obj[q].is_zero() {
            let f = self.obj[q].clone();
            for &j in &nz {
                self.obj[j] -= &f * &prow[j];
            }
        }
        self.basis[p] = q;
    }

    /// Runs Bland's rule over columns `< ncols`. Returns false if unbounded.
    fn optimize(&mut self, ncols: usize) -> bool {
        self.optimize_until(ncols, false) != Stop::Unbounded
    }

    /// As [`Tableau::optimize`], optionally stopping at the first basis with
    /// a positive objective value.
    fn optimize_until(&mut self, ncols: usize, stop_positive: bool) -> Stop {
        loop {
            let Some(q) = (0..ncols).find(|&j| self.obj[j].is_positive()) else {
                return Stop::Optimal;
            };
            let mut best: Option<(usize, Q)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[q].is_positive() {
                    continue;
                }
                let ratio = &row[self.rhs] / &row[q];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((p, _)) = best else {
                return Stop::Unbounded;
            };
            self.pivot(p, q);
            if stop_positive && self.obj[self.rhs].is_negative() {
                return Stop::Positive;
            }
        }
    }

    fn solution(&self, n: usize) -> Vec<Q> {
        let mut x = vec![Q::zero(); n];
        for (row, &bv) in self.rows.iter().zip(&self.basis) {
            if bv < n {
                x[bv] = row[self.rhs].clone();
            }
        }
        x
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Stop {
    Optimal,
    Unbounded,
    Positive,
}

/// Phase I: a feasible basis of `A x = b`, `x ≥ 0` with artificial variables
/// driven out and redundant rows dropped. Artificial columns stay in the
/// tableau but are never re-entered.
fn phase_one(a: &[Vec<Q>], b: &[Q], n: usize) -> Option<Tableau> {
    let m = a.len();
    let rhs = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), n, "constraint row width");
        let flip = bi.is_negative();
        let mut r: Vec<Q> = Vec::with_capacity(rhs + 1);
        r.extend(row.iter().map(|x| if flip { -x.clone() } else { x.clone() }));
        r.extend((0..m).map(|j| if j == i { Q::from_integer(1.into()) } else { Q::zero() }));
        r.push(if flip { -bi.clone() } else { bi.clone() });
        rows.push(r);
    }
    // maximize -Σ artificials
    let mut obj = vec![Q::zero(); rhs + 1];
    for r in &rows {
        for j in 0..n {
            obj[j] += &r[j];
        }
        obj[rhs] += &r[rhs];
    }
    let mut t = Tableau { rows, basis: (n..n + m).collect(), obj, rhs };
    t.optimize(n);
    if t.obj[rhs].is_positive() {
        return None;
    }
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(q) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, q);
                i += 1;
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }
    Some(t)
}

/// Maximizes `c·x` subject to `A x = b`, `x ≥ 0`.
pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let n = c.len();
    let Some(mut t) = phase_one(a, b, n) else {
        return LpOutcome::Infeasible;
    };
    let rhs = t.rhs;
    let mut obj = vec![Q::zero(); rhs + 1];
    obj[..n].clone_from_slice(c);
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        let cb = &c[bv];
        if cb.is_zero() {
            continue;
        }
        for j in 0..n {
            if !row[j].is_zero() {
                obj[j] -= cb * &row[j];
            }
        }
        obj[rhs] -= cb * &row[rhs];
    }
    t.obj = obj;
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }
    LpOutcome::Optimal { x: t.solution(n), value: -t.obj[rhs].clone() }
}

/// Outcome of [`FeasibleBasis::can_increase`].
#[derive(Clone, Debug, PartialEq)]
pub enum Increase {
    /// The extra variable is stuck at 0.
    No,
    /// A feasible point with the extra variable positive; `x` holds the
    /// original variables.
    Yes { x: Vec<Q> },
    Unbounded,
}

/// A feasible basis of `A x = b`, `x ≥ 0`, reusable for several LPs that
/// each add one column to the same constraints.
pub struct FeasibleBasis {
    t: Tableau,
    n: usize,
}

impl FeasibleBasis {
    pub fn new(a: &[Vec<Q>], b: &[Q]) -> Option<Self> {
        let n = a.first().map_or(0, |r| r.len());
        phase_one(a, b, n).map(|t| Self { t, n })
    }

    pub fn point(&self) -> Vec<Q> {
        self.t.solution(self.n)
    }

    /// `s·A e_j - b` expressed in the current basis.
    pub fn direction_to_column(&self, j: usize, s: &Q) -> Vec<Q> {
        self.t.rows.iter().map(|r| s * &r[j] - &r[self.t.rhs]).collect()
    }

    /// Whether a new variable `s ≥ 0` with tableau column `col` can be made
    /// positive while keeping `A x + s·a_s = b`, `x ≥ 0`.
    pub fn can_increase(&self, col: &[Q]) -> Increase {
        let n = self.n;
        let rows: Vec<Vec<Q>> = self
            .t
            .rows
            .iter()
            .zip(col)
            .map(|(r, c)| {
                let mut row = Vec::with_capacity(n + 2);
                row.extend_from_slice(&r[..n]);
                row.push(c.clone());
                row.push(r[self.t.rhs].clone());
                row
            })
            .collect();
        let mut obj = vec![Q::zero(); n + 2];
        obj[n] = Q::from_integer(1.into());
        let mut t = Tableau { rows, basis: self.t.basis.clone(), obj, rhs: n + 1 };
        match t.optimize_until(n + 1, true) {
            Stop::Positive => Increase::Yes { x: t.solution(n) },
            Stop::Unbounded => Increase::Unbounded,
            Stop::Optimal => Increase::No,
        }
    }
}

/// Some `x ≥ 0` with `A x = b`.
pub fn feasible_point(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.first().map_or(0, |r| r.len());
    match maximize(a, b, &vec![Q::zero(); n]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn row(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn small_lp() {
        // max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![row(&[1, 2, 1, 0]), row(&[3, 1, 0, 1])];
        let b = row(&[4, 6]);
        let c = row(&[1, 1, 0, 0]);
        match maximize(&a, &b, &c) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, q(14, 5));
                assert_eq!(x[0], q(8, 5));
                assert_eq!(x[1], q(6, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![row(&[1, 1])];
        assert_eq!(maximize(&a, &row(&[-1]), &row(&[0, 0])), LpOutcome::Infeasible);
        let a = vec![row(&[1, -1])];
        assert_eq!(maximize(&a, &row(&[0]), &row(&[1, 0])), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let a = vec![row(&[1, 1]), row(&[2, 2])];
        let x = feasible_point(&a, &row(&[1, 2])).unwrap();
        assert_eq!(&x[0] + &x[1], q(1, 1));
        assert!(feasible_point(&a, &row(&[1, 3])).is_none());
    }

    #[test]
    fn warm_start_matches_cold_lp() {
        // square with vertices (0,0),(1,0),(0,1),(1,1); v = (1/2, 0) on the bottom edge
        let a = vec![row(&[0, 1, 0, 1]), row(&[0, 0, 1, 1]), row(&[1, 1, 1, 1])];
        let b = vec![q(1, 2), q(0, 1), q(1, 1)];
        let basis = FeasibleBasis::new(&a, &b).unwrap();
        let x = basis.point();
        assert_eq!(&x[1] + &x[3], q(1, 2));
        for w in 0..4 {
            let mut aw = a.clone();
            for (r, (row_a, bi)) in aw.iter_mut().zip(a.iter().zip(&b)) {
                r.push(&row_a[w] - bi);
            }
            let mut c = vec![q(0, 1); 4];
            c.push(q(1, 1));
            let cold = match maximize(&aw, &b, &c) {
                LpOutcome::Optimal { value, .. } => value.is_positive(),
                LpOutcome::Unbounded => true,
                LpOutcome::Infeasible => unreachable!(),
            };
            let warm = basis.can_increase(&basis.direction_to_column(w, &q(1, 1))) != Increase::No;
            assert_eq!(warm, cold, "vertex {w}");
            assert_eq!(warm, w < 2);
        }
        assert!(FeasibleBasis::new(&a, &[q(2, 1), q(0, 1), q(1, 1)]).is_none());
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example; Bland's rule must terminate.
        let a = vec![
            vec![q(1, 4), q(-8, 1), q(-1, 1), q(9, 1), q(1, 1), q(0, 1), q(0, 1)],
            vec![q(1, 2), q(-12, 1), q(-1, 2), q(3, 1), q(0, 1), q(1, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(1, 1)],
        ];
        let b = row(&[0, 0, 1]);
        let c = vec![q(3, 4), q(-20, 1), q(1, 2), q(-6, 1), q(0, 1), q(0, 1), q(0, 1)];
        match maximize(&a, &b, &c) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(5, 4)),
            other => panic!("{other:?}"),
        }
    }
}
