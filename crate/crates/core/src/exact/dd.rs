//! Double description: extreme rays of a pointed polyhedral cone
//! `{y : M y ≥ 0}` in exact arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::linalg::{dot, rank};
use super::Q;

/// Row-index set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowSet(Vec<u64>);

impl RowSet {
    pub fn empty(nrows: usize) -> Self {
        RowSet(vec![0; nrows.div_ceil(64).max(1)])
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn intersection(&self, other: &Self) -> Self {
        RowSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

/// Extreme ray with the set of constraint rows it satisfies with equality.
#[derive(Clone, Debug)]
pub struct Ray {
    pub direction: Vec<Q>,
    pub tight: RowSet,
}

/// Extreme rays of `{y : M y ≥ 0}`. Requires `rank(M) = dim`, i.e. a pointed
/// cone; returns `None` otherwise. Rays are scaled to primitive integer
/// vectors.
pub fn extreme_rays(m: &[Vec<Q>], dim: usize) -> Option<Vec<Ray>> {
    let nrows = m.len();
    // greedy choice of an invertible row basis
    let mut basis_rows: Vec<usize> = Vec::with_capacity(dim);
    let mut chosen: Vec<Vec<Q>> = Vec::with_capacity(dim);
    for (i, row) in m.iter().enumerate() {
        if basis_rows.len() == dim {
            break;
        }
        chosen.push(row.clone());
        if rank(&chosen) == chosen.len() {
            basis_rows.push(i);
        } else {
            chosen.pop();
        }
    }
    if basis_rows.len() < dim {
        return None;
    }
    let inv = invert(&chosen)?;
    let mut rays: Vec<Ray> = (0..dim)
        .map(|c| {
            let direction: Vec<Q> = (0..dim).map(|r| inv[r][c].clone()).collect();
            let mut tight = RowSet::empty(nrows);
            for (k, &row) in basis_rows.iter().enumerate() {
                if k != c {
                    tight.insert(row);
                }
            }
            Ray { direction: primitive(direction), tight }
        })
        .collect();

    let mut processed: Vec<bool> = vec![false; nrows];
    for &r in &basis_rows {
        processed[r] = true;
    }
    for (i, row) in m.iter().enumerate() {
        if processed[i] {
            continue;
        }
        processed[i] = true;
        let vals: Vec<Q> = rays.iter().map(|r| dot(row, &r.direction)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        if neg.is_empty() {
            for (k, ray) in rays.iter_mut().enumerate() {
                if vals[k].is_zero() {
                    ray.tight.insert(i);
                }
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].tight.intersection(&rays[q].tight);
                if common.len() + 2 < dim {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(k, r)| {
                    k == p || k == q || !r.tight.is_superset(&common)
                });
                if !adjacent {
                    continue;
                }
                let a = &vals[p];
                let b = -&vals[q];
                let direction: Vec<Q> = rays[q]
                    .direction
                    .iter()
                    .zip(&rays[p].direction)
                    .map(|(yq, yp)| a * yq + &b * yp)
                    .collect();
                let mut tight = common;
                tight.insert(i);
                next.push(Ray { direction: primitive(direction), tight });
            }
        }
        for (k, mut ray) in rays.into_iter().enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                ray.tight.insert(i);
            }
            next.push(ray);
        }
        rays = next;
    }
    Some(rays)
}

fn invert(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(c, p);
        let inv = aug[c][c].recip();
        for x in aug[c].iter_mut() {
            *x *= &inv;
        }
        let prow = aug[c].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Positive rescaling to a primitive integer vector.
fn primitive(v: Vec<Q>) -> Vec<Q> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}
