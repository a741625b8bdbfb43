use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use super::exact::ExactSum;
use super::measure::DiscreteVectorMeasure;
use crate::error::{Error, Result};
use crate::rng;

/// Subset enumeration guard: at most `2^MAX_ATOMS` points.
pub const MAX_ATOMS: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Exhaustive,
    Filtered,
    LpVertex,
}

/// How each point was generated.
#[derive(Clone, Debug)]
pub enum Generators {
    /// Atoms are partitioned into `groups`; point `i` takes the first
    /// `c_g` atoms of every group, with the counts packed mixed-radix into
    /// `codes[i]` (radix `|group| + 1`, first group least significant).
    Counts { groups: Vec<Vec<usize>>, codes: Vec<u64> },
    /// Explicit functions `g ∈ [0, 1]^N`.
    Functions(Vec<Vec<f64>>),
}

/// Points `μ(g)` in `R^k` with their generators.
#[derive(Clone, Debug)]
pub struct RangeSample {
    dim: usize,
    coords: Vec<f64>,
    pub provenance: Provenance,
    /// Constraint tolerance used; 0 for exhaustive ranges.
    pub eta: f64,
    pub generators: Generators,
}

impl RangeSample {
    pub fn from_points(points: Vec<Vec<f64>>, provenance: Provenance, eta: f64, generators: Generators) -> Self {
        let dim = points.first().map_or(0, Vec::len);
        Self { dim, coords: points.into_iter().flatten().collect(), provenance, eta, generators }
    }

    pub fn len(&self) -> usize {
        self.coords.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks(self.dim.max(1))
    }

    /// The generating function of point `i` as `g ∈ [0, 1]^N`.
    pub fn generator(&self, i: usize, n_atoms: usize) -> Vec<f64> {
        match &self.generators {
            Generators::Functions(f) => f[i].clone(),
            Generators::Counts { groups, codes } => {
                let mut g = vec![0.0; n_atoms];
                let mut code = codes[i];
                for grp in groups {
                    let radix = grp.len() as u64 + 1;
                    let c = (code % radix) as usize;
                    code /= radix;
                    for &a in &grp[..c] {
                        g[a] = 1.0;
                    }
                }
                g
            }
        }
    }
}

/// Groups of interchangeable atoms. Up to `MAX_ATOMS` atoms every atom is
/// its own group, so each subset is enumerated. Beyond that, atoms with
/// bit-identical mass and densities are merged and subsets are enumerated
/// up to the count taken from each group; the point set is unchanged.
fn atom_groups(m: &DiscreteVectorMeasure) -> Result<Vec<Vec<usize>>> {
    let n = m.n_atoms();
    let limit_err = || Error::TooManyAtoms { atoms: n, limit: MAX_ATOMS };
    if n <= MAX_ATOMS {
        return Ok((0..n).map(|a| vec![a]).collect());
    }
    let key = |a: usize| -> Vec<u64> {
        std::iter::once(m.masses()[a])
            .chain(m.target().iter().map(|r| r[a]))
            .chain(m.constraints().iter().map(|r| r[a]))
            .map(f64::to_bits)
            .collect()
    };
    let mut groups: Vec<(Vec<u64>, Vec<usize>)> = Vec::new();
    for a in 0..n {
        let k = key(a);
        match groups.iter_mut().find(|(gk, _)| *gk == k) {
            Some((_, members)) => members.push(a),
            None => groups.push((k, vec![a])),
        }
    }
    let mut states: u64 = 1;
    for (_, g) in &groups {
        states = states.checked_mul(g.len() as u64 + 1).ok_or_else(limit_err)?;
        if states > 1 << MAX_ATOMS {
            return Err(limit_err());
        }
    }
    Ok(groups.into_iter().map(|(_, g)| g).collect())
}

/// Reflected mixed-radix Gray enumeration of group counts. Each step
/// changes one count by ±1 and updates the exact partial sums in place.
fn enumerate(
    m: &DiscreteVectorMeasure,
    groups: &[Vec<usize>],
    mut keep: impl FnMut(&[ExactSum]) -> bool,
) -> (Vec<f64>, Vec<u64>) {
    let k = m.dim();
    let rows: Vec<&Vec<f64>> = m.target().iter().chain(m.constraints()).collect();
    let bound: Vec<usize> = groups.iter().map(Vec::len).collect();
    let mut radix_weight = vec![1u64; groups.len()];
    for g in 1..groups.len() {
        radix_weight[g] = radix_weight[g - 1] * (bound[g - 1] as u64 + 1);
    }
    let mut counts = vec![0usize; groups.len()];
    let mut dirs = vec![1isize; groups.len()];
    let mut sums = vec![ExactSum::new(); rows.len()];
    let mut code = 0u64;
    let (mut coords, mut codes) = (Vec::new(), Vec::new());
    loop {
        if keep(&sums) {
            coords.extend(sums[..k].iter().map(ExactSum::value));
            codes.push(code);
        }
        let Some(g) = (0..groups.len()).find(|&g| {
            let next = counts[g] as isize + dirs[g];
            next >= 0 && next <= bound[g] as isize
        }) else {
            break;
        };
        for d in dirs[..g].iter_mut() {
            *d = -*d;
        }
        // the atom entering or leaving is the one at the moving boundary
        let (atom, sign) = if dirs[g] > 0 {
            counts[g] += 1;
            code += radix_weight[g];
            (groups[g][counts[g] - 1], 1.0)
        } else {
            counts[g] -= 1;
            code -= radix_weight[g];
            (groups[g][counts[g]], -1.0)
        };
        let mass = m.masses()[atom];
        for (s, row) in sums.iter_mut().zip(&rows) {
            s.add_product(sign * mass, row[atom]);
        }
    }
    (coords, codes)
}

/// `μ(A)` for every subset `A` of atoms (Gray-code order, starting at `∅`).
pub fn range_bruteforce(m: &DiscreteVectorMeasure) -> Result<RangeSample> {
    let groups = atom_groups(m)?;
    let (coords, codes) = enumerate(m, &groups, |_| true);
    Ok(RangeSample {
        dim: m.dim(),
        coords,
        provenance: Provenance::Exhaustive,
        eta: 0.0,
        generators: Generators::Counts { groups, codes },
    })
}

/// Subsets with `|ν_j(A) − z_j| ≤ η` for every constraint.
pub fn constrained_range(m: &DiscreteVectorMeasure, eta: f64) -> Result<RangeSample> {
    if !(eta >= 0.0) {
        return Err(Error::InvalidArgument(format!("eta must be non-negative, got {eta}")));
    }
    let groups = atom_groups(m)?;
    let k = m.dim();
    let z = m.z().to_vec();
    let (coords, codes) = enumerate(m, &groups, |sums| {
        sums[k..].iter().zip(&z).all(|(s, zj)| {
            let mut d = s.clone();
            d.add(-zj);
            d.value().abs() <= eta
        })
    });
    Ok(RangeSample {
        dim: k,
        coords,
        provenance: Provenance::Filtered,
        eta,
        generators: Generators::Counts { groups, codes },
    })
}

/// Nearest-point search over points sorted by their first coordinate.
struct SortedPoints<'a> {
    sample: &'a RangeSample,
    order: Vec<usize>,
    first: Vec<f64>,
}

impl<'a> SortedPoints<'a> {
    fn new(sample: &'a RangeSample) -> Self {
        let mut order: Vec<usize> = (0..sample.len()).collect();
        order.sort_by(|&a, &b| sample.point(a)[0].total_cmp(&sample.point(b)[0]));
        let first = order.iter().map(|&i| sample.point(i)[0]).collect();
        Self { sample, order, first }
    }

    fn nearest_distance(&self, q: &[f64]) -> f64 {
        let dist2 = |i: usize| -> f64 { self.sample.point(i).iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum() };
        let start = self.first.partition_point(|&x| x < q[0]);
        let mut best = f64::INFINITY;
        let (mut lo, mut hi) = (start, start);
        loop {
            let mut progressed = false;
            if hi < self.order.len() {
                let dx = self.first[hi] - q[0];
                if dx * dx < best {
                    best = best.min(dist2(self.order[hi]));
                    hi += 1;
                    progressed = true;
                }
            }
            if lo > 0 {
                let dx = q[0] - self.first[lo - 1];
                if dx * dx < best {
                    best = best.min(dist2(self.order[lo - 1]));
                    lo -= 1;
                    progressed = true;
                }
            }
            if !progressed {
                break;
            }
        }
        best.sqrt()
    }
}

/// Largest distance from the midpoint of a random pair of distinct points
/// of `s` to the nearest point of `s`, over `n_pairs` pairs.
pub fn convexity_defect(s: &RangeSample, n_pairs: usize, seed: u64) -> Result<f64> {
    if s.len() < 2 {
        return Err(Error::TooFewPoints(s.len()));
    }
    let mut r = rng::seeded(seed);
    let pairs: Vec<(usize, usize)> = (0..n_pairs)
        .map(|_| {
            let i = r.gen_range(0..s.len());
            let j = r.gen_range(0..s.len() - 1);
            (i, if j >= i { j + 1 } else { j })
        })
        .collect();
    let index = SortedPoints::new(s);
    Ok(pairs
        .par_iter()
        .map(|&(i, j)| {
            let mid: Vec<f64> = s.point(i).iter().zip(s.point(j)).map(|(a, b)| 0.5 * (a + b)).collect();
            index.nearest_distance(&mid)
        })
        .reduce(|| 0.0, f64::max))
}
