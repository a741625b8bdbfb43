use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::exact::ExactSum;
use crate::error::{Error, Result};
use crate::rng;

/// Finitely many atoms with positive masses and, per atom, target densities
/// `f_i` (`k` of them) and constraint densities (`n` of them).
///
/// The target measure of a set `A` is `μ_i(A) = Σ_{a∈A} m_a f_i(a)`, and
/// likewise `ν_j(A)` for the constraints.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteVectorMeasure {
    masses: Vec<f64>,
    target: Vec<Vec<f64>>,
    constraints: Vec<Vec<f64>>,
    z: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureJson {
    pub masses: Vec<f64>,
    pub target: Vec<Vec<f64>>,
    #[serde(default)]
    pub constraints: Vec<Vec<f64>>,
    #[serde(default)]
    pub z: Vec<f64>,
}

impl DiscreteVectorMeasure {
    pub fn new(masses: Vec<f64>, target: Vec<Vec<f64>>, constraints: Vec<Vec<f64>>, z: Vec<f64>) -> Result<Self> {
        let n_atoms = masses.len();
        if n_atoms == 0 {
            return Err(Error::InvalidInput("measure needs at least one atom".into()));
        }
        if masses.iter().any(|m| !(m.is_finite() && *m > 0.0)) {
            return Err(Error::InvalidInput("masses must be positive and finite".into()));
        }
        if target.is_empty() {
            return Err(Error::InvalidInput("need at least one target density".into()));
        }
        for row in target.iter().chain(&constraints) {
            if row.len() != n_atoms {
                return Err(Error::LengthMismatch { left: row.len(), right: n_atoms });
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput("densities must be finite".into()));
            }
        }
        if z.len() != constraints.len() {
            return Err(Error::LengthMismatch { left: z.len(), right: constraints.len() });
        }
        if z.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("constraint values must be finite".into()));
        }
        Ok(Self { masses, target, constraints, z })
    }

    pub fn n_atoms(&self) -> usize {
        self.masses.len()
    }

    /// Number of target coordinates `k`.
    pub fn dim(&self) -> usize {
        self.target.len()
    }

    pub fn n_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn target(&self) -> &[Vec<f64>] {
        &self.target
    }

    pub fn constraints(&self) -> &[Vec<f64>] {
        &self.constraints
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn max_mass(&self) -> f64 {
        self.masses.iter().fold(0.0, |m, x| m.max(*x))
    }

    /// `max_{j,a} |m_a g_j(a)|`: the largest change of a constraint value
    /// from adding one atom.
    pub fn max_constraint_increment(&self) -> f64 {
        self.constraints
            .iter()
            .flat_map(|row| row.iter().zip(&self.masses).map(|(g, m)| (g * m).abs()))
            .fold(0.0, f64::max)
    }

    /// `∫ g f_i dν` for `g ∈ [0, 1]^N`, summed exactly.
    pub fn integrate_target(&self, g: &[f64]) -> Vec<ExactSum> {
        integrate(&self.masses, &self.target, g)
    }

    pub fn integrate_constraints(&self, g: &[f64]) -> Vec<ExactSum> {
        integrate(&self.masses, &self.constraints, g)
    }

    /// `μ(X)` rounded.
    pub fn total_target(&self) -> Vec<f64> {
        self.integrate_target(&vec![1.0; self.n_atoms()]).iter().map(ExactSum::value).collect()
    }

    /// Splits every atom into two adjacent atoms of half the mass with the
    /// same densities, `rounds` times.
    pub fn refine(&self, rounds: usize) -> Result<Self> {
        if rounds == 0 {
            return Err(Error::InvalidArgument("refine needs at least one round".into()));
        }
        let mut m = self.clone();
        for _ in 0..rounds {
            let split = |v: &[f64]| v.iter().flat_map(|&x| [x, x]).collect::<Vec<_>>();
            m = Self {
                masses: m.masses.iter().flat_map(|&x| [0.5 * x, 0.5 * x]).collect(),
                target: m.target.iter().map(|r| split(r)).collect(),
                constraints: m.constraints.iter().map(|r| split(r)).collect(),
                z: m.z.clone(),
            };
        }
        Ok(m)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: MeasureJson = serde_json::from_str(s)?;
        Self::new(j.masses, j.target, j.constraints, j.z)
    }

    pub fn to_json(&self) -> MeasureJson {
        MeasureJson {
            masses: self.masses.clone(),
            target: self.target.clone(),
            constraints: self.constraints.clone(),
            z: self.z.clone(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("measure serializes")
    }
}

fn integrate(masses: &[f64], rows: &[Vec<f64>], g: &[f64]) -> Vec<ExactSum> {
    rows.iter()
        .map(|row| {
            let mut s = ExactSum::new();
            for ((&f, &m), &w) in row.iter().zip(masses).zip(g) {
                if w == 1.0 {
                    s.add_product(m, f);
                } else if w != 0.0 {
                    // m f is exactly hi + lo, so w·hi + w·lo is exact
                    let hi = m * f;
                    s.add_product(w, hi);
                    s.add_product(w, m.mul_add(f, -hi));
                }
            }
            s
        })
        .collect()
}

/// Random measure: masses uniform in `[0.5, 1.5)`, target densities
/// Gaussian rescaled per atom so that `Σ_i |f_i(a)| = 1` (so `ν` is the
/// total variation of `μ`), constraint densities uniform in `[-1, 1)`, and
/// `z_j = t_j ν_j(X)` with `t_j` uniform in `[0, 1)`.
pub fn random_measure(n_atoms: usize, k: usize, n_constraints: usize, seed: u64) -> DiscreteVectorMeasure {
    let mut r = rng::seeded(seed);
    let masses: Vec<f64> = (0..n_atoms).map(|_| r.gen_range(0.5..1.5)).collect();
    let mut target = vec![vec![0.0; n_atoms]; k];
    for a in 0..n_atoms {
        let col: Vec<f64> = (0..k).map(|_| r.sample::<f64, _>(StandardNormal)).collect();
        let l1: f64 = col.iter().map(|x| x.abs()).sum::<f64>().max(f64::MIN_POSITIVE);
        for i in 0..k {
            target[i][a] = col[i] / l1;
        }
    }
    let constraints: Vec<Vec<f64>> =
        (0..n_constraints).map(|_| (0..n_atoms).map(|_| r.gen_range(-1.0..1.0)).collect()).collect();
    let z = constraints
        .iter()
        .map(|row| {
            let total: f64 = row.iter().zip(&masses).map(|(g, m)| g * m).sum();
            r.gen_range(0.0..1.0) * total
        })
        .collect();
    DiscreteVectorMeasure::new(masses, target, constraints, z).expect("valid by construction")
}
