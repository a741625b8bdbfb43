//! Floating-point expansions: exact sums of doubles and of their products.

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Exact running sum, stored as a non-overlapping expansion of increasing
/// magnitude with zeros eliminated.
#[derive(Clone, Debug, Default)]
pub struct ExactSum {
    parts: Vec<f64>,
}

impl ExactSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        if x == 0.0 {
            return;
        }
        let mut q = x;
        let mut k = 0;
        for i in 0..self.parts.len() {
            let (s, e) = two_sum(q, self.parts[i]);
            q = s;
            if e != 0.0 {
                self.parts[k] = e;
                k += 1;
            }
        }
        self.parts.truncate(k);
        if q != 0.0 {
            self.parts.push(q);
        }
    }

    /// Adds `a·b` exactly.
    pub fn add_product(&mut self, a: f64, b: f64) {
        let (p, e) = two_prod(a, b);
        self.add(e);
        self.add(p);
    }

    pub fn sub_product(&mut self, a: f64, b: f64) {
        self.add_product(-a, b);
    }

    pub fn add_sum(&mut self, other: &ExactSum) {
        for &p in &other.parts {
            self.add(p);
        }
    }

    pub fn negated(&self) -> Self {
        Self { parts: self.parts.iter().map(|x| -x).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sign of the exact value (the largest component dominates).
    pub fn signum(&self) -> f64 {
        self.parts.last().map_or(0.0, |x| x.signum())
    }

    /// Whether two sums hold the same exact value.
    pub fn exactly_equals(&self, other: &ExactSum) -> bool {
        let mut d = self.clone();
        d.add_sum(&other.negated());
        d.is_zero()
    }

    /// Nearest double, to within one unit in the last place.
    pub fn value(&self) -> f64 {
        self.parts.iter().sum()
    }

    pub fn components(&self) -> usize {
        self.parts.len()
    }
}
