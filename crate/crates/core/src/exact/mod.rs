//! Exact rational kernel used by the polytope geometry.

pub mod dd;
pub mod linalg;
pub mod simplex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(num: i64) -> Q {
    Q::from_integer(BigInt::from(num))
}

/// Parses `"p/q"`, `"p"` or a decimal like `"0.25"`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Ok(v) = s.parse::<Q>() {
        if v.denom() != &BigInt::from(0) {
            return Some(v);
        }
        return None;
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.')?;
    if frac.is_empty() && int.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let den = BigInt::from(10).pow(frac.len() as u32);
    Some(Q::new(digits * sign, den))
}

/// `(L, L·v)` with `L > 0` the least common denominator of `v`, so the
/// second component is integral.
pub fn clear_denominators(v: &[Q]) -> (BigInt, Vec<BigInt>) {
    let l = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    (l, ints)
}

pub fn format_q(v: &Q) -> String {
    v.to_string()
}
