//! Discretized vector measures: exhaustive and constrained ranges, the
//! convexity defect under atom splitting, vertices of the relaxed
//! constraint polytope, and the matrix case of projections with fixed
//! trace.
//!
//! Sums over atoms are carried out exactly and rounded once.

mod corollary6;
mod exact;
mod measure;
mod range;
mod vertices;

pub use corollary6::{corollary6_range, Corollary6Report, COROLLARY6_TOL};
pub use exact::ExactSum;
pub use measure::{random_measure, DiscreteVectorMeasure, MeasureJson};
pub use range::{
    constrained_range, convexity_defect, range_bruteforce, Generators, Provenance, RangeSample, MAX_ATOMS,
};
pub use vertices::{extreme_solutions, fractional_count, VertexSet, DEFAULT_VERTEX_CAP, FRACTIONAL_TOL};
