//! Exact convex geometry of polytopes: faces, minimal faces `G(K, F)`,
//! affine sections, and the identity `G(K, F) ∩ H = F` for faces `F` of
//! `K ∩ H`.
//!
//! All arithmetic is over arbitrary-precision rationals.

mod faces;
mod intersect;
mod polytope;
mod theorem;

pub use faces::{
    faces_of, faces_with_limit, facial_dimension, minimal_face, minimal_face_of_set, PolytopeFace,
    MAX_FACE_DIM, MAX_FACE_VERTICES,
};
pub use intersect::intersect_affine;
pub use polytope::{AffineHull, AffineSubspace, Facet, VPolytope};
pub use theorem::{
    check_intersection_theorem, random_polytope, random_subspace, random_subspace_meeting, run_random_suite,
    FaceCheck, IntersectionReport, SuiteConfig, SuiteFailure, SuiteReport, TheoremSummary,
    SECTION_MAX_VERTICES,
};
