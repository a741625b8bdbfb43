//! Faces of the matrix interval `K = {0 ≤ a ≤ 1}` and of
//! `Q_k = {a ∈ K : τ(a) = k}`, majorization and pinchings, and the explicit
//! unitary-orbit witnesses around a pinch.

mod majorization;
mod qk;
mod witness;

pub use majorization::{
    apply_pinching, majorizes, pinching_sequence, PinchingStep, WeightVector, MAJORIZATION_TOL,
};
pub use qk::{
    extreme_point_test_qk, middle_rank, minimal_face_k, minimal_face_qk_dimension, qk_face_report,
    random_qk_point, MatrixFaceDescriptor, QkFaceReport, EPS_V, IDEMPOTENT_TOL, SPECTRUM_TOL, TRACE_TOL,
};
pub use witness::{affine_rank, lemma35_witnesses, LemmaWitnesses, AFFINE_RANK_TOL};
