//! Convex ranges of matrices and vector measures, with certificates.
//!
//! * [`matcore`]: dense complex matrices, Hermitian eigensystems, Haar sampling.
//! * [`exact`]: rational linear algebra, exact simplex and double description.
//! * [`faces_geom`]: exact polytope faces, minimal faces `G(K, F)` and the
//!   intersection identity `G(K, F) ∩ H = F`.
//! * [`numrange`]: k- and c-numerical range boundaries, Monte Carlo oracles,
//!   convexity and attainment checks.
//! * [`spectral_faces`]: majorization, pinching sequences, faces of the
//!   matrix interval and of `Q_k`.
//! * [`lyap`]: discretized vector measures and their (constrained) ranges.
//! * [`cli`]: the `autoconvex` command line.

pub mod cli;
pub mod error;
pub mod exact;
pub mod faces_geom;
pub mod lyap;
pub mod matcore;
pub mod numrange;
pub mod rng;
pub mod spectral_faces;

pub use error::{Error, Result};
