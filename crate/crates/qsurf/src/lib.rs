//! Verification laboratory for a family of q-deformed surfaces: the quantum
//! sphere with equator parameter `c` (including the equatorial limit
//! `c = ∞`), the quantum disc, and the quantum real projective plane.
//!
//! The crate has three layers:
//!
//! * a symbolic layer ([`algebra`], [`surfaces`]) that rewrites
//!   *-polynomials in the surface generators to a canonical normal form,
//!   over either an exact coefficient ring or floating-point coefficients;
//! * an operator layer ([`reps`], [`morphisms`], [`ktheory`]) that realises
//!   the same algebras as truncated matrices, applies functional calculus,
//!   and extracts K-theoretic index witnesses;
//! * a reporting layer ([`parse`], [`report`], [`suites`]) behind the
//!   `qsurf` command-line binary, which runs named verification suites and
//!   emits deterministic JSON or text reports.
//!
//! The two layers cross-check each other: every symbolic identity is
//! replayed against matrix representations, and every matrix-level map is
//! pinned to a symbolic counterpart where one exists.

pub mod algebra;
pub mod error;
pub mod ktheory;
pub mod morphisms;
pub mod parse;
pub mod report;
pub mod reps;
pub mod scalar;
pub mod suites;
pub mod surfaces;

pub use error::{Error, Result};
