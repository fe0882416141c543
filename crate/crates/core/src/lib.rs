//! Exact computer algebra for the fourteen Gorenstein weighted projective
//! 3-spaces in their anticanonical embeddings.
//!
//! The pipeline runs bottom-up:
//!
//! * [`wps`] classifies weight systems and computes their numerical invariants;
//! * [`lattice`] enumerates weighted-homogeneous monomials (degree slices);
//! * [`toric`] builds the quadric binomial generators of the anticanonical ideal
//!   and checks generation in degree two;
//! * [`resolution`] computes linear first syzygies and checks the `N_2` property;
//! * [`tangent`] computes the degree `-1` piece of `T^1` of the affine cone,
//!   block by block under the torus grading;
//! * [`exactla`] is the prime-field linear algebra underneath;
//! * [`report`] renders tables, checks them against the shipped expected
//!   values and caches intermediates on disk.

pub mod error;
pub mod exactla;
pub mod lattice;
pub mod report;
pub mod resolution;
pub mod tangent;
pub mod toric;
pub mod wps;

pub use error::{Error, Result};
pub use exactla::FieldSpec;
pub use lattice::{DegreeSlice, LatticePoint, Shift};
pub use resolution::{SyzygyBasis, SyzygyElement};
pub use tangent::{ShiftBlock, T1Report};
pub use toric::{BinomialGenerator, ToricIdeal};
pub use wps::{WeightedSpace, WpsInvariants};

/// Version tag written into cache headers.
pub const ARTIFACT_VERSION: &str = "v1";
