//! Monogenicity of finite free ring extensions.
//!
//! An extension `B/A`, free of rank `n`, is presented by structure constants
//! ([`algebra::StructureAlgebra`]). From a basis `e_1..e_n` the crate builds
//! the index form `i(x_1..x_n)`, the determinant of the coordinates of the
//! powers `1, θ, ..., θ^{n-1}` of the generic element `θ = Σ x_k e_k`. A
//! value `v` generates `B` over `A` exactly when `i(v)` is a unit.
//!
//! On top of that sit the verdicts:
//!
//! * [`localmono`]: monogenicity at each prime by brute force over `F_p`,
//!   common index divisors, monogenicity over geometric points, and the
//!   aggregated [`report::MonogenicityReport`].
//! * [`artin`]: decomposition of `B ⊗ F_p` into local Artinian factors and
//!   the residue-degree / tangent-space criterion, an independent route to
//!   the same per-prime verdict.
//! * [`search`]: height-bounded search for global monogenerators up to
//!   affine equivalence.
//! * [`twisted`]: numerical obstructions to twisted monogenicity.

pub mod algebra;
pub mod artin;
pub mod catalog;
pub mod config;
pub mod error;
pub mod exactring;
pub mod indexform;
pub mod localmono;
pub mod report;
pub mod search;
pub mod twisted;

pub use algebra::{OrderPresentation, StructureAlgebra, Violation};
pub use config::Config;
pub use error::{Error, Result};
pub use exactring::{BaseRing, Scalar, SparsePoly};
pub use indexform::IndexForm;
pub use report::MonogenicityReport;
