//! Canonical conformal metrics on genus-0 dessins d'enfants.
//!
//! The crate is organised bottom-up:
//!
//! - [`dessin`]: combinatorial dessins as pairs of permutations on darts,
//!   their topology, triangulation and automorphism groups (exact).
//! - [`group_type`]: the census-based recognition of the finite groups that
//!   act on the Riemann sphere (cyclic, dihedral, A4, S4, A5).
//! - [`moebius`]: floating-point Möbius arithmetic on the Riemann sphere.
//! - [`groups`]: finite Möbius groups as explicit element lists, their
//!   unitarization into SO(3) and their fixed-point orbits.
//! - [`metrics`]: conformal metrics `ρ(z)|dz|²`, the four group-canonical
//!   constructions, numerical curvature and invariance diagnostics.
//! - [`schwarz_christoffel`]: the half-plane to 30-60-90 triangle map and
//!   the butterfly Belyi map built from it.
//! - [`verify`]: the property suite shared by the CLI and the acceptance
//!   tests.

pub mod dessin;
pub mod group_type;
pub mod groups;
pub mod metrics;
pub mod moebius;
pub mod quadrature;
pub mod schwarz_christoffel;
pub mod verify;

pub use dessin::{Dessin, DessinError, Passport, PermGroup, TriangulatedMap};
pub use group_type::{CayleyTable, GroupType};
pub use groups::{Conjugator, FiniteMoebiusGroup, GroupError, OrbitData};
pub use metrics::{ConformalMetric, CurvatureReport, MetricError};
pub use moebius::{EuclideanSpherePoint, FixedPoints, MoebiusError, MoebiusTransform, SpherePoint};
