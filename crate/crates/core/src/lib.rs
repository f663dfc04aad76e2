//! Certified lower and upper bounds for Seshadri constants of polarized toric
//! varieties, plus the degeneration arithmetic that transports those bounds to
//! hypersurfaces, complete intersections and Fano threefolds of Picard rank one.
//!
//! Everything is exact: integers are arbitrary precision, rationals are reduced
//! fractions, and irrational upper bounds are carried as `n`-th roots of
//! rationals and compared by cross-powering.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`]: Hermite/Smith normal forms, primitive vectors, quotient maps
//!   and kernel splittings of integer functionals.
//! * [`polytope`]: V-represented rational polytopes with face lattices, slices,
//!   lattice lengths, widths and normalized volume.
//! * [`estimator`]: the recursive projection estimator at the torus identity
//!   point, together with its certificates.
//! * [`orbit`]: bounds at points of arbitrary torus orbits.
//! * [`degeneration`]: exponent matrices, chain optimisation, multi-point
//!   bounds, nef certificates and the Fano threefold table.
//! * [`fixtures`]: named reference values recomputed by `seshadri verify-paper`.

pub mod degeneration;
pub mod estimator;
pub mod fixtures;
pub mod lattice;
pub mod orbit;
pub mod polytope;
pub mod rational;

pub use estimator::{
    estimate_interior, verify_certificate, BoundReport, BoundValue, Certificate, SearchStrategy,
};
pub use lattice::{IntMatrix, IntVector};
pub use polytope::{Face, Interval, LatticePolytope, RationalPoint};
pub use rational::Rational;
