//! Numerical toolkit for curve-family p-moduli, condenser capacity bounds,
//! and distortion/equicontinuity experiments on quasiregular-type mappings.
//!
//! The crate is organized around six pieces:
//!
//! - [`geometry`]: points of the extended space `R^n ∪ {∞}`, the chordal
//!   metric, spherical rings, concentric condensers, and sphere/ball
//!   measure constants.
//! - [`fields`]: scalar majorant fields `Q`, spherical means, radial ring
//!   integrals, the mean-oscillation estimator, and the integral criteria
//!   that decide equicontinuity-style verdicts numerically.
//! - [`bounds`]: closed-form capacity and distortion bound evaluators and
//!   the exact radial ring-modulus formula used as an oracle.
//! - [`modsolver`]: discrete p-modulus of finite polyline families by
//!   convex optimization of a grid density.
//! - [`mappings`]: the mapping zoo (winding maps, log-spiral rotation,
//!   planar exponentials, radial powers), their differentials and
//!   dilatations, the ring inequality verifier, and the equicontinuity
//!   probe.
//! - [`cli`]: a batch command surface producing JSON/CSV reports; see the
//!   `pmod` binary.
//!
//! Most example programs under `examples/` exercise one capability each;
//! `cargo run --example ring_modulus` is a good starting point.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod ext;
pub mod fields;
pub mod geometry;
pub mod mappings;
pub mod modsolver;
pub mod quad;
pub mod report;
pub mod suite;
pub mod trend;

pub use error::{Error, Result};
