//! Arithmetic, geometry and means over complex fields transported by
//! multiplicative automorphisms `z = r s -> r^alpha s`.
//!
//! [`automorphism`] holds the maps and their deformed sums, [`limit`] the
//! closed forms of those sums as the exponent runs to infinity or zero,
//! [`lp`] the near-inner-product spaces built on top of them, and
//! [`means`] the weighted generalized means.

pub mod automorphism;
pub mod cli;
pub mod duality;
pub mod error;
pub mod integral;
pub mod limit;
pub mod line;
pub mod lp;
pub mod means;
pub mod tol;

pub use automorphism::{alpha_sum, deformed_add, eps_apply, eps_invert, AutoParam, ComplexScalar};
pub use error::{Error, Result};
pub use limit::{inf_sum, neg_inf_sum, zero_sum, Direction, DivergenceSignal, LimitParam};
pub use line::DeformedLine;
pub use lp::{DeformedVector, LpSpace, NearInnerProductSpace, PairingSpec};
pub use means::{mean, WeightedFamily};
