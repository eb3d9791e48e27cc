//! `starinv-core`: coefficient estimates for inverses and negative powers of
//! starlike functions of order α.
//!
//! The crate is split along the lines of the computation:
//!
//! - [`series`]: truncated complex power series with products, composition,
//!   real powers (Miller recurrence), negative-power Laurent blocks and
//!   series reversion through Lagrange inversion.
//! - [`zoo`]: the extremal functions `K_α`, `K_{α,n}`, a seeded sampler of
//!   starlike functions of order α built from Herglotz atoms, and the
//!   transform to the exterior class `Σ*(α)`.
//! - [`bounds`]: closed-form coefficient bounds with regime selection over
//!   the interval partition `I_k(n) = [k/n, (k+1)/n)`.
//! - [`verify`]: executable checks for bound compliance on sampled functions,
//!   attainment on extremal functions, the Jabotinsky identity, the negative-power
//!   product identity, reversion round trips and an exploratory search
//!   for the cases where sharpness is unknown.
//!
//! ## Quick example
//!
//! ```rust
//! use starinv_core::{bounds, series, zoo};
//!
//! // |A_4| of the inverse Koebe function attains the Loewner value 14.
//! let koebe = zoo::koebe_alpha(0.0, 8).unwrap();
//! let inverse = series::revert(&koebe, 4).unwrap();
//! let bound = bounds::thm1_bound(4, 0.0).unwrap();
//! assert!((inverse.coeff(4).norm() - bound.value).abs() < 1e-9);
//! ```

#![forbid(unsafe_code)]

pub mod bounds;
pub mod series;
pub mod verify;
pub mod zoo;

mod error;

pub use bounds::{BoundResult, Extremal, Regime, Sharpness};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use series::{LaurentBlock, NormalizedSchlicht, PowerSeries};
pub use verify::{Check, Relation, Subject, Suite, Tolerance, VerificationReport};
pub use zoo::{Atom, SigmaSeries, StarlikeSpec};

/// Truncation order used when nothing else is configured.
pub const DEFAULT_ORDER: usize = 24;
