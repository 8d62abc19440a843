// SPDX-License-Identifier: Apache-2.0

//! Continuous-time quantum walks on unitary Cayley graphs.
//!
//! The unitary Cayley graph on `Z_n` joins `u` and `v` when `gcd(u - v, n) = 1`.
//! Its adjacency matrix is circulant with integer eigenvalues given by
//! Ramanujan sums, which makes the walk `U(t) = exp(-i A t)` exactly
//! synthesizable and 2 pi periodic. On top of that this crate detects and
//! certifies fractional revival, perfect state transfer and periodicity.
//!
//! ```
//! use ucg::{detect::detect_at, spectral::spectrum_via_ramanujan, time::Time};
//!
//! let spec = spectrum_via_ramanujan(6).unwrap();
//! let cert = detect_at(&spec, 0, 3, Time::pi_multiple(2, 3).unwrap(), 1e-8).unwrap();
//! assert!((cert.beta.norm_sqr() - 0.75).abs() < 1e-12);
//! ```

pub mod cayley;
pub mod detect;
pub mod error;
pub mod json;
pub mod numtheory;
pub mod spectral;
pub mod time;
pub mod walk;

pub use error::{Error, Result};
