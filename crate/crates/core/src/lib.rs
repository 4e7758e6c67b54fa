//! Numerical machinery for one-parameter families of hyperbolic polynomials
//! (monic real polynomials with all roots real).
//!
//! The crate is organized around a pipeline:
//!
//! * [`poly`] — exact-degree monic polynomial arithmetic, the Tschirnhausen
//!   transformation (recentering so the second-highest coefficient vanishes),
//!   Newton power sums, and the scale normalization that pins the second
//!   coefficient to `-1`.
//! * [`realroots`] — hyperbolicity certification and ordered real roots via
//!   square-free decomposition plus Sturm counting, root clustering, and a
//!   certified numeric factorization `P = P_b * P_c` refined by Newton
//!   iteration on the coefficient map.
//! * [`curves`] — coefficient curves `t -> P_{a(t)}` with polynomial
//!   coefficients, exact derivative/sup-norm computation, and a ground-truth
//!   family generator driven by explicit root functions.
//! * [`bounds`] — the explicit Lipschitz-bound quantities for the roots of a
//!   hyperbolic family (`A1`, `A2`, `A0`, the bracket expressions, the
//!   alpha-uniformity measure) and standalone inequality calculators
//!   (interpolation coefficient bounds, Glaeser, Taylor).
//! * [`tracking`] — root tracking along a curve in ordered or matched mode,
//!   empirical Lipschitz estimation, and one-sided derivative diagnostics.
//!
//! All operations are pure: types are immutable after construction and safe
//! to use from concurrent callers. The crate is `no_std`-compatible (with
//! `alloc`) when built with the `libm` feature instead of `std`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("hyperlip-core requires either the `std` or the `libm` feature");

mod error;
mod fmath;
mod interval;
mod linalg;

pub mod bounds;
pub mod curves;
pub mod poly;
pub mod realroots;
pub mod tracking;

pub use error::{Error, Result};
pub use interval::Interval;

/// Default absolute tolerance used by operations that take an explicit `tol`.
pub const DEFAULT_TOL: f64 = 1e-10;
