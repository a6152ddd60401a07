//! Numerical verification toolkit for summation identities attached to
//! harmonic Maass forms of polynomial growth.
//!
//! The library is organized in four layers:
//!
//! * [`numkernel`] — scalar special functions (gamma, incomplete gamma/beta,
//!   Bessel J of real order, the auxiliary integral transform `W_nu`) and
//!   double-exponential quadrature.
//! * [`arith`] — exact integer/rational arithmetic: Hurwitz class numbers,
//!   Kronecker symbols, divisor sums, and Dirichlet L-values at integers.
//! * [`forms`] — concrete form data (Fourier coefficients, weight, level,
//!   growth exponents) behind a name-keyed registry.
//! * [`summation`] — the identity machinery itself: weighted power sums,
//!   the boundary-term integrals, Bessel-series right-hand sides, asymptotic
//!   ratios, and the formal q-series (converse) check.

pub mod arith;
pub mod dd;
pub mod error;
pub mod forms;
pub mod numkernel;
pub mod precision;
pub mod summation;
pub mod sums;

pub use error::Error;
pub use precision::{EvalResult, PrecisionConfig};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
