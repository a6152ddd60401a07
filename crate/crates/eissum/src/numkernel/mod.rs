//! Scalar special functions and double-exponential quadrature.

mod bessel;
mod beta;
mod gamma;
mod quad;
mod wfunc;

pub use bessel::{bessel_j, bessel_j_asymptotic, bessel_j_series, bessel_switch_point};
pub use beta::{hyp2f1_series, incomplete_beta_cont};
pub use gamma::{gamma_real, upper_incomplete_gamma};
pub use quad::{quad_adaptive, quad_adaptive_real, quad_with_tol, quad_with_tol_real};
pub use wfunc::{w_defining_integral, w_function, w_pole_distance};
