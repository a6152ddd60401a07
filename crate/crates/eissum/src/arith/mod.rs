//! Exact and near-exact arithmetic: Hurwitz class numbers, quadratic
//! characters, multiplicative functions, and the Dirichlet L-values feeding
//! the coefficient formulas of the built-in forms.

mod cache;
mod hurwitz;
mod kronecker;
mod lvalues;
mod multiplicative;
mod pform;

pub use cache::ArithCache;
pub use hurwitz::{class_number, hurwitz_h, hurwitz_kronecker_check, is_fundamental};
pub use kronecker::kronecker_symbol;
pub use lvalues::{
    dirichlet_l_int, dirichlet_l_one, fundamental_discriminant, r_n_and_t_n, unit_count,
    zeta_real, QuadChar,
};
pub use multiplicative::{
    factorize, lambda1, largest_odd_square_root, moebius, odd_divisors, ord2, sigma_k,
    squarefree_decomposition,
};
pub use pform::{a_k, p_form_arith, s_nu, t_nk};

/// Exact rational value (reduced form is maintained by the underlying type).
pub type Rational = num_rational::Rational64;
