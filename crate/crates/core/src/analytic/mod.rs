//! Special functions, weights, density test functions and error exponents.

mod density;
mod exponent;
mod gamma;
mod incgamma;
pub mod quad;
mod weight;
mod zeta;

pub use density::{fejer_pair, DensityTestFunction, Fejer};
pub use exponent::{error_exponent, logderiv_exponent, negative_exponent, ShiftExponent};
pub use gamma::{digamma, gamma, ln_gamma};
pub use incgamma::{exp_integral_e1, upper_incomplete_gamma};
pub use weight::{weight_by_name, Bump, WeightFunction};
pub use zeta::{
    dirichlet_l_minus3, hurwitz_with_derivative, hurwitz_zeta, riemann_zeta, riemann_zeta_logderiv, zeta_j,
    zeta_j_logderiv, zeta_k, zeta_k_euler, zeta_k_j, zeta_k_j_logderiv, zeta_k_logderiv, EULER_LIMIT,
};
