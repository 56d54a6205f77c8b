//! Floating-point evaluation of the limit formulas.

pub mod contour;
pub mod density;
pub mod diff;
pub mod quadrature;
pub mod special;

pub use contour::{contour_point, density_mgf, mgf_l, solve_a, ContourPoint};
pub use density::{mean_density_quadrature, mean_density_series};
pub use diff::richardson_derivative;
pub use quadrature::{integrate, QuadratureConfig};
pub use special::{gamma, ln_gamma};

/// Mean ISE density by quadrature with default tolerances.
pub fn mean_density(x: f64) -> crate::Result<f64> {
    mean_density_quadrature(x, &QuadratureConfig::default())
}

/// `E f_ISE(0)^k` read off the `k`th derivative at `a = 0` of the moment
/// generating function `a -> E e^{a f_ISE(0)}`.
pub fn mgf_moment_at_zero(k: u32, cfg: &QuadratureConfig) -> crate::Result<(f64, f64)> {
    richardson_derivative(|a| density_mgf(0.0, a, cfg), k, 0.4, 5)
}
