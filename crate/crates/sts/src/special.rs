//! Special functions used by the p-value formulas.

use statrs::function::gamma;

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Upper regularized incomplete gamma function `Q(a, x)`, with `Q(a, 0) = 1`.
pub fn igamc(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else if x.is_infinite() {
        0.0
    } else {
        gamma::gamma_ur(a, x)
    }
}

/// Standard normal cumulative distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

pub fn ln_gamma(x: f64) -> f64 {
    gamma::ln_gamma(x)
}
