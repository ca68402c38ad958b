use super::{bernoulli_even, log_gamma, zeta_euler_maclaurin, ComplexValue, Constants};
use crate::config::EvalConfig;
use crate::error::{Error, Result};

/// Heights from which the asymptotic theta series replaces log Γ.
const THETA_SERIES_FROM: f64 = 20.0;
const THETA_SERIES_TERMS: usize = 8;

/// θ(t) = t/2·log(t/2π) - t/2 - π/8 + Σ_k (1 - 2^{1-2k})|B_2k| / (4k(2k-1) t^{2k-1})
fn theta_series(t: f64) -> f64 {
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let mut power = inv;
    let mut tail = 0.0;
    for k in 1..=THETA_SERIES_TERMS {
        let kf = k as f64;
        let weight = 1.0 - 2f64.powi(1 - 2 * k as i32);
        tail += weight * bernoulli_even(k).abs() / (4.0 * kf * (2.0 * kf - 1.0)) * power;
        power *= inv2;
    }
    0.5 * t * (t / (2.0 * Constants::PI)).ln() - 0.5 * t - Constants::PI / 8.0 + tail
}

/// Riemann-Siegel theta θ(t) = Im log Γ(¼ + it/2) - (t/2) log π.
///
/// Odd in t by construction. Uses log Γ for |t| < 20 and the asymptotic
/// expansion above that.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("theta at non-finite t = {t}")));
    }
    let a = t.abs();
    let value = if a < THETA_SERIES_FROM {
        log_gamma(ComplexValue::new(0.25, 0.5 * a))?.im - 0.5 * a * Constants::LOG_PI
    } else {
        theta_series(a)
    };
    Ok(if t < 0.0 { -value } else { value })
}

/// Hardy's Z(t) = e^{iθ(t)} ζ(½ + it), real for real t.
///
/// Fails with an accuracy error if the discarded imaginary part exceeds
/// 10·abs_tol.
pub fn hardy_z(t: f64, cfg: &EvalConfig) -> Result<f64> {
    let theta = riemann_siegel_theta(t)?;
    let zeta = zeta_euler_maclaurin(ComplexValue::new(0.5, t), &cfg.at_height(t))?;
    let z = ComplexValue::from_polar(1.0, theta) * zeta;
    if z.im.abs() >= 10.0 * cfg.abs_tol {
        return Err(Error::Accuracy(format!(
            "Z({t}) has imaginary residue {:.3e}",
            z.im
        )));
    }
    Ok(z.re)
}
