use super::{ensure_finite, log_gamma, zeta_times_pole_factor, ComplexValue, Constants};
use crate::config::EvalConfig;
use crate::error::{Error, Result};

/// log of the entire prefactor π^{-s/2}·Γ(1 + s/2).
///
/// ξ(s) = ½s(s-1)π^{-s/2}Γ(s/2)ζ(s) = π^{-s/2}Γ(1+s/2)·(s-1)ζ(s), which
/// cancels the pole of Γ(s/2) at 0 and of ζ at 1 symbolically.
fn log_prefactor(s: ComplexValue) -> Result<ComplexValue> {
    Ok(-0.5 * Constants::LOG_PI * s + log_gamma(1.0 + 0.5 * s)?)
}

/// Riemann's ξ(s) = ½s(s-1)π^{-s/2}Γ(s/2)ζ(s).
///
/// ξ(0) = ξ(1) = ½ are returned exactly. The magnitude decays like
/// e^{-π|t|/4}, so beyond |t| ≈ 900 the value leaves double range; use
/// [`log_xi`] there.
pub fn xi(s: ComplexValue, cfg: &EvalConfig) -> Result<ComplexValue> {
    if s == ComplexValue::new(0.0, 0.0) || s == ComplexValue::new(1.0, 0.0) {
        return Ok(ComplexValue::new(0.5, 0.0));
    }
    let cfg = cfg.at_height(s.im);
    let log_pre = log_prefactor(s)?;
    if log_pre.re < -700.0 || log_pre.re > 700.0 {
        return Err(Error::Range(format!(
            "xi({s}) has log-magnitude prefactor {:.1}; use log_xi",
            log_pre.re
        )));
    }
    let factor = zeta_times_pole_factor(s, &cfg)?;
    ensure_finite(log_pre.exp() * factor, "xi")
}

/// log ξ(s): real part log|ξ(s)|, imaginary part an argument of ξ(s)
/// (correct modulo 2π, not continuous).
pub fn log_xi(s: ComplexValue, cfg: &EvalConfig) -> Result<ComplexValue> {
    let cfg = cfg.at_height(s.im);
    let log_pre = log_prefactor(s)?;
    let factor = zeta_times_pole_factor(s, &cfg)?;
    if factor == ComplexValue::new(0.0, 0.0) {
        return Err(Error::OnPathZero { point: s.to_string() });
    }
    ensure_finite(log_pre + factor.ln(), "log xi")
}
