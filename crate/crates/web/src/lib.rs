//! wasm-bindgen bindings for the browser demo in `www/`.
//!
//! Each export returns a JSON string; the `*_json` functions hold the logic
//! and run natively in tests.

use serde_json::json;
use wasm_bindgen::prelude::*;

use zeta_audit::argument::HorizontalArg;
use zeta_audit::census::n_mangoldt;
use zeta_audit::littlewood::{audit, AuditRectangle};
use zeta_audit::special::hardy_z;
use zeta_audit::EvalConfig;

/// Largest height the demo accepts; keeps a page interaction under a few seconds.
pub const MAX_HEIGHT: f64 = 300.0;
const MAX_POINTS: usize = 20_000;

fn check_height(t: f64) -> Result<(), String> {
    if t.is_finite() && t.abs() <= MAX_HEIGHT {
        Ok(())
    } else {
        Err(format!("height {t} outside the demo range |t| <= {MAX_HEIGHT}"))
    }
}

/// Z(t) sampled on [t_lo, t_hi]: `{"t": [...], "z": [...]}`.
pub fn z_trace_json(t_lo: f64, t_hi: f64, step: f64) -> Result<String, String> {
    check_height(t_lo)?;
    check_height(t_hi)?;
    if !(t_hi > t_lo && step > 0.0) {
        return Err("need t_lo < t_hi and step > 0".into());
    }
    let n = ((t_hi - t_lo) / step).floor() as usize;
    if n + 1 > MAX_POINTS {
        return Err(format!("{} points requested, at most {MAX_POINTS}", n + 1));
    }
    let cfg = EvalConfig::default();
    let mut ts = Vec::with_capacity(n + 1);
    let mut zs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let t = t_lo + step * k as f64;
        ts.push(t);
        zs.push(hardy_z(t, &cfg).map_err(|e| e.to_string())?);
    }
    Ok(json!({ "t": ts, "z": zs }).to_string())
}

/// arg ξ(σ + iT)/π on `samples` points of [0, 1], with N(T) from the von
/// Mangoldt formula for comparison.
pub fn arg_xi_profile_json(t: f64, samples: usize) -> Result<String, String> {
    check_height(t)?;
    if !(t > 0.0) || !(2..=2000).contains(&samples) {
        return Err("need T > 0 and 2..=2000 samples".into());
    }
    let cfg = EvalConfig::default();
    let line = HorizontalArg::new(t, &cfg).map_err(|e| e.to_string())?;
    let mut sigma = Vec::with_capacity(samples);
    let mut arg = Vec::with_capacity(samples);
    for k in 0..samples {
        let s = k as f64 / (samples - 1) as f64;
        sigma.push(s);
        arg.push(line.arg_xi(s).map_err(|e| e.to_string())? / std::f64::consts::PI);
    }
    let mangoldt = n_mangoldt(t, &cfg).map_err(|e| e.to_string())?;
    Ok(json!({
        "T": t,
        "sigma": sigma,
        "arg_over_pi": arg,
        "n_mangoldt": mangoldt.with_s,
        "s_of_T": mangoldt.s_of_t,
    })
    .to_string())
}

/// Both sides of Littlewood's lemma on the rectangle (α, T).
pub fn littlewood_check_json(alpha: f64, t: f64) -> Result<String, String> {
    check_height(t)?;
    let rect = AuditRectangle::new(alpha, t).map_err(|e| e.to_string())?;
    let report = audit(&rect, &EvalConfig::default()).map_err(|e| e.to_string())?;
    Ok(json!({
        "alpha": alpha,
        "T": t,
        "n0": report.n0,
        "n_strip": report.n_of_t,
        "lhs": report.lhs_sum_distances,
        "rhs_vertical": report.rhs_vertical,
        "rhs_horizontal": report.rhs_horizontal,
        "rhs_total": report.rhs_total,
        "residual_identity": report.residual_identity,
        "residual_asymptotic": report.residual_asymptotic,
        "passed": report.passed(),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn z_trace(t_lo: f64, t_hi: f64, step: f64) -> Result<String, JsValue> {
    z_trace_json(t_lo, t_hi, step).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn arg_xi_profile(t: f64, samples: usize) -> Result<String, JsValue> {
    arg_xi_profile_json(t, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn littlewood_check(alpha: f64, t: f64) -> Result<String, JsValue> {
    littlewood_check_json(alpha, t).map_err(|e| JsValue::from_str(&e))
}
