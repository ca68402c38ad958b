//! Littlewood's lemma for ξ on the rectangle with vertices α ± iT and
//! 1 - α ± iT, 0 < α < ½.
//!
//! With every zero inside on the critical line the lemma reads
//!
//! ```text
//! (1 - 2α)·N₀(T) = 1/2π ∫_{-T}^{T} (log|ξ(α+it)| - log|ξ(1-α+it)|) dt
//!                + 1/2π ∫_α^{1-α} (arg ξ(σ+iT) - arg ξ(σ-iT)) dσ
//! ```
//!
//! with arguments continued from s = 2. The auditor evaluates both sides,
//! the asymptotic reduction of the right side to the von Mangoldt formula,
//! and the error of every approximation used along the way.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::argument::{arg_zeta_critical, check_not_ordinate, HorizontalArg};
use crate::census::{census_at, n_mangoldt, Census, OnLineCount};
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_panels, QuadResult};
use crate::special::{log_gamma, log_xi, ComplexValue, Constants};

const MAX_SEGMENTS: usize = 200;
const PANEL_SEGMENTS: usize = 32;
/// Allowed |log|ξ(α+it)| - log|ξ(1-α+it)|| at a node, relative to max(1, |log|ξ||).
const SYMMETRY_TOL: f64 = 1e-9;
/// Absolute floor of the same check; covers the ζ error near small |ζ|.
const SYMMETRY_FLOOR: f64 = 1e-6;
const NODE_RETRIES: u32 = 4;

/// The rectangle with corners α - iT, 1 - α - iT, 1 - α + iT, α + iT.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuditRectangle {
    pub alpha: f64,
    #[serde(rename = "T")]
    pub t: f64,
}

impl AuditRectangle {
    pub fn new(alpha: f64, t: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 0.5) {
            return Err(Error::Validation(format!("alpha must lie in (0, 1/2), got {alpha}")));
        }
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Validation(format!("T must be positive, got {t}")));
        }
        Ok(AuditRectangle { alpha, t })
    }

    /// Width 1 - 2α of the rectangle.
    pub fn width(&self) -> f64 {
        1.0 - 2.0 * self.alpha
    }
}

/// Σ dist(ρ) over the zeros inside: each of the 2·N₀(T) zeros ½ ± iγ lies
/// ½ - α from the left edge.
pub fn lhs_sum_distances(rect: &AuditRectangle, census: &OnLineCount) -> Result<f64> {
    if !census.complete {
        return Err(Error::Inconsistency(format!(
            "census to T = {} found {} zeros but expects {}",
            rect.t, census.n0, census.expected
        )));
    }
    if census.zeros.iter().any(|z| z.ordinate >= rect.t) {
        return Err(Error::Inconsistency("census contains zeros above T".into()));
    }
    Ok((0.5 - rect.alpha) * 2.0 * census.n0 as f64)
}

fn log_abs_xi(s: ComplexValue, cfg: &EvalConfig) -> Result<f64> {
    Ok(log_xi(s, cfg)?.re)
}

/// Integrand of the vertical sides at height t, with the pointwise
/// symmetry check. A node on a zero is nudged by multiples of zero_guard.
fn vertical_integrand(alpha: f64, t: f64, cfg: &EvalConfig) -> Result<f64> {
    let mut node = t;
    for retry in 0..=NODE_RETRIES {
        let left = log_abs_xi(ComplexValue::new(alpha, node), cfg);
        let right = log_abs_xi(ComplexValue::new(1.0 - alpha, node), cfg);
        match (left, right) {
            (Ok(l), Ok(r)) => {
                let diff = l - r;
                if diff.abs() > SYMMETRY_TOL * l.abs().max(1.0) + SYMMETRY_FLOOR {
                    return Err(Error::Accuracy(format!(
                        "|xi({alpha}+{node}i)| and |xi({}+{node}i)| differ: log gap {diff:.3e}",
                        1.0 - alpha
                    )));
                }
                return Ok(diff);
            }
            (Err(Error::OnPathZero { point }), _) | (_, Err(Error::OnPathZero { point })) => {
                log::warn!("quadrature node {point} hits a zero; perturbing (retry {retry})");
                node = t + cfg.zero_guard * 2f64.powi(retry as i32 + 1);
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    Err(Error::Accuracy(format!("vertical node near t = {t} stays on a zero")))
}

/// (1/2π)·∫_{-T}^{T} (log|ξ(α+it)| - log|ξ(1-α+it)|) dt over unit-width panels.
pub fn rhs_vertical_integral(rect: &AuditRectangle, cfg: &EvalConfig) -> Result<QuadResult> {
    let panels = (2.0 * rect.t).ceil().max(1.0) as usize;
    let f = |t: f64| vertical_integrand(rect.alpha, t, cfg);
    let tol = cfg.quadrature_tol * PI;
    let mut r = integrate_panels(&f, -rect.t, rect.t, panels, tol, PANEL_SEGMENTS)?;
    r.value /= 2.0 * PI;
    r.error /= 2.0 * PI;
    Ok(r)
}

/// Both forms of the horizontal contribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HorizontalIntegral {
    /// (1/2π)∫_α^{1-α} (arg ξ(σ+iT) - arg ξ(σ-iT)) dσ, lower argument tracked separately.
    pub full: f64,
    /// (1/π)∫_α^{1-α} arg ξ(σ+iT) dσ
    pub reduced: f64,
    pub error: f64,
}

pub fn rhs_horizontal_integral(rect: &AuditRectangle, cfg: &EvalConfig) -> Result<HorizontalIntegral> {
    let upper = HorizontalArg::new(rect.t, cfg)?;
    let lower = HorizontalArg::new(-rect.t, cfg)?;
    let (a, b) = (rect.alpha, 1.0 - rect.alpha);
    let tol = cfg.quadrature_tol * PI;
    let full = integrate(
        &|s: f64| Ok(upper.arg_xi(s)? - lower.arg_xi(s)?),
        a,
        b,
        tol,
        0.0,
        MAX_SEGMENTS,
    )?;
    let reduced = integrate(&|s: f64| upper.arg_xi(s), a, b, tol, 0.0, MAX_SEGMENTS)?;
    Ok(HorizontalIntegral {
        full: full.value / (2.0 * PI),
        reduced: reduced.value / PI,
        error: full.error / (2.0 * PI) + reduced.error / PI,
    })
}

/// σ·log(σ²/4 + T²/4) - 2σ + 2T·arctan(σ/T), an antiderivative of
/// log(σ²/4 + T²/4) in σ.
pub fn closed_form_antiderivative(sigma: f64, t: f64) -> f64 {
    sigma * (0.25 * (sigma * sigma + t * t)).ln() - 2.0 * sigma + 2.0 * t * (sigma / t).atan()
}

/// (1 - 2α)·((T/2π)log(T/2π) - T/2π + 7/8 + S(T)).
pub fn asymptotic_rhs(rect: &AuditRectangle, cfg: &EvalConfig) -> Result<f64> {
    Ok(rect.width() * n_mangoldt(rect.t, cfg)?.with_s)
}

/// An exactly computed quantity next to its asymptotic prediction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TermEstimate {
    pub computed: f64,
    pub predicted: f64,
    pub abs_error: f64,
}

impl TermEstimate {
    pub fn new(computed: f64, predicted: f64) -> Self {
        TermEstimate { computed, predicted, abs_error: (computed - predicted).abs() }
    }
}

/// A σ-dependent term at σ = α, ½, 1 - α and integrated over [α, 1 - α].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampledTerm {
    pub at_alpha: TermEstimate,
    pub at_half: TermEstimate,
    pub at_one_minus_alpha: TermEstimate,
    pub integral: TermEstimate,
}

/// The four summands of arg ξ(σ+iT) and the constants of the reduction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TermBreakdown {
    /// (a) arg ½s(s-1) against π.
    pub arg_quadratic: SampledTerm,
    /// (b) arg π^{-s/2} = -(T/2)log π, exact.
    pub arg_pi_power: SampledTerm,
    /// (c) Im log Γ(s/2) against (T/4)log(σ²/4 + T²/4) - T/2 + (σ/2 - ½)π/2.
    pub arg_gamma: SampledTerm,
    /// arg ζ(σ+iT) against its value on the critical line (mean value theorem).
    pub arg_zeta: SampledTerm,
    /// (d) ∫C(σ)dσ with C(σ) = 3π/4 + πσ/4, against (1 - 2α)·7π/8.
    pub c_sigma_integral: TermEstimate,
    /// (e) T·log(α²/4 + T²/4) against 2T·log(T/2).
    pub log_skip: TermEstimate,
    /// (f) T(arctan((1-α)/T) - arctan(α/T)) against 1 - 2α.
    pub arctan: TermEstimate,
}

fn quad(f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64, cfg: &EvalConfig) -> Result<f64> {
    // tolerance scaled to the interval so that interval means stay accurate
    let tol = cfg.quadrature_tol * (b - a) * 1e-3;
    Ok(integrate(f, a, b, tol, 1e-14, MAX_SEGMENTS)?.value)
}

fn sampled(
    rect: &AuditRectangle,
    cfg: &EvalConfig,
    computed: &dyn Fn(f64) -> Result<f64>,
    predicted: &dyn Fn(f64) -> f64,
    predicted_integral: f64,
) -> Result<SampledTerm> {
    let a = rect.alpha;
    let at = |s: f64| -> Result<TermEstimate> { Ok(TermEstimate::new(computed(s)?, predicted(s))) };
    Ok(SampledTerm {
        at_alpha: at(a)?,
        at_half: at(0.5)?,
        at_one_minus_alpha: at(1.0 - a)?,
        integral: TermEstimate::new(quad(computed, a, 1.0 - a, cfg)?, predicted_integral),
    })
}

/// Breaks arg ξ(σ + iT) into its four summands and compares each, and each
/// simplification of the reduction, with its asymptotic form.
pub fn term_breakdown(rect: &AuditRectangle, cfg: &EvalConfig) -> Result<TermBreakdown> {
    let t = rect.t;
    let a = rect.alpha;
    let w = rect.width();
    let line = HorizontalArg::new(t, cfg)?;

    let arg_quadratic = sampled(rect, cfg, &|s| Ok(t.atan2(s) + t.atan2(s - 1.0)), &|_| PI, w * PI)?;

    let pi_power = -0.5 * Constants::LOG_PI * t;
    let arg_pi_power = sampled(
        rect,
        cfg,
        &|s| Ok((-0.5 * Constants::LOG_PI * ComplexValue::new(s, t)).im),
        &|_| pi_power,
        w * pi_power,
    )?;

    let stirling = |s: f64| 0.25 * t * (0.25 * (s * s + t * t)).ln() - 0.5 * t + (0.5 * s - 0.5) * PI / 2.0;
    let stirling_integral = 0.25 * t
        * (closed_form_antiderivative(1.0 - a, t) - closed_form_antiderivative(a, t))
        - 0.5 * t * w
        - PI / 8.0 * w;
    let arg_gamma = sampled(
        rect,
        cfg,
        &|s| Ok(log_gamma(0.5 * ComplexValue::new(s, t))?.im),
        &stirling,
        stirling_integral,
    )?;

    let on_line = line.arg_zeta(0.5)?;
    let arg_zeta = sampled(rect, cfg, &|s| line.arg_zeta(s), &|_| on_line, w * on_line)?;

    let c_sigma = |s: f64| Ok(0.75 * PI + 0.25 * PI * s);
    let c_sigma_integral = TermEstimate::new(quad(&c_sigma, a, 1.0 - a, cfg)?, w * 7.0 * PI / 8.0);

    let log_skip = TermEstimate::new(t * (0.25 * (a * a + t * t)).ln(), 2.0 * t * (0.5 * t).ln());
    let arctan = TermEstimate::new(t * (((1.0 - a) / t).atan() - (a / t).atan()), w);

    Ok(TermBreakdown {
        arg_quadratic,
        arg_pi_power,
        arg_gamma,
        arg_zeta,
        c_sigma_integral,
        log_skip,
        arctan,
    })
}

/// (1/(b - a))·∫_a^b f for [a, b] = [α, 1 - α].
pub fn interval_mean(f: &dyn Fn(f64) -> Result<f64>, alpha: f64, cfg: &EvalConfig) -> Result<f64> {
    let (a, b) = (alpha, 1.0 - alpha);
    Ok(quad(f, a, b, cfg)? / (b - a))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MvtRow {
    pub alpha: f64,
    /// Mean of arg ζ(σ + iT) over [α, 1 - α].
    pub mean: f64,
    /// |mean - arg ζ(½ + iT)|
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MvtTable {
    #[serde(rename = "T")]
    pub t: f64,
    pub arg_zeta_half: f64,
    pub rows: Vec<MvtRow>,
    /// True when the deviation shrinks at every step towards α = ½.
    pub decreasing: bool,
}

/// Interval means of arg ζ(σ + iT) as α → ½, sorted by α.
pub fn mvt_limit_check(t: f64, alphas: &[f64], cfg: &EvalConfig) -> Result<MvtTable> {
    let mut alphas = alphas.to_vec();
    for &a in &alphas {
        AuditRectangle::new(a, t)?;
    }
    alphas.sort_by(f64::total_cmp);
    let arg_zeta_half = arg_zeta_critical(t, cfg)?;
    let line = HorizontalArg::new(t, cfg)?;
    let rows = alphas
        .iter()
        .map(|&alpha| {
            let mean = interval_mean(&|s| line.arg_zeta(s), alpha, cfg)?;
            Ok(MvtRow { alpha, mean, deviation: (mean - arg_zeta_half).abs() })
        })
        .collect::<Result<Vec<_>>>()?;
    let decreasing = rows.windows(2).all(|w| w[1].deviation < w[0].deviation);
    Ok(MvtTable { t, arg_zeta_half, rows, decreasing })
}

/// A named pass/fail check on one residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn below(name: &str, value: f64, tolerance: f64) -> Self {
        Check { name: name.into(), value, tolerance, passed: value < tolerance }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LittlewoodReport {
    pub rectangle: AuditRectangle,
    pub lhs_sum_distances: f64,
    pub rhs_vertical: f64,
    pub rhs_horizontal: f64,
    /// Horizontal part from the reduced form (1/π)∫ arg ξ(σ+iT) dσ.
    pub rhs_horizontal_reduced: f64,
    pub rhs_total: f64,
    /// (1/π)∫_α^{1-α} arg ξ(σ+iT) dσ
    pub arg_xi_integral: f64,
    pub asymptotic_rhs: f64,
    /// N(T) from the argument principle.
    pub n_of_t: u64,
    pub n0: usize,
    /// N(T) from the von Mangoldt formula with S(T).
    pub n_mangoldt: f64,
    pub quadrature_error: f64,
    /// |lhs - rhs_total|
    pub residual_identity: f64,
    /// |arg_xi_integral/(1 - 2α) - n_mangoldt|
    pub residual_asymptotic: f64,
    /// |N₀(T) - N(T)|
    pub residual_theorem: u64,
    pub terms: TermBreakdown,
    pub checks: Vec<Check>,
    pub flags: Vec<String>,
}

impl LittlewoodReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Full audit of one rectangle; computes its own census.
pub fn audit(rect: &AuditRectangle, cfg: &EvalConfig) -> Result<LittlewoodReport> {
    check_not_ordinate(rect.t, cfg)?;
    let census = census_at(rect.t, cfg)?;
    audit_with_census(rect, &census, cfg)
}

/// Audit reusing a census computed at the same height.
pub fn audit_with_census(rect: &AuditRectangle, census: &Census, cfg: &EvalConfig) -> Result<LittlewoodReport> {
    if census.report.t != rect.t {
        return Err(Error::Validation(format!(
            "census at T = {} used for a rectangle at T = {}",
            census.report.t, rect.t
        )));
    }
    let n0 = census.on_line.n0;
    if n0 as u64 != census.n_strip {
        // an off-line zero would need its real part for the left side
        return Err(Error::Inconsistency(format!(
            "strip holds {} zeros but only {n0} were found on the critical line",
            census.n_strip
        )));
    }
    let lhs = lhs_sum_distances(rect, &census.on_line)?;
    let vertical = rhs_vertical_integral(rect, cfg)?;
    let horizontal = rhs_horizontal_integral(rect, cfg)?;
    let rhs_total = vertical.value + horizontal.full;
    let arg_xi_integral = horizontal.reduced;
    let terms = term_breakdown(rect, cfg)?;
    let with_s = census.mangoldt.with_s;

    let residual_identity = (lhs - rhs_total).abs();
    let residual_asymptotic = (arg_xi_integral / rect.width() - with_s).abs();
    let residual_theorem = (n0 as i64 - census.n_strip as i64).unsigned_abs();

    let identity_tol = 10.0 * cfg.quadrature_tol;
    let checks = vec![
        Check::below("identity", residual_identity, identity_tol),
        Check::below("vertical_nullity", vertical.value.abs(), identity_tol),
        Check::below(
            "horizontal_forms_agree",
            (horizontal.full - horizontal.reduced).abs(),
            identity_tol,
        ),
        Check::below("asymptotic", residual_asymptotic, 0.5),
        Check::below("theorem", residual_theorem as f64, 0.5),
    ];
    let mut flags = census.report.flags.clone();
    if !vertical.converged {
        flags.push(format!(
            "vertical quadrature did not reach its tolerance (error {:.3e})",
            vertical.error
        ));
    }

    Ok(LittlewoodReport {
        rectangle: *rect,
        lhs_sum_distances: lhs,
        rhs_vertical: vertical.value,
        rhs_horizontal: horizontal.full,
        rhs_horizontal_reduced: horizontal.reduced,
        rhs_total,
        arg_xi_integral,
        asymptotic_rhs: rect.width() * with_s,
        n_of_t: census.n_strip,
        n0,
        n_mangoldt: with_s,
        quadrature_error: vertical.error + horizontal.error,
        residual_identity,
        residual_asymptotic,
        residual_theorem,
        terms,
        checks,
        flags,
    })
}
