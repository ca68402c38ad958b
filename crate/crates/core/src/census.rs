//! Critical-line zeros and the three independent zero counts: sign changes
//! of Z, the argument principle for ξ on a rectangle, and the
//! Riemann-von Mangoldt formula with the computed S(T).

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::argument::{check_not_ordinate, xi_phase, ArgTracker, HORIZONTAL_STEP, VERTICAL_XI_STEP};
use crate::argument::arg_zeta_critical;
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::parallel::map_collect;
use crate::special::{hardy_z, ComplexValue};

/// Number of step/4 rescans attempted when the census comes up short.
pub const MAX_RESCANS: usize = 3;
/// Plausibility bound on |S(T)| in desk range.
pub const S_PLAUSIBLE: f64 = 3.0;
const STRIP_LEFT: f64 = -0.1;
const STRIP_RIGHT: f64 = 1.1;

/// An interval on which Z changes sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

/// A located critical-line zero ½ + iγ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub ordinate: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    /// |Z(ordinate)|
    pub residual: f64,
}

/// Scan step that keeps roughly four grid cells per mean zero gap below `t_hi`.
pub fn default_step(t_hi: f64) -> f64 {
    let density = (t_hi / TAU).ln();
    if density <= 0.0 {
        0.5
    } else {
        (TAU / density / 4.0).min(0.5)
    }
}

fn same_sign(a: f64, b: f64) -> bool {
    (a >= 0.0) == (b >= 0.0)
}

/// All grid cells [t, t + step] of [t_lo, t_hi] on which Z changes sign.
/// The last cell is shortened to end at t_hi.
pub fn scan_sign_changes(t_lo: f64, t_hi: f64, step: f64, cfg: &EvalConfig) -> Result<Vec<Bracket>> {
    if !(t_lo >= 0.0 && t_hi > t_lo && t_hi.is_finite()) {
        return Err(Error::Validation(format!("scan range [{t_lo}, {t_hi}]")));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Validation(format!("scan step {step}")));
    }
    let n = ((t_hi - t_lo) / step).ceil() as usize;
    let grid: Vec<f64> = (0..=n)
        .map(|k| if k == n { t_hi } else { t_lo + step * k as f64 })
        .collect();
    let values = map_collect(&grid, |&t| hardy_z(t, cfg));
    let mut brackets = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for (&t, z) in grid.iter().zip(values) {
        let z = z?;
        if let Some((tp, zp)) = prev {
            if t > tp && !same_sign(zp, z) {
                brackets.push(Bracket { lo: tp, hi: t });
            }
        }
        prev = Some((t, z));
    }
    Ok(brackets)
}

/// Bisects a sign-change bracket of Z down to width `zero_tol`.
pub fn refine_zero(bracket: Bracket, zero_tol: f64, cfg: &EvalConfig) -> Result<ZeroRecord> {
    let Bracket { mut lo, mut hi } = bracket;
    if !(lo < hi) {
        return Err(Error::InvalidBracket { lo, hi });
    }
    let mut z_lo = hardy_z(lo, cfg)?;
    let z_hi = hardy_z(hi, cfg)?;
    if same_sign(z_lo, z_hi) {
        return Err(Error::InvalidBracket { lo, hi });
    }
    while hi - lo > zero_tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let z_mid = hardy_z(mid, cfg)?;
        if same_sign(z_mid, z_lo) {
            lo = mid;
            z_lo = z_mid;
        } else {
            hi = mid;
        }
    }
    let ordinate = 0.5 * (lo + hi);
    let residual = hardy_z(ordinate, cfg)?.abs();
    if residual > cfg.residual_tol {
        return Err(Error::Accuracy(format!(
            "zero near {ordinate}: |Z| = {residual:.3e} exceeds residual_tol"
        )));
    }
    Ok(ZeroRecord { ordinate, bracket_lo: lo, bracket_hi: hi, residual })
}

/// The two evaluations of the von Mangoldt formula at height T.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MangoldtCount {
    /// (T/2π)log(T/2π) - T/2π + 7/8
    pub main_term: f64,
    /// main_term + S(T)
    pub with_s: f64,
    /// S(T) = arg ζ(½ + iT) / π
    pub s_of_t: f64,
}

pub fn mangoldt_main_term(t: f64) -> f64 {
    let x = t / TAU;
    x * x.ln() - x + 0.875
}

pub fn n_mangoldt(t: f64, cfg: &EvalConfig) -> Result<MangoldtCount> {
    let main_term = mangoldt_main_term(t);
    let s_of_t = arg_zeta_critical(t, cfg)? / PI;
    Ok(MangoldtCount { main_term, with_s: main_term + s_of_t, s_of_t })
}

/// Zeros found on the critical line up to height T.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OnLineCount {
    pub n0: usize,
    pub zeros: Vec<ZeroRecord>,
    /// round(N(T) from the von Mangoldt formula with S(T)).
    pub expected: i64,
    /// True when the sign-change count reached `expected`.
    pub complete: bool,
    /// Scan step of the final pass.
    pub step: f64,
}

fn dedupe(mut zeros: Vec<ZeroRecord>, zero_tol: f64) -> Vec<ZeroRecord> {
    zeros.sort_by(|a, b| a.ordinate.total_cmp(&b.ordinate));
    let mut out: Vec<ZeroRecord> = Vec::with_capacity(zeros.len());
    for z in zeros {
        match out.last() {
            Some(last) if z.ordinate - last.ordinate <= 2.0 * zero_tol => {}
            _ => out.push(z),
        }
    }
    out
}

fn census_pass(t: f64, step: f64, cfg: &EvalConfig) -> Result<Vec<ZeroRecord>> {
    let brackets = scan_sign_changes(0.0, t, step, cfg)?;
    let refined = map_collect(&brackets, |&b| refine_zero(b, cfg.zero_tol, cfg));
    let zeros = refined.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(dedupe(zeros, cfg.zero_tol))
}

/// All critical-line zeros with 0 < γ < T, ascending.
///
/// The sign-change count is checked against round(N(T)) from the von
/// Mangoldt formula; a shortfall triggers up to [`MAX_RESCANS`] rescans at a
/// quarter of the previous step. A remaining shortfall is reported through
/// `complete = false`.
pub fn count_on_line(t: f64, cfg: &EvalConfig) -> Result<OnLineCount> {
    count_on_line_with_step(t, default_step(t), cfg)
}

pub fn count_on_line_with_step(t: f64, step: f64, cfg: &EvalConfig) -> Result<OnLineCount> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Validation(format!("T must be positive, got {t}")));
    }
    check_not_ordinate(t, cfg)?;
    let expected = n_mangoldt(t, cfg)?.with_s.round() as i64;
    let mut step = step;
    let mut zeros = census_pass(t, step, cfg)?;
    let mut rescans = 0;
    while (zeros.len() as i64) < expected && rescans < MAX_RESCANS {
        log::info!(
            "census to T = {t}: {} of {expected} zeros at step {step}; rescanning",
            zeros.len()
        );
        step /= 4.0;
        zeros = census_pass(t, step, cfg)?;
        rescans += 1;
    }
    Ok(OnLineCount {
        n0: zeros.len(),
        complete: zeros.len() as i64 == expected,
        expected,
        zeros,
        step,
    })
}

/// Number of zeros of ξ (with multiplicity) in the rectangle
/// [-0.1, 1.1] × [0, T], by the winding of ξ along its boundary.
pub fn count_in_strip(t: f64, cfg: &EvalConfig) -> Result<u64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Validation(format!("T must be positive, got {t}")));
    }
    if let Err(Error::OrdinateCollision { gamma, .. }) = check_not_ordinate(t, cfg) {
        return Err(Error::OnPathZero { point: format!("0.5+{gamma}i") });
    }
    let c = ComplexValue::new;
    let start = c(STRIP_LEFT, 0.0);
    let mut tracker = ArgTracker::start(xi_phase(*cfg), start, 0.0, cfg)?.without_history();
    tracker.advance_to(c(STRIP_RIGHT, 0.0), HORIZONTAL_STEP)?;
    tracker.advance_to(c(STRIP_RIGHT, t), VERTICAL_XI_STEP)?;
    tracker.advance_to(c(STRIP_LEFT, t), HORIZONTAL_STEP)?;
    tracker.advance_to(start, VERTICAL_XI_STEP)?;
    let winding = tracker.current_arg() / TAU;
    let n = winding.round();
    if (winding - n).abs() > 0.01 || n < 0.0 {
        return Err(Error::Accuracy(format!(
            "winding number {winding} around the strip to T = {t} is not a count"
        )));
    }
    Ok(n as u64)
}

/// N₀(T), N(T) and the von Mangoldt estimate side by side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    #[serde(rename = "T")]
    pub t: f64,
    pub n0: usize,
    #[serde(rename = "n_strip")]
    pub n_argument_principle: u64,
    #[serde(rename = "n_mangoldt")]
    pub n_mangoldt_real: f64,
    pub main_term: f64,
    #[serde(rename = "s_of_T")]
    pub s_of_t: f64,
    pub ratio: f64,
    /// |ratio - 1|·T·log T
    pub theorem_bound_product: f64,
    pub flags: Vec<String>,
}

impl CensusReport {
    /// Assembles the report from already computed counts.
    pub fn from_counts(t: f64, on_line: &OnLineCount, n_strip: u64, mangoldt: &MangoldtCount) -> Self {
        let n0 = on_line.n0;
        let ratio = if n_strip == 0 { f64::NAN } else { n0 as f64 / n_strip as f64 };
        let mut flags = Vec::new();
        if !on_line.complete {
            flags.push(format!(
                "census incomplete: {n0} sign changes, von Mangoldt expects {}",
                on_line.expected
            ));
        }
        if n0 as u64 > n_strip {
            flags.push(format!("more zeros on the line ({n0}) than in the strip ({n_strip})"));
        } else if (n0 as u64) < n_strip {
            flags.push(format!("strip count {n_strip} exceeds critical-line count {n0}"));
        }
        if (mangoldt.with_s - n_strip as f64).abs() >= 0.5 {
            flags.push(format!(
                "von Mangoldt estimate {} is not within 0.5 of the strip count {n_strip}",
                mangoldt.with_s
            ));
        }
        if mangoldt.s_of_t.abs() >= S_PLAUSIBLE {
            flags.push(format!("|S(T)| = {} exceeds {S_PLAUSIBLE}", mangoldt.s_of_t.abs()));
        }
        CensusReport {
            t,
            n0,
            n_argument_principle: n_strip,
            n_mangoldt_real: mangoldt.with_s,
            main_term: mangoldt.main_term,
            s_of_t: mangoldt.s_of_t,
            ratio,
            theorem_bound_product: (ratio - 1.0).abs() * t * t.ln(),
            flags,
        }
    }

    pub fn consistent(&self) -> bool {
        self.flags.is_empty()
    }
}

/// Computes all three counts at height T (> 20, not an ordinate).
pub fn ratio_report(t: f64, cfg: &EvalConfig) -> Result<CensusReport> {
    Ok(census_at(t, cfg)?.report)
}

/// The census report together with the located zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Census {
    pub on_line: OnLineCount,
    pub n_strip: u64,
    pub mangoldt: MangoldtCount,
    pub report: CensusReport,
}

pub fn census_at(t: f64, cfg: &EvalConfig) -> Result<Census> {
    if t > 0.0 && t.is_finite() {
        check_not_ordinate(t, cfg)?;
    }
    if !(t > 20.0 && t.is_finite()) {
        return Err(Error::Validation(format!("census report needs T > 20, got {t}")));
    }
    let on_line = count_on_line(t, cfg)?;
    let n_strip = count_in_strip(t, cfg)?;
    let mangoldt = n_mangoldt(t, cfg)?;
    let report = CensusReport::from_counts(t, &on_line, n_strip, &mangoldt);
    Ok(Census { on_line, n_strip, mangoldt, report })
}
