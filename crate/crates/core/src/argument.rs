//! Continuous arguments along polyline paths.
//!
//! The tracked argument starts at a chosen value at the first vertex and
//! accumulates wrapped phase differences between consecutive samples. A step
//! is accepted only if the raw phase jump is below π/2; otherwise it is
//! halved, up to `EvalConfig::max_halvings` times.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::special::{
    hardy_z, log_gamma, log_xi, zeta_euler_maclaurin, ComplexValue, Constants,
};

/// Step used on the vertical leg Re s = 2, where |ζ'/ζ| < 0.6.
pub const VERTICAL_ZETA_STEP: f64 = 0.5;
/// Step used on the vertical leg for ξ, whose phase turns like ½log(t/2π).
pub const VERTICAL_XI_STEP: f64 = 0.2;
/// Step used on horizontal legs inside and near the critical strip.
pub const HORIZONTAL_STEP: f64 = 0.05;

/// A polyline with an anchoring argument at its first vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSpec {
    pub vertices: Vec<ComplexValue>,
    pub initial_arg: f64,
    pub max_step: f64,
}

impl PathSpec {
    pub fn new(vertices: Vec<ComplexValue>, initial_arg: f64, max_step: f64) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Validation("a path needs at least two vertices".into()));
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation("consecutive path vertices coincide".into()));
        }
        if !(max_step.is_finite() && max_step > 0.0) || !initial_arg.is_finite() {
            return Err(Error::Validation(format!(
                "max_step {max_step} / initial_arg {initial_arg} invalid"
            )));
        }
        Ok(PathSpec { vertices, initial_arg, max_step })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArgSample {
    pub point: ComplexValue,
    pub arg: f64,
}

/// Samples of a continuously varied argument.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ArgTrace {
    pub samples: Vec<ArgSample>,
    pub refinements: usize,
}

impl ArgTrace {
    pub fn final_arg(&self) -> f64 {
        self.samples.last().map(|s| s.arg).unwrap_or(0.0)
    }
}

#[inline]
fn wrap(d: f64) -> f64 {
    d - TAU * (d / TAU).round()
}

/// Incremental tracker: walks from its current point to new points,
/// refining steps so that no sampled phase jump reaches π/2.
pub struct ArgTracker<P> {
    phase: P,
    point: ComplexValue,
    raw: f64,
    trace: ArgTrace,
    max_halvings: u32,
    record: bool,
}

impl<P> ArgTracker<P>
where
    P: Fn(ComplexValue) -> Result<f64>,
{
    /// Starts at `start`, assigning it the argument `initial_arg`.
    pub fn start(phase: P, start: ComplexValue, initial_arg: f64, cfg: &EvalConfig) -> Result<Self> {
        let raw = phase(start)?;
        Ok(ArgTracker {
            phase,
            point: start,
            raw,
            trace: ArgTrace {
                samples: vec![ArgSample { point: start, arg: initial_arg }],
                refinements: 0,
            },
            max_halvings: cfg.max_halvings,
            record: true,
        })
    }

    /// Keeps only the latest sample; for long paths where only the end value matters.
    pub fn without_history(mut self) -> Self {
        self.record = false;
        self
    }

    pub fn current_arg(&self) -> f64 {
        self.trace.final_arg()
    }

    pub fn current_point(&self) -> ComplexValue {
        self.point
    }

    fn push(&mut self, point: ComplexValue, raw: f64) {
        let arg = self.current_arg() + wrap(raw - self.raw);
        let sample = ArgSample { point, arg };
        if self.record {
            self.trace.samples.push(sample);
        } else {
            self.trace.samples[0] = sample;
        }
        self.point = point;
        self.raw = raw;
    }

    fn step(&mut self, from: ComplexValue, to: ComplexValue, depth: u32) -> Result<()> {
        let raw = (self.phase)(to)?;
        if wrap(raw - self.raw).abs() < FRAC_PI_2 {
            self.push(to, raw);
            return Ok(());
        }
        if depth >= self.max_halvings {
            return Err(Error::Resolution { point: to.to_string(), halvings: depth });
        }
        self.trace.refinements += 1;
        let mid = from + (to - from) * 0.5;
        self.step(from, mid, depth + 1)?;
        self.step(mid, to, depth + 1)
    }

    /// Moves along the straight segment to `target` in steps of at most `max_step`.
    pub fn advance_to(&mut self, target: ComplexValue, max_step: f64) -> Result<()> {
        let from = self.point;
        let length = (target - from).norm();
        if length == 0.0 {
            return Ok(());
        }
        let n = (length / max_step).ceil().max(1.0) as usize;
        let mut prev = from;
        for k in 1..=n {
            let next = if k == n {
                target
            } else {
                from + (target - from) * (k as f64 / n as f64)
            };
            self.step(prev, next, 0)?;
            prev = next;
        }
        Ok(())
    }

    pub fn finish(self) -> ArgTrace {
        self.trace
    }
}

fn phase_of_value<F>(f: F, guard: f64) -> impl Fn(ComplexValue) -> Result<f64>
where
    F: Fn(ComplexValue) -> Result<ComplexValue>,
{
    move |s| {
        let v = f(s)?;
        if !(v.norm() > guard) || !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::OnPathZero { point: s.to_string() });
        }
        Ok(v.arg())
    }
}

fn phase_of_log<F>(log_f: F) -> impl Fn(ComplexValue) -> Result<f64>
where
    F: Fn(ComplexValue) -> Result<ComplexValue>,
{
    move |s| {
        let l = log_f(s)?;
        if !(l.re.is_finite() && l.im.is_finite()) {
            return Err(Error::OnPathZero { point: s.to_string() });
        }
        Ok(l.im)
    }
}

fn run_path<P>(phase: P, path: &PathSpec, cfg: &EvalConfig) -> Result<ArgTrace>
where
    P: Fn(ComplexValue) -> Result<f64>,
{
    let mut tracker = ArgTracker::start(phase, path.vertices[0], path.initial_arg, cfg)?;
    for &v in &path.vertices[1..] {
        tracker.advance_to(v, path.max_step)?;
    }
    Ok(tracker.finish())
}

/// Continuous argument of `f` along `path`. Fails with
/// [`Error::OnPathZero`] where |f| ≤ `cfg.zero_guard`.
pub fn continuous_arg<F>(f: F, path: &PathSpec, cfg: &EvalConfig) -> Result<ArgTrace>
where
    F: Fn(ComplexValue) -> Result<ComplexValue>,
{
    run_path(phase_of_value(f, cfg.zero_guard), path, cfg)
}

/// Same as [`continuous_arg`] for a function given through its logarithm;
/// used for ξ, whose modulus leaves double range at large heights.
pub fn continuous_arg_log<F>(log_f: F, path: &PathSpec, cfg: &EvalConfig) -> Result<ArgTrace>
where
    F: Fn(ComplexValue) -> Result<ComplexValue>,
{
    run_path(phase_of_log(log_f), path, cfg)
}

pub(crate) fn zeta_phase(cfg: EvalConfig) -> impl Fn(ComplexValue) -> Result<f64> {
    // only an exact zero is fatal here: S(T) is evaluated right next to ordinates
    phase_of_value(move |s: ComplexValue| zeta_euler_maclaurin(s, &cfg.at_height(s.im)), 0.0)
}

pub(crate) fn xi_phase(cfg: EvalConfig) -> impl Fn(ComplexValue) -> Result<f64> {
    phase_of_log(move |s: ComplexValue| log_xi(s, &cfg))
}

fn bisect_z(mut lo: f64, mut hi: f64, cfg: &EvalConfig) -> Result<f64> {
    let mut z_lo = hardy_z(lo, cfg)?;
    while hi - lo > cfg.zero_tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let z_mid = hardy_z(mid, cfg)?;
        if (z_mid >= 0.0) == (z_lo >= 0.0) {
            lo = mid;
            z_lo = z_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Fails with [`Error::OrdinateCollision`] when a critical-line zero lies
/// within `cfg.zero_guard` of height `t`.
pub fn check_not_ordinate(t: f64, cfg: &EvalConfig) -> Result<()> {
    let g = cfg.zero_guard;
    let a = t.abs();
    let z_lo = hardy_z(a - g, cfg)?;
    let z_hi = hardy_z(a + g, cfg)?;
    let z_mid = hardy_z(a, cfg)?;
    if z_mid == 0.0 {
        return Err(Error::OrdinateCollision { t, gamma: a.copysign(t) });
    }
    if (z_lo >= 0.0) != (z_hi >= 0.0) {
        let (lo, hi) = if (z_lo >= 0.0) != (z_mid >= 0.0) { (a - g, a) } else { (a, a + g) };
        let gamma = bisect_z(lo, hi, cfg)?;
        return Err(Error::OrdinateCollision { t, gamma: gamma.copysign(t) });
    }
    Ok(())
}

/// arg ζ(σ + iT) continued along 2 → 2 + iT → σ + iT from arg ζ(2) = 0.
/// Does not check the ordinate guard.
pub(crate) fn arg_zeta_unguarded(sigma: f64, t: f64, cfg: &EvalConfig) -> Result<f64> {
    let start = ComplexValue::new(2.0, 0.0);
    let mut tracker = ArgTracker::start(zeta_phase(*cfg), start, 0.0, cfg)?.without_history();
    tracker.advance_to(ComplexValue::new(2.0, t), VERTICAL_ZETA_STEP)?;
    tracker.advance_to(ComplexValue::new(sigma, t), HORIZONTAL_STEP)?;
    Ok(tracker.current_arg())
}

/// arg ζ(½ + iT) by continuous variation along 2 → 2 + iT → ½ + iT, with
/// arg ζ(2) = 0. π·S(T) in the usual notation.
pub fn arg_zeta_critical(t: f64, cfg: &EvalConfig) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Validation(format!("T must be positive, got {t}")));
    }
    check_not_ordinate(t, cfg)?;
    arg_zeta_unguarded(0.5, t, cfg)
}

/// The four summands of arg ξ(s) at s = σ + iT.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiArgParts {
    /// arg(½s(s-1)), continuous from s = 2.
    pub quadratic: f64,
    /// arg π^{-s/2} = -(T/2)·log π.
    pub pi_power: f64,
    /// Im log Γ(s/2).
    pub gamma: f64,
    /// Continuous arg ζ(s).
    pub zeta: f64,
}

impl XiArgParts {
    /// Splits arg ξ(σ + iT) given the continuous arg ζ(σ + iT).
    pub fn new(sigma: f64, t: f64, arg_zeta: f64) -> Result<Self> {
        if t == 0.0 && sigma < 1.0 {
            return Err(Error::Domain("argument split needs T != 0 left of s = 1".into()));
        }
        let s = ComplexValue::new(sigma, t);
        Ok(XiArgParts {
            quadratic: t.atan2(sigma) + t.atan2(sigma - 1.0),
            pi_power: (-0.5 * Constants::LOG_PI * s).im,
            gamma: log_gamma(0.5 * s)?.im,
            zeta: arg_zeta,
        })
    }

    pub fn total(&self) -> f64 {
        self.quadratic + self.pi_power + self.gamma + self.zeta
    }
}

/// arg ξ(σ + iT), continuous along 2 → 2 + iT → σ + iT from arg ξ(2) = 0.
///
/// Computed twice: tracking ξ itself, and as the sum of the four component
/// arguments with only ζ tracked. The routes must agree within 1e-6.
pub fn arg_xi_at(sigma: f64, t: f64, cfg: &EvalConfig) -> Result<f64> {
    if !(sigma.is_finite() && t.is_finite()) {
        return Err(Error::Domain(format!("arg xi at ({sigma}, {t})")));
    }
    let start = ComplexValue::new(2.0, 0.0);
    let target = ComplexValue::new(sigma, t);
    if t == 0.0 {
        // ξ is real and positive on the real axis
        xi_phase(*cfg)(target)?;
        return Ok(0.0);
    }
    let corner = ComplexValue::new(2.0, t);

    let mut direct = ArgTracker::start(xi_phase(*cfg), start, 0.0, cfg)?.without_history();
    direct.advance_to(corner, VERTICAL_XI_STEP)?;
    direct.advance_to(target, HORIZONTAL_STEP)?;
    let direct = direct.current_arg();

    let arg_zeta = arg_zeta_unguarded(sigma, t, cfg)?;
    let by_parts = XiArgParts::new(sigma, t, arg_zeta)?.total();

    if (direct - by_parts).abs() > 1e-6 {
        return Err(Error::Accuracy(format!(
            "arg xi({sigma} + {t}i): direct route {direct} vs component route {by_parts}"
        )));
    }
    Ok(direct)
}

/// Continuous arguments on the horizontal line Im s = T, anchored once at
/// σ = 1 (reached via 2 → 2 + iT → 1 + iT) and continued from there to any
/// requested σ.
#[derive(Debug, Clone, Copy)]
pub struct HorizontalArg {
    height: f64,
    anchor_sigma: f64,
    anchor_arg_zeta: f64,
    cfg: EvalConfig,
}

impl HorizontalArg {
    pub fn new(t: f64, cfg: &EvalConfig) -> Result<Self> {
        if t == 0.0 || !t.is_finite() {
            return Err(Error::Validation(format!("horizontal line needs T != 0, got {t}")));
        }
        let anchor_sigma = 1.0;
        Ok(HorizontalArg {
            height: t,
            anchor_sigma,
            anchor_arg_zeta: arg_zeta_unguarded(anchor_sigma, t, cfg)?,
            cfg: *cfg,
        })
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    /// Continuous arg ζ(σ + iT).
    pub fn arg_zeta(&self, sigma: f64) -> Result<f64> {
        let start = ComplexValue::new(self.anchor_sigma, self.height);
        let mut tracker = ArgTracker::start(zeta_phase(self.cfg), start, 0.0, &self.cfg)?
            .without_history();
        tracker.advance_to(ComplexValue::new(sigma, self.height), HORIZONTAL_STEP)?;
        Ok(self.anchor_arg_zeta + tracker.current_arg())
    }

    pub fn parts(&self, sigma: f64) -> Result<XiArgParts> {
        XiArgParts::new(sigma, self.height, self.arg_zeta(sigma)?)
    }

    /// Continuous arg ξ(σ + iT).
    pub fn arg_xi(&self, sigma: f64) -> Result<f64> {
        Ok(self.parts(sigma)?.total())
    }
}

/// Wraps an angle into (-π, π].
pub fn principal(angle: f64) -> f64 {
    let w = wrap(angle);
    if w <= -PI {
        w + TAU
    } else {
        w
    }
}
