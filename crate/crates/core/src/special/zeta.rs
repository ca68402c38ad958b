use super::{bernoulli_even, ensure_finite, CompensatedSum, ComplexValue};
use crate::config::EvalConfig;
use crate::error::{Error, Result};

#[inline]
fn inverse_power(n: u64, s: ComplexValue) -> ComplexValue {
    let ln = (n as f64).ln();
    let mag = (-s.re * ln).exp();
    let (sin, cos) = (s.im * ln).sin_cos();
    ComplexValue::new(mag * cos, -mag * sin)
}

fn partial_sum(s: ComplexValue, terms: u64) -> ComplexValue {
    let mut acc = CompensatedSum::default();
    for n in 1..=terms {
        acc.add(inverse_power(n, s));
    }
    acc.value()
}

/// Truncated Dirichlet series Σ_{n<=N} n^{-s}, N = `cfg.dirichlet_terms`.
///
/// Defined only for Re s > 1. The discarded tail is bounded by
/// [`dirichlet_tail_bound`].
pub fn zeta_dirichlet(s: ComplexValue, cfg: &EvalConfig) -> Result<ComplexValue> {
    if !(s.re > 1.0) || !s.im.is_finite() {
        return Err(Error::Domain(format!(
            "Dirichlet series needs Re(s) > 1, got s = {s}"
        )));
    }
    if cfg.dirichlet_terms == 0 {
        return Err(Error::Config("dirichlet_terms must be at least 1".into()));
    }
    ensure_finite(partial_sum(s, cfg.dirichlet_terms), "zeta (Dirichlet)")
}

/// Upper bound N^{1-σ}/(σ-1) on |Σ_{n>N} n^{-s}|.
pub fn dirichlet_tail_bound(sigma: f64, terms: u64) -> f64 {
    (terms as f64).powf(1.0 - sigma) / (sigma - 1.0)
}

/// Euler-Maclaurin pieces: ζ(s) = regular + pole_numerator/(s-1).
struct EmParts {
    regular: ComplexValue,
    pole_numerator: ComplexValue,
}

fn euler_maclaurin_parts(s: ComplexValue, cfg: &EvalConfig) -> Result<EmParts> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {s}")));
    }
    if !(s.re > -1.0) {
        return Err(Error::Domain(format!(
            "Euler-Maclaurin evaluator needs Re(s) > -1, got s = {s}"
        )));
    }
    let n = cfg.em_cutoff;
    let needed = EvalConfig::min_cutoff(s.im);
    if n < needed {
        return Err(Error::Config(format!(
            "em_cutoff {n} too small for |t| = {}; need at least {needed}",
            s.im.abs()
        )));
    }
    let terms = cfg.em_bernoulli_terms;
    if terms == 0 || terms > super::BERNOULLI_EVEN.len() - 1 {
        return Err(Error::Config(format!("unsupported em_bernoulli_terms {terms}")));
    }

    let nf = n as f64;
    let n_pow = inverse_power(n, s);
    let mut acc = CompensatedSum::default();
    for k in 1..n {
        acc.add(inverse_power(k, s));
    }
    acc.add(n_pow * 0.5);

    // Σ_k B_{2k}/(2k)! · s(s+1)...(s+2k-2) · N^{-s-2k+1}
    let inv_n2 = 1.0 / (nf * nf);
    let mut rising = s;
    let mut power = n_pow / nf;
    let mut factorial = 2.0;
    let mut next = ComplexValue::new(0.0, 0.0);
    for k in 1..=terms + 1 {
        let term = rising * power * (bernoulli_even(k) / factorial);
        if k > terms {
            next = term;
            break;
        }
        acc.add(term);
        let k2 = 2.0 * k as f64;
        rising *= (s + (k2 - 1.0)) * (s + k2);
        power *= inv_n2;
        factorial *= (k2 + 1.0) * (k2 + 2.0);
    }
    let err = next.norm();
    if !(err <= cfg.abs_tol) {
        return Err(Error::Accuracy(format!(
            "Euler-Maclaurin tail estimate {err:.3e} exceeds abs_tol {:.3e} at s = {s}",
            cfg.abs_tol
        )));
    }
    Ok(EmParts {
        regular: acc.value(),
        pole_numerator: n_pow * nf,
    })
}

/// ζ(s) by Euler-Maclaurin summation: truncated sum, integral correction and
/// Bernoulli tail, accurate to `cfg.abs_tol`.
///
/// Uses `cfg.em_cutoff` as given and rejects it when it is below
/// `|t|/2 + 10`; see [`EvalConfig::at_height`].
pub fn zeta_euler_maclaurin(s: ComplexValue, cfg: &EvalConfig) -> Result<ComplexValue> {
    if s == ComplexValue::new(1.0, 0.0) {
        return Err(Error::Pole("zeta at s = 1".into()));
    }
    let parts = euler_maclaurin_parts(s, cfg)?;
    ensure_finite(
        parts.regular + parts.pole_numerator / (s - 1.0),
        "zeta (Euler-Maclaurin)",
    )
}

/// (s - 1)·ζ(s), entire, evaluated without forming the pole.
pub fn zeta_times_pole_factor(s: ComplexValue, cfg: &EvalConfig) -> Result<ComplexValue> {
    let parts = euler_maclaurin_parts(s, cfg)?;
    ensure_finite(
        (s - 1.0) * parts.regular + parts.pole_numerator,
        "(s-1) zeta",
    )
}
