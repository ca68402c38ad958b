use super::{
    bernoulli_even, ensure_finite, is_nonpositive_integer, ln_1p, CompensatedSum, ComplexValue,
    Constants,
};
use crate::config::EvalConfig;
use crate::error::{Error, Result};

/// Stirling series is used once |z| reaches this radius (with Re z >= 1/2).
const STIRLING_RADIUS: f64 = 10.0;
const STIRLING_TERMS: usize = 10;

fn check_gamma_argument(z: ComplexValue) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("Gamma at z = {}", z.re)));
    }
    Ok(())
}

/// Stirling series for log Γ(w), valid for |w| >= 10 away from the negative axis.
fn stirling(w: ComplexValue) -> ComplexValue {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = ComplexValue::new(0.0, 0.0);
    let mut power = inv;
    for k in 1..=STIRLING_TERMS {
        let k2 = 2.0 * k as f64;
        series += power * (bernoulli_even(k) / (k2 * (k2 - 1.0)));
        power *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * Constants::LOG_2PI + series
}

/// Principal branch of log Γ(z).
///
/// Small or left-leaning arguments are shifted with
/// log Γ(z) = log Γ(z + k) - Σ_{j<k} log(z + j) until the Stirling series is
/// accurate. The sum of principal logarithms keeps the imaginary part
/// continuous away from the negative real axis.
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    check_gamma_argument(z)?;
    let mut w = z;
    let mut shift = CompensatedSum::default();
    while w.re < 0.5 || w.norm() < STIRLING_RADIUS {
        shift.add(w.ln());
        w += 1.0;
    }
    ensure_finite(stirling(w) - shift.value(), "log Gamma")
}

/// Γ(z) from the truncated Weierstrass product
/// (e^{-Cz}/z) Π_{k<=K} e^{z/k}/(1 + z/k), K = `cfg.weierstrass_terms`.
///
/// Converges like |z|²/(2K); it exists as an independent check on
/// [`log_gamma`], not as a production evaluator.
pub fn gamma_weierstrass(z: ComplexValue, cfg: &EvalConfig) -> Result<ComplexValue> {
    check_gamma_argument(z)?;
    if cfg.weierstrass_terms == 0 {
        return Err(Error::Config("weierstrass_terms must be at least 1".into()));
    }
    let mut acc = CompensatedSum::default();
    for k in 1..=cfg.weierstrass_terms {
        let w = z / k as f64;
        acc.add(w - ln_1p(w));
    }
    let log_value = -Constants::EULER_MASCHERONI * z - z.ln() + acc.value();
    ensure_finite(log_value.exp(), "Gamma (Weierstrass product)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    #[test]
    fn factorial_values() {
        assert!((log_gamma(c(5.0, 0.0)).unwrap() - c(24f64.ln(), 0.0)).norm() < 1e-14);
        assert!((log_gamma(c(1.0, 0.0)).unwrap()).norm() < 1e-14);
        assert!((log_gamma(c(2.0, 0.0)).unwrap()).norm() < 1e-14);
        let big = log_gamma(c(171.0, 0.0)).unwrap();
        let exact: f64 = (1..=170).map(|k| (k as f64).ln()).sum();
        assert!((big.re - exact).abs() < 1e-11 * exact);
    }

    #[test]
    fn half_integer() {
        let v = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((v.re - 0.5 * PI.ln()).abs() < 1e-14);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn poles_are_reported() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(c(n, 0.0)), Err(Error::Pole(_))));
            assert!(matches!(
                gamma_weierstrass(c(n, 0.0), &EvalConfig::default()),
                Err(Error::Pole(_))
            ));
        }
    }

    #[test]
    fn negative_real_axis_branch() {
        // Γ(-1/2) = -2√π; the shift subtracts log(-1/2) = log ½ + iπ
        let v = log_gamma(c(-0.5, 0.0)).unwrap();
        assert!((v.re - (2.0 * PI.sqrt()).ln()).abs() < 1e-13);
        assert!((v.im + PI).abs() < 1e-14);
    }

    #[test]
    fn conjugate_symmetry() {
        for z in [c(0.3, 4.0), c(2.5, 17.0), c(-0.05, 250.0)] {
            let a = log_gamma(z).unwrap();
            let b = log_gamma(z.conj()).unwrap();
            assert!((a.conj() - b).norm() < 1e-12 * a.norm().max(1.0));
        }
    }

    #[test]
    fn recurrence_holds() {
        for z in [c(0.25, 3.0), c(3.5, -40.0), c(12.0, 0.5)] {
            let lhs = log_gamma(z + 1.0).unwrap();
            let rhs = log_gamma(z).unwrap() + z.ln();
            assert!((lhs - rhs).norm() < 1e-12 * lhs.norm().max(1.0), "{z}");
        }
    }

    #[test]
    fn imaginary_part_continuous_in_right_half_plane() {
        // walk up the line Re z = 0.25 and check there are no 2π jumps
        let mut prev = log_gamma(c(0.25, 0.0)).unwrap().im;
        for k in 1..=4000 {
            let cur = log_gamma(c(0.25, 0.05 * k as f64)).unwrap().im;
            assert!((cur - prev).abs() < 0.5, "jump at step {k}");
            prev = cur;
        }
    }

    #[test]
    fn weierstrass_unit_and_half() {
        let cfg = EvalConfig::default();
        let one = gamma_weierstrass(c(1.0, 0.0), &cfg).unwrap();
        assert!((one - 1.0).norm() < 1e-5);
        let half = gamma_weierstrass(c(0.5, 0.0), &cfg).unwrap();
        assert!((half - PI.sqrt()).norm() < 1e-5);
    }

    #[test]
    fn weierstrass_matches_log_gamma() {
        let cfg = EvalConfig::default();
        let z = c(2.0, 3.0);
        let w = gamma_weierstrass(z, &cfg).unwrap();
        let g = log_gamma(z).unwrap().exp();
        assert!((w - g).norm() < 1e-4 * g.norm());
    }

    #[test]
    fn weierstrass_error_shrinks_with_terms() {
        let z = c(1.5, 2.0);
        let exact = log_gamma(z).unwrap().exp();
        let mut last = f64::INFINITY;
        for k in [1_000u64, 10_000, 100_000] {
            let cfg = EvalConfig { weierstrass_terms: k, ..EvalConfig::default() };
            let err = (gamma_weierstrass(z, &cfg).unwrap() - exact).norm();
            assert!(err < last);
            last = err;
        }
    }

    #[test]
    fn reflection_formula() {
        // Γ(z)Γ(1-z) = π / sin(πz), independent of either evaluator's construction
        let samples = [
            c(0.3, 0.7),
            c(-1.2, 2.5),
            c(0.9, -1.1),
            c(2.4, 0.3),
            c(0.5, 3.0),
            c(-0.7, -0.4),
            c(1.7, 1.9),
            c(0.1, -2.2),
            c(3.3, 0.05),
            c(-2.6, 1.3),
            c(0.45, 0.45),
            c(1.05, -0.8),
            c(-0.15, 3.6),
            c(2.9, -2.1),
            c(0.65, 1.55),
            c(-3.4, -0.9),
            c(0.2, 0.2),
            c(1.5, -3.5),
            c(0.8, 2.8),
            c(-1.9, 0.6),
        ];
        for z in samples {
            let lhs = (log_gamma(z).unwrap() + log_gamma(1.0 - z).unwrap()).exp();
            let rhs = PI / (z * PI).sin();
            assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm(), "{z}: {lhs} vs {rhs}");
        }
    }
}
