//! Independent reference evaluations shared by the integration tests.

#![allow(dead_code)]

use zeta_audit::special::{riemann_siegel_theta, ComplexValue};

/// Borwein's accelerated alternating series for η(s), turned into ζ(s) by
/// ζ = η / (1 - 2^{1-s}). Shares no code with the Euler-Maclaurin evaluator.
pub fn zeta_eta(s: ComplexValue) -> ComplexValue {
    let n = 90usize;
    // d_k = n Σ_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0 / n as f64;
    let mut sum = 0.0;
    for i in 0..=n {
        if i > 0 {
            let (nf, fi) = (n as f64, i as f64);
            term *= (nf + fi - 1.0) * (nf - fi + 1.0) * 4.0 / ((2.0 * fi - 1.0) * (2.0 * fi));
        }
        sum += term;
        d.push(n as f64 * sum);
    }
    let dn = d[n];
    let mut eta = ComplexValue::new(0.0, 0.0);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let power = (-s * ((k + 1) as f64).ln()).exp();
        eta += sign * (d[k] - dn) * power;
    }
    eta = -eta / dn;
    let two = ComplexValue::new(2.0, 0.0);
    eta / (1.0 - two.powc(1.0 - s))
}

pub fn hardy_z(t: f64) -> f64 {
    let theta = riemann_siegel_theta(t).unwrap();
    (ComplexValue::from_polar(1.0, theta) * zeta_eta(ComplexValue::new(0.5, t))).re
}

/// Zero of the oracle Z in [lo, hi] by plain bisection.
pub fn bisect_zero(mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = hardy_z(lo);
    assert!(f_lo * hardy_z(hi) < 0.0, "no sign change in [{lo}, {hi}]");
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let f_mid = hardy_z(mid);
        if f_mid * f_lo > 0.0 {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
