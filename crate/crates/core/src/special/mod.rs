//! Evaluators for ζ(s), Γ(s), ξ(s), the Riemann-Siegel theta function and
//! Hardy's Z function.
//!
//! All operations are pure functions of their arguments. Values are
//! [`ComplexValue`]s (`num_complex::Complex64`) and every public evaluator
//! refuses to hand back a non-finite component: overflow and underflow are
//! reported as [`Error::Range`](crate::Error::Range).

mod gamma;
mod theta;
mod xi;
mod zeta;

pub use gamma::{gamma_weierstrass, log_gamma};
pub use theta::{hardy_z, riemann_siegel_theta};
pub use xi::{log_xi, xi};
pub use zeta::{dirichlet_tail_bound, zeta_dirichlet, zeta_euler_maclaurin, zeta_times_pole_factor};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A complex number with finite real and imaginary parts.
pub type ComplexValue = Complex64;

/// Mathematical constants used across the evaluators.
#[derive(Debug, Clone, Copy)]
pub struct Constants;

impl Constants {
    pub const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;
    pub const PI: f64 = std::f64::consts::PI;
    pub const LOG_PI: f64 = 1.144_729_885_849_400_2;
    pub const LOG_2PI: f64 = 1.837_877_066_409_345_5;
}

/// Even-index Bernoulli numbers B_2, B_4, ..., B_40 as (numerator, denominator).
const BERNOULLI_EVEN: [(f64, f64); 20] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
    (-7709321041217.0, 510.0),
    (2577687858367.0, 6.0),
    (-26315271553053477373.0, 1919190.0),
    (2929993913841559.0, 6.0),
    (-261082718496449122051.0, 13530.0),
];

/// B_{2k} for k in 1..=20.
pub(crate) fn bernoulli_even(k: usize) -> f64 {
    let (num, den) = BERNOULLI_EVEN[k - 1];
    num / den
}

pub(crate) fn ensure_finite(z: ComplexValue, what: &str) -> Result<ComplexValue> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::Range(format!("{what} is not representable ({z})")))
    }
}

/// True when `z` is one of 0, -1, -2, ...
pub(crate) fn is_nonpositive_integer(z: ComplexValue) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Neumaier-compensated accumulator for complex sums.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

impl CompensatedSum {
    #[inline]
    fn add_part(sum: &mut f64, comp: &mut f64, x: f64) {
        let t = *sum + x;
        if sum.abs() >= x.abs() {
            *comp += (*sum - t) + x;
        } else {
            *comp += (x - t) + *sum;
        }
        *sum = t;
    }

    #[inline]
    pub fn add(&mut self, z: ComplexValue) {
        Self::add_part(&mut self.re, &mut self.re_c, z.re);
        Self::add_part(&mut self.im, &mut self.im_c, z.im);
    }

    pub fn value(&self) -> ComplexValue {
        ComplexValue::new(self.re + self.re_c, self.im + self.im_c)
    }
}

/// log(1 + w) without cancellation for small |w|.
pub(crate) fn ln_1p(w: ComplexValue) -> ComplexValue {
    let re = 0.5 * (2.0 * w.re + w.re * w.re + w.im * w.im).ln_1p();
    let im = w.im.atan2(1.0 + w.re);
    ComplexValue::new(re, im)
}
