use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Precision and truncation knobs for series evaluation, quadrature and
/// argument tracking.
///
/// `em_cutoff` is the Euler-Maclaurin summation cutoff used verbatim by
/// [`zeta_euler_maclaurin`](crate::special::zeta_euler_maclaurin). The
/// higher-level evaluators (`xi`, `hardy_z`, the census and the auditor)
/// raise it to the minimum valid cutoff for the height they work at via
/// [`EvalConfig::at_height`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub dirichlet_terms: u64,
    pub em_cutoff: u64,
    pub em_bernoulli_terms: usize,
    pub abs_tol: f64,
    pub weierstrass_terms: u64,
    /// Distance in t below which a height counts as a zero ordinate.
    pub zero_guard: f64,
    /// Final bracket width of a refined zero.
    pub zero_tol: f64,
    /// Largest accepted |Z| at a refined ordinate.
    pub residual_tol: f64,
    pub quadrature_tol: f64,
    /// Cap on step halvings while tracking a continuous argument.
    pub max_halvings: u32,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            dirichlet_terms: 1_000_000,
            em_cutoff: 20,
            em_bernoulli_terms: 16,
            abs_tol: 1e-10,
            weierstrass_terms: 1_000_000,
            zero_guard: 1e-6,
            zero_tol: 1e-9,
            residual_tol: 1e-5,
            quadrature_tol: 1e-8,
            max_halvings: 40,
        }
    }
}

/// Largest Bernoulli-correction count the Euler-Maclaurin tail supports.
pub const MAX_BERNOULLI_TERMS: usize = 20;

impl EvalConfig {
    /// Default configuration for work up to height `t_max`: the absolute
    /// tolerance relaxes from 1e-10 to 1e-8 beyond T = 1000.
    pub fn for_height(t_max: f64) -> Self {
        let mut cfg = EvalConfig::default();
        if t_max.abs() > 1000.0 {
            cfg.abs_tol = 1e-8;
        }
        cfg
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} must be positive, got {v}")))
            }
        };
        positive("abs_tol", self.abs_tol)?;
        positive("zero_guard", self.zero_guard)?;
        positive("zero_tol", self.zero_tol)?;
        positive("residual_tol", self.residual_tol)?;
        positive("quadrature_tol", self.quadrature_tol)?;
        if self.dirichlet_terms == 0 || self.em_cutoff == 0 || self.weierstrass_terms == 0 {
            return Err(Error::Config("term counts must be at least 1".into()));
        }
        if self.em_bernoulli_terms == 0 || self.em_bernoulli_terms > MAX_BERNOULLI_TERMS {
            return Err(Error::Config(format!(
                "em_bernoulli_terms must lie in 1..={MAX_BERNOULLI_TERMS}, got {}",
                self.em_bernoulli_terms
            )));
        }
        if self.max_halvings == 0 {
            return Err(Error::Config("max_halvings must be at least 1".into()));
        }
        Ok(())
    }

    /// Smallest Euler-Maclaurin cutoff accepted for evaluations at height `t`.
    pub fn min_cutoff(t: f64) -> u64 {
        (t.abs() / 2.0 + 10.0).ceil() as u64
    }

    /// Copy of `self` with `em_cutoff` raised to the valid minimum for `t`.
    pub fn at_height(&self, t: f64) -> Self {
        let mut cfg = *self;
        cfg.em_cutoff = cfg.em_cutoff.max(Self::min_cutoff(t));
        cfg
    }
}
