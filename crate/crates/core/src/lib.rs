//! Numerical toolkit for auditing Littlewood's lemma applied to Riemann's ξ
//! function on symmetric rectangles around the critical line.
//!
//! The crate is layered bottom-up:
//!
//! * [`special`]: ζ, Γ, ξ, θ and Hardy's Z.
//! * [`argument`]: continuous arguments along polyline paths, S(T).
//! * [`census`]: critical-line zeros, strip counts, the von Mangoldt formula.
//! * [`littlewood`]: both sides of the rectangle identity and every
//!   asymptotic estimate used to reduce it to a zero count.
//! * [`report`]: report envelopes, CSV/JSON emission and the command drivers
//!   behind the `zeta-audit` binary.

pub mod argument;
pub mod census;
pub mod config;
pub mod error;
pub mod littlewood;
mod parallel;
pub mod quadrature;
pub mod report;
pub mod special;

pub use config::EvalConfig;
pub use error::{Error, Result};
pub use special::ComplexValue;
