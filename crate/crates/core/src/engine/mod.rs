//! Dirichlet polynomial evaluation, zeta computation, exponential sums, and
//! their explicit bound audits.

pub mod expsum;
pub mod poly;
pub mod zeta;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A point s = sigma + i t in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub t: f64,
}

impl ComplexPoint {
    pub fn new(sigma: f64, t: f64) -> Self {
        Self { sigma, t }
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum EngineError {
    #[error("zeta has a pole at s = 1")]
    Pole,
    #[error("partial sums of n^-s need sigma > 0 (got sigma = {0})")]
    NonpositiveSigma(f64),
    #[error("cutoff {cutoff} is below the ordinate t = {t}; the truncation bound does not apply")]
    CutoffBelowOrdinate { cutoff: u64, t: f64 },
    #[error("euler-maclaurin failed to self-validate to 12 digits")]
    NoConvergence,
    #[error(
        "growth bound is stated for 1/2 <= sigma <= 1 and |t| >= 3 (got sigma = {sigma}, t = {t})"
    )]
    OutsideStrip { sigma: f64, t: f64 },
    #[error("explicit exponential-sum bound is stated for 2 <= N <= t (got N = {n}, t = {t})")]
    OutsideStatedRange { n: u64, t: f64 },
    #[error("second-derivative test is vacuous at t = 0")]
    ZeroOrdinate,
    #[error("mollifier truncation Y = {y} exceeds the weight table limit {limit}")]
    TruncationBeyondTable { y: usize, limit: usize },
    #[error("dyadic block N = {n} exceeds the direct-evaluation budget and bound substitution is disabled")]
    BudgetExhausted { n: u64 },
    #[error("dyadic range needs X < t_end (got X = {x}, t_end = {t_end})")]
    EmptyDyadicRange { x: u64, t_end: f64 },
}

/// n^(-s) for integer n >= 1, phases from a per-term log (no recurrences).
#[inline]
pub(crate) fn n_pow_minus_s(n: f64, sigma: f64, t: f64) -> Complex64 {
    let ln_n = n.ln();
    let (sin, cos) = (-t * ln_n).sin_cos();
    let r = (-sigma * ln_n).exp();
    Complex64::new(r * cos, r * sin)
}
