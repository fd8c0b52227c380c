//! Barban-Vehov weight systems and their divisor sums.
//!
//! psi_d is mu(d) inside [1, U], logarithmically damped on (U, V], zero
//! beyond; theta_d is the U = 1, V = W special case. The divisor sums
//! Psi(n) = sum_{d|n} psi_d and Theta(n) = sum_{d|n} theta_d feed the
//! mollifier, and Theta reproduces Lambda(n)/log W on (1, W]. That identity,
//! the vanishing of Psi on [2, U], and the partial-sum ratio constants are
//! all checked empirically here.

use thiserror::Error;

use crate::arith::SieveTables;
use crate::audit::BoundAuditRecord;
use crate::sum::NeumaierSum;

#[derive(Debug, Error, PartialEq)]
pub enum WeightError {
    #[error("invalid weight configuration: {0}")]
    BadConfig(String),
    #[error("table limit {limit} too small for requested audit (needs {needed})")]
    LimitTooSmall { limit: usize, needed: usize },
    #[error("partial-sum range violated: {0}")]
    RangeViolated(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightConfig {
    pub u: usize,
    pub v: usize,
    pub w: usize,
    /// Largest n for which the divisor-sum and convolution tables are built.
    pub limit: usize,
}

impl WeightConfig {
    pub fn new(u: usize, v: usize, w: usize, limit: usize) -> Result<Self, WeightError> {
        if u < 1 || v <= u {
            return Err(WeightError::BadConfig(format!(
                "need 1 <= U < V, got U={u} V={v}"
            )));
        }
        if w < 2 {
            return Err(WeightError::BadConfig(format!("need W >= 2, got W={w}")));
        }
        if limit < 1 {
            return Err(WeightError::BadConfig("limit must be >= 1".into()));
        }
        Ok(Self { u, v, w, limit })
    }
}

/// Precomputed weight arrays for one (U, V, W) configuration. Immutable
/// after construction; safe to share across threads.
pub struct WeightTable {
    pub config: WeightConfig,
    /// psi_d, indexed 0..=V (index 0 unused).
    pub psi_d: Vec<f64>,
    /// theta_d, indexed 0..=W.
    pub theta_d: Vec<f64>,
    /// Psi(n) = sum_{d|n} psi_d, indexed 0..=limit.
    pub big_psi: Vec<f64>,
    /// Theta(n) = sum_{d|n} theta_d, indexed 0..=limit.
    pub big_theta: Vec<f64>,
    /// h = psi * theta (Dirichlet convolution), indexed 0..=limit.
    pub h: Vec<f64>,
    tables: SieveTables,
}

/// Build all five arrays. mu comes from the shared linear sieve; divisor
/// sums by direct d | n accumulation in O(limit log limit).
pub fn build_weights(config: WeightConfig) -> Result<WeightTable, WeightError> {
    let WeightConfig { u, v, w, limit } = config;
    let tables = SieveTables::build(limit.max(v).max(w));
    let log_v_over_u = (v as f64 / u as f64).ln();
    let log_w = (w as f64).ln();

    let mut psi_d = vec![0.0; v + 1];
    for d in 1..=v {
        let m = tables.mu_i(d);
        psi_d[d] = if d <= u {
            m
        } else {
            m * (v as f64 / d as f64).ln() / log_v_over_u
        };
    }
    let mut theta_d = vec![0.0; w + 1];
    for d in 1..=w {
        theta_d[d] = tables.mu_i(d) * (w as f64 / d as f64).ln() / log_w;
    }

    let big_psi = divisor_sums(&psi_d, limit);
    let big_theta = divisor_sums(&theta_d, limit);
    let h = convolve_h(&psi_d, &theta_d, limit);

    Ok(WeightTable {
        config,
        psi_d,
        theta_d,
        big_psi,
        big_theta,
        h,
        tables,
    })
}

fn divisor_sums(weights: &[f64], limit: usize) -> Vec<f64> {
    let mut out = vec![0.0; limit + 1];
    for d in 1..weights.len().min(limit + 1) {
        let wd = weights[d];
        if wd == 0.0 {
            continue;
        }
        let mut m = d;
        while m <= limit {
            out[m] += wd;
            m += d;
        }
    }
    out
}

/// Dirichlet convolution h(n) = sum_{de = n} psi_d theta_e up to `limit`.
pub fn convolve_h(psi_d: &[f64], theta_d: &[f64], limit: usize) -> Vec<f64> {
    let mut h = vec![0.0; limit + 1];
    for d in 1..psi_d.len().min(limit + 1) {
        let pd = psi_d[d];
        if pd == 0.0 {
            continue;
        }
        let e_max = (limit / d).min(theta_d.len() - 1);
        for e in 1..=e_max {
            let te = theta_d[e];
            if te != 0.0 {
                h[d * e] += pd * te;
            }
        }
    }
    h
}

impl WeightTable {
    /// Shared arithmetic tables the weights were built from.
    pub fn tables(&self) -> &SieveTables {
        &self.tables
    }

    /// For every 1 < n <= W, compare Theta(n) against Lambda(n)/log W.
    /// Pass iff |difference| <= 1e-12 max(1, |Theta(n)|).
    pub fn theta_lambda_audit(&self) -> Result<Vec<BoundAuditRecord>, WeightError> {
        let w = self.config.w;
        if self.config.limit < w {
            return Err(WeightError::LimitTooSmall {
                limit: self.config.limit,
                needed: w,
            });
        }
        let log_w = (w as f64).ln();
        let mut records = Vec::with_capacity(w.saturating_sub(1));
        for n in 2..=w {
            let lhs = self.big_theta[n];
            let rhs = self.tables.lambda[n] / log_w;
            let diff = (lhs - rhs).abs();
            let tol = 1e-12 * lhs.abs().max(1.0);
            records.push(
                BoundAuditRecord::checked("theta-equals-lambda", diff, tol)
                    .with_input("n", n)
                    .with_input("W", w),
            );
        }
        Ok(records)
    }

    /// Empirical constants d1_hat = (log W / N) sum Theta^2 and
    /// d2_hat = (log(V/U) / N) sum Psi Theta over n <= N.
    pub fn partial_sum_ratios(&self, n_max: usize) -> Result<(f64, f64), WeightError> {
        let WeightConfig { u, v, w, limit } = self.config;
        if n_max > limit {
            return Err(WeightError::LimitTooSmall {
                limit,
                needed: n_max,
            });
        }
        if n_max <= w {
            return Err(WeightError::RangeViolated(format!(
                "Theta^2 partial-sum constant needs N > W (N = {n_max}, W = {w})"
            )));
        }
        if n_max <= v * w {
            return Err(WeightError::RangeViolated(format!(
                "Psi Theta partial-sum constant needs N > V W (N = {n_max}, V W = {})",
                v * w
            )));
        }
        let mut sum_theta2 = NeumaierSum::new();
        let mut sum_psi_theta = NeumaierSum::new();
        for n in 1..=n_max {
            let th = self.big_theta[n];
            sum_theta2.add(th * th);
            sum_psi_theta.add(self.big_psi[n] * th);
        }
        let d1_hat = (w as f64).ln() / n_max as f64 * sum_theta2.value();
        let d2_hat = (v as f64 / u as f64).ln() / n_max as f64 * sum_psi_theta.value();
        Ok((d1_hat, d2_hat))
    }

    /// d1_hat alone, valid whenever N > W.
    pub fn theta_square_ratio(&self, n_max: usize) -> Result<f64, WeightError> {
        let WeightConfig { w, limit, .. } = self.config;
        if n_max > limit {
            return Err(WeightError::LimitTooSmall {
                limit,
                needed: n_max,
            });
        }
        if n_max <= w {
            return Err(WeightError::RangeViolated(format!(
                "Theta^2 partial-sum constant needs N > W (N = {n_max}, W = {w})"
            )));
        }
        let mut sum = NeumaierSum::new();
        for n in 1..=n_max {
            let th = self.big_theta[n];
            sum.add(th * th);
        }
        Ok((w as f64).ln() / n_max as f64 * sum.value())
    }

    /// Measure (psi * theta * 1)(n) against Psi(n) Theta(n) for n <= n_audit.
    /// The two sides are NOT equal in general; discrepancies are findings and
    /// every record is ratio-only.
    pub fn convolution_identity_audit(
        &self,
        n_audit: usize,
    ) -> Result<Vec<BoundAuditRecord>, WeightError> {
        let n_audit = n_audit.min(self.config.limit);
        let mut records = Vec::with_capacity(n_audit);
        // (psi * theta * 1)(n) = sum_{m | n} h(m)
        let mut h_sum = vec![0.0f64; n_audit + 1];
        for m in 1..=n_audit {
            let hm = self.h[m];
            if hm == 0.0 {
                continue;
            }
            let mut k = m;
            while k <= n_audit {
                h_sum[k] += hm;
                k += m;
            }
        }
        for n in 1..=n_audit {
            let lhs = h_sum[n];
            let rhs = self.big_psi[n] * self.big_theta[n];
            let diff = (lhs - rhs).abs();
            records.push(
                BoundAuditRecord::ratio_only("convolution-identity-gap", diff, 1e-12)
                    .with_input("n", n)
                    .with_input("lhs", lhs)
                    .with_input("rhs", rhs),
            );
        }
        Ok(records)
    }
}
