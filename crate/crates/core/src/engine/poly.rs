//! Finite Dirichlet polynomials and the mollifier M(s).

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{n_pow_minus_s, ComplexPoint, EngineError};
use crate::sum::{ComplexSum, NeumaierSum};
use crate::weights::WeightTable;

/// A finite Dirichlet polynomial sum a_n n^(-s), stored sparsely.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DirichletPolynomial {
    coeffs: BTreeMap<u64, f64>,
    support_max: u64,
}

impl DirichletPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, f64)>) -> Self {
        let mut p = Self::new();
        for (n, a) in pairs {
            p.set(n, a);
        }
        p
    }

    /// Dense coefficients a_1 .. a_limit from a slice indexed 0..=limit.
    pub fn from_dense(coeffs: &[f64], limit: usize) -> Self {
        let mut p = Self::new();
        for (n, &a) in coeffs.iter().enumerate().take(limit + 1).skip(1) {
            if a != 0.0 {
                p.set(n as u64, a);
            }
        }
        p
    }

    pub fn set(&mut self, n: u64, a: f64) {
        assert!(n >= 1, "Dirichlet coefficients start at n = 1");
        if a == 0.0 {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, a);
            self.support_max = self.support_max.max(n);
        }
    }

    pub fn coeff(&self, n: u64) -> f64 {
        self.coeffs.get(&n).copied().unwrap_or(0.0)
    }

    pub fn support_max(&self) -> u64 {
        self.support_max
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.coeffs.iter().map(|(&n, &a)| (n, a))
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (n, a) in other.terms() {
            let v = self.coeff(n) + a;
            self.set(n, v);
        }
    }
}

/// Exact finite sum over the support, compensated per component.
pub fn eval_poly(p: &DirichletPolynomial, s: ComplexPoint) -> Complex64 {
    let mut acc = ComplexSum::new();
    for (n, a) in p.terms() {
        acc.add(a * n_pow_minus_s(n as f64, s.sigma, s.t));
    }
    acc.value()
}

/// M(s) = sum_{n <= Y} h(n) n^(-s) over the convolution coefficients of a
/// built weight table.
pub fn mollifier(table: &WeightTable, s: ComplexPoint, y: usize) -> Result<Complex64, EngineError> {
    if y > table.config.limit {
        return Err(EngineError::TruncationBeyondTable {
            y,
            limit: table.config.limit,
        });
    }
    let mut acc = ComplexSum::new();
    for n in 1..=y {
        let hn = table.h[n];
        if hn != 0.0 {
            acc.add(hn * n_pow_minus_s(n as f64, s.sigma, s.t));
        }
    }
    Ok(acc.value())
}

/// Crude majorant sum_{n <= Y} d(n) n^(-sigma) for |M(s)|, from the shared
/// divisor-count table.
pub fn mollifier_divisor_majorant(
    table: &WeightTable,
    sigma: f64,
    y: usize,
) -> Result<f64, EngineError> {
    if y > table.config.limit {
        return Err(EngineError::TruncationBeyondTable {
            y,
            limit: table.config.limit,
        });
    }
    let tables = table.tables();
    let mut acc = NeumaierSum::new();
    for n in 1..=y {
        acc.add(tables.divcount[n] as f64 * (n as f64).powf(-sigma));
    }
    Ok(acc.value())
}
