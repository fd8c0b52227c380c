//! Shared test support: fixture paths and an independent critical-line
//! zero locator (Hardy Z sign changes) used to generate and validate the
//! ordinate fixture. Root isolation lives here, in test code only; the
//! library treats zero files as trusted input.
#![allow(dead_code)]

use std::path::PathBuf;

use num_complex::Complex64;
use zeta_edge_core::engine::zeta::zeta_euler_maclaurin;
use zeta_edge_core::engine::ComplexPoint;

pub fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .expect("workspace root")
}

pub fn zeros_fixture_path() -> PathBuf {
    workspace_root().join("data/zeros_t1000.txt")
}

/// log Gamma by Stirling with Bernoulli corrections; fine for Re(z) > 0 and
/// |z| >= 4, which covers z = 1/4 + it/2 for t >= 8.
fn ln_gamma(z: Complex64) -> Complex64 {
    // B_2k / (2k (2k-1)) for k = 1..8
    const COEFFS: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        7.0 / 1092.0,
        -3617.0 / 122400.0,
    ];
    let half_ln_tau = 0.5 * std::f64::consts::TAU.ln();
    let mut acc = (z - 0.5) * z.ln() - z + half_ln_tau;
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut p = inv;
    for c in COEFFS {
        acc += c * p;
        p *= inv2;
    }
    acc
}

/// Riemann-Siegel theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi.
pub fn riemann_siegel_theta(t: f64) -> f64 {
    let z = Complex64::new(0.25, 0.5 * t);
    ln_gamma(z).im - 0.5 * t * std::f64::consts::PI.ln()
}

/// Hardy's function Z(t) = exp(i theta(t)) zeta(1/2 + it), real for real t.
/// A fixed Euler-Maclaurin cutoff comfortably above 2t keeps the scan fast.
pub fn hardy_z(t: f64) -> f64 {
    let cutoff = (2.2 * t.max(25.0)).ceil() as u64;
    let zeta = zeta_euler_maclaurin(ComplexPoint::new(0.5, t), cutoff, 8);
    let theta = riemann_siegel_theta(t);
    (Complex64::from_polar(1.0, theta) * zeta).re
}

/// All ordinates of critical-line zeros in (t_lo, t_hi), located by a sign
/// scan of Z and refined by bisection to ~1e-11.
pub fn find_zero_ordinates(t_lo: f64, t_hi: f64) -> Vec<f64> {
    let step = 0.02;
    let mut zeros = Vec::new();
    let mut t = t_lo;
    let mut z_prev = hardy_z(t);
    while t < t_hi {
        let t_next = (t + step).min(t_hi);
        let z_next = hardy_z(t_next);
        if z_prev == 0.0 {
            zeros.push(t);
        } else if z_prev.signum() != z_next.signum() && z_next != 0.0 {
            zeros.push(bisect_zero(t, t_next, z_prev));
        }
        t = t_next;
        z_prev = z_next;
    }
    zeros
}

fn bisect_zero(mut lo: f64, mut hi: f64, z_lo: f64) -> f64 {
    let sign_lo = z_lo.signum();
    for _ in 0..60 {
        if hi - lo < 1e-11 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if hardy_z(mid).signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
