//! Segmented sieve computation of psi(x), theta(x), pi(x), the normalized
//! prime-counting errors, the truncated zero-sum bound, and the envelope
//! comparison.
//!
//! Segments span 2^22 integers stored odd-only, sieved in parallel over
//! disjoint ranges; per-segment log sums use pairwise summation and the
//! per-segment partials merge in ascending order, so totals are
//! deterministic regardless of thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::integer_kth_root;
use crate::audit::BoundAuditRecord;
use crate::regions::{omega_closed_logx_with, ZeroFreeRegion};
use crate::sum::{pairwise_sum, NeumaierSum};
use crate::zerolab::ZeroDataset;

/// Largest x the segmented sieve accepts.
pub const SIEVE_CAP: u64 = 10_000_000_000;

/// Integers per segment.
const SEGMENT_SPAN: u64 = 1 << 22;

/// li(2) under the principal-value convention; li(x) = li(2) + int_2^x dt/log t.
pub const LI_OF_2: f64 = 1.0451637801174927848;

/// Human-readable statement of the li convention, for report metadata.
pub const LI_CONVENTION: &str =
    "li(x) = li(2) + integral_2^x dt/log t with li(2) = 1.04516378011749278 (principal value)";

#[derive(Debug, Error, PartialEq)]
pub enum SieveError {
    #[error("x = {x} outside the supported range 2..={cap}")]
    BadRange { x: u64, cap: u64 },
    #[error("T = {t} exceeds zero-dataset coverage {coverage}")]
    Coverage { t: f64, coverage: f64 },
    #[error("consistency check needs x >= 4 (got {0})")]
    TooSmall(u64),
}

/// Chebyshev and prime-counting values at x with their normalized errors.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SieveSummary {
    pub x: u64,
    /// psi(x) = sum of log p over prime powers p^k <= x.
    pub psi: f64,
    /// theta(x) = sum of log p over primes p <= x.
    pub theta: f64,
    pub pi: u64,
    pub li_x: f64,
    /// |psi - x| / x.
    pub delta: f64,
    /// |pi - li| / (x / log x).
    pub delta1: f64,
    /// |theta - x| / x.
    pub delta2: f64,
}

/// Exact psi, theta, pi by segmented sieve plus li(x) by adaptive quadrature.
pub fn sieve_summary(x: u64) -> Result<SieveSummary, SieveError> {
    if !(2..=SIEVE_CAP).contains(&x) {
        return Err(SieveError::BadRange { x, cap: SIEVE_CAP });
    }
    let (pi, theta, psi) = segmented_counts(x);
    let li_x = li(x as f64);
    let xf = x as f64;
    Ok(SieveSummary {
        x,
        psi,
        theta,
        pi,
        li_x,
        delta: (psi - xf).abs() / xf,
        delta1: (pi as f64 - li_x).abs() / (xf / xf.ln()),
        delta2: (theta - xf).abs() / xf,
    })
}

/// (pi, theta, psi) for 2 <= x.
fn segmented_counts(x: u64) -> (u64, f64, f64) {
    let root = integer_kth_root(x, 2);
    let base = base_odd_primes(root);

    // prime 2 and the psi contribution of all prime powers p^k, k >= 2
    let mut pi: u64 = 1;
    let mut theta = NeumaierSum::new();
    theta.add(2f64.ln());
    let mut power_extra = NeumaierSum::new();
    {
        let mut pk = 2u64;
        while pk <= x / 2 {
            pk *= 2;
            power_extra.add(2f64.ln());
        }
    }
    for &p in &base {
        let lp = (p as f64).ln();
        let mut pk = p;
        while pk <= x / p {
            pk *= p;
            power_extra.add(lp);
        }
    }

    // odd range [3, x] in segments
    let n_segments = ((x.saturating_sub(3)) / SEGMENT_SPAN + 1) as usize;
    let partials: Vec<(u64, f64)> = (0..n_segments)
        .into_par_iter()
        .map(|k| {
            let lo = 3 + k as u64 * SEGMENT_SPAN;
            let hi = (lo + SEGMENT_SPAN).min(x + 1);
            sieve_segment(lo, hi, &base)
        })
        .collect();
    for (count, log_sum) in partials {
        pi += count;
        theta.add(log_sum);
    }

    let theta_v = theta.value();
    (pi, theta_v, theta_v + power_extra.value())
}

/// Count and log-sum of primes in the odd numbers of [lo, hi).
fn sieve_segment(lo: u64, hi: u64, base: &[u64]) -> (u64, f64) {
    debug_assert!(lo % 2 == 1 && lo >= 3);
    let half = ((hi - lo) as usize).div_ceil(2);
    let words = half.div_ceil(64);
    let mut marked = vec![0u64; words];
    for &p in base {
        let p2 = p * p;
        if p2 >= hi {
            break;
        }
        let mut start = if p2 >= lo {
            p2
        } else {
            let mut m = lo.div_ceil(p) * p;
            if m % 2 == 0 {
                m += p;
            }
            m
        };
        while start < hi {
            let idx = ((start - lo) / 2) as usize;
            marked[idx >> 6] |= 1u64 << (idx & 63);
            start += 2 * p;
        }
    }
    let mut count = 0u64;
    let mut logs: Vec<f64> = Vec::with_capacity(half / 8 + 16);
    for (w, &word) in marked.iter().enumerate() {
        let mut unmarked = !word;
        if w == words - 1 && half % 64 != 0 {
            unmarked &= (1u64 << (half % 64)) - 1;
        }
        while unmarked != 0 {
            let bit = unmarked.trailing_zeros() as usize;
            unmarked &= unmarked - 1;
            let n = lo + 2 * ((w << 6) + bit) as u64;
            count += 1;
            logs.push((n as f64).ln());
        }
    }
    (count, pairwise_sum(&logs))
}

/// Odd primes up to `limit` by a plain sieve.
fn base_odd_primes(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in (3..=n).step_by(2) {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += 2 * i;
            }
        }
    }
    primes
}

/// Every prime <= x via the same segment machinery the counts use.
pub fn segmented_primes(x: u64) -> Vec<u64> {
    if x < 2 {
        return Vec::new();
    }
    let base = base_odd_primes(integer_kth_root(x, 2));
    let mut primes = vec![2u64];
    let mut lo = 3u64;
    while lo <= x {
        let hi = (lo + SEGMENT_SPAN).min(x + 1);
        let half = ((hi - lo) as usize).div_ceil(2);
        let words = half.div_ceil(64);
        let mut marked = vec![0u64; words];
        for &p in &base {
            if p * p >= hi {
                break;
            }
            let mut start = if p * p >= lo {
                p * p
            } else {
                let mut m = lo.div_ceil(p) * p;
                if m % 2 == 0 {
                    m += p;
                }
                m
            };
            while start < hi {
                let idx = ((start - lo) / 2) as usize;
                marked[idx >> 6] |= 1u64 << (idx & 63);
                start += 2 * p;
            }
        }
        for i in 0..half {
            if marked[i >> 6] & (1u64 << (i & 63)) == 0 {
                primes.push(lo + 2 * i as u64);
            }
        }
        lo = hi | 1;
    }
    primes
}

/// Fully independent naive-path summary, the oracle for the segmented sieve.
pub fn naive_summary(x: u64) -> (u64, f64, f64) {
    let n = x as usize;
    let mut composite = vec![false; n + 1];
    let mut pi = 0u64;
    let mut theta = NeumaierSum::new();
    let mut psi = NeumaierSum::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        pi += 1;
        let lp = (p as f64).ln();
        theta.add(lp);
        let mut pk = p as u64;
        while pk <= x {
            psi.add(lp);
            if pk > x / p as u64 {
                break;
            }
            pk *= p as u64;
        }
        let mut j = p * p;
        while j <= n {
            composite[j] = true;
            j += p;
        }
    }
    (pi, theta.value(), psi.value())
}

/// Logarithmic integral under the recorded convention, by adaptive Simpson
/// on int e^u / u du after substituting u = log t.
pub fn li(x: f64) -> f64 {
    assert!(x >= 2.0);
    if x == 2.0 {
        return LI_OF_2;
    }
    let f = |u: f64| u.exp() / u;
    LI_OF_2 + adaptive_simpson(&f, 2f64.ln(), x.ln(), 1e-12)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
                + recurse(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    let tol = rel_tol * whole.abs().max(1.0);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 48)
}

/// The truncated zero-sum bound: sum over |Im rho| <= T of
/// x^(Re rho - 1)/|Im rho| plus the (log x)^2 / T remainder. The dataset
/// stores gamma > 0 only, so the sum is doubled for the conjugate zeros.
/// The remainder's implied constant is reported as 1 by convention, not as
/// a claim.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ZeroSumBound {
    pub x: f64,
    pub t: f64,
    pub zero_sum: f64,
    pub remainder: f64,
    pub total: f64,
}

pub fn zero_sum_bound(ds: &ZeroDataset, x: f64, t: f64) -> Result<ZeroSumBound, SieveError> {
    if t > ds.coverage() {
        return Err(SieveError::Coverage {
            t,
            coverage: ds.coverage(),
        });
    }
    assert!(x >= 2.0);
    let ln_x = x.ln();
    let mut acc = NeumaierSum::new();
    for z in ds.zeros() {
        if z.gamma <= t {
            acc.add(((z.beta - 1.0) * ln_x).exp() / z.gamma);
        }
    }
    let zero_sum = 2.0 * acc.value();
    let remainder = ln_x * ln_x / t;
    Ok(ZeroSumBound {
        x,
        t,
        zero_sum,
        remainder,
        total: zero_sum + remainder,
    })
}

/// Both the full sum and the sum restricted to gamma > h, since the
/// low-ordinate cutoff constant is unspecified.
pub fn zero_sum_bound_split(
    ds: &ZeroDataset,
    x: f64,
    t: f64,
    h: f64,
) -> Result<(ZeroSumBound, ZeroSumBound), SieveError> {
    let full = zero_sum_bound(ds, x, t)?;
    let tail_ds = ds.filtered_above(h);
    let tail = zero_sum_bound(&tail_ds, x, t)?;
    Ok((full, tail))
}

/// Envelope with a region's own constant: exp(55 a0) exp(-omega_closed(x)).
pub fn envelope_with(region: &ZeroFreeRegion, x: f64) -> f64 {
    (55.0 * region.a0()).exp() * (-omega_closed_logx_with(region.a0(), x.ln())).exp()
}

/// Compare the sieved Delta(x) against the envelope. At desk scale the
/// envelope is far from tight; the note says so.
pub fn envelope_compare(x: u64, region: &ZeroFreeRegion) -> Result<BoundAuditRecord, SieveError> {
    let summary = sieve_summary(x)?;
    let bound = envelope_with(region, x as f64);
    Ok(
        BoundAuditRecord::checked("delta-vs-envelope", summary.delta, bound)
            .with_input("x", x)
            .with_input("psi", summary.psi)
            .with_note("non-asymptotic sanity check"),
    )
}

/// Cross-validate psi(x) = sum_k theta(x^(1/k)) (finite sum, k <= log2 x)
/// to 1e-6 relative. The left side comes from positional prime-power
/// marking, the right from independent theta evaluations at integer roots.
pub fn psi_theta_consistency(x: u64) -> Result<BoundAuditRecord, SieveError> {
    if x < 4 {
        return Err(SieveError::TooSmall(x));
    }
    let lhs = sieve_summary(x)?.psi;
    let mut rhs = NeumaierSum::new();
    let mut k = 1u32;
    loop {
        let r = integer_kth_root(x, k);
        if r < 2 {
            break;
        }
        rhs.add(sieve_summary(r)?.theta);
        k += 1;
    }
    let diff = (lhs - rhs.value()).abs() / lhs.abs().max(1.0);
    Ok(
        BoundAuditRecord::checked("psi-theta-consistency", diff, 1e-6)
            .with_input("x", x)
            .with_input("psi", lhs),
    )
}
