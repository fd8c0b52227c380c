//! Zero-free-region functionals and the omega(x) minimization.
//!
//! nu(t) = a0 (log t)^(-2/3) (log log t)^(-1/3) is the width of the
//! Korobov-Vinogradov-shaped zero-free region; omega(x) is the minimum over t
//! of nu(t) log x + log t, which governs the prime-counting error envelope
//! exp(-omega(x)). Everything here works in u = log t coordinates so that x
//! up to e^(10^9) stays representable.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Best known zero-free-region constant (reciprocal of 48.0718).
pub const A0: f64 = 1.0 / 48.0718;

/// Exponential-sum constant D in S(N,t) <= 8.7979 N^(1 - 1/(D lambda^2)).
pub const D_EXP_SUM: f64 = 132.94357;

/// Default ordinate below which nu is not applied.
pub const T_MIN_DEFAULT: f64 = 1e3;

#[derive(Debug, Error, PartialEq)]
pub enum RegionError {
    #[error("t = {t} is below the region threshold t_min = {t_min}")]
    BelowThreshold { t: f64, t_min: f64 },
    #[error("invalid region parameters: {0}")]
    BadParameters(String),
    #[error("log x = {log_x} leaves no room above log t_min = {log_t_min}")]
    EmptyBracket { log_x: f64, log_t_min: f64 },
    #[error("objective is still decreasing at the right edge; no minimum bracketed")]
    NoBracket,
}

/// A zero-free region nu(t) = a0 (log t)^(-2/3)(log log t)^(-1/3), t >= t_min.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ZeroFreeRegion {
    a0: f64,
    t_min: f64,
}

impl Default for ZeroFreeRegion {
    fn default() -> Self {
        Self {
            a0: A0,
            t_min: T_MIN_DEFAULT,
        }
    }
}

impl ZeroFreeRegion {
    /// a0 = 0 is admitted as a degenerate flat region so that minimizer
    /// plumbing can be exercised; real use has a0 > 0.
    pub fn new(a0: f64, t_min: f64) -> Result<Self, RegionError> {
        if !(a0 >= 0.0) || !a0.is_finite() {
            return Err(RegionError::BadParameters(format!("a0 = {a0}")));
        }
        if !(t_min >= 3.0) || !t_min.is_finite() {
            return Err(RegionError::BadParameters(format!(
                "t_min = {t_min}, need t_min >= 3"
            )));
        }
        Ok(Self { a0, t_min })
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn t_min(&self) -> f64 {
        self.t_min
    }

    /// nu evaluated at an ordinate t >= t_min.
    pub fn nu(&self, t: f64) -> Result<f64, RegionError> {
        if t < self.t_min {
            return Err(RegionError::BelowThreshold {
                t,
                t_min: self.t_min,
            });
        }
        Ok(self.nu_log(t.ln()))
    }

    /// nu as a function of u = log t (no threshold check; u > 1 required
    /// for log log t to be positive).
    #[inline]
    pub fn nu_log(&self, u: f64) -> f64 {
        debug_assert!(u > 1.0);
        self.a0 * u.powf(-2.0 / 3.0) * u.ln().powf(-1.0 / 3.0)
    }

    /// The 100-fold widened functional nu1 = 100 nu used to split the strip
    /// at sigma0 = 1 - nu1(T).
    pub fn nu1(&self, t: f64) -> Result<f64, RegionError> {
        Ok(100.0 * self.nu(t)?)
    }
}

/// Result of the omega(x) minimization, held in log coordinates so that
/// log x up to 1e9 (x = e^(1e9)) is representable.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OmegaResult {
    pub log_x: f64,
    pub log_t_star: f64,
    pub omega_numeric: f64,
    pub omega_closed: f64,
    /// (omega_numeric - omega_closed) / omega_closed; the closed form is
    /// asymptotic, so this gap is reported, never asserted small.
    pub rel_gap: f64,
    /// True when the minimum sits on the t_min boundary rather than at an
    /// interior stationary point.
    pub at_boundary: bool,
}

impl OmegaResult {
    /// x as a plain float; +inf when log x exceeds f64 range.
    pub fn x(&self) -> f64 {
        self.log_x.exp()
    }

    /// t* as a plain float; +inf when log t* exceeds f64 range.
    pub fn t_star(&self) -> f64 {
        self.log_t_star.exp()
    }

    /// t* formatted in scientific notation from log10, safe for huge values.
    pub fn t_star_display(&self) -> String {
        let log10 = self.log_t_star / std::f64::consts::LN_10;
        if log10 < 300.0 {
            format!("{:.6e}", self.log_t_star.exp())
        } else {
            let exp = log10.floor();
            format!("{:.6}e{}", 10f64.powf(log10 - exp), exp as i64)
        }
    }
}

/// Closed-form coefficient d(a0) = (5^6 a0^3 / (2^2 3^4))^(1/5).
pub fn omega_closed_coeff(a0: f64) -> f64 {
    (15625.0 * a0.powi(3) / 324.0).powf(0.2)
}

/// Asymptotic closed form d (log x)^(3/5) (log log x)^(-1/5) for log x = l.
pub fn omega_closed_logx_with(a0: f64, log_x: f64) -> f64 {
    assert!(log_x > 1.0, "need log log x > 0");
    omega_closed_coeff(a0) * log_x.powf(0.6) * log_x.ln().powf(-0.2)
}

/// Closed form at the default constant, taking x itself.
pub fn omega_closed(x: f64) -> f64 {
    omega_closed_logx_with(A0, x.ln())
}

/// Closed form at the default constant, taking log x directly.
pub fn omega_closed_logx(log_x: f64) -> f64 {
    omega_closed_logx_with(A0, log_x)
}

/// g(t) = nu(t) log x + log t expressed in u = log t.
#[inline]
fn objective(region: &ZeroFreeRegion, log_x: f64, u: f64) -> f64 {
    region.nu_log(u) * log_x + u
}

/// Minimize g over t in [t_min, x], driving from x.
pub fn omega_numeric(
    region: &ZeroFreeRegion,
    x: f64,
    tolerance: f64,
) -> Result<OmegaResult, RegionError> {
    omega_numeric_logx(region, x.ln(), tolerance)
}

/// Minimize g over u = log t in [log t_min, log x]. Golden-section search
/// followed by a finite-difference Newton polish; the polish is what pushes
/// the first-order residual below the plain golden-section noise floor
/// sqrt(eps g / g'' ).
pub fn omega_numeric_logx(
    region: &ZeroFreeRegion,
    log_x: f64,
    tolerance: f64,
) -> Result<OmegaResult, RegionError> {
    if !(tolerance > 0.0) {
        return Err(RegionError::BadParameters(format!(
            "tolerance = {tolerance}"
        )));
    }
    if !(log_x.ln() > 0.0) {
        return Err(RegionError::BadParameters(format!(
            "log x = {log_x}, need log log x > 0"
        )));
    }
    let lo = region.t_min.ln();
    let hi = log_x;
    if hi <= lo {
        return Err(RegionError::EmptyBracket {
            log_x,
            log_t_min: lo,
        });
    }
    let g = |u: f64| objective(region, log_x, u);

    // edge probes decide between boundary minimum, interior minimum, and failure
    let probe = 1e-6 * (hi - lo).min(1.0);
    let (u_star, at_boundary) = if g(lo + probe) >= g(lo) {
        // rises immediately from the left edge: constrained minimum at t_min
        (lo, true)
    } else if g(hi) <= g(hi - probe) {
        // still descending at the right edge: no interior minimum to certify
        return Err(RegionError::NoBracket);
    } else {
        let u0 = golden_section(&g, lo, hi, tolerance);
        (fd_newton_polish(&g, u0, lo, hi), false)
    };

    let omega = g(u_star);
    let closed = if region.a0 > 0.0 {
        omega_closed_logx_with(region.a0, log_x)
    } else {
        0.0
    };
    let rel_gap = if closed > 0.0 {
        (omega - closed) / closed
    } else {
        f64::NAN
    };
    Ok(OmegaResult {
        log_x,
        log_t_star: u_star,
        omega_numeric: omega,
        omega_closed: closed,
        rel_gap,
        at_boundary,
    })
}

fn golden_section(g: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = g(c);
    let mut fd = g(d);
    // the width floor keeps the loop from chasing sub-ulp intervals
    for _ in 0..300 {
        let floor = 8.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0);
        if b - a <= tol.max(floor) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = g(d);
        }
    }
    0.5 * (a + b)
}

fn fd_newton_polish(g: &dyn Fn(f64) -> f64, mut u: f64, lo: f64, hi: f64) -> f64 {
    for _ in 0..8 {
        let h = 3e-6 * u.abs().max(1.0);
        let f0 = g(u);
        let fp = g(u + h);
        let fm = g(u - h);
        let g1 = (fp - fm) / (2.0 * h);
        let g2 = (fp - 2.0 * f0 + fm) / (h * h);
        if !(g2 > 0.0) {
            break;
        }
        let next = (u - g1 / g2).clamp(lo, hi);
        if (next - u).abs() <= 1e-14 * u.abs().max(1.0) {
            u = next;
            break;
        }
        u = next;
    }
    u
}

/// Central-difference residual |dg/du| at u = log t*, which equals
/// |g'(t*)| t* in the t variable.
pub fn omega_first_order_residual(region: &ZeroFreeRegion, log_x: f64, log_t_star: f64) -> f64 {
    let g = |u: f64| objective(region, log_x, u);
    let h = 3e-6 * log_t_star.abs().max(1.0);
    ((g(log_t_star + h) - g(log_t_star - h)) / (2.0 * h)).abs()
}

/// Envelope exp(55 a0) exp(-omega_closed(x)) at the default constant.
pub fn envelope(x: f64) -> f64 {
    envelope_logx(x.ln())
}

pub fn envelope_logx(log_x: f64) -> f64 {
    (55.0 * A0).exp() * (-omega_closed_logx(log_x)).exp()
}

/// One recorded inequality between schedule constants.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstraintFlag {
    pub name: String,
    pub satisfied: bool,
    pub lhs: f64,
    pub rhs: f64,
    /// Present when a violation is an arithmetic consequence of another
    /// violated flag rather than an independent one.
    pub dependent_on: Option<String>,
}

/// The explicit parameter choices c_u .. c_y together with every inequality
/// the construction imposes on them, each evaluated and recorded. Violations
/// are data, not errors: the stated choice c_w = 9 c_u / 10 contradicts the
/// stated requirement c_w < c_u / 2, and the audit's job is to show that.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParameterSchedule {
    pub a: f64,
    pub d: f64,
    pub c_u: f64,
    pub c_v: f64,
    pub c_w: f64,
    pub c_x: f64,
    pub c_y: f64,
    pub c: f64,
    pub constraint_flags: Vec<ConstraintFlag>,
}

impl ParameterSchedule {
    pub fn violated(&self) -> Vec<&ConstraintFlag> {
        self.constraint_flags
            .iter()
            .filter(|f| !f.satisfied)
            .collect()
    }

    /// Violations that are not downstream consequences of other violations.
    pub fn independent_violations(&self) -> Vec<&ConstraintFlag> {
        self.constraint_flags
            .iter()
            .filter(|f| !f.satisfied && f.dependent_on.is_none())
            .collect()
    }
}

/// Build the explicit schedule for given A > 0, D > 0:
/// c_u = ((8D/3)^(1/3) + 1) A, c_x = 2 c_u + 2A, c_y = c_v = c_u + A,
/// c_w = 9 c_u / 10, c = 6 (8D/3)^(1/3) + 12.
pub fn schedule(a: f64, d: f64) -> ParameterSchedule {
    assert!(a > 0.0 && d > 0.0, "schedule needs A > 0 and D > 0");
    let kappa = (8.0 * d / 3.0).cbrt();
    let c_u = (kappa + 1.0) * a;
    let c_x = 2.0 * c_u + 2.0 * a;
    let c_v = c_u + a;
    let c_y = c_v;
    let c_w = 9.0 * c_u / 10.0;
    let c = 6.0 * kappa + 12.0;

    let mut flags = Vec::new();
    let mut push = |name: &str, satisfied: bool, lhs: f64, rhs: f64, dep: Option<&str>| {
        flags.push(ConstraintFlag {
            name: name.to_string(),
            satisfied,
            lhs,
            rhs,
            dependent_on: dep.map(str::to_string),
        });
    };
    push("U<V (c_u<c_v)", c_u < c_v, c_u, c_v, None);
    push("UV<X (c_u+c_v<c_x)", c_u + c_v < c_x, c_u + c_v, c_x, None);
    push(
        "U<Y<X (c_u<c_y<c_x)",
        c_u < c_y && c_y < c_x,
        c_u,
        c_x,
        None,
    );
    push("W<X (c_w<c_x)", c_w < c_x, c_w, c_x, None);
    push("c_x>c_v+c_u", c_x > c_v + c_u, c_x, c_v + c_u, None);
    push("c_x>c_y>c_u", c_x > c_y && c_y > c_u, c_x, c_u, None);
    push("c_w<c_u/2", c_w < c_u / 2.0, c_w, c_u / 2.0, None);
    let da3 = d * a.powi(3);
    push(
        "c_x^3/(D*A^3)>1",
        c_x.powi(3) / da3 > 1.0,
        c_x.powi(3) / da3,
        1.0,
        None,
    );
    // (c_u - 2 c_w) is negative exactly because c_w<c_u/2 fails; mark the
    // cube flag as dependent so the inconsistency is counted once.
    let cube = (c_u - 2.0 * c_w).powi(3) / da3;
    push(
        "(c_u-2c_w)^3/(D*A^3)>8/3",
        cube > 8.0 / 3.0,
        cube,
        8.0 / 3.0,
        Some("c_w<c_u/2"),
    );

    ParameterSchedule {
        a,
        d,
        c_u,
        c_v,
        c_w,
        c_x,
        c_y,
        c,
        constraint_flags: flags,
    }
}
