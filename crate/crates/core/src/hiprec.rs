//! Fixed-point decimal arithmetic on big integers.
//!
//! Backs the high-precision (>= 50 digit) evaluation of the toolkit constants
//! (the zero-free-region constant, the omega closed-form coefficient, the
//! exponential-sum constant chain) so the f64 paths can be checked to 12
//! digits without trusting f64 rounding twice. Only the operations those
//! constants need are implemented: add, sub, mul, div, integer n-th root and
//! exp of a small argument.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Sign-magnitude fixed-point decimal: value = +-(mant / 10^scale).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigDec {
    neg: bool,
    mant: BigUint,
    scale: u32,
}

fn pow10(k: u32) -> BigUint {
    BigUint::from(10u32).pow(k)
}

impl BigDec {
    pub fn zero(scale: u32) -> Self {
        Self {
            neg: false,
            mant: BigUint::zero(),
            scale,
        }
    }

    pub fn from_u64(v: u64, scale: u32) -> Self {
        Self {
            neg: false,
            mant: BigUint::from(v) * pow10(scale),
            scale,
        }
    }

    /// Parse a plain decimal literal like "132.94357" or "-0.5".
    pub fn from_decimal_str(s: &str, scale: u32) -> Self {
        let (neg, s) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        assert!(
            frac_part.len() <= scale as usize,
            "literal has more fractional digits than the working scale"
        );
        let digits: String = [int_part, frac_part].concat();
        let mant = digits.parse::<BigUint>().expect("decimal literal")
            * pow10(scale - frac_part.len() as u32);
        Self { neg, mant, scale }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    /// Truncate (toward zero) or extend to a new scale.
    pub fn rescale(&self, scale: u32) -> Self {
        let mant = if scale >= self.scale {
            &self.mant * pow10(scale - self.scale)
        } else {
            &self.mant / pow10(self.scale - scale)
        };
        Self {
            neg: self.neg && !mant.is_zero(),
            mant,
            scale,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            neg: !self.neg && !self.mant.is_zero(),
            mant: self.mant.clone(),
            scale: self.scale,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            neg: false,
            mant: self.mant.clone(),
            scale: self.scale,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let scale = self.scale.max(other.scale);
        let a = self.rescale(scale);
        let b = other.rescale(scale);
        if a.neg == b.neg {
            return Self {
                neg: a.neg,
                mant: a.mant + b.mant,
                scale,
            };
        }
        // opposite signs: subtract smaller magnitude from larger
        if a.mant >= b.mant {
            let mant = a.mant - b.mant;
            Self {
                neg: a.neg && !mant.is_zero(),
                mant,
                scale,
            }
        } else {
            let mant = b.mant - a.mant;
            Self {
                neg: b.neg,
                mant,
                scale,
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let scale = self.scale.max(other.scale);
        let mant = &self.mant * &other.mant;
        let full = Self {
            neg: self.neg != other.neg && !mant.is_zero(),
            mant,
            scale: self.scale + other.scale,
        };
        full.rescale(scale)
    }

    pub fn div(&self, other: &Self, scale: u32) -> Self {
        assert!(!other.is_zero(), "division by zero");
        // result mant = self.mant * 10^(scale + other.scale - self.scale) / other.mant
        let shift = scale + other.scale;
        let numer = if shift >= self.scale {
            &self.mant * pow10(shift - self.scale)
        } else {
            &self.mant / pow10(self.scale - shift)
        };
        let mant = numer / &other.mant;
        Self {
            neg: self.neg != other.neg && !mant.is_zero(),
            mant,
            scale,
        }
    }

    /// Largest fixed-point y with y^n <= self. Requires self > 0.
    pub fn nth_root(&self, n: u32, scale: u32) -> Self {
        assert!(n >= 1 && !self.neg && !self.is_zero());
        let x = self.rescale(scale);
        if n == 1 {
            return x;
        }
        // Newton on mantissas at fixed scale: y <- ((n-1) y + X*10^((n-1)S) / y^(n-1)) / n
        let seed = self.to_f64().powf(1.0 / n as f64);
        let mut y = from_f64_approx(seed, scale).mant;
        if y.is_zero() {
            y = BigUint::one();
        }
        let shift = pow10((n - 1) * scale);
        let numer = &x.mant * &shift;
        let nm1 = BigUint::from(n - 1);
        let nn = BigUint::from(n);
        let mut prev = BigUint::zero();
        for _ in 0..64 {
            let yp = y.pow(n - 1);
            let next = (&nm1 * &y + &numer / yp) / &nn;
            if next == y || next == prev {
                break;
            }
            prev = std::mem::replace(&mut y, next);
        }
        // settle on the floor root: largest y with y^n <= x.mant * 10^((n-1)S)
        while y.pow(n) > numer {
            y -= BigUint::one();
        }
        while (&y + BigUint::one()).pow(n) <= numer {
            y += BigUint::one();
        }
        Self {
            neg: false,
            mant: y,
            scale,
        }
    }

    /// exp(self) by Taylor series; the argument must lie in [0, 8].
    pub fn exp(&self, scale: u32) -> Self {
        assert!(!self.neg, "exp implemented for nonnegative arguments");
        let guard = scale + 12;
        let x = self.rescale(guard);
        assert!(
            x.mant <= BigUint::from(8u32) * pow10(guard),
            "exp argument out of the supported range"
        );
        let one = pow10(guard);
        let mut term = one.clone();
        let mut acc = one.clone();
        let mut k = 1u32;
        while !term.is_zero() && k < 4000 {
            term = &term * &x.mant / (&one * BigUint::from(k));
            acc += &term;
            k += 1;
        }
        Self {
            neg: false,
            mant: acc,
            scale: guard,
        }
        .rescale(scale)
    }

    pub fn to_f64(&self) -> f64 {
        // split mantissa to stay within f64 range for large scales
        let s = self.mant.to_string();
        let v = if s.len() > 30 {
            let head: f64 = s[..30].parse().unwrap();
            head * 10f64.powi(s.len() as i32 - 30 - self.scale as i32)
        } else {
            self.mant.to_f64().unwrap_or(f64::INFINITY) * 10f64.powi(-(self.scale as i32))
        };
        if self.neg {
            -v
        } else {
            v
        }
    }

    /// Decimal string with every stored fractional digit (truncated, not rounded).
    pub fn to_decimal_string(&self) -> String {
        let digits = self.mant.to_string();
        let scale = self.scale as usize;
        let (int_part, frac_part) = if digits.len() > scale {
            let split = digits.len() - scale;
            (digits[..split].to_string(), digits[split..].to_string())
        } else {
            ("0".to_string(), format!("{digits:0>scale$}"))
        };
        let sign = if self.neg { "-" } else { "" };
        if frac_part.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }
}

fn from_f64_approx(v: f64, scale: u32) -> BigDec {
    assert!(v.is_finite() && v >= 0.0);
    // 15 significant digits is all an f64 seed carries
    let s = format!("{v:.15e}");
    let (mant_s, exp_s) = s.split_once('e').unwrap();
    let exp: i32 = exp_s.parse().unwrap();
    let m = BigDec::from_decimal_str(mant_s, scale.max(20));
    let ten = BigDec::from_u64(10, 0);
    let mut out = m;
    if exp >= 0 {
        for _ in 0..exp {
            out = out.mul(&ten);
        }
    } else {
        for _ in 0..(-exp) {
            out = out.div(&ten, scale.max(20));
        }
    }
    out.rescale(scale)
}

/// Scale of the published constants; every printed digit is correct.
pub const ORACLE_SCALE: u32 = 60;

/// Internal headroom. Fixed-point truncation plus the leading zeros of small
/// intermediates (a0^3 ~ 9e-6) cost a handful of trailing digits, so the
/// chain runs wider and truncates only at the end.
const GUARD: u32 = 12;

fn a0_guarded(scale: u32) -> BigDec {
    let denom = BigDec::from_decimal_str("48.0718", scale);
    BigDec::from_u64(1, scale).div(&denom, scale)
}

/// The zero-free-region constant 1/48.0718 at the oracle scale.
pub fn const_a0() -> BigDec {
    a0_guarded(ORACLE_SCALE + GUARD).rescale(ORACLE_SCALE)
}

/// Closed-form omega coefficient (5^6 a0^3 / 324)^(1/5).
pub fn const_d() -> BigDec {
    let scale = ORACLE_SCALE + GUARD;
    let a0 = a0_guarded(scale);
    let a03 = a0.mul(&a0).mul(&a0);
    let num = a03.mul(&BigDec::from_u64(15625, scale));
    let ratio = num.div(&BigDec::from_u64(324, scale), scale);
    ratio.nth_root(5, scale).rescale(ORACLE_SCALE)
}

/// Zero-density exponent constant 6 (8 D / 3)^(1/3) + 12 for D = 132.94357.
pub fn const_c() -> BigDec {
    let scale = ORACLE_SCALE + GUARD;
    let d = BigDec::from_decimal_str("132.94357", scale);
    let arg = d
        .mul(&BigDec::from_u64(8, scale))
        .div(&BigDec::from_u64(3, scale), scale);
    let root = arg.nth_root(3, scale);
    root.mul(&BigDec::from_u64(6, scale))
        .add(&BigDec::from_u64(12, scale))
        .rescale(ORACLE_SCALE)
}

/// exp(55 a0), the envelope prefactor.
pub fn const_exp55a0() -> BigDec {
    let scale = ORACLE_SCALE + GUARD;
    a0_guarded(scale)
        .mul(&BigDec::from_u64(55, scale))
        .exp(scale)
        .rescale(ORACLE_SCALE)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let x = BigDec::from_decimal_str("48.0718", 10);
        assert_eq!(x.to_decimal_string(), "48.0718000000");
        assert!((x.to_f64() - 48.0718).abs() < 1e-12);
        let y = BigDec::from_decimal_str("-0.25", 4);
        assert_eq!(y.to_decimal_string(), "-0.2500");
    }

    #[test]
    fn field_ops() {
        let a = BigDec::from_decimal_str("1.5", 30);
        let b = BigDec::from_decimal_str("0.75", 30);
        assert!((a.add(&b).to_f64() - 2.25).abs() < 1e-14);
        assert!((a.sub(&b).to_f64() - 0.75).abs() < 1e-14);
        assert!((b.sub(&a).to_f64() + 0.75).abs() < 1e-14);
        assert!((a.mul(&b).to_f64() - 1.125).abs() < 1e-14);
        assert!((a.div(&b, 30).to_f64() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn sqrt_two() {
        let two = BigDec::from_u64(2, 60);
        let r = two.nth_root(2, 60);
        let err = r.mul(&r).sub(&two).abs();
        assert!(err.to_f64() < 1e-58);
        assert!((r.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn exp_one_is_e() {
        let one = BigDec::from_u64(1, 60);
        let e = one.exp(60);
        assert!((e.to_f64() - std::f64::consts::E).abs() < 1e-15);
        // 50-digit reference for e
        let e50 = "2.71828182845904523536028747135266249775724709369995";
        let want = BigDec::from_decimal_str(e50, 60);
        assert!(e.sub(&want).abs().to_f64() < 1e-49);
    }

    #[test]
    fn integer_literal_and_exp_zero() {
        let x = BigDec::from_decimal_str("42", 6);
        assert_eq!(x.to_decimal_string(), "42.000000");
        let one = BigDec::zero(30).exp(30);
        assert!((one.to_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fifth_root_of_two() {
        let two = BigDec::from_u64(2, 60);
        let r = two.nth_root(5, 60);
        assert!((r.to_f64() - 2f64.powf(0.2)).abs() < 1e-15);
        let back = r.mul(&r).mul(&r).mul(&r).mul(&r);
        assert!(back.sub(&two).abs().to_f64() < 1e-57);
    }

    #[test]
    fn oracle_constants_match_f64_paths() {
        let a0 = const_a0().to_f64();
        assert!((a0 - 1.0 / 48.0718).abs() < 1e-16);
        let d = const_d();
        assert!((d.to_f64() - 0.212579202120942).abs() < 1e-13);
        let c = const_c();
        assert!((c.to_f64() - 54.4648838084563).abs() < 1e-11);
        let p = const_exp55a0();
        assert!((p.to_f64() - 3.13968324559146).abs() < 1e-13);
    }
}
