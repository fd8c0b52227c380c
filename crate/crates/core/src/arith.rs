//! Shared elementary arithmetic tables.
//!
//! A single linear sieve supplies the smallest-prime-factor, Mobius, von
//! Mangoldt, Euler phi and divisor-count tables used across the weight,
//! mollifier and lcm-sum modules, so that every module draws its arithmetic
//! from one source.

/// Tables indexed 0..=limit. Index 0 is a filler; index 1 is the unit.
pub struct SieveTables {
    pub limit: usize,
    /// Smallest prime factor; `spf[1] = 1`.
    pub spf: Vec<u32>,
    /// Mobius function, in {-1, 0, 1}.
    pub mu: Vec<i8>,
    /// Von Mangoldt: log p at prime powers p^k, else 0.
    pub lambda: Vec<f64>,
    /// Euler totient.
    pub phi: Vec<u32>,
    /// Number of divisors.
    pub divcount: Vec<u32>,
    /// Primes up to limit, ascending.
    pub primes: Vec<u32>,
}

impl SieveTables {
    /// Linear sieve to `limit` (inclusive). O(limit) time and memory.
    pub fn build(limit: usize) -> Self {
        assert!(limit >= 1, "sieve limit must be at least 1");
        let n = limit + 1;
        let mut spf = vec![0u32; n];
        let mut mu = vec![0i8; n];
        let mut phi = vec![0u32; n];
        // exponent of spf in i, and divisor count, carried through the recurrence
        let mut exp = vec![0u8; n];
        let mut divcount = vec![0u32; n];
        let mut primes: Vec<u32> = Vec::new();
        spf[1] = 1;
        mu[1] = 1;
        phi[1] = 1;
        divcount[1] = 1;
        for i in 2..n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                mu[i] = -1;
                phi[i] = (i - 1) as u32;
                exp[i] = 1;
                divcount[i] = 2;
                primes.push(i as u32);
            }
            for &p in &primes {
                let p = p as usize;
                if p > spf[i] as usize || i * p > limit {
                    break;
                }
                let ip = i * p;
                spf[ip] = p as u32;
                if spf[i] as usize == p {
                    mu[ip] = 0;
                    phi[ip] = phi[i] * p as u32;
                    exp[ip] = exp[i] + 1;
                    divcount[ip] = divcount[i] / (exp[i] as u32 + 1) * (exp[i] as u32 + 2);
                } else {
                    mu[ip] = -mu[i];
                    phi[ip] = phi[i] * (p - 1) as u32;
                    exp[ip] = 1;
                    divcount[ip] = divcount[i] * 2;
                }
            }
        }
        // Lambda from spf: n is a prime power iff dividing out spf repeatedly
        // reaches 1 without meeting a second prime.
        let mut lambda = vec![0.0f64; n];
        for i in 2..n {
            let p = spf[i] as usize;
            let mut m = i;
            while m % p == 0 {
                m /= p;
            }
            if m == 1 {
                lambda[i] = (p as f64).ln();
            }
        }
        Self {
            limit,
            spf,
            mu,
            lambda,
            phi,
            divcount,
            primes,
        }
    }

    #[inline]
    pub fn mu_i(&self, n: usize) -> f64 {
        self.mu[n] as f64
    }
}

/// Exact integer k-th root: largest r with r^k <= x.
pub fn integer_kth_root(x: u64, k: u32) -> u64 {
    assert!(k >= 1);
    if k == 1 || x <= 1 {
        return x;
    }
    let mut r = (x as f64).powf(1.0 / k as f64).round() as u64;
    // float seed can be off by one either way
    while r > 0 && pow_checked(r, k).map_or(true, |v| v > x) {
        r -= 1;
    }
    while pow_checked(r + 1, k).map_or(false, |v| v <= x) {
        r += 1;
    }
    r
}

fn pow_checked(base: u64, k: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Prefix harmonic numbers `H[0] = 0`, `H[m]` = sum of 1/n for n <= m, compensated.
pub fn harmonic_prefix(limit: usize) -> Vec<f64> {
    let mut h = Vec::with_capacity(limit + 1);
    h.push(0.0);
    let mut acc = crate::sum::NeumaierSum::new();
    for n in 1..=limit {
        acc.add(1.0 / n as f64);
        h.push(acc.value());
    }
    h
}
