//! Exact combinatorics and the orthogonal polynomials used by the state,
//! moment and phase-space code.
//!
//! Integer-valued quantities (factorials, binomials, Stirling numbers) are
//! carried as [`BigCount`] and only converted to `f64` by the caller at the
//! last arithmetic step.

use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact nonnegative integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(pub BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    /// Nearest `f64`; saturates to `f64::INFINITY` beyond the double range.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

const SMALL_FACTORIALS: usize = 21;

fn small_factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `ln(n!)`. Exact integer factorial up to 20, then the recurrence
/// `ln Γ(k+1) = ln Γ(k) + ln k`.
pub fn log_factorial(n: u32) -> f64 {
    let n = n as usize;
    if n < SMALL_FACTORIALS {
        return (small_factorial(n) as f64).ln();
    }
    let mut acc = (small_factorial(SMALL_FACTORIALS - 1) as f64).ln();
    for k in SMALL_FACTORIALS..=n {
        acc += (k as f64).ln();
    }
    acc
}

/// `ln(n! / (n-k)!)`, summed over the `k` factors directly. Requires `k <= n`.
pub fn log_falling(n: u32, k: u32) -> f64 {
    debug_assert!(k <= n);
    ((n - k + 1)..=n).map(|j| (j as f64).ln()).sum()
}

pub fn factorial(n: u32) -> BigCount {
    BigCount((1..=n as u64).fold(BigUint::one(), |acc, k| acc * k))
}

/// `n! / (n-k)!`, zero when `k > n`.
pub fn falling_factorial(n: u32, k: u32) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    BigCount(((n - k + 1) as u64..=n as u64).fold(BigUint::one(), |acc, j| acc * j))
}

/// `(n+k)! / n!`.
pub fn rising_factorial(n: u32, k: u32) -> BigCount {
    falling_factorial(n + k, k)
}

/// Binomial coefficient, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    BigCount(acc)
}

/// Stirling number of the second kind `S2(r, k)`.
pub fn stirling2(r: u32, k: u32) -> Result<BigCount> {
    if k > r {
        return Err(Error::Domain(format!("stirling2 requires k <= r, got r={r}, k={k}")));
    }
    Ok(stirling2_row(r).swap_remove(k as usize))
}

/// Row `S2(r, 0..=r)` of the triangle.
pub fn stirling2_row(r: u32) -> Vec<BigCount> {
    let r = r as usize;
    let mut row = vec![BigUint::one()];
    for n in 1..=r {
        let mut next = vec![BigUint::zero(); n + 1];
        for k in 1..=n {
            let mut v = BigUint::zero();
            if k < n {
                v += &row[k] * k;
            }
            v += &row[k - 1];
            next[k] = v;
        }
        row = next;
    }
    row.into_iter().map(BigCount).collect()
}

/// Bell number `B(r) = Σ_k S2(r, k)`.
pub fn bell(r: u32) -> BigCount {
    BigCount(stirling2_row(r).into_iter().map(|c| c.0).sum())
}

/// Physicists' Hermite polynomial `H_n(x)`.
pub fn hermite(n: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Generalized Laguerre polynomial `L_n^alpha(z)` from the three-term
/// recurrence. Integer `alpha` may be negative as long as `n + alpha >= 0`.
pub fn assoc_laguerre(n: u32, alpha: i32, z: Complex64) -> Result<Complex64> {
    if (n as i64) + (alpha as i64) < 0 {
        return Err(Error::Domain(format!(
            "assoc_laguerre requires n + alpha >= 0, got n={n}, alpha={alpha}"
        )));
    }
    let a = alpha as f64;
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = Complex64::new(1.0 + a, 0.0) - z;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - z) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `L_0^alpha(x) ..= L_{n_max}^alpha(x)` for real `x`, written into `out`.
pub(crate) fn laguerre_column(alpha: u32, x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    let a = alpha as f64;
    out[0] = 1.0;
    if out.len() == 1 {
        return;
    }
    out[1] = 1.0 + a - x;
    for k in 1..out.len() - 1 {
        let kf = k as f64;
        out[k + 1] = ((2.0 * kf + 1.0 + a - x) * out[k] - (kf + a) * out[k - 1]) / (kf + 1.0);
    }
}
