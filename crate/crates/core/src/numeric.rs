//! Truncated multiple zeta sums: exact partial sums and floating-point
//! estimates with rigorous error bounds.

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lincomb::{LinComb, Rational};
use crate::shuffle::{double_shuffle_relation, stuffle};
use crate::words::Index;

/// `P_n(k) = Σ_{0<n_1<..<n_m≤n} Π n_i^{-k_i}` for `n = 0..=max`.
pub fn mzv_truncated_prefix(idx: &Index, max: u32) -> Vec<Rational> {
    let len = max as usize + 1;
    let mut cur = vec![Rational::one(); len];
    for &e in idx.parts() {
        let mut next = vec![Rational::zero(); len];
        for n in 1..len {
            let term = &cur[n - 1] / Rational::from_integer(num_traits::pow(num_bigint::BigInt::from(n), e as usize));
            next[n] = &next[n - 1] + term;
        }
        cur = next;
    }
    cur
}

/// Exact `P_N(idx)`.
pub fn mzv_truncated(idx: &Index, n: u32) -> Rational {
    mzv_truncated_prefix(idx, n).pop().expect("nonempty")
}

fn evaluate_truncated(comb: &LinComb<Index>, n: u32) -> Rational {
    comb.iter().map(|(idx, c)| c * mzv_truncated(idx, n)).fold(Rational::zero(), |a, b| a + b)
}

/// `P_N(a) P_N(b) = Σ_σ P_N(σ(a, b))`, exactly.
pub fn verify_truncated_stuffle(a: &Index, b: &Index, n: u32) -> Result<bool> {
    Ok(mzv_truncated(a, n) * mzv_truncated(b, n) == evaluate_truncated(&stuffle(a, b)?, n))
}

/// A floating-point partial sum and a bound on its distance to the full sum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error_bound: f64,
}

/// Kahan-compensated running sum.
#[derive(Default)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// `∫_{t0}^∞ (1 + ln t)^r t^{-k} dt` for `k ≥ 2`. With `L = ln t0` and
/// `c = k - 1`, repeated integration by parts gives
/// `t0^{-c} Σ_{j=0}^{r} r!/(r-j)! (1 + L)^{r-j} / c^{j+1}`.
fn log_power_tail_integral(t0: f64, k: u32, r: u32) -> f64 {
    let c = (k - 1) as f64;
    let one_plus_l = 1.0 + t0.ln();
    let mut total = 0.0;
    let mut falling = 1.0; // r!/(r-j)!
    for j in 0..=r {
        total += falling * one_plus_l.powi((r - j) as i32) / c.powi(j as i32 + 1);
        falling *= (r - j) as f64;
    }
    total * t0.powf(-c)
}

/// Bound on `ζ(idx) - P_N(idx)` for admissible `idx = (k_1..k_m)`.
///
/// Any chain missing from `P_N` has `n_m > N`, and its inner sum over
/// `n_1 < .. < n_{m-1} < n_m` is at most the product of the unordered sums
/// `Σ_{j≤n_m} j^{-k_i}`, each at most `1 + ln n_m` when `k_i = 1` and at most
/// `ζ(2) < 2` otherwise. So the tail is at most
/// `2^s Σ_{n>N} f(n)` with `f(t) = (1 + ln t)^r t^{-k_m}`, `r` the number of
/// inner ones and `s` the number of other inner parts. When `f` is convex on
/// `[N + 1/2, ∞)` each `f(n)` is at most its integral over `[n - 1/2, n + 1/2]`,
/// so the sum is at most the integral from `N + 1/2`. Convexity holds once
/// `k(k+1)(1 + ln t) ≥ (2k+1) r`; otherwise the bound is infinite.
fn tail_bound(idx: &Index, n: u32) -> f64 {
    let k = idx.last();
    let inner = &idx.parts()[..idx.depth() - 1];
    let r = inner.iter().filter(|&&e| e == 1).count() as u32;
    let s = inner.len() as u32 - r;
    let t0 = n as f64 + 0.5;
    let (kf, rf) = (k as f64, r as f64);
    if kf * (kf + 1.0) * (1.0 + t0.ln()) < (2.0 * kf + 1.0) * rf {
        return f64::INFINITY;
    }
    2f64.powi(s as i32) * log_power_tail_integral(t0, k, r)
}

/// Floating partial sum `P_N(idx)` with a sound bound on `|ζ(idx) - value|`.
pub fn mzv_estimate(idx: &Index, n: u32) -> Result<Estimate> {
    if !idx.is_admissible() {
        return Err(Error::NotAdmissible(idx.clone()));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("truncation must be at least 1".into()));
    }
    let len = n as usize + 1;
    let mut cur = vec![1.0f64; len];
    for &e in idx.parts() {
        let mut next = vec![0.0f64; len];
        let mut acc = Kahan::default();
        for j in 1..len {
            acc.add(cur[j - 1] / (j as f64).powi(e as i32));
            next[j] = acc.sum;
        }
        cur = next;
    }
    let value = cur[n as usize];
    // first-order rounding model, doubled: each stage adds relative error at
    // most (k_i + 4)ε from the power, division and compensated sum, plus an
    // nε² second-order term
    let eps = f64::EPSILON;
    let depth = idx.depth() as f64;
    let rel = (idx.weight() as f64 + 4.0 * depth) * eps + depth * n as f64 * eps * eps;
    let rounding = 2.0 * rel * value.abs();
    Ok(Estimate { value, error_bound: tail_bound(idx, n) + rounding })
}

/// Floating value of a linear combination with an accumulated error bound.
pub fn estimate_combination(comb: &LinComb<Index>, n: u32) -> Result<Estimate> {
    let mut value = Kahan::default();
    let mut error = 0.0;
    let mut magnitude = 0.0;
    for (idx, c) in comb.iter() {
        let e = mzv_estimate(idx, n)?;
        let c = c.to_f64().ok_or_else(|| Error::InvalidParameter("coefficient out of range".into()))?;
        value.add(c * e.value);
        error += c.abs() * e.error_bound;
        magnitude += (c * e.value).abs();
    }
    let rounding = 4.0 * comb.len() as f64 * f64::EPSILON * magnitude;
    Ok(Estimate { value: value.sum, error_bound: error + rounding })
}

/// The double shuffle relation of `(a, b)` evaluates to at most
/// `tol + error bound` in absolute value.
pub fn verify_double_shuffle_numeric(a: &Index, b: &Index, n: u32, tol: f64) -> Result<bool> {
    let est = estimate_combination(&double_shuffle_relation(a, b)?, n)?;
    Ok(est.value.abs() <= tol + est.error_bound)
}
