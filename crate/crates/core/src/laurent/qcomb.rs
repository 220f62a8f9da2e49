//! q-integers, q-factorials and Gaussian binomial/multinomial coefficients.

use super::LaurentPoly;
use crate::error::{Error, Result};

/// `[n]_q = 1 + q + ... + q^{n-1}`, with `[0]_q = 0`.
pub fn q_int(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::domain(format!("q-integer of negative n = {n}")));
    }
    Ok(LaurentPoly::from_terms((0..n).map(|k| (2 * k, 1))))
}

/// `[n]_q! = [1]_q ⋯ [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::domain(format!("q-factorial of negative n = {n}")));
    }
    let mut acc = LaurentPoly::one();
    for k in 1..=n {
        acc *= &q_int(k)?;
    }
    Ok(acc)
}

/// Gaussian binomial coefficient, built with the Pascal recurrence
/// `[n,k] = [n-1,k-1] + q^k [n-1,k]`.
///
/// Returns the zero polynomial when `k < 0` or `k > n`.
pub fn q_binomial(n: i64, k: i64) -> LaurentPoly {
    if k < 0 || n < 0 || k > n {
        return LaurentPoly::zero();
    }
    let k = k.min(n - k) as usize;
    // row[j] = [r, j] for the current r, j <= k
    let mut row = vec![LaurentPoly::zero(); k + 1];
    row[0] = LaurentPoly::one();
    for r in 1..=n as usize {
        for j in (1..=k.min(r)).rev() {
            let shifted = row[j].shift_doubled(2 * j as i64);
            row[j] = &row[j - 1] + &shifted;
        }
    }
    row[k].clone()
}

/// Gaussian multinomial coefficient `[n]_q! / ∏ [m_j]_q!`, by exact division.
pub fn q_multinomial(n: i64, parts: &[i64]) -> Result<LaurentPoly> {
    if parts.iter().any(|&p| p < 0) {
        return Err(Error::domain("q-multinomial part is negative"));
    }
    let total: i64 = parts.iter().sum();
    if total != n {
        return Err(Error::domain(format!(
            "q-multinomial parts sum to {total}, expected {n}"
        )));
    }
    let mut denom = LaurentPoly::one();
    for &p in parts {
        denom *= &q_factorial(p)?;
    }
    q_factorial(n)?.div_exact(&denom)
}
