//! Exact Laurent polynomials in `q^{1/2}` with big-integer coefficients.
//!
//! Exponents are stored doubled, so `q^{1/2}` has key `1` and `q` has key `2`.

mod qcomb;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use qcomb::{q_binomial, q_factorial, q_int, q_multinomial};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    // doubled exponent -> nonzero coefficient
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(1, 0)
    }

    /// `coeff · q^{doubled_exp / 2}`.
    pub fn monomial(coeff: impl Into<BigInt>, doubled_exp: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(doubled_exp, coeff.into());
        p
    }

    /// `q^k` for an integer `k`.
    pub fn q_pow(k: i64) -> LaurentPoly {
        LaurentPoly::monomial(1, 2 * k)
    }

    /// `1 - q^k`.
    pub fn one_minus_q_pow(k: i64) -> LaurentPoly {
        let mut p = LaurentPoly::one();
        p.add_term(2 * k, BigInt::from(-1));
        p
    }

    /// Builds a polynomial from `(doubled exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> LaurentPoly
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Integer coefficients of `q^0, q^1, ...` (convenience for tests and docs).
    pub fn from_coeffs(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_terms(coeffs.iter().enumerate().map(|(k, &c)| (2 * k as i64, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// `(doubled exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, doubled_exp: i64) -> BigInt {
        self.terms.get(&doubled_exp).cloned().unwrap_or_default()
    }

    pub fn min_doubled_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_doubled_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when every exponent is an integer power of `q`.
    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Multiplies by `q^{doubled / 2}`.
    pub fn shift_doubled(&self, doubled: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + doubled, c.clone())).collect(),
        }
    }

    /// Multiplies by `±1`.
    pub fn scale_sign(self, negative: bool) -> LaurentPoly {
        if negative {
            -self
        } else {
            self
        }
    }

    /// Substitutes `q ↦ q^{-1}`.
    pub fn invert_q(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Exact value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Value at `q = -1` for polynomials with integer exponents.
    pub fn eval_at_minus_one(&self) -> Option<BigInt> {
        if !self.has_integer_exponents() {
            return None;
        }
        Some(
            self.terms
                .iter()
                .map(|(&e, c)| if (e / 2) % 2 == 0 { c.clone() } else { -c })
                .sum(),
        )
    }

    /// Numeric value at `z`, with `q^{1/2}` taken as the principal square root.
    pub fn eval_complex(&self, z: Complex64) -> Result<Complex64> {
        if z == Complex64::zero() {
            return Err(Error::domain("evaluation point q = 0"));
        }
        let root = z.sqrt();
        let mut acc = Complex64::zero();
        for (&e, c) in &self.terms {
            let c = c.to_f64().unwrap_or(f64::NAN);
            acc += root.powi(e as i32) * c;
        }
        Ok(acc)
    }

    /// Exact quotient by `divisor`, which must divide `self` and whose
    /// extreme coefficients must be `±1`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (lo_d, hi_d) = match (divisor.min_doubled_exp(), divisor.max_doubled_exp()) {
            (Some(l), Some(h)) => (l, h),
            _ => return Err(Error::domain("division by the zero polynomial")),
        };
        let lead = divisor.terms[&hi_d].clone();
        if !lead.abs().is_one() {
            return Err(Error::domain("divisor must have a unit leading coefficient"));
        }
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(hi) = rem.max_doubled_exp() {
            let lo = rem.min_doubled_exp().unwrap();
            if hi - lo < hi_d - lo_d {
                break;
            }
            let c = &rem.terms[&hi] * &lead;
            let e = hi - hi_d;
            let step = LaurentPoly::monomial(c, e);
            rem -= &(&step * divisor);
            quot += &step;
        }
        if !rem.is_zero() {
            return Err(Error::domain("polynomial division is not exact"));
        }
        Ok(quot)
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Canonical rendering: ascending exponents, `q^k` for integers and
/// `q^(k/2)` for halves, e.g. `-q^-4 + q^-3 + q^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let var = match e {
                0 => String::new(),
                2 => "q".to_string(),
                e if e % 2 == 0 => format!("q^{}", e / 2),
                e => format!("q^({e}/2)"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}{var}")?;
            }
        }
        Ok(())
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> LaurentPoly {
        LaurentPoly::monomial(c, 0)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}
