//! Walk counts on the negative `(2,n)` and `(3,n)` torus braids.
//!
//! `f(n) = |SW(σ₁^{-n})|` follows the Fibonacci recurrence and
//! `g(n) = |SW((σ₁^{-1}σ₂^{-1})^n)|` the tribonacci recurrence from `n = 4`.
//! Integer recurrences are the reference values; the closed forms in terms
//! of the characteristic roots are only checked numerically.
//!
//! The published `g` sequence `0, 1, 4, 5, 10, …` is what the positive
//! braid `(σ₁σ₂)^n` gives ([`Family::ThreeMirror`]). Under the crossing and
//! walk conventions that reproduce the `(2,n)` counts, the negative braid
//! has `2, 5, 10, 17, 32, …`: the same recurrence with other initial values.

use std::fmt;

use num_complex::Complex64;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::walks::{count_simple_walks_with, EnumOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `(2,n)`: `σ₁^{-n}`
    Two,
    /// `(3,n)`: `(σ₁^{-1}σ₂^{-1})^n`
    Three,
    /// The mirror `(σ₁σ₂)^n` of [`Family::Three`].
    ThreeMirror,
}

impl Family {
    pub fn from_width(width: u32) -> Result<Family> {
        match width {
            2 => Ok(Family::Two),
            3 => Ok(Family::Three),
            _ => Err(Error::domain(format!("torus family must be 2 or 3, got {width}"))),
        }
    }

    pub fn width(self) -> u32 {
        match self {
            Family::Two => 2,
            Family::Three | Family::ThreeMirror => 3,
        }
    }

    pub fn braid(self, n: u32) -> Result<BraidWord> {
        match self {
            Family::Two => torus2_braid(n),
            Family::Three => torus3_braid(n),
            Family::ThreeMirror => Ok(torus3_braid(n)?.reflect()),
        }
    }

    /// Published count from the integer recurrence (`f` or `g`).
    pub fn closed_form(self, n: u32) -> Result<u128> {
        match self {
            Family::Two => closed_form_f(n),
            Family::Three | Family::ThreeMirror => closed_form_g(n),
        }
    }

    pub fn closed_form_float(self, n: u32) -> Result<f64> {
        match self {
            Family::Two => closed_form_f_float(n),
            Family::Three | Family::ThreeMirror => closed_form_g_float(n),
        }
    }

    // first n where the recurrence is claimed, and its number of terms
    fn recurrence(self) -> (usize, usize) {
        match self {
            Family::Two => (3, 2),
            Family::Three | Family::ThreeMirror => (4, 3),
        }
    }
}

pub fn torus2_braid(n: u32) -> Result<BraidWord> {
    check_n(n)?;
    BraidWord::from_signed(&vec![-1; n as usize])
}

pub fn torus3_braid(n: u32) -> Result<BraidWord> {
    check_n(n)?;
    let word: Vec<i64> = (0..n).flat_map(|_| [-1, -2]).collect();
    BraidWord::from_signed(&word)
}

fn check_n(n: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::domain("torus index n must be at least 1"));
    }
    Ok(())
}

/// `f(1) = 1`, `f(2) = 2`, `f(n) = f(n-1) + f(n-2)`.
pub fn closed_form_f(n: u32) -> Result<u128> {
    check_n(n)?;
    let (mut a, mut b) = (1u128, 2u128);
    for _ in 1..n {
        (a, b) = (b, a.checked_add(b).ok_or_else(|| overflow(n))?);
    }
    Ok(a)
}

/// Tribonacci numbers `0, 1, 1, 2, 4, 7, 13, …` for `n = 0, 1, 2, …`.
pub fn tribonacci(n: u32) -> u128 {
    let (mut a, mut b, mut c) = (0u128, 1u128, 1u128);
    for _ in 0..n {
        (a, b, c) = (b, c, a + b + c);
    }
    a
}

/// `g(1) = 0`, `g(2) = 1`, `g(3) = 4`, then the tribonacci recurrence.
/// Equivalently `g(n) = T(n-1) + 3 T(n-2)` for `n ≥ 2`.
pub fn closed_form_g(n: u32) -> Result<u128> {
    check_n(n)?;
    let (mut a, mut b, mut c) = (0u128, 1u128, 4u128);
    for _ in 1..n {
        let next = a
            .checked_add(b)
            .and_then(|s| s.checked_add(c))
            .ok_or_else(|| overflow(n))?;
        (a, b, c) = (b, c, next);
    }
    Ok(a)
}

fn overflow(n: u32) -> Error {
    Error::domain(format!("count for n = {n} overflows 128 bits"))
}

/// `((5+√5)/10) φⁿ + ((5-√5)/10) ψⁿ`
pub fn closed_form_f_float(n: u32) -> Result<f64> {
    check_n(n)?;
    let s5 = 5f64.sqrt();
    let (phi, psi) = ((1.0 + s5) / 2.0, (1.0 - s5) / 2.0);
    Ok((5.0 + s5) / 10.0 * phi.powi(n as i32) + (5.0 - s5) / 10.0 * psi.powi(n as i32))
}

/// The three roots of `t³ - t² - t - 1` by radicals, real root first.
pub fn tribonacci_roots() -> [Complex64; 3] {
    let s33 = 33f64.sqrt();
    let alpha = (1.0 + (19.0 + 3.0 * s33).cbrt() + (19.0 - 3.0 * s33).cbrt()) / 3.0;
    let disc = Complex64::new(-3.0 * alpha * alpha + 2.0 * alpha + 5.0, 0.0).sqrt();
    let a = Complex64::new(alpha, 0.0);
    [a, (1.0 - a + disc) / 2.0, (1.0 - a - disc) / 2.0]
}

/// `Σ c_r r^{n-1}` over the tribonacci roots with
/// `c_r = (1 + 3/r) / (-r² + 4r - 1)`.
///
/// The exponent is `n - 1`: with `rⁿ` the sum is `g(n+1)`.
pub fn closed_form_g_float(n: u32) -> Result<f64> {
    check_n(n)?;
    let sum: Complex64 = tribonacci_roots()
        .iter()
        .map(|&r| {
            let c = (1.0 + 3.0 / r) / (-r * r + 4.0 * r - 1.0);
            c * r.powi(n as i32 - 1)
        })
        .sum();
    Ok(sum.re)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    pub family: Family,
    /// `(n, |SW|)` for `n = 1..`.
    pub counts: Vec<(u32, u64)>,
    pub recurrence_ok: bool,
    pub closedform_ok: bool,
}

impl SeriesReport {
    fn build(family: Family, counts: Vec<(u32, u64)>) -> SeriesReport {
        let (from, terms) = family.recurrence();
        let values: Vec<u64> = counts.iter().map(|&(_, c)| c).collect();
        let recurrence_ok = (from..=values.len())
            .all(|n| values[n - 1] == values[n - 1 - terms..n - 1].iter().sum::<u64>());
        let closedform_ok = counts.iter().all(|&(n, c)| {
            let exact = family.closed_form(n).ok() == Some(c as u128);
            let float = family
                .closed_form_float(n)
                .map(|x| (x - c as f64).abs() < 1e-6)
                .unwrap_or(false);
            exact && float
        });
        SeriesReport {
            family,
            counts,
            recurrence_ok,
            closedform_ok,
        }
    }
}

/// A series cut short by the enumeration limit.
#[derive(Debug)]
pub struct PartialSeries {
    pub report: SeriesReport,
    pub error: Error,
}

impl fmt::Display for PartialSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (counted up to n = {})", self.error, self.report.counts.len())
    }
}

impl std::error::Error for PartialSeries {}

impl From<PartialSeries> for Error {
    fn from(p: PartialSeries) -> Error {
        p.error
    }
}

pub fn count_series(family: Family, n_max: u32) -> std::result::Result<SeriesReport, PartialSeries> {
    count_series_with(family, n_max, &EnumOptions::default())
}

pub fn count_series_with(
    family: Family,
    n_max: u32,
    opts: &EnumOptions,
) -> std::result::Result<SeriesReport, PartialSeries> {
    let mut counts = Vec::new();
    for n in 1..=n_max {
        let counted = family.braid(n).and_then(|b| count_simple_walks_with(&b, opts));
        match counted {
            Ok(c) => counts.push((n, c)),
            Err(error) => {
                return Err(PartialSeries {
                    report: SeriesReport::build(family, counts),
                    error,
                })
            }
        }
    }
    Ok(SeriesReport::build(family, counts))
}
