//! Closed-form colored Jones polynomials for `5_2`, `6_1` and `7_2`.
//!
//! Each is a finite sum over stacks `B^k A^{n-k}` (two walks) or
//! `C^{n-m} B^{m-k} A^k` (three walks) with the crossing evaluations
//! written out by hand. They serve as references for the engine.
//!
//! The published `5_2` sum carries a factor `∏_{i=1}^{n-k} (1 - q^{n+i-N})`
//! for the jumps at crossing 1. The evaluation lemma applied to the local
//! word `(b c)^k a^{n-k}` gives `∏_{i=1}^{n-k} (1 - q^{k+i-N})` instead, and
//! only the latter agrees with the engine. Both are kept, see [`Variant`].

use std::fmt;
use std::str::FromStr;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::laurent::{q_binomial, q_multinomial, LaurentPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// The formula exactly as published.
    Verbatim,
    /// Re-derived from the evaluation lemma where the published form differs.
    Corrected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedFormKnot {
    K5_2,
    K6_1,
    K7_2,
}

impl ClosedFormKnot {
    pub const ALL: [ClosedFormKnot; 3] = [ClosedFormKnot::K5_2, ClosedFormKnot::K6_1, ClosedFormKnot::K7_2];

    /// The braid word whose walks the closed form sums over.
    pub fn braid(self) -> BraidWord {
        let word: &[i64] = match self {
            ClosedFormKnot::K5_2 => &[-2, 1, 2, 2, 2, 1],
            ClosedFormKnot::K6_1 => &[1, 2, -1, -3, 2, -3, 1],
            ClosedFormKnot::K7_2 => &[1, 2, 3, 3, 3, -1, 2, 1, -3],
        };
        BraidWord::from_signed(word).unwrap()
    }

    pub fn eval(self, n: u32, variant: Variant) -> Result<LaurentPoly> {
        if n < 2 {
            return Err(Error::domain(format!("color N = {n} must be at least 2")));
        }
        let n = n as i64;
        Ok(match self {
            ClosedFormKnot::K5_2 => five_two(n, variant),
            ClosedFormKnot::K6_1 => six_one(n),
            ClosedFormKnot::K7_2 => seven_two(n),
        })
    }

    /// Whether the two variants are different formulas for this knot.
    pub fn has_correction(self) -> bool {
        self == ClosedFormKnot::K5_2
    }
}

impl fmt::Display for ClosedFormKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosedFormKnot::K5_2 => "5_2",
            ClosedFormKnot::K6_1 => "6_1",
            ClosedFormKnot::K7_2 => "7_2",
        })
    }
}

impl FromStr for ClosedFormKnot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "5_2" => Ok(ClosedFormKnot::K5_2),
            "6_1" => Ok(ClosedFormKnot::K6_1),
            "7_2" => Ok(ClosedFormKnot::K7_2),
            _ => Err(Error::domain(format!("no closed form for {s:?}; expected 5_2, 6_1 or 7_2"))),
        }
    }
}

pub fn cjp_5_2(n: u32, variant: Variant) -> Result<LaurentPoly> {
    ClosedFormKnot::K5_2.eval(n, variant)
}

pub fn cjp_6_1(n: u32, variant: Variant) -> Result<LaurentPoly> {
    ClosedFormKnot::K6_1.eval(n, variant)
}

pub fn cjp_7_2(n: u32, variant: Variant) -> Result<LaurentPoly> {
    ClosedFormKnot::K7_2.eval(n, variant)
}

fn q(k: i64) -> LaurentPoly {
    LaurentPoly::q_pow(k)
}

/// `∏_{i=1}^{count} (1 - q^{offset + i})`
fn prod(count: i64, offset: i64) -> LaurentPoly {
    (1..=count).fold(LaurentPoly::one(), |acc, i| &acc * &LaurentPoly::one_minus_q_pow(offset + i))
}

/// `∏_{i=1}^{count} (1 - q^{N - i})`
fn prod_down(count: i64, n: i64) -> LaurentPoly {
    (1..=count).fold(LaurentPoly::one(), |acc, i| &acc * &LaurentPoly::one_minus_q_pow(n - i))
}

fn five_two(nn: i64, variant: Variant) -> LaurentPoly {
    let mut total = LaurentPoly::zero();
    for n in 0..nn {
        let common = prod_down(n, nn);
        for k in 0..=n {
            let jumps = match variant {
                Variant::Verbatim => prod(n - k, n - nn),
                Variant::Corrected => prod(n - k, k - nn),
            };
            let term = &(&q_binomial(n, k) * &q(n * nn + k * (k + 1))) * &(&common * &jumps);
            total += &term;
        }
    }
    total.shift_doubled(2 * (nn - 1))
}

fn trinomial(n: i64, m: i64, k: i64) -> LaurentPoly {
    q_multinomial(n, &[n - m, m - k, k]).expect("parts sum to n")
}

fn six_one(nn: i64) -> LaurentPoly {
    let mut total = LaurentPoly::zero();
    for n in 0..nn {
        let common = prod(n, -nn);
        for m in 0..=n {
            for k in 0..=m {
                let e = 3 * n - k - m + (n - k).pow(2) + (n - m).pow(2);
                let term = &(&trinomial(n, m, k) * &q(e))
                    * &(&(&common * &prod(m - k, n - m - nn)) * &prod(k, n - k - nn));
                total += &term;
            }
        }
    }
    total.shift_doubled(2 * (1 - nn))
}

fn seven_two(nn: i64) -> LaurentPoly {
    let mut total = LaurentPoly::zero();
    for n in 0..nn {
        let common = prod_down(n, nn);
        for m in 0..=n {
            for k in 0..=m {
                let e = n * nn + 2 * n - m - k + (n - k).pow(2) + (n - m).pow(2);
                let term = &(&trinomial(n, m, k) * &q(e))
                    * &(&(&common * &prod(m - k, n - m - nn)) * &prod(k, n - k - nn));
                total += &term;
            }
        }
    }
    total.shift_doubled(2 * (nn - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::colored_jones;

    #[test]
    fn normalized_at_q_one() {
        for knot in ClosedFormKnot::ALL {
            for n in 2..=6 {
                for v in [Variant::Verbatim, Variant::Corrected] {
                    let p = knot.eval(n, v).unwrap();
                    if v == Variant::Corrected || !knot.has_correction() {
                        assert_eq!(p.eval_at_one(), 1.into(), "{knot} N={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn tags_round_trip() {
        for knot in ClosedFormKnot::ALL {
            assert_eq!(knot.to_string().parse::<ClosedFormKnot>().unwrap(), knot);
            assert!(knot.braid().is_knot());
        }
        assert!("4_1".parse::<ClosedFormKnot>().is_err());
        assert!(cjp_5_2(1, Variant::Verbatim).is_err());
    }

    #[test]
    fn agree_with_engine() {
        for knot in ClosedFormKnot::ALL {
            for n in 2..=4 {
                let engine = colored_jones(&knot.braid(), n).unwrap();
                assert_eq!(knot.eval(n, Variant::Corrected).unwrap(), engine, "{knot} N={n}");
                let verbatim = knot.eval(n, Variant::Verbatim).unwrap();
                assert_eq!(verbatim == engine, !knot.has_correction(), "{knot} N={n}");
            }
        }
    }

    #[test]
    fn verbatim_five_two_loses_a_stack() {
        // the stack A alone picks up 1 - q^{1+1-N}, which is 0 at N = 2
        let v = cjp_5_2(2, Variant::Verbatim).unwrap();
        assert_eq!(v.to_string(), "q + q^5 - q^6");
        let c = cjp_5_2(2, Variant::Corrected).unwrap();
        assert_eq!(c.to_string(), "q - q^2 + 2q^3 - q^4 + q^5 - q^6");
    }
}
