//! Braid words on `m` strands.
//!
//! A word `σ_{i_1}^{ε_1} ⋯ σ_{i_ℓ}^{ε_ℓ}` is read left to right and drawn top
//! to bottom; crossing `t` is the `t`-th letter. In `σ_i` the strand in
//! position `i+1` passes over the strand in position `i`; in `σ_i^{-1}` it is
//! the other way round.
//!
//! The width is part of the value and never re-inferred, so stabilization and
//! rotation are unambiguous even when the top generator is absent.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exponent of a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Sign> {
        match v.signum() {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// One generator `σ_index^{sign}`. `index` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(index: usize, sign: Sign) -> Letter {
        Letter { index, sign }
    }

    pub fn pos(index: usize) -> Letter {
        Letter::new(index, Sign::Pos)
    }

    pub fn neg(index: usize) -> Letter {
        Letter::new(index, Sign::Neg)
    }

    /// Signed integer notation: `σ_2^{-1}` is `-2`.
    pub fn signed(self) -> i64 {
        self.sign.as_i64() * self.index as i64
    }

    pub fn inverse(self) -> Letter {
        Letter::new(self.index, self.sign.flip())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    width: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    /// Builds a word, checking `1 <= index <= width - 1` for every letter.
    pub fn new(width: usize, letters: Vec<Letter>) -> Result<BraidWord> {
        if width == 0 {
            return Err(Error::domain("braid width must be at least 1"));
        }
        for (k, l) in letters.iter().enumerate() {
            if l.index == 0 || l.index >= width {
                return Err(Error::Parse {
                    position: k + 1,
                    message: format!("generator {} out of range for width {}", l.index, width),
                });
            }
        }
        Ok(BraidWord { width, letters })
    }

    /// Builds a word from signed generator indices, inferring the width.
    pub fn from_signed(entries: &[i64]) -> Result<BraidWord> {
        let letters = signed_to_letters(entries)?;
        let width = 1 + letters.iter().map(|l| l.index).max().unwrap_or(0);
        BraidWord::new(width, letters)
    }

    /// The empty word on one strand, the canonical unknot.
    pub fn unknot() -> BraidWord {
        BraidWord {
            width: 1,
            letters: Vec::new(),
        }
    }

    /// Parses `"[e1,e2,...]"`. Brackets are optional and whitespace is
    /// ignored. Without an explicit `width` the width is `1 + max |e_k|`.
    pub fn parse(text: &str, width: Option<usize>) -> Result<BraidWord> {
        let mut body = text.trim();
        if let Some(rest) = body.strip_prefix('[') {
            body = rest.strip_suffix(']').ok_or_else(|| Error::Parse {
                position: 0,
                message: "unbalanced '['".into(),
            })?;
        } else if body.ends_with(']') {
            return Err(Error::Parse {
                position: 0,
                message: "unbalanced ']'".into(),
            });
        }
        let mut entries = Vec::new();
        if !body.trim().is_empty() {
            for (k, tok) in body.split(',').enumerate() {
                let tok: String = tok.chars().filter(|c| !c.is_whitespace()).collect();
                let v: i64 = tok.parse().map_err(|_| Error::Parse {
                    position: k + 1,
                    message: format!("malformed token {tok:?}"),
                })?;
                entries.push(v);
            }
        }
        let letters = signed_to_letters(&entries)?;
        match width {
            Some(w) => BraidWord::new(w, letters),
            None => {
                let w = 1 + letters.iter().map(|l| l.index).max().unwrap_or(0);
                BraidWord::new(w, letters)
            }
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Letter at crossing `t` (1-based).
    pub fn crossing(&self, t: usize) -> Letter {
        self.letters[t - 1]
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.sign.as_i64()).sum()
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.signed()).collect()
    }

    /// Strand correspondence of the braid: `perm[p]` is the (0-based) bottom
    /// position reached by the strand starting at top position `p`.
    pub fn permutation(&self) -> Vec<usize> {
        // pos[s] = current position of the strand that started at s
        let mut at: Vec<usize> = (0..self.width).collect();
        for l in &self.letters {
            let (a, b) = (l.index - 1, l.index);
            for p in at.iter_mut() {
                if *p == a {
                    *p = b;
                } else if *p == b {
                    *p = a;
                }
            }
        }
        at
    }

    /// Number of components of the closure.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.width];
        let mut cycles = 0;
        for start in 0..self.width {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = perm[p];
            }
        }
        cycles
    }

    pub fn is_knot(&self) -> bool {
        self.closure_components() == 1
    }

    /// Mirror image: every sign negated.
    pub fn reflect(&self) -> BraidWord {
        BraidWord {
            width: self.width,
            letters: self.letters.iter().map(|l| l.inverse()).collect(),
        }
    }

    /// Planar 180° rotation: letter order reversed and `i ↦ m - i`.
    pub fn rotate(&self) -> BraidWord {
        let m = self.width;
        BraidWord {
            width: m,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter::new(m - l.index, l.sign))
                .collect(),
        }
    }

    pub fn reverse(&self) -> BraidWord {
        BraidWord {
            width: self.width,
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// Rotates the letters left by `k` (mod ℓ). Negative `k` rotates right.
    pub fn cyclic_shift(&self, k: isize) -> BraidWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let n = letters.len() as isize;
            letters.rotate_left(k.rem_euclid(n) as usize);
        }
        BraidWord {
            width: self.width,
            letters,
        }
    }

    /// Appends `σ_m^{±1}` and adds a strand.
    pub fn stabilize(&self, sign: Sign) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.push(Letter::new(self.width, sign));
        BraidWord {
            width: self.width + 1,
            letters,
        }
    }

    /// Cancels adjacent `σ_i σ_i^{-1}` / `σ_i^{-1} σ_i` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&top) if top == l.inverse() => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        BraidWord {
            width: self.width,
            letters: out,
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// Inserts the letters `l l^{-1}` before position `at` (0-based).
    pub fn insert_cancelling_pair(&self, at: usize, l: Letter) -> Result<BraidWord> {
        let mut letters = self.letters.clone();
        letters.splice(at..at, [l, l.inverse()]);
        BraidWord::new(self.width, letters)
    }

    /// Lexicographic key used for deterministic tie-breaking.
    pub fn sort_key(&self) -> (usize, Vec<i64>) {
        (self.width, self.to_signed())
    }
}

fn signed_to_letters(entries: &[i64]) -> Result<Vec<Letter>> {
    entries
        .iter()
        .enumerate()
        .map(|(k, &v)| match Sign::from_i64(v) {
            Some(sign) => Ok(Letter::new(v.unsigned_abs() as usize, sign)),
            None => Err(Error::Parse {
                position: k + 1,
                message: "zero is not a generator".into(),
            }),
        })
        .collect()
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<BraidWord> {
        BraidWord::parse(s, None)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", l.signed())?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_trefoil() {
        let b = w("[1,1,1]");
        assert_eq!(b.width(), 2);
        assert_eq!(b.letters(), &[Letter::pos(1); 3]);
    }

    #[test]
    fn parse_five_two() {
        let b = w("[-2,1,2,2,2,1]");
        assert_eq!(b.width(), 3);
        assert_eq!(b.len(), 6);
        assert_eq!(b.writhe(), 4);
    }

    #[test]
    fn parse_errors_name_position() {
        assert_eq!(
            BraidWord::parse("[0,1]", None).unwrap_err(),
            Error::Parse {
                position: 1,
                message: "zero is not a generator".into()
            }
        );
        assert!(matches!(
            BraidWord::parse("[1,x,2]", None),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(
            BraidWord::parse("[1,3]", Some(3)),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(BraidWord::parse("[1,2", None).is_err());
    }

    #[test]
    fn parse_is_lenient_about_layout() {
        assert_eq!(w(" 1, -2 ,1 "), w("[1,-2,1]"));
        assert_eq!(BraidWord::parse("[]", None).unwrap(), BraidWord::unknot());
        assert_eq!(BraidWord::parse("[1]", Some(4)).unwrap().width(), 4);
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(w("[1,1,1]").permutation(), vec![1, 0]);
        assert_eq!(
            BraidWord::parse("[]", Some(3)).unwrap().permutation(),
            vec![0, 1, 2]
        );
        let p = w("[-2,1,2,2,2,1]").permutation();
        // a single 3-cycle
        assert_ne!(p[0], 0);
        assert_eq!(p[p[p[0]]], 0);
    }

    #[test]
    fn closure_component_examples() {
        assert_eq!(w("[1,1,1]").closure_components(), 1);
        assert_eq!(w("[1,1]").closure_components(), 2);
        assert_eq!(w("[-1,-2,-1,-2,-1,-2]").closure_components(), 3);
        assert_eq!(BraidWord::unknot().closure_components(), 1);
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(w("[1,1,1]").reflect(), w("[-1,-1,-1]"));
        assert_eq!(w("[-2,1,2,2,2,1]").reflect(), w("[2,-1,-2,-2,-2,-1]"));
        assert_eq!(w("[1,-2]").rotate(), w("[-1,2]"));
        assert_eq!(w("[1,1,1]").rotate(), w("[1,1,1]"));
        assert_eq!(w("[1,-2,3]").reverse(), w("[3,-2,1]"));
        assert_eq!(w("[1,2,1]").reverse(), w("[1,2,1]"));
    }

    #[test]
    fn shift_examples() {
        let b = w("[-2,1,2,2,2,1]");
        assert_eq!(b.cyclic_shift(1), w("[1,2,2,2,1,-2]"));
        assert_eq!(b.cyclic_shift(6), b);
        assert_eq!(b.cyclic_shift(0), b);
        assert_eq!(b.cyclic_shift(-1), w("[1,-2,1,2,2,2]"));
    }

    #[test]
    fn stabilize_example() {
        let s = w("[1,1,1]").stabilize(Sign::Pos);
        assert_eq!(s.width(), 3);
        assert_eq!(s, w("[1,1,1,2]"));
        assert_eq!(s.closure_components(), 1);
    }

    #[test]
    fn free_reduce_examples() {
        assert_eq!(w("[1,-1]").free_reduce().len(), 0);
        assert_eq!(
            BraidWord::parse("[2,1,-1,-2,3]", None)
                .unwrap()
                .free_reduce()
                .to_signed(),
            vec![3]
        );
        let r = w("[1,-2,1,-2]");
        assert_eq!(r.free_reduce(), r);
        assert!(r.is_reduced());
    }

    #[test]
    fn display_round_trip() {
        let b = w("[-2,1,2,2,2,1]");
        assert_eq!(b.to_string(), "[-2,1,2,2,2,1]");
        assert_eq!(w(&b.to_string()), b);
    }

    fn arb_word() -> impl Strategy<Value = BraidWord> {
        (2usize..6)
            .prop_flat_map(|m| {
                (
                    Just(m),
                    prop::collection::vec((1..m, any::<bool>()), 0..14),
                )
            })
            .prop_map(|(m, raw)| {
                let letters = raw
                    .into_iter()
                    .map(|(i, s)| Letter::new(i, if s { Sign::Pos } else { Sign::Neg }))
                    .collect();
                BraidWord::new(m, letters).unwrap()
            })
    }

    proptest! {
        #[test]
        fn symmetries_are_involutions(b in arb_word()) {
            prop_assert_eq!(b.reflect().reflect(), b.clone());
            prop_assert_eq!(b.rotate().rotate(), b.clone());
            prop_assert_eq!(b.reverse().reverse(), b.clone());
        }

        #[test]
        fn shifts_compose(b in arb_word(), k in -20isize..20) {
            prop_assert_eq!(b.cyclic_shift(k).cyclic_shift(-k), b);
        }

        #[test]
        fn writhe_behaviour(b in arb_word()) {
            prop_assert_eq!(b.reflect().writhe(), -b.writhe());
            prop_assert_eq!(b.rotate().writhe(), b.writhe());
            prop_assert_eq!(b.reverse().writhe(), b.writhe());
        }

        #[test]
        fn components_are_invariant(b in arb_word(), k in 0isize..20, s in any::<bool>()) {
            let c = b.closure_components();
            prop_assert_eq!(b.cyclic_shift(k).closure_components(), c);
            prop_assert_eq!(b.reverse().closure_components(), c);
            prop_assert_eq!(b.reflect().closure_components(), c);
            prop_assert_eq!(b.rotate().closure_components(), c);
            let sign = if s { Sign::Pos } else { Sign::Neg };
            prop_assert_eq!(b.stabilize(sign).closure_components(), c);
            prop_assert_eq!(b.free_reduce().closure_components(), c);
        }

        #[test]
        fn reduction_keeps_permutation(b in arb_word()) {
            let r = b.free_reduce();
            prop_assert!(r.is_reduced());
            prop_assert_eq!(r.permutation(), b.permutation());
        }
    }
}
