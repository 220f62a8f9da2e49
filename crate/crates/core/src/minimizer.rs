//! Searching the symmetry orbit of a braid word for the fewest simple walks.
//!
//! The orbit is generated by reflection, rotation, reversal and cyclic
//! shifts. Reversal and rotation preserve the knot, reflection takes it to
//! its mirror. Duplicates are removed by literal word equality.

use std::fmt;

use rayon::prelude::*;

use crate::braid::{BraidWord, Sign};
use crate::error::{Error, Result};
use crate::walks::{count_simple_walks_with, EnumOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Reflect,
    Rotate,
    Reverse,
    /// Cyclic shift moving `k` letters from the front to the back.
    Shift(isize),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Reflect => f.write_str("reflect"),
            Step::Rotate => f.write_str("rotate"),
            Step::Reverse => f.write_str("reverse"),
            Step::Shift(k) => write!(f, "shift {k}"),
        }
    }
}

pub fn apply(b: &BraidWord, steps: &[Step]) -> BraidWord {
    steps.iter().fold(b.clone(), |w, s| match s {
        Step::Reflect => w.reflect(),
        Step::Rotate => w.rotate(),
        Step::Reverse => w.reverse(),
        Step::Shift(k) => w.cyclic_shift(*k),
    })
}

/// `"reflect, shift 3"`, or `"identity"`.
pub fn describe(steps: &[Step]) -> String {
    if steps.is_empty() {
        return "identity".into();
    }
    steps.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitEntry {
    pub word: BraidWord,
    pub transform: Vec<Step>,
    /// `None` when counting failed, see `failure`.
    pub sw_count: Option<u64>,
    /// The entry represents the mirror image of the input's closure.
    pub mirror: bool,
    pub failure: Option<String>,
}

impl OrbitEntry {
    fn rank(&self) -> (u64, usize, (usize, Vec<i64>)) {
        (self.sw_count.unwrap_or(u64::MAX), self.transform.len(), self.word.sort_key())
    }
}

pub fn symmetry_orbit(b: &BraidWord) -> Result<Vec<OrbitEntry>> {
    symmetry_orbit_with(b, &EnumOptions::default())
}

/// All `{id, reflect} × {id, rotate} × {id, reverse} × shifts` images of
/// `b`, first occurrence kept, each with its walk count.
pub fn symmetry_orbit_with(b: &BraidWord, opts: &EnumOptions) -> Result<Vec<OrbitEntry>> {
    if b.is_empty() {
        return Err(Error::domain("symmetry orbit of the empty word"));
    }
    let mut candidates: Vec<Vec<Step>> = Vec::new();
    for mask in 0..8u32 {
        let mut base = Vec::new();
        if mask & 1 != 0 {
            base.push(Step::Reflect);
        }
        if mask & 2 != 0 {
            base.push(Step::Rotate);
        }
        if mask & 4 != 0 {
            base.push(Step::Reverse);
        }
        for k in 0..b.len() as isize {
            let mut steps = base.clone();
            if k != 0 {
                steps.push(Step::Shift(k));
            }
            candidates.push(steps);
        }
    }
    // shortest descriptions first so dedup keeps them
    candidates.sort_by_key(|s| s.len());
    let mut seen = std::collections::HashSet::new();
    let unique: Vec<(BraidWord, Vec<Step>)> = candidates
        .into_iter()
        .filter_map(|steps| {
            let w = apply(b, &steps);
            seen.insert(w.clone()).then_some((w, steps))
        })
        .collect();
    Ok(unique
        .into_par_iter()
        .map(|(word, transform)| {
            let counted = count_simple_walks_with(&word, opts);
            let mirror = transform.contains(&Step::Reflect);
            let (sw_count, failure) = match counted {
                Ok(c) => (Some(c), None),
                Err(e) => (None, Some(e.to_string())),
            };
            OrbitEntry {
                word,
                transform,
                sw_count,
                mirror,
                failure,
            }
        })
        .collect())
}

pub fn minimize_walks(b: &BraidWord) -> Result<OrbitEntry> {
    minimize_walks_with(b, &EnumOptions::default())
}

/// The orbit entry with fewest walks; ties go to the shorter transform,
/// then to the smaller word.
pub fn minimize_walks_with(b: &BraidWord, opts: &EnumOptions) -> Result<OrbitEntry> {
    let orbit = symmetry_orbit_with(b, opts)?;
    let total = orbit.len() as u64;
    let failed = orbit.iter().filter(|e| e.sw_count.is_none()).count() as u64;
    if failed == total {
        return Err(Error::Resource {
            what: "orbit entries counted".into(),
            limit: 0,
            reached: failed,
            hint: orbit[0].failure.clone().unwrap_or_default(),
        });
    }
    Ok(orbit
        .into_iter()
        .filter(|e| e.sw_count.is_some())
        .min_by(|a, b| a.rank().cmp(&b.rank()))
        .unwrap())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub word: BraidWord,
    pub transform: Vec<Step>,
    /// False when no word starting with `σ₁` was reachable; `word` is then
    /// the input.
    pub found: bool,
}

/// Finds a word with the same walk count that starts with `σ₁`, using
/// reversal and cyclic shifts that only move letters of index `≠ 1` past
/// the end of the word (which leave the set of walks unchanged).
pub fn normalize_leading(b: &BraidWord) -> Normalized {
    let starts_right = |w: &BraidWord| {
        w.letters()
            .first()
            .is_some_and(|l| l.index == 1 && l.sign == Sign::Pos)
    };
    for base in [vec![], vec![Step::Reverse]] {
        let start = apply(b, &base);
        if starts_right(&start) {
            return Normalized {
                word: start,
                transform: base,
                found: true,
            };
        }
        // front letters to the back
        let mut w = start.clone();
        for k in 1..=b.len() as isize {
            if w.letters()[0].index == 1 {
                break;
            }
            w = w.cyclic_shift(1);
            if starts_right(&w) {
                return found(w, &base, k);
            }
        }
        // back letters to the front
        let mut w = start;
        for k in 1..=b.len() as isize {
            if w.letters()[w.len() - 1].index == 1 {
                break;
            }
            w = w.cyclic_shift(-1);
            if starts_right(&w) {
                return found(w, &base, -k);
            }
        }
    }
    Normalized {
        word: b.clone(),
        transform: Vec::new(),
        found: false,
    }
}

fn found(word: BraidWord, base: &[Step], k: isize) -> Normalized {
    let mut transform = base.to_vec();
    transform.push(Step::Shift(k));
    Normalized {
        word,
        transform,
        found: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::count_simple_walks;

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn small_orbit_for_symmetric_word() {
        let orbit = symmetry_orbit(&w("[1,1,1]")).unwrap();
        assert_eq!(orbit.len(), 2);
        assert!(orbit.iter().all(|e| e.word == apply(&w("[1,1,1]"), &e.transform)));
    }

    #[test]
    fn orbit_entries_match_their_transforms() {
        let b = w("[1,2,-3,2,-1,2,2,-3,-2,-2,1]");
        let orbit = symmetry_orbit(&b).unwrap();
        assert!(orbit.len() <= 8 * b.len());
        assert!(orbit.iter().any(|e| e.sw_count == Some(21)));
        for e in &orbit {
            assert_eq!(apply(&b, &e.transform), e.word);
            assert_eq!(e.sw_count, Some(count_simple_walks(&e.word).unwrap()));
            assert_eq!(e.word.permutation().len(), b.width());
            assert_eq!(e.word.is_knot(), b.is_knot());
            let flips = e.transform.iter().filter(|s| **s == Step::Reflect).count();
            assert_eq!(e.mirror, flips % 2 == 1);
        }
    }

    #[test]
    fn minimize_examples() {
        assert_eq!(minimize_walks(&w("[-2,1,2,2,2,1]")).unwrap().sw_count, Some(2));
        assert_eq!(minimize_walks(&w("[1,-2,1,-2]")).unwrap().sw_count, Some(2));
        let b = w("[1,1,1,1,1]");
        assert!(minimize_walks(&b).unwrap().sw_count.unwrap() <= count_simple_walks(&b).unwrap());
    }

    #[test]
    fn minimize_is_deterministic() {
        let b = w("[1,2,-1,2,-3,-3,2,-3,4,-3,1]");
        let first = minimize_walks(&b).unwrap();
        for _ in 0..3 {
            assert_eq!(minimize_walks(&b).unwrap(), first);
        }
    }

    #[test]
    fn all_entries_failing_is_an_error() {
        let opts = EnumOptions { max_length: 2 };
        assert!(matches!(minimize_walks_with(&w("[1,1,1]"), &opts), Err(Error::Resource { .. })));
        assert!(symmetry_orbit(&BraidWord::unknot()).is_err());
    }

    #[test]
    fn normalize_reversed_example() {
        let b = w("[-1,-1,2,-3,4,-3,2,-3,4,1,2,-3,-2,-2]");
        let n = normalize_leading(&b);
        assert!(n.found);
        assert_eq!(n.word.letters()[0].index, 1);
        assert_eq!(n.word.letters()[0].sign, Sign::Pos);
        assert_eq!(apply(&b, &n.transform), n.word);
        assert_eq!(count_simple_walks(&n.word).unwrap(), count_simple_walks(&b).unwrap());
    }

    #[test]
    fn normalize_fixed_points_and_fallback() {
        let b = w("[1,-2,1,-2]");
        let n = normalize_leading(&b);
        assert!(n.found && n.transform.is_empty() && n.word == b);
        let b = w("[2,-3,2]");
        let n = normalize_leading(&b);
        assert!(!n.found);
        assert_eq!(n.word, b);
        // only σ₁^{-1} letters: nothing to rotate into place
        assert!(!normalize_leading(&w("[-1,-1,-1]")).found);
    }
}
