//! Colored Jones polynomials from stacks of simple walks.
//!
//! `J_{N,K}(q) = q^{(N-1)(w-m+1)/2} Σ_n E_N(P^n)` where `P` is the sum of the
//! walk weights. `P^n` expands into ordered stacks of walks (top walk
//! leftmost). A stack's value is its scalar times, for each crossing, the
//! evaluation of the concatenated local letters after reordering them to
//! `b^s c^r a^d`:
//!
//! ```text
//! E_N(b₊^s c₊^r a₊^d) = q^{r(N-1-d)} ∏_{i<d} (1 - q^{N-1-r-i})
//! E_N(b₋^s c₋^r a₋^d) = q^{-r(N-1)}  ∏_{i<d} (1 - q^{r+i+1-N})
//! ```
//!
//! Stacks that run over some cell `N` times vanish, and since multiplicities
//! only grow the search prunes there. Each walk covers a bottom cell in
//! columns `2..m`, so no surviving stack is deeper than `(N-1)(m-1)`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::braid::{BraidWord, Sign};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::walks::{enumerate_simple_walks, LetterKind, LocalLetter, SimpleWalk, WalkCensus};

pub const DEFAULT_WORK_CEILING: u64 = 100_000_000;
pub const DEFAULT_MAX_COLOR: u32 = 64;

/// Letters of one crossing reordered to `b^s c^r a^d`, with the power of `q`
/// picked up by the commutation relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct NormalForm {
    pub s: u32,
    pub r: u32,
    pub d: u32,
    pub qshift: i64,
}

impl NormalForm {
    /// Appends one letter on the right, keeping `qshift` current.
    ///
    /// Positive: `a c = q c a`, `b c = q² c b`, `a b = b a`.
    /// Negative: `a b = q² b a`, `a c = q⁻¹ c a`, `b c = q⁻² c b`.
    fn push(&mut self, kind: LetterKind, sign: Sign) {
        let (r, d) = (self.r as i64, self.d as i64);
        match (kind, sign) {
            (LetterKind::A, _) => self.d += 1,
            (LetterKind::B, Sign::Pos) => {
                self.qshift -= 2 * r;
                self.s += 1;
            }
            (LetterKind::C, Sign::Pos) => {
                self.qshift += d;
                self.r += 1;
            }
            (LetterKind::B, Sign::Neg) => {
                self.qshift += 2 * d + 2 * r;
                self.s += 1;
            }
            (LetterKind::C, Sign::Neg) => {
                self.qshift -= d;
                self.r += 1;
            }
        }
    }
}

/// # Panics
///
/// If a letter's sign differs from `sign`.
pub fn normal_order(word: &[LocalLetter], sign: Sign) -> NormalForm {
    let mut nf = NormalForm::default();
    for l in word {
        assert_eq!(l.sign, sign, "mixed signs in one local word");
        nf.push(l.kind, sign);
    }
    nf
}

fn lemma_product(sign: Sign, r: u32, d: u32, n: u32) -> LaurentPoly {
    let (r, d, n) = (r as i64, d as i64, n as i64);
    let mut acc = LaurentPoly::one();
    for i in 0..d {
        let k = match sign {
            Sign::Pos => n - 1 - r - i,
            Sign::Neg => r + i + 1 - n,
        };
        if k == 0 {
            return LaurentPoly::zero();
        }
        acc *= &LaurentPoly::one_minus_q_pow(k);
    }
    acc
}

fn lemma_exponent(sign: Sign, r: u32, d: u32, n: u32) -> i64 {
    let (r, d, n) = (r as i64, d as i64, n as i64);
    match sign {
        Sign::Pos => r * (n - 1 - d),
        Sign::Neg => -r * (n - 1),
    }
}

fn lemma_vanishes(r: u32, d: u32, n: u32) -> bool {
    d > 0 && r < n && r + d >= n
}

pub fn eval_crossing(nf: &NormalForm, sign: Sign, n: u32) -> LaurentPoly {
    lemma_product(sign, nf.r, nf.d, n)
        .shift_doubled(2 * (nf.qshift + lemma_exponent(sign, nf.r, nf.d, n)))
}

/// Direct evaluation of one stack, top walk first.
pub fn eval_stack(stack: &[&SimpleWalk], n: u32) -> LaurentPoly {
    let Some(first) = stack.first() else {
        return LaurentPoly::one();
    };
    let len = first.local_words().len();
    let mut negative = false;
    let mut qpow = 0;
    for w in stack {
        negative ^= w.prefactor().negative;
        qpow += w.prefactor().q_power;
    }
    let mut acc = LaurentPoly::monomial(if negative { -1 } else { 1 }, 2 * qpow);
    for t in 1..=len {
        let word: Vec<LocalLetter> = stack.iter().flat_map(|w| w.local_word(t).iter().copied()).collect();
        let Some(sign) = word.first().map(|l| l.sign) else {
            continue;
        };
        acc *= &eval_crossing(&normal_order(&word, sign), sign, n);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// How the engine's variable relates to the bracket oracle's `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Raw output is already in the oracle's variable.
    Literal,
    /// Raw output must be read with `q ↦ q⁻¹`.
    InvertQ,
}

impl Convention {
    pub fn apply(self, p: LaurentPoly) -> LaurentPoly {
        match self {
            Convention::Literal => p,
            Convention::InvertQ => p.invert_q(),
        }
    }
}

/// The global convention, fixed once by comparing the raw engine with the
/// bracket oracle on the right-handed trefoil at `N = 2`.
pub fn convention() -> Convention {
    static CONVENTION: OnceLock<Convention> = OnceLock::new();
    *CONVENTION.get_or_init(|| {
        let trefoil = BraidWord::from_signed(&[1, 1, 1]).unwrap();
        let raw = colored_jones_raw(&trefoil, 2).unwrap();
        let oracle = crate::bracket::jones_via_bracket(&trefoil).unwrap();
        if raw == oracle {
            Convention::Literal
        } else if raw.invert_q() == oracle {
            Convention::InvertQ
        } else {
            panic!("engine and bracket disagree on the trefoil beyond q ↔ 1/q: {raw} vs {oracle}")
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    /// Maximum number of stack extensions before giving up.
    pub work_ceiling: u64,
    pub max_color: u32,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            work_ceiling: DEFAULT_WORK_CEILING,
            max_color: DEFAULT_MAX_COLOR,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JonesReport {
    pub poly: LaurentPoly,
    pub walks: usize,
    pub stacks: u64,
    pub convention: Convention,
}

/// `J_{N,K}(q)` for the closure of `b`, in the bracket oracle's variable.
pub fn colored_jones(b: &BraidWord, n: u32) -> Result<LaurentPoly> {
    Ok(colored_jones_with(b, n, &EngineOptions::default())?.poly)
}

pub fn colored_jones_with(b: &BraidWord, n: u32, opts: &EngineOptions) -> Result<JonesReport> {
    let census = prepare(b, n, opts)?;
    let mut report = run(&census, n, opts)?;
    report.convention = convention();
    report.poly = report.convention.apply(report.poly);
    Ok(report)
}

/// The engine's output before the convention is applied.
pub fn colored_jones_raw(b: &BraidWord, n: u32) -> Result<LaurentPoly> {
    let opts = EngineOptions::default();
    let census = prepare(b, n, &opts)?;
    Ok(run(&census, n, &opts)?.poly)
}

fn prepare(b: &BraidWord, n: u32, opts: &EngineOptions) -> Result<WalkCensus> {
    if !b.is_knot() {
        return Err(Error::domain(format!(
            "closure of {b} has {} components; the engine handles knots only",
            b.closure_components()
        )));
    }
    if n < 2 || n > opts.max_color {
        return Err(Error::domain(format!(
            "color N = {n} outside 2..={}",
            opts.max_color
        )));
    }
    enumerate_simple_walks(b)
}

// Per-crossing contribution of a walk, precomputed for the search.
struct WalkData {
    negative: bool,
    qpow: i64,
    cells: Vec<u32>,
    letters: Vec<(usize, LetterKind)>,
}

// (sign, r, d) of every crossing with d > 0, sorted
type Key = Vec<(bool, u32, u32)>;

#[derive(Default)]
struct Accumulator {
    terms: HashMap<Key, HashMap<i64, i128>>,
}

impl Accumulator {
    fn merge(mut self, other: Accumulator) -> Accumulator {
        for (k, exps) in other.terms {
            let slot = self.terms.entry(k).or_default();
            for (e, c) in exps {
                *slot.entry(e).or_default() += c;
            }
        }
        self
    }
}

struct Search<'a> {
    n: u32,
    signs: Vec<Sign>,
    walks: &'a [WalkData],
    mult: Vec<u32>,
    forms: Vec<NormalForm>,
    negative: bool,
    qpow: i64,
    acc: Accumulator,
    work: &'a AtomicU64,
    ceiling: u64,
    aborted: &'a AtomicBool,
}

impl Search<'_> {
    // Appends walk `k`; returns false (and changes nothing) if it would
    // reach multiplicity N somewhere.
    fn push(&mut self, k: usize) -> bool {
        let w = &self.walks[k];
        if w.cells.iter().any(|&c| self.mult[c as usize] + 1 >= self.n) {
            return false;
        }
        for &c in &w.cells {
            self.mult[c as usize] += 1;
        }
        for &(t, kind) in &w.letters {
            self.forms[t].push(kind, self.signs[t]);
        }
        self.negative ^= w.negative;
        self.qpow += w.qpow;
        true
    }

    fn record(&mut self) {
        let mut exp = self.qpow;
        let mut key = Key::new();
        for (t, nf) in self.forms.iter().enumerate() {
            let sign = self.signs[t];
            if lemma_vanishes(nf.r, nf.d, self.n) {
                return;
            }
            exp += nf.qshift + lemma_exponent(sign, nf.r, nf.d, self.n);
            if nf.d > 0 {
                key.push((sign == Sign::Pos, nf.r, nf.d));
            }
        }
        key.sort_unstable();
        let c = if self.negative { -1 } else { 1 };
        *self.acc.terms.entry(key).or_default().entry(exp).or_default() += c;
    }

    fn extend(&mut self) {
        self.record();
        for k in 0..self.walks.len() {
            if self.aborted.load(Ordering::Relaxed) {
                return;
            }
            if self.work.fetch_add(1, Ordering::Relaxed) >= self.ceiling {
                self.aborted.store(true, Ordering::Relaxed);
                return;
            }
            let saved = (self.forms.clone(), self.negative, self.qpow);
            if self.push(k) {
                self.extend();
                for &c in &self.walks[k].cells {
                    self.mult[c as usize] -= 1;
                }
                (self.forms, self.negative, self.qpow) = saved;
            }
        }
    }
}

fn run(census: &WalkCensus, n: u32, opts: &EngineOptions) -> Result<JonesReport> {
    let b = census.braid();
    let len = b.len();
    let cells = (len + 1) * b.width();
    let signs: Vec<Sign> = b.letters().iter().map(|l| l.sign).collect();
    let walks: Vec<WalkData> = census
        .walks()
        .iter()
        .map(|w| WalkData {
            negative: w.prefactor().negative,
            qpow: w.prefactor().q_power,
            cells: w.cell_indices().to_vec(),
            letters: w
                .local_words()
                .iter()
                .enumerate()
                .flat_map(|(t, word)| word.iter().map(move |l| (t, l.kind)))
                .collect(),
        })
        .collect();
    let work = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let new_search = || Search {
        n,
        signs: signs.clone(),
        walks: &walks,
        mult: vec![0; cells],
        forms: vec![NormalForm::default(); len],
        negative: false,
        qpow: 0,
        acc: Accumulator::default(),
        work: &work,
        ceiling: opts.work_ceiling,
        aborted: &aborted,
    };
    let mut empty = new_search();
    empty.record();
    let acc = (0..walks.len())
        .into_par_iter()
        .map(|k| {
            let mut s = new_search();
            if s.push(k) {
                s.extend();
            }
            s.acc
        })
        .reduce(Accumulator::default, Accumulator::merge)
        .merge(empty.acc);
    let stacks = work.load(Ordering::Relaxed);
    if aborted.load(Ordering::Relaxed) {
        return Err(Error::Resource {
            what: "stack extensions".into(),
            limit: opts.work_ceiling,
            reached: stacks,
            hint: "raise the work ceiling or lower N".into(),
        });
    }

    let mut lemma_cache: HashMap<(bool, u32, u32), LaurentPoly> = HashMap::new();
    let mut keys: Vec<_> = acc.terms.into_iter().collect();
    keys.sort_by(|a, b| a.0.cmp(&b.0));
    let mut total = LaurentPoly::zero();
    for (key, exps) in keys {
        let mut factor = LaurentPoly::one();
        for &(pos, r, d) in &key {
            let sign = if pos { Sign::Pos } else { Sign::Neg };
            let p = lemma_cache
                .entry((pos, r, d))
                .or_insert_with(|| lemma_product(sign, r, d, n));
            factor *= &*p;
        }
        let monomials = LaurentPoly::from_terms(exps.into_iter().map(|(e, c)| (2 * e, c)));
        total += &(&factor * &monomials);
    }

    let framing = (n as i64 - 1) * (b.writhe() - b.width() as i64 + 1);
    let poly = total.shift_doubled(framing);
    if !poly.has_integer_exponents() {
        return Err(Error::domain(format!(
            "colored Jones of {b} at N = {n} has half-integer exponents: {poly}"
        )));
    }
    Ok(JonesReport {
        poly,
        walks: census.count(),
        stacks: stacks + 1,
        convention: Convention::Literal,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kashaev {
    pub value: Complex64,
    /// `log|J_N(e^{2πi/N})| / N`, the quantity of the volume conjecture
    /// up to a factor of `2π`.
    pub log_abs_over_n: f64,
}

pub fn kashaev_evaluation(b: &BraidWord, n: u32) -> Result<Kashaev> {
    let j = colored_jones(b, n)?;
    let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64);
    let value = j.eval_complex(z)?;
    Ok(Kashaev {
        value,
        log_abs_over_n: value.norm().ln() / n as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::jones_via_bracket;
    use LetterKind::{A, B, C};

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    fn letters(kinds: &[LetterKind], sign: Sign) -> Vec<LocalLetter> {
        kinds.iter().map(|&kind| LocalLetter { kind, sign }).collect()
    }

    // Adjacent-swap bubble sort with the relation table.
    fn bubble(word: &[LocalLetter], sign: Sign) -> i64 {
        let rank = |k: LetterKind| match k {
            B => 0,
            C => 1,
            A => 2,
        };
        let factor = |left: LetterKind, right: LetterKind| match (sign, left, right) {
            (Sign::Pos, A, C) => 1,
            (Sign::Pos, C, B) => -2,
            (Sign::Pos, A, B) => 0,
            (Sign::Neg, A, B) => 2,
            (Sign::Neg, A, C) => -1,
            (Sign::Neg, C, B) => 2,
            _ => unreachable!(),
        };
        let mut v: Vec<LetterKind> = word.iter().map(|l| l.kind).collect();
        let mut shift = 0;
        loop {
            let mut swapped = false;
            for i in 0..v.len().saturating_sub(1) {
                if rank(v[i]) > rank(v[i + 1]) {
                    shift += factor(v[i], v[i + 1]);
                    v.swap(i, i + 1);
                    swapped = true;
                }
            }
            if !swapped {
                return shift;
            }
        }
    }

    #[test]
    fn normal_order_examples() {
        let nf = normal_order(&letters(&[A, C], Sign::Pos), Sign::Pos);
        assert_eq!((nf.s, nf.r, nf.d, nf.qshift), (0, 1, 1, 1));
        let nf = normal_order(&letters(&[C, B], Sign::Pos), Sign::Pos);
        assert_eq!((nf.s, nf.r, nf.d, nf.qshift), (1, 1, 0, -2));
        for k in 0..6u32 {
            let word: Vec<LetterKind> = (0..k).flat_map(|_| [B, C]).collect();
            let nf = normal_order(&letters(&word, Sign::Neg), Sign::Neg);
            assert_eq!((nf.s, nf.r, nf.qshift), (k, k, (k * k) as i64 - k as i64));
        }
        assert_eq!(normal_order(&[], Sign::Pos), NormalForm::default());
    }

    #[test]
    fn normal_order_matches_bubble_sort() {
        let kinds = [A, B, C];
        for len in 0..=7u32 {
            for code in 0..3u32.pow(len) {
                let word: Vec<LetterKind> = (0..len).map(|i| kinds[(code / 3u32.pow(i) % 3) as usize]).collect();
                for sign in [Sign::Pos, Sign::Neg] {
                    let lw = letters(&word, sign);
                    assert_eq!(normal_order(&lw, sign).qshift, bubble(&lw, sign), "{word:?} {sign:?}");
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "mixed signs")]
    fn normal_order_rejects_mixed_signs() {
        let word = [
            LocalLetter { kind: A, sign: Sign::Pos },
            LocalLetter { kind: B, sign: Sign::Neg },
        ];
        normal_order(&word, Sign::Pos);
    }

    #[test]
    fn crossing_examples() {
        for n in 2..7u32 {
            let c = NormalForm { r: 1, ..Default::default() };
            assert_eq!(eval_crossing(&c, Sign::Pos, n), LaurentPoly::q_pow(n as i64 - 1));
            assert_eq!(eval_crossing(&c, Sign::Neg, n), LaurentPoly::q_pow(1 - n as i64));
            let b = NormalForm { s: 3, ..Default::default() };
            assert!(eval_crossing(&b, Sign::Pos, n).is_one());
            assert!(eval_crossing(&b, Sign::Neg, n).is_one());
            for d in 0..n {
                let a = NormalForm { d, ..Default::default() };
                let want: LaurentPoly = (1..=d as i64)
                    .map(|i| LaurentPoly::one_minus_q_pow(n as i64 - i))
                    .fold(LaurentPoly::one(), |acc, f| &acc * &f);
                assert_eq!(eval_crossing(&a, Sign::Pos, n), want);
            }
        }
    }

    #[test]
    fn unknot_is_one() {
        for n in 2..6 {
            assert!(colored_jones(&BraidWord::unknot(), n).unwrap().is_one());
            assert!(colored_jones(&w("[1,2,-3]"), n).unwrap().is_one());
        }
    }

    #[test]
    fn calibration() {
        // right-handed trefoil, t + t^3 - t^4 in the oracle's variable
        assert_eq!(colored_jones(&w("[1,1,1]"), 2).unwrap().to_string(), "q + q^3 - q^4");
        let raw = colored_jones_raw(&w("[1,1,1]"), 2).unwrap();
        assert_eq!(convention().apply(raw), jones_via_bracket(&w("[1,1,1]")).unwrap());
    }

    #[test]
    fn figure_eight() {
        let b = w("[1,-2,1,-2]");
        assert_eq!(colored_jones(&b, 2).unwrap().to_string(), "q^-2 - q^-1 + 1 - q + q^2");
        let j3 = colored_jones(&b, 3).unwrap();
        assert_eq!(j3, j3.invert_q());
    }

    #[test]
    fn rejects_links_and_bad_colors() {
        assert!(matches!(colored_jones(&w("[1,1]"), 2), Err(Error::Domain(_))));
        assert!(matches!(colored_jones(&w("[1,1,1]"), 1), Err(Error::Domain(_))));
    }

    #[test]
    fn work_ceiling() {
        let opts = EngineOptions { work_ceiling: 10, ..Default::default() };
        let r = colored_jones_with(&w("[1,-2,1,-2]"), 5, &opts);
        assert!(matches!(r, Err(Error::Resource { .. })));
    }

    // Every ordered stack up to the depth bound, evaluated directly.
    fn unpruned(b: &BraidWord, n: u32) -> LaurentPoly {
        let census = enumerate_simple_walks(b).unwrap();
        let walks = census.walks();
        let depth = (n as usize - 1) * (b.width() - 1);
        let mut total = LaurentPoly::one();
        let mut frontier: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..depth {
            let mut next = Vec::new();
            for stack in &frontier {
                for k in 0..walks.len() {
                    let mut s = stack.clone();
                    s.push(k);
                    let refs: Vec<&SimpleWalk> = s.iter().map(|&i| &walks[i]).collect();
                    total += &eval_stack(&refs, n);
                    next.push(s);
                }
            }
            frontier = next;
        }
        let framing = (n as i64 - 1) * (b.writhe() - b.width() as i64 + 1);
        convention().apply(total.shift_doubled(framing))
    }

    #[test]
    fn pruning_is_sound() {
        for (s, n) in [("[1,1,1]", 3), ("[1,-2,1,-2]", 2), ("[1,-2,1,-2]", 3), ("[-2,1,2,2,2,1]", 2), ("[1,1,1,1,1]", 3)] {
            let b = w(s);
            assert_eq!(colored_jones(&b, n).unwrap(), unpruned(&b, n), "{s} N={n}");
        }
    }

    #[test]
    fn kashaev_values() {
        let k = kashaev_evaluation(&BraidWord::unknot(), 3).unwrap();
        assert!((k.value - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let k = kashaev_evaluation(&w("[1,-2,1,-2]"), 2).unwrap();
        assert!((k.value - Complex64::new(5.0, 0.0)).norm() < 1e-9);
        let k = kashaev_evaluation(&w("[1,1,1]"), 2).unwrap();
        assert!(k.value.norm().is_finite());
    }
}
