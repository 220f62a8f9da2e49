//! Simple walks on braid words.
//!
//! A path starts at the bottom of the braid and moves upward. At a crossing
//! it follows its strand, except that on the overstrand it may jump down to
//! the understrand. The letter recorded at crossing `t` is `a_t` for a jump,
//! `c_t` for following the overstrand and `b_t` for the understrand:
//!
//! | crossing    | enters from below | letter | leaves above |
//! |-------------|-------------------|--------|--------------|
//! | `σ_i`       | column `i`        | `c`    | `i+1`        |
//! | `σ_i`       | column `i` (jump) | `a`    | `i`          |
//! | `σ_i`       | column `i+1`      | `b`    | `i`          |
//! | `σ_i^{-1}`  | column `i+1`      | `c`    | `i`          |
//! | `σ_i^{-1}`  | column `i+1` (jump)| `a`   | `i+1`        |
//! | `σ_i^{-1}`  | column `i`        | `b`    | `i+1`        |
//!
//! A walk is a set `J ⊆ {2..m}` of starting columns with one path per
//! column, ending on a permutation `π` of `J`; it is simple when its paths
//! share no [`Cell`]. Its set of jumps (the [`Monomial`]) is obtained from
//! a partial oriented smoothing: smooth the active crossings, color the
//! left (positive) or right (negative) arc red and the other black, and
//! propagate the colors around the closure. The monomial is valid when no
//! arc gets both colors and strand 1 stays black; the red arcs are the walk.
//!
//! On a link, closed components that pass through no active crossing stay
//! uncolored. Each one that avoids strand 1 at the top may be added to the
//! walk or not, so a monomial can carry several walks. On a knot this never
//! happens and the monomial determines the walk.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::braid::{BraidWord, Sign};
use crate::error::{Error, Result};

/// Default cap on the braid length for exhaustive enumeration.
pub const DEFAULT_MAX_LENGTH: usize = 24;

/// Monomials are bitmasks, so no configuration may exceed this.
pub const HARD_MAX_LENGTH: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    pub max_length: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            max_length: DEFAULT_MAX_LENGTH,
        }
    }
}

/// Segment of column `column` between crossings `level` and `level + 1`.
/// Level `0` is above crossing 1 and level `ℓ` is the bottom of the braid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub level: usize,
    pub column: usize,
}

/// Set of active crossings, bit `t-1` for crossing `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub fn from_bits(bits: u64) -> Monomial {
        Monomial(bits)
    }

    pub fn from_crossings(crossings: &[usize]) -> Monomial {
        Monomial(crossings.iter().fold(0, |acc, &t| acc | 1 << (t - 1)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, t: usize) -> bool {
        self.0 >> (t - 1) & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Active crossings in increasing order.
    pub fn crossings(self) -> Vec<usize> {
        (0..64).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    /// Relabels crossing `t` as `ℓ + 1 - t`.
    pub fn mirror_order(self, length: usize) -> Monomial {
        Monomial::from_crossings(
            &self
                .crossings()
                .into_iter()
                .map(|t| length + 1 - t)
                .collect::<Vec<_>>(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.crossings().cmp(&other.crossings())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.crossings().iter().map(|t| t.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LetterKind {
    A,
    B,
    C,
}

/// A local weight `a`, `b` or `c`, signed by its crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocalLetter {
    pub kind: LetterKind,
    pub sign: Sign,
}

/// Letters at one crossing, top path first.
pub type LocalWord = Vec<LocalLetter>;

/// The scalar `(-1)(-q)^{|J| + inv(π)}` of a walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Prefactor {
    pub negative: bool,
    pub q_power: i64,
}

impl Prefactor {
    pub fn for_walk(j_len: usize, inv: usize) -> Prefactor {
        let e = (j_len + inv) as i64;
        Prefactor {
            negative: (1 + e) % 2 == 1,
            q_power: e,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleWalk {
    width: usize,
    monomial: Monomial,
    j: Vec<usize>,
    pi: Vec<usize>,
    inv: usize,
    local_words: Vec<LocalWord>,
    // flat cell indices level * width + (column - 1), ascending
    cells: Vec<u32>,
    prefactor: Prefactor,
}

impl SimpleWalk {
    pub fn monomial(&self) -> Monomial {
        self.monomial
    }

    /// Starting columns, ascending.
    pub fn j(&self) -> &[usize] {
        &self.j
    }

    /// `pi()[k]` is the exit column of the path starting at `j()[k]`.
    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    pub fn inversions(&self) -> usize {
        self.inv
    }

    pub fn prefactor(&self) -> Prefactor {
        self.prefactor
    }

    /// Local word at crossing `t` (1-based); empty when no path passes.
    pub fn local_word(&self, t: usize) -> &[LocalLetter] {
        &self.local_words[t - 1]
    }

    pub fn local_words(&self) -> &[LocalWord] {
        &self.local_words
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let m = self.width;
        self.cells.iter().map(move |&c| Cell {
            level: c as usize / m,
            column: c as usize % m + 1,
        })
    }

    pub(crate) fn cell_indices(&self) -> &[u32] {
        &self.cells
    }

    /// `q^3 · b_1 c_1 c_2 c_3 a_4 b_5 b_6`
    pub fn weight_string(&self) -> String {
        let mut s = String::new();
        if self.prefactor.negative {
            s.push('-');
        }
        s.push_str(&format!("q^{}", self.prefactor.q_power));
        s.push_str(" ·");
        for (t, word) in self.local_words.iter().enumerate() {
            for l in word {
                let k = match l.kind {
                    LetterKind::A => 'a',
                    LetterKind::B => 'b',
                    LetterKind::C => 'c',
                };
                s.push_str(&format!(" {k}_{}", t + 1));
            }
        }
        s
    }

    fn sort_key(&self) -> (Monomial, &[usize], &[usize], &[u32]) {
        (self.monomial, &self.j, &self.pi, &self.cells)
    }
}

/// All simple walks on a braid word with `J ⊆ {2..m}`, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkCensus {
    braid: BraidWord,
    walks: Vec<SimpleWalk>,
}

impl WalkCensus {
    fn new(braid: BraidWord, mut walks: Vec<SimpleWalk>) -> WalkCensus {
        walks.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        WalkCensus { braid, walks }
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn walks(&self) -> &[SimpleWalk] {
        &self.walks
    }

    pub fn count(&self) -> usize {
        self.walks.len()
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.walks.iter().map(|w| w.monomial).collect()
    }

    /// One line per walk: monomial, `J`, `π` and weight, tab separated.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for w in &self.walks {
            out.push_str(&format!(
                "{}\tJ={:?}\tpi={:?}\t{}\n",
                w.monomial,
                w.j,
                w.pi,
                w.weight_string()
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellColor {
    Red,
    Black,
    Uncolored,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvalidReason {
    /// Red and black meet on the arc through this crossing's seeds.
    Collision { crossing: usize },
    /// The first strand at the top/bottom of the braid would be red.
    FirstStrandRed,
}

/// Colors of every cell after propagation from the seeds of a monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringMap {
    width: usize,
    colors: Vec<CellColor>,
    free: Vec<Vec<u32>>,
}

impl ColoringMap {
    pub fn color(&self, cell: Cell) -> CellColor {
        self.colors[cell.level * self.width + cell.column - 1]
    }

    /// Uncolored closed components that avoid strand 1; empty for knots.
    pub fn free_components(&self) -> usize {
        self.free.len()
    }

    /// The coloring with the free components selected by `subset` made red.
    pub fn with_free_red(&self, subset: u64) -> ColoringMap {
        let mut out = self.clone();
        for (k, comp) in self.free.iter().enumerate() {
            if subset >> k & 1 == 1 {
                for &c in comp {
                    out.colors[c as usize] = CellColor::Red;
                }
            }
        }
        out.free.clear();
        out
    }

    fn is_red(&self, level: usize, column: usize) -> bool {
        self.colors[level * self.width + column - 1] == CellColor::Red
    }

    fn bottom_red(&self, length: usize) -> Vec<usize> {
        (1..=self.width).filter(|&p| self.is_red(length, p)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coloring {
    Valid(ColoringMap),
    Invalid(InvalidReason),
}

// Closed components of the partially smoothed closure and the color
// forced on each by the seeds.
// Component ids per cell are left in the caller's scratch buffer.
struct Scan {
    color: Vec<CellColor>,
    top_left: u32,
}

fn scan(b: &BraidWord, mono: Monomial, scratch: &mut Vec<u32>) -> std::result::Result<Scan, InvalidReason> {
    let m = b.width();
    let len = b.len();
    let cells = (len + 1) * m;
    const NONE: u32 = u32::MAX;
    scratch.clear();
    scratch.resize(cells, NONE);
    let comp = scratch;
    let mut ncomp = 0u32;
    for start in 0..m {
        if comp[len * m + start] != NONE {
            continue;
        }
        let id = ncomp;
        ncomp += 1;
        let mut col = start;
        loop {
            comp[len * m + col] = id;
            for t in (1..=len).rev() {
                let l = b.crossing(t);
                let (lo, hi) = (l.index - 1, l.index);
                if (col == lo || col == hi) && !mono.contains(t) {
                    col = if col == lo { hi } else { lo };
                }
                comp[(t - 1) * m + col] = id;
            }
            if comp[len * m + col] != NONE {
                break;
            }
        }
    }
    let mut color = vec![CellColor::Uncolored; ncomp as usize];
    for t in 1..=len {
        if !mono.contains(t) {
            continue;
        }
        let l = b.crossing(t);
        let (red_col, black_col) = match l.sign {
            Sign::Pos => (l.index - 1, l.index),
            Sign::Neg => (l.index, l.index - 1),
        };
        for (col, want) in [(red_col, CellColor::Red), (black_col, CellColor::Black)] {
            let c = comp[t * m + col] as usize;
            match color[c] {
                CellColor::Uncolored => color[c] = want,
                have if have == want => {}
                _ => return Err(InvalidReason::Collision { crossing: t }),
            }
        }
    }
    let top_left = comp[0];
    if color[top_left as usize] == CellColor::Red {
        return Err(InvalidReason::FirstStrandRed);
    }
    Ok(Scan { color, top_left })
}

impl Scan {
    fn free_components(&self) -> Vec<u32> {
        (0..self.color.len() as u32)
            .filter(|&c| c != self.top_left && self.color[c as usize] == CellColor::Uncolored)
            .collect()
    }

    // number of walks carried by this monomial (J = ∅ excluded)
    fn walk_count(&self) -> u64 {
        let free = self.free_components().len() as u32;
        let seeded = self.color.contains(&CellColor::Red);
        if seeded {
            1 << free
        } else {
            (1 << free) - 1
        }
    }
}

/// Seeds the coloring of `mono` and propagates it around the closure.
pub fn color_from_monomial(b: &BraidWord, mono: Monomial) -> Coloring {
    let mut comp = Vec::new();
    match scan(b, mono, &mut comp) {
        Err(reason) => Coloring::Invalid(reason),
        Ok(s) => {
            let free_ids = s.free_components();
            let free = free_ids
                .iter()
                .map(|&id| {
                    (0..comp.len() as u32)
                        .filter(|&c| comp[c as usize] == id)
                        .collect()
                })
                .collect();
            let colors = comp
                .iter()
                .map(|&c| s.color[c as usize])
                .collect();
            Coloring::Valid(ColoringMap {
                width: b.width(),
                colors,
                free,
            })
        }
    }
}

/// Reads the walk off a valid coloring by following red cells upward from
/// each red bottom cell.
///
/// # Panics
///
/// If the trace leaves the red cells, which would mean the coloring was not
/// produced by [`color_from_monomial`] for the same `b` and `mono`.
pub fn trace_walk(b: &BraidWord, mono: Monomial, coloring: &ColoringMap) -> SimpleWalk {
    let m = b.width();
    let len = b.len();
    let j = coloring.bottom_red(len);
    let mut local_words: Vec<LocalWord> = vec![Vec::new(); len];
    let mut cells = Vec::new();
    let mut pi = Vec::with_capacity(j.len());
    for &start in &j {
        let mut col = start;
        cells.push((len * m + col - 1) as u32);
        for t in (1..=len).rev() {
            let l = b.crossing(t);
            if let Some((kind, exit)) = step(l.index, l.sign, col, mono.contains(t)) {
                local_words[t - 1].push(LocalLetter { kind, sign: l.sign });
                col = exit;
            }
            assert!(
                coloring.is_red(t - 1, col),
                "trace of {b} with monomial {mono} left the red arcs at crossing {t}"
            );
            cells.push(((t - 1) * m + col - 1) as u32);
        }
        pi.push(col);
    }
    cells.sort_unstable();
    assert!(
        cells.windows(2).all(|w| w[0] != w[1]),
        "paths of {b} with monomial {mono} share a cell"
    );
    let inv = inversions(&pi);
    SimpleWalk {
        width: m,
        monomial: mono,
        prefactor: Prefactor::for_walk(j.len(), inv),
        j,
        pi,
        inv,
        local_words,
        cells,
    }
}

/// Forced move of a path in column `col` meeting crossing `σ_index^{sign}`
/// from below. `None` when the crossing does not involve `col`. A path on
/// the overstrand jumps exactly when `active`.
fn step(index: usize, sign: Sign, col: usize, active: bool) -> Option<(LetterKind, usize)> {
    let (lo, hi) = (index, index + 1);
    if col != lo && col != hi {
        return None;
    }
    let over_entry = match sign {
        Sign::Pos => lo,
        Sign::Neg => hi,
    };
    let other = if col == lo { hi } else { lo };
    Some(if col == over_entry {
        if active {
            (LetterKind::A, col)
        } else {
            (LetterKind::C, other)
        }
    } else {
        (LetterKind::B, other)
    })
}

fn inversions(pi: &[usize]) -> usize {
    let mut n = 0;
    for a in 0..pi.len() {
        for b in a + 1..pi.len() {
            if pi[a] > pi[b] {
                n += 1;
            }
        }
    }
    n
}

fn check_length(b: &BraidWord, opts: &EnumOptions) -> Result<()> {
    let limit = opts.max_length.min(HARD_MAX_LENGTH);
    if b.len() > limit {
        return Err(Error::Resource {
            what: "braid length for walk enumeration".into(),
            limit: limit as u64,
            reached: b.len() as u64,
            hint: "raise the limit with --max-length".into(),
        });
    }
    Ok(())
}

pub fn enumerate_simple_walks(b: &BraidWord) -> Result<WalkCensus> {
    enumerate_simple_walks_with(b, &EnumOptions::default())
}

/// Scans all `2^ℓ` monomials in parallel and reconstructs each valid walk.
pub fn enumerate_simple_walks_with(b: &BraidWord, opts: &EnumOptions) -> Result<WalkCensus> {
    check_length(b, opts)?;
    let total = 1u64 << b.len();
    let walks: Vec<SimpleWalk> = (0..total)
        .into_par_iter()
        .map_init(Vec::new, |scratch, bits| {
            let mono = Monomial(bits);
            if scan(b, mono, scratch).is_err() {
                return Vec::new();
            }
            let Coloring::Valid(map) = color_from_monomial(b, mono) else {
                unreachable!()
            };
            (0..1u64 << map.free_components())
                .filter_map(|subset| {
                    let concrete = map.with_free_red(subset);
                    if concrete.bottom_red(b.len()).is_empty() {
                        None
                    } else {
                        Some(trace_walk(b, mono, &concrete))
                    }
                })
                .collect()
        })
        .flatten_iter()
        .collect();
    Ok(WalkCensus::new(b.clone(), walks))
}

/// `|SW_β|` without building the walks.
pub fn count_simple_walks(b: &BraidWord) -> Result<u64> {
    count_simple_walks_with(b, &EnumOptions::default())
}

pub fn count_simple_walks_with(b: &BraidWord, opts: &EnumOptions) -> Result<u64> {
    check_length(b, opts)?;
    let total = 1u64 << b.len();
    Ok((0..total)
        .into_par_iter()
        .map_init(Vec::new, |scratch, bits| match scan(b, Monomial(bits), scratch) {
            Ok(s) => s.walk_count(),
            Err(_) => 0,
        })
        .sum())
}

/// Simple walks on `β` and on its reflection `β*`; together they form the
/// semi-simple walks.
pub fn enumerate_semi_simple(b: &BraidWord) -> Result<(WalkCensus, WalkCensus)> {
    let here = enumerate_simple_walks(b)?;
    let mirror = enumerate_simple_walks(&b.reflect())?;
    Ok((here, mirror))
}

/// Depth-first path search: for every nonempty `J ⊆ {2..m}` try all jump
/// choices and keep cell-disjoint families whose exits permute `J`.
///
/// Shares nothing with the coloring enumeration beyond [`step`]'s crossing
/// geometry, and serves as its oracle.
pub fn enumerate_paths_dfs(b: &BraidWord) -> Result<WalkCensus> {
    enumerate_paths_dfs_with(b, &EnumOptions::default())
}

pub fn enumerate_paths_dfs_with(b: &BraidWord, opts: &EnumOptions) -> Result<WalkCensus> {
    check_length(b, opts)?;
    let m = b.width();
    let mut walks = Vec::new();
    for jmask in 1u64..1 << (m - 1) {
        let j: Vec<usize> = (0..m - 1).filter(|k| jmask >> k & 1 == 1).map(|k| k + 2).collect();
        let mut search = PathSearch {
            b,
            j: &j,
            used: vec![false; (b.len() + 1) * m],
            paths: Vec::new(),
            out: &mut walks,
        };
        search.next_path();
    }
    Ok(WalkCensus::new(b.clone(), walks))
}

struct Path {
    letters: Vec<(usize, LetterKind)>,
    cells: Vec<u32>,
    jumps: u64,
    exit: usize,
}

struct PathSearch<'a> {
    b: &'a BraidWord,
    j: &'a [usize],
    used: Vec<bool>,
    paths: Vec<Path>,
    out: &'a mut Vec<SimpleWalk>,
}

impl PathSearch<'_> {
    fn next_path(&mut self) {
        let k = self.paths.len();
        if k == self.j.len() {
            self.finish();
            return;
        }
        let start = self.j[k];
        let len = self.b.len();
        let cell = (len * self.b.width() + start - 1) as u32;
        if self.used[cell as usize] {
            return;
        }
        self.used[cell as usize] = true;
        let mut path = Path {
            letters: Vec::new(),
            cells: vec![cell],
            jumps: 0,
            exit: 0,
        };
        self.climb(&mut path, len, start);
        self.used[cell as usize] = false;
    }

    // `path` sits in `col` just below crossing `level` (or at the top when 0)
    fn climb(&mut self, path: &mut Path, level: usize, col: usize) {
        if level == 0 {
            path.exit = col;
            let done = std::mem::replace(
                path,
                Path {
                    letters: Vec::new(),
                    cells: Vec::new(),
                    jumps: 0,
                    exit: 0,
                },
            );
            self.paths.push(done);
            self.next_path();
            *path = self.paths.pop().unwrap();
            return;
        }
        let l = self.b.crossing(level);
        let mut moves = Vec::with_capacity(2);
        match step(l.index, l.sign, col, false) {
            None => moves.push((None, col)),
            Some((kind, exit)) => {
                moves.push((Some(kind), exit));
                if let Some((LetterKind::A, jexit)) = step(l.index, l.sign, col, true) {
                    moves.push((Some(LetterKind::A), jexit));
                }
            }
        }
        let m = self.b.width();
        for (kind, next) in moves {
            let cell = ((level - 1) * m + next - 1) as u32;
            if self.used[cell as usize] {
                continue;
            }
            self.used[cell as usize] = true;
            path.cells.push(cell);
            if let Some(k) = kind {
                path.letters.push((level, k));
                if k == LetterKind::A {
                    path.jumps |= 1 << (level - 1);
                }
            }
            self.climb(path, level - 1, next);
            if let Some(k) = kind {
                path.letters.pop();
                if k == LetterKind::A {
                    path.jumps &= !(1 << (level - 1));
                }
            }
            path.cells.pop();
            self.used[cell as usize] = false;
        }
    }

    fn finish(&mut self) {
        let mut exits: Vec<usize> = self.paths.iter().map(|p| p.exit).collect();
        exits.sort_unstable();
        if exits != self.j {
            return;
        }
        let len = self.b.len();
        let mut local_words: Vec<LocalWord> = vec![Vec::new(); len];
        let mut cells = Vec::new();
        let mut mono = 0;
        for p in &self.paths {
            // letters were pushed bottom-up; local words only hold one letter per path
            for &(t, kind) in &p.letters {
                local_words[t - 1].push(LocalLetter {
                    kind,
                    sign: self.b.crossing(t).sign,
                });
            }
            cells.extend_from_slice(&p.cells);
            mono |= p.jumps;
        }
        cells.sort_unstable();
        let pi: Vec<usize> = self.paths.iter().map(|p| p.exit).collect();
        let inv = inversions(&pi);
        self.out.push(SimpleWalk {
            width: self.b.width(),
            monomial: Monomial(mono),
            j: self.j.to_vec(),
            pi,
            inv,
            local_words,
            cells,
            prefactor: Prefactor::for_walk(self.j.len(), inv),
        });
    }
}
