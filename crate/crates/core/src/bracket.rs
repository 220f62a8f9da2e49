//! Jones polynomial of a braid closure by brute-force Kauffman bracket.
//!
//! Independent of the walk machinery: only [`BraidWord`] and [`LaurentPoly`]
//! are shared. Used as ground truth for `N = 2`.

use rayon::prelude::*;

use crate::braid::{BraidWord, Sign};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Default cap on crossings, i.e. on `2^ℓ` states.
pub const DEFAULT_MAX_CROSSINGS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PdCrossing {
    pub sign: Sign,
    /// Edge ids counterclockwise from the lower left:
    /// lower left, lower right, upper right, upper left.
    pub ends: [u32; 4],
}

/// The closure diagram. Edges are the cells of the braid with the bottom
/// row identified with the top row; columns not involved in a crossing are
/// joined straight through it by a pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    pub edges: usize,
    pub crossings: Vec<PdCrossing>,
    pub passes: Vec<(u32, u32)>,
    /// Loops of a zero-crossing closure with no edges.
    pub bare_circles: usize,
}

impl PlanarDiagram {
    /// Every edge has exactly two ends.
    pub fn is_closed(&self) -> bool {
        let mut ends = vec![0u32; self.edges];
        for c in &self.crossings {
            for &e in &c.ends {
                ends[e as usize] += 1;
            }
        }
        for &(a, b) in &self.passes {
            ends[a as usize] += 1;
            ends[b as usize] += 1;
        }
        ends.iter().all(|&n| n == 2)
    }
}

pub fn braid_closure_pd(b: &BraidWord) -> PlanarDiagram {
    let m = b.width();
    let len = b.len();
    if len == 0 {
        return PlanarDiagram {
            edges: 0,
            crossings: Vec::new(),
            passes: Vec::new(),
            bare_circles: m,
        };
    }
    // cell (level, col) with level ℓ folded onto level 0
    let edge = |level: usize, col: usize| ((level % len) * m + col) as u32;
    let mut crossings = Vec::with_capacity(len);
    let mut passes = Vec::new();
    for t in 1..=len {
        let l = b.crossing(t);
        let (lo, hi) = (l.index - 1, l.index);
        crossings.push(PdCrossing {
            sign: l.sign,
            ends: [edge(t, lo), edge(t, hi), edge(t - 1, hi), edge(t - 1, lo)],
        });
        for c in (0..m).filter(|&c| c != lo && c != hi) {
            passes.push((edge(t, c), edge(t - 1, c)));
        }
    }
    PlanarDiagram {
        edges: len * m,
        crossings,
        passes,
        bare_circles: 0,
    }
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn reset(&mut self, n: usize) {
        self.0.clear();
        self.0.extend(0..n as u32);
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let p = self.0[x as usize];
            self.0[x as usize] = self.0[p as usize];
            x = p;
        }
        x
    }

    // returns true when two classes merged
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a as usize] = b;
        true
    }
}

fn loops(pd: &PlanarDiagram, mask: u64, uf: &mut UnionFind) -> usize {
    uf.reset(pd.edges);
    let mut classes = pd.edges;
    for &(a, c) in &pd.passes {
        classes -= uf.union(a, c) as usize;
    }
    for (k, x) in pd.crossings.iter().enumerate() {
        let a_smoothing = mask >> k & 1 == 1;
        // A joins the two ends the overstrand sweeps to counterclockwise:
        // vertically for a positive crossing, horizontally for a negative one.
        let vertical = a_smoothing == (x.sign == Sign::Pos);
        let [ll, lr, ur, ul] = x.ends;
        let (p, q) = if vertical { ((ll, ul), (lr, ur)) } else { ((ll, lr), (ul, ur)) };
        classes -= uf.union(p.0, p.1) as usize;
        classes -= uf.union(q.0, q.1) as usize;
    }
    classes + pd.bare_circles
}

/// Histogram of `(#A smoothings, loops)` over all states.
fn state_histogram(pd: &PlanarDiagram) -> Vec<Vec<u64>> {
    let n = pd.crossings.len();
    let max_loops = pd.edges + pd.bare_circles + 1;
    let empty = || vec![vec![0u64; max_loops + 1]; n + 1];
    (0..1u64 << n)
        .into_par_iter()
        .fold(
            || (empty(), UnionFind(Vec::new())),
            |(mut hist, mut uf), mask| {
                let l = loops(pd, mask, &mut uf);
                hist[mask.count_ones() as usize][l] += 1;
                (hist, uf)
            },
        )
        .map(|(h, _)| h)
        .reduce(empty, |mut a, b| {
            for (ra, rb) in a.iter_mut().zip(b) {
                for (x, y) in ra.iter_mut().zip(rb) {
                    *x += y;
                }
            }
            a
        })
}

/// Unnormalized bracket `⟨D⟩ / δ` as a polynomial in `A`, stored with the
/// exponent of `A` in the doubled-exponent slot.
fn bracket_in_a(pd: &PlanarDiagram) -> LaurentPoly {
    let n = pd.crossings.len() as i64;
    let delta = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
    let hist = state_histogram(pd);
    let mut total = LaurentPoly::zero();
    let mut delta_pows = vec![LaurentPoly::one()];
    for (na, row) in hist.iter().enumerate() {
        for (l, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            while delta_pows.len() < l {
                let next = delta_pows.last().unwrap() * &delta;
                delta_pows.push(next);
            }
            let a_pow = 2 * na as i64 - n;
            total += &(&delta_pows[l - 1] * &LaurentPoly::monomial(count, a_pow));
        }
    }
    total
}

pub fn jones_via_bracket(b: &BraidWord) -> Result<LaurentPoly> {
    jones_via_bracket_with(b, DEFAULT_MAX_CROSSINGS)
}

/// `V(t) = (-A^3)^{-w} ⟨D⟩ / δ` at `A = t^{-1/4}`, returned in `q = t`.
pub fn jones_via_bracket_with(b: &BraidWord, max_crossings: usize) -> Result<LaurentPoly> {
    if b.len() > max_crossings.min(63) {
        return Err(Error::Resource {
            what: "crossings for the bracket state sum".into(),
            limit: max_crossings.min(63) as u64,
            reached: b.len() as u64,
            hint: "the state sum visits 2^crossings states".into(),
        });
    }
    let pd = braid_closure_pd(b);
    let w = b.writhe();
    let in_a = bracket_in_a(&pd).shift_doubled(-3 * w).scale_sign(w % 2 != 0);
    let mut terms = Vec::with_capacity(in_a.num_terms());
    for (k, c) in in_a.terms() {
        // A^k = t^{-k/4}; the bracket of a closure only has even powers of A
        debug_assert!(k % 2 == 0, "odd power of A in bracket of {b}");
        terms.push((-k / 2, c.clone()));
    }
    Ok(LaurentPoly::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    fn jones(s: &str) -> LaurentPoly {
        jones_via_bracket(&w(s)).unwrap()
    }

    #[test]
    fn diagrams_are_closed() {
        for s in ["[1,1,1]", "[1,-2,1,-2]", "[1,2,-3,2,1]"] {
            let pd = braid_closure_pd(&w(s));
            assert!(pd.is_closed(), "{s}");
            assert_eq!(pd.crossings.len(), w(s).len());
        }
        let pd = braid_closure_pd(&BraidWord::unknot());
        assert!(pd.crossings.is_empty());
        assert!(pd.is_closed());
    }

    #[test]
    fn unknots() {
        assert!(jones_via_bracket(&BraidWord::unknot()).unwrap().is_one());
        assert!(jones("[1]").is_one());
        assert!(jones("[-1,2,-3]").is_one());
        assert!(jones("[1,1,-1]").is_one());
    }

    #[test]
    fn unlink_of_two() {
        // width 2, no crossings: -t^{1/2} - t^{-1/2}
        let b = BraidWord::new(2, Vec::new()).unwrap();
        let v = jones_via_bracket(&b).unwrap();
        assert_eq!(v, LaurentPoly::from_terms([(1, -1), (-1, -1)]));
    }

    #[test]
    fn trefoils() {
        assert_eq!(jones("[1,1,1]").to_string(), "q + q^3 - q^4");
        assert_eq!(jones("[-1,-1,-1]").to_string(), "-q^-4 + q^-3 + q^-1");
    }

    #[test]
    fn figure_eight() {
        assert_eq!(jones("[1,-2,1,-2]").to_string(), "q^-2 - q^-1 + 1 - q + q^2");
    }

    #[test]
    fn hopf_link() {
        assert_eq!(jones("[1,1]"), LaurentPoly::from_terms([(1, -1), (5, -1)]));
    }

    #[test]
    fn skein_relation() {
        let t = |k: i64| LaurentPoly::monomial(1, 2 * k);
        let lhs = &(&t(-1) * &jones("[1,1,1]")) - &(&t(1) * &jones("[1,1,-1]"));
        let root = LaurentPoly::from_terms([(1, 1), (-1, -1)]);
        assert_eq!(lhs, &root * &jones("[1,1]"));
    }

    #[test]
    fn markov_moves() {
        let b = w("[1,2,2,2,1,-2]");
        let v = jones_via_bracket(&b).unwrap();
        for k in 1..b.len() as isize {
            assert_eq!(jones_via_bracket(&b.cyclic_shift(k)).unwrap(), v);
        }
        assert_eq!(jones_via_bracket(&b.stabilize(Sign::Pos)).unwrap(), v);
        assert_eq!(jones_via_bracket(&b.stabilize(Sign::Neg)).unwrap(), v);
        assert_eq!(jones_via_bracket(&b.reflect()).unwrap(), v.invert_q());
        assert!(v.has_integer_exponents());
    }

    #[test]
    fn state_limit() {
        let b = BraidWord::from_signed(&[1; 21]).unwrap();
        assert!(matches!(jones_via_bracket(&b), Err(Error::Resource { .. })));
    }
}
