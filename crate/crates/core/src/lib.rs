//! Simple walks on braid words and the colored Jones polynomial.
//!
//! A knot given as the closure of a braid word has a finite set of *simple
//! walks*: families of disjoint bottom-to-top paths through the braid that
//! may jump from an overstrand to the understrand at a crossing. Summing
//! evaluated stacks of these walks gives the colored Jones polynomial
//! `J_{N,K}(q)` exactly, and the cost of doing so grows with the number of
//! simple walks, so it pays to pick a braid representative that has few.
//!
//! The crate is organised as follows:
//!
//! - [`braid`]: braid words, closures, Markov moves and the symmetry
//!   operations (reflection, rotation, reversal, cyclic shift).
//! - [`laurent`]: exact Laurent polynomials in `q^{1/2}` and Gaussian
//!   binomial/multinomial coefficients.
//! - [`walks`]: simple-walk enumeration by partial smoothing and coloring,
//!   with an independent depth-first path enumerator.
//! - [`engine`]: stack evaluation and the colored Jones polynomial.
//! - [`bracket`]: the Jones polynomial by a Kauffman bracket state sum, used
//!   as ground truth for `N = 2`.
//! - [`closed_forms`]: closed-form sums for `5_2`, `6_1` and `7_2`.
//! - [`minimizer`]: search of the symmetry orbit of a word for the fewest
//!   simple walks.
//! - [`torus`]: walk counts on `(2,n)` and `(3,n)` torus braids.
//!
//! ```
//! use braidwalk::{braid::BraidWord, engine, walks};
//!
//! let fig8: BraidWord = "[1,-2,1,-2]".parse().unwrap();
//! assert_eq!(walks::enumerate_simple_walks(&fig8).unwrap().count(), 2);
//! let jones = engine::colored_jones(&fig8, 2).unwrap();
//! assert_eq!(jones.to_string(), "q^-2 - q^-1 + 1 - q + q^2");
//! ```

pub mod bracket;
pub mod braid;
pub mod closed_forms;
pub mod engine;
mod error;
pub mod laurent;
pub mod minimizer;
pub mod torus;
pub mod walks;

pub use error::{Error, Result};
