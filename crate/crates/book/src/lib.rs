//! Compiles the code listings of the guide in `book/` as doc-tests, so the
//! book cannot drift from the library. mdbook itself cannot link against
//! workspace crates.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/braids.md")]
pub mod braids {}
#[doc = include_str!("../../../book/src/walks.md")]
pub mod walks {}
#[doc = include_str!("../../../book/src/jones.md")]
pub mod jones {}
#[doc = include_str!("../../../book/src/minimizing.md")]
pub mod minimizing {}
#[doc = include_str!("../../../book/src/torus.md")]
pub mod torus {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../book/src/deviations.md")]
pub mod deviations {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
