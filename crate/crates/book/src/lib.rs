//! The guide under `book/src`, with each chapter compiled as a module so
//! that `cargo test` runs its code blocks as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/multiplexers.md")]
pub mod multiplexers {}
#[doc = include_str!("../../../book/src/polarity.md")]
pub mod polarity {}
#[doc = include_str!("../../../book/src/butterflies.md")]
pub mod butterflies {}
#[doc = include_str!("../../../book/src/cost.md")]
pub mod cost {}
#[doc = include_str!("../../../book/src/search.md")]
pub mod search {}
#[doc = include_str!("../../../book/src/classical.md")]
pub mod classical {}
#[doc = include_str!("../../../book/src/pla.md")]
pub mod pla {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
