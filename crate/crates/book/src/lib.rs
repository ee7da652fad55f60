//! Guide listings compiled as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/monomials.md")]
pub mod monomials {}

#[doc = include_str!("../../../book/src/correlators.md")]
pub mod correlators {}

#[doc = include_str!("../../../book/src/recursion.md")]
pub mod recursion {}

#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}

#[doc = include_str!("../../../book/src/classical.md")]
pub mod classical {}

#[doc = include_str!("../../../book/src/consistency.md")]
pub mod consistency {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
