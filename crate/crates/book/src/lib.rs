//! Each chapter of the guide in `book/src` becomes a module here, so
//! `cargo test --doc` compiles and runs every listing against the current
//! library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/weyl_and_bell.md")]
pub mod weyl_and_bell {}

#[doc = include_str!("../../../book/src/bases.md")]
pub mod bases {}

#[doc = include_str!("../../../book/src/cloners.md")]
pub mod cloners {}

#[doc = include_str!("../../../book/src/families.md")]
pub mod families {}

#[doc = include_str!("../../../book/src/tradeoffs.md")]
pub mod tradeoffs {}

#[doc = include_str!("../../../book/src/command_line.md")]
pub mod command_line {}
