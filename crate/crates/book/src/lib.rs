//! The chapters of `book/` as doc-tests, so every snippet compiles and runs
//! under `cargo test`.

#[doc = include_str!("../../../book/src/index.md")]
pub mod index {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../../book/src/laufer.md")]
pub mod laufer {}
#[doc = include_str!("../../../book/src/seifert.md")]
pub mod seifert {}
#[doc = include_str!("../../../book/src/pgseries.md")]
pub mod pgseries {}
#[doc = include_str!("../../../book/src/invariants.md")]
pub mod invariants {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
