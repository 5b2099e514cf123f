//! Compiles every Rust snippet in the guide (`book/`) as a doctest, so the
//! documentation cannot drift from the library. Only built under
//! `cfg(doctest)`.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/chart.md")]
mod chart {}

#[doc = include_str!("../../../book/src/measures.md")]
mod measures {}

#[doc = include_str!("../../../book/src/quenched.md")]
mod quenched {}

#[doc = include_str!("../../../book/src/temporal.md")]
mod temporal {}

#[doc = include_str!("../../../book/src/geometry.md")]
mod geometry {}

#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
