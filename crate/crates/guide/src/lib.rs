//! The book's chapters as doc comments, so `cargo test --doc` compiles and
//! runs every Rust listing in `book/src`. One module per chapter keeps
//! failures traceable to their file.

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/bessel.md")]
pub mod bessel {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/secular.md")]
pub mod secular {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/finite-elements.md")]
pub mod finite_elements {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/expansion.md")]
pub mod expansion {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/studies.md")]
pub mod studies {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
