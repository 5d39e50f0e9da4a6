//! Exact character sums over finite fields and the finite groups `GL(n,q)`
//! and `U(n,q)`.
//!
//! The crate computes Gauss, Kloosterman and hyper-Kloosterman sums in exact
//! cyclotomic arithmetic and checks the generating-function identities that
//! relate them to sums over matrix groups. Group-side quantities come from
//! exhaustive enumeration; series-side quantities come from exact
//! coefficient recurrences. Both are compared with `==` on canonical forms.
//!
//! The guide in `book/` walks through each piece with runnable examples.

pub mod cache;
pub mod characters;
pub mod charsums;
pub mod cyclotomic;
pub mod error;
pub mod ffield;
pub mod matgroups;
pub mod poly;
pub mod polyseries;
pub mod report;

pub use characters::{AddChar, MultChar};
pub use cyclotomic::{CycNum, RootSum};
pub use error::{Error, Result};
pub use ffield::{Elem, Field, FieldElement, FieldSpec};
pub use poly::MonicPoly;
pub use polyseries::SeriesPrefix;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/finite-fields.md")]
    mod finite_fields {}
    #[doc = include_str!("../../../book/src/cyclotomic.md")]
    mod cyclotomic {}
    #[doc = include_str!("../../../book/src/characters.md")]
    mod characters {}
    #[doc = include_str!("../../../book/src/matrix-groups.md")]
    mod matrix_groups {}
    #[doc = include_str!("../../../book/src/generating-functions.md")]
    mod generating_functions {}
    #[doc = include_str!("../../../book/src/unitary.md")]
    mod unitary {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
