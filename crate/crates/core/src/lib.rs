//! Free groups, Hurwitz moves on factorizations, and a constructive reduction
//! from word problems of finitely presented groups to Hurwitz equivalence of
//! 1-factorizations in `F_2 (+) F_2`.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod freegroup;
pub mod hurwitz;
pub mod orbit;
pub mod product;
pub mod reduction;

pub use error::{Error, Result};
pub use freegroup::{Generator, Letter, Sign, Word};
pub use hurwitz::{BraidWord, Factorization, GroupElement};
pub use product::PairElement;
