//! Exact interval algebras Γ(G, u) over lattice-ordered groups, their
//! decompositions into lexicographic products, and a brute-force oracle on
//! finite MV-algebras.

pub mod config;
pub mod dsl;
pub mod error;
pub mod finite;
pub mod group;
pub mod perfect;
pub mod pmv;
pub mod rational;
pub mod report;
pub mod sample;

pub use config::{Caps, Config};
pub use error::{Error, Result};
pub use rational::Rational;
pub use report::{Check, Report};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/intervals.md")]
    mod intervals {}
    #[doc = include_str!("../../../book/src/witnesses.md")]
    mod witnesses {}
    #[doc = include_str!("../../../book/src/representation.md")]
    mod representation {}
    #[doc = include_str!("../../../book/src/ideals.md")]
    mod ideals {}
    #[doc = include_str!("../../../book/src/finite.md")]
    mod finite {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
