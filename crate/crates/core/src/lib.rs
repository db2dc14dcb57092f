pub mod cohomology;
pub mod combinatorics;
pub mod error;
pub mod f2;
pub mod monogenic;
pub mod polygon;
pub mod suites;
pub mod tc;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polygon-spaces.md")]
    mod polygon_spaces {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology {}
    #[doc = include_str!("../../../book/src/monogenic.md")]
    mod monogenic {}
    #[doc = include_str!("../../../book/src/zero-divisors.md")]
    mod zero_divisors {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
