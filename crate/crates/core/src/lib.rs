//! Clifford codes over finite error groups, with exact cyclotomic arithmetic.

pub mod chartab;
pub mod clifford;
pub mod cyclo;
pub mod error;
pub mod group;
pub mod matrix;
pub mod rep;
pub mod report;
pub mod search;
pub mod verify;

pub use cyclo::CycNum;
pub use error::{Error, Result};
pub use group::{FiniteGroup, Subgroup};
pub use matrix::CycMatrix;
pub use rep::UnitaryRep;

/// Book chapters, compiled as doc-tests so their snippets stay in sync.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/cyclotomic.md")]
    mod cyclotomic {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/error-groups.md")]
    mod error_groups {}
    #[doc = include_str!("../../../book/src/decomposition.md")]
    mod decomposition {}
    #[doc = include_str!("../../../book/src/codes.md")]
    mod codes {}
    #[doc = include_str!("../../../book/src/stabilizer.md")]
    mod stabilizer {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
