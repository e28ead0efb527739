//! Sturmian words, gentle-algebra strings and the brick classification of
//! infinite strings over the double-Kronecker algebra.

pub mod error;
pub mod exact;
pub mod gentle;
pub mod graph_map;
pub mod kronecker;
pub mod linalg;
pub mod representation;
pub mod single_kiss;
pub mod sturmian;
pub mod word;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/words.md")]
    pub struct Words;
    #[doc = include_str!("../../../book/src/sturmian.md")]
    pub struct Sturmian;
    #[doc = include_str!("../../../book/src/gentle.md")]
    pub struct Gentle;
    #[doc = include_str!("../../../book/src/graph_maps.md")]
    pub struct GraphMaps;
    #[doc = include_str!("../../../book/src/double_kronecker.md")]
    pub struct DoubleKronecker;
    #[doc = include_str!("../../../book/src/single_kiss.md")]
    pub struct SingleKiss;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
