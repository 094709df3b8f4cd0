pub mod collapse;
pub mod complex;
pub mod error;
pub mod formats;
pub mod generators;
pub mod geometry;
pub mod homology;
pub mod linalg;
pub mod nerve;

pub use collapse::{CollapseSchedule, CollapseStep};
pub use complex::{FVector, Simplex, SimplicialComplex, Vertex};
pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/collapses.md")]
    mod collapses {}
    #[doc = include_str!("../../../book/src/nerves.md")]
    mod nerves {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
