pub mod analysis;
pub mod engine;
pub mod error;
pub mod filters;
pub mod harness;
pub mod lattice;
pub mod record;
pub mod render;
pub mod structures;
pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/laws.md")]
    struct Laws;
    #[doc = include_str!("../../../book/src/mirror.md")]
    struct Mirror;
    #[doc = include_str!("../../../book/src/filters.md")]
    struct Filters;
    #[doc = include_str!("../../../book/src/conservation.md")]
    struct Conservation;
    #[doc = include_str!("../../../book/src/structures.md")]
    struct Structures;
    #[doc = include_str!("../../../book/src/symmetry.md")]
    struct Symmetry;
    #[doc = include_str!("../../../book/src/sweeps.md")]
    struct Sweeps;
    #[doc = include_str!("../../../book/src/render.md")]
    struct Render;
    #[doc = include_str!("../../../README.md")]
    struct Readme;
}
