//! Exact Chevalley–Eilenberg cohomology of formal vector fields.
//!
//! See the guide in `book/` for a tour; every code block there is compiled
//! and run as a doctest of this crate.

pub mod cecomplex;
pub mod cocycles;
pub mod combinat;
pub mod exactlin;
pub mod liealg;
pub mod obstruction;
pub mod parabolic;
pub mod verify;
pub mod weyltrunc;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-linear-algebra.md")]
    mod exact_linear_algebra {}
    #[doc = include_str!("../../../book/src/vector-fields.md")]
    mod vector_fields {}
    #[doc = include_str!("../../../book/src/ce-complexes.md")]
    mod ce_complexes {}
    #[doc = include_str!("../../../book/src/spectral-sequences.md")]
    mod spectral_sequences {}
    #[doc = include_str!("../../../book/src/transgression.md")]
    mod transgression {}
    #[doc = include_str!("../../../book/src/cocycles.md")]
    mod cocycles {}
    #[doc = include_str!("../../../book/src/parabolic.md")]
    mod parabolic {}
}
