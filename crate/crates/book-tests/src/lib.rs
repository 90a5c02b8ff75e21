//! Runs every code block of the guide in `book/` as a doctest, so the
//! chapters and the library cannot drift apart. mdBook itself does not
//! execute examples against external crates; including the chapter sources as doc
//! comments here makes `cargo test --doc` do the work.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/filtered-algebras.md")]
pub mod filtered_algebras {}

#[doc = include_str!("../../../book/src/maps-and-kernels.md")]
pub mod maps_and_kernels {}

#[doc = include_str!("../../../book/src/complexes.md")]
pub mod complexes {}

#[doc = include_str!("../../../book/src/function-algebras.md")]
pub mod function_algebras {}

#[doc = include_str!("../../../book/src/classifying-maps.md")]
pub mod classifying_maps {}

#[doc = include_str!("../../../book/src/homotopy-certificates.md")]
pub mod homotopy_certificates {}

#[doc = include_str!("../../../book/src/excision-kit.md")]
pub mod excision_kit {}

#[doc = include_str!("../../../book/src/stabilization.md")]
pub mod stabilization {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
