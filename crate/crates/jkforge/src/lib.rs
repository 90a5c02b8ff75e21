//! Exact constructive homotopy algebra for non-unital filtered algebras.
//!
//! This crate computes, at a finite truncation cap and with exact
//! coefficients, the elementary building blocks of polynomial homotopy
//! theory of algebras:
//!
//! - filtered based algebras over `Z`, `Q` or a prime field, with exact
//!   kernels, fiber products and split extensions ([`algebra`], [`subalg`]);
//! - finite ordered simplicial complexes with products, barycentric
//!   subdivision and last-vertex maps ([`complex`]);
//! - simplex function algebras `A^K` over finite complexes, path and loop
//!   algebras and the cube-relative kernels ([`funalg`]);
//! - tensor algebras, the universal extension and classifying maps
//!   ([`tensorial`]);
//! - elementary polynomial homotopies and machine-checkable homotopy
//!   certificates ([`homotopy`]);
//! - the mapping-path excision kit ([`excision`]) and matrix stabilization
//!   stages ([`matrices`]);
//! - a declarative scenario runner with deterministic reports
//!   ([`scenario`]).
//!
//! Everything is immutable after construction and every operation is a pure
//! function, so values can be shared freely across threads.

pub mod algebra;
pub mod complex;
pub mod error;
pub mod excision;
pub mod funalg;
pub mod homotopy;
pub mod limits;
pub mod linalg;
pub mod map;
pub mod matrices;
pub mod polyext;
pub mod ring;
pub mod scenario;
pub mod serialize;
pub mod subalg;
pub mod tensorial;

pub use algebra::{Alg, Element, FilteredAlgebra};
pub use error::{Error, Result};
pub use map::{AlgebraMap, Growth, LinearMap, VerifyStatus};
pub use ring::{Ring, Scalar};
