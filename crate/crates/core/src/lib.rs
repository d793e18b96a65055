//! Exact computational kernels for linear Koszul duality and affine Weyl
//! combinatorics.
//!
//! The crate is `no_std` (it needs `alloc`). IO, JSON formats and the
//! command-line front end live in the `koszulkit` companion crate.
#![no_std]
extern crate alloc;

pub mod affine_weyl;
pub mod braid_hecke;
pub mod dg_koszul;
pub mod error;
pub mod field;
pub mod graded_algebra;
pub mod linalg;
pub mod root_system;

pub use affine_weyl::{AffineWeyl, ExtAffineWeylElement, Facet, WallPosition};
pub use braid_hecke::{
    canonical_lift, find_affine_conjugation, BraidWord, Laurent, Letter, TruncatedHeckeSpace,
};
pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals};
pub use linalg::{Matrix, SparseMatrix, Subspace};
pub use root_system::{CartanType, Coroot, Root, RootSystem, Weight, WeylElement};
