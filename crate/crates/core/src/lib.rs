//! Monomorphism categories over finite-dimensional algebras, computed exactly over `F_p`.
//!
//! The crate builds concrete algebras from quivers with relations, works with their
//! module categories through dense linear algebra, and realizes the category of
//! monomorphisms `S_X(Λ)` together with its three exact structures (canonical,
//! component-wise split, and split-on-cokernels), the functor into modules over the
//! stable Auslander algebra, and almost split sequences.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command line live in
//! the companion `monocat` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod ar;
pub mod budget;
pub mod error;
pub mod exact;
pub mod field;
pub mod functor;
pub mod linalg;
pub mod module;
pub mod morph;
pub mod subcat;

pub use algebra::{Algebra, Arrow, HomTable, Path, Presentation, Term};
pub use ar::{ArCandidate, ArSearch};
pub use budget::Budget;
pub use error::{Error, Result};
pub use exact::{Conflation, ConflationTable, StructureKind};
pub use field::Fp;
pub use functor::{FunctorModule, StableAuslander};
pub use linalg::{image_basis, kernel_basis, rref, solve_linear, Mat};
pub use module::{ModMap, Module};
pub use morph::{MorphCat, MorphMap, MorphObj};
pub use subcat::Subcat;
