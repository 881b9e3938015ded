//! Incidence algebras of finite regular cell complexes.
//!
//! The crate works with modules over the incidence algebra `R` of the face
//! poset of a regular cell complex: the dualizing complex `ω•`, the duality
//! functor `D = RHom(-, ω•)`, local, sheaf, compactly supported and open
//! cohomology, Möbius functions, Cohen-Macaulay / Buchsbaum / Gorenstein*
//! tests and the Koszul property. All linear algebra is exact.

pub mod cellcomplex;
pub mod checks;
pub mod classify;
pub mod dualize;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod io;
pub mod koszul;
pub mod linalg;
pub mod poset;
pub mod repalg;
pub mod report;

pub use cellcomplex::{CellComplex, OrderFilter, Region, Subcomplex, EMPTY, EMPTY_LABEL};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use linalg::{Betti, Matrix, VectorComplex};
pub use poset::Poset;
pub use repalg::{ModuleComplex, ModuleMap, RModule, SumComplex, SumKind};
pub use report::CohomologyTable;
