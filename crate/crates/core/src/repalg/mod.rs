//! Representations of finite posets: modules over the incidence algebra,
//! sums of projectives and injectives, resolutions and Hom.

pub mod hom;
pub mod module;
pub mod random;
pub mod resolution;
pub mod spec;
pub mod sums;

pub use hom::{ext, hom_space, u_ext, u_hom, u_hom_complex_table, HomSpace, Route};
pub use module::{ModuleComplex, ModuleMap, RModule};
pub use random::random_module;
pub use resolution::{min_injective_resolution, min_projective_resolution, ProjectiveResolution};
pub use spec::{ideal_j, parse_module, MAX_MODULE_DIM, RANDOM_MAX_DIM};
pub use sums::{SumComplex, SumKind};
