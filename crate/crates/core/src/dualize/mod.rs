//! The dualizing complex `ω•`, the duality `D = RHom_R(-, ω•)` and the
//! cohomology theories read off from it.

pub mod cohomology;
pub mod duality;
pub mod omega;

pub use cohomology::{
    auslander_report, cellular_compact_cohomology, cellular_sheaf_cohomology, compact_cohomology,
    local_cohomology, open_cohomology, sheaf_cohomology, AuslanderReport,
};
pub use duality::{dualize_complex, dualize_module, ext_against_omega, ext_against_omega_complex};
pub use omega::{build_omega, Omega};
