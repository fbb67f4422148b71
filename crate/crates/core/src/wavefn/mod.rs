pub mod basis;
pub mod boundary;
pub mod field;
pub mod jet;
pub mod profile;
pub mod quad;
pub mod states;

pub use basis::{multiplet, operator_matrix, second_basis, second_basis_with, SecondBasis, SecondBasisState};
pub use boundary::{boundary_check, branch_census, BoundaryReport, BranchCombo};
pub use field::{Partials, SmoothField, Term};
pub use jet::{Jet, MAX_ORDER};
pub use profile::Profile;
pub use quad::{inner_product, integrate_half_line, integrate_strip, StripIntegral, StripQuadrature, DEFAULT_STRIP_NODES};
pub use states::{
    channel_profile, chi_l, chi_profile, chibar_l, chibar_profile, degeneracy_2d, energy_2d, omega_zero_mode,
    psi_bar_nl, psi_nl, r_eigenvalue, spectrum_2d, SpectrumEntry, ZeroModeKind,
};
