//! The quadratic algebra of the planar channel and its finite-dimensional
//! representations.

mod casimir;
mod constants;
mod lmatrix;
mod ratfunc;
mod representation;
mod structure;

pub use casimir::{casimir, casimir_coefficients, casimir_printed, Casimir};
pub use constants::{extract_structure_constants, extract_with, match_combination, AlgebraOps, HPoly, StructureConstants};
pub use ratfunc::{k_plus, kpoly_c, kpoly_k, KPoly, QRat, RatFunc};
pub use structure::{a_general, a_realization_scaled, lift_h, lift_scalar, lower_scalar, mconst, mvar, phi_factorized, phi_general, MPoly, VE, VK, VQ, VU, VX};
pub use representation::{branch_energy, branch_energy_in_n, check_realization, level_energy, level_energy_in_n, phi_printed, r_level, realization, representation, select_physical, BranchSign, BranchVerdict, ParafermionRep, PhysicalSelection, Realization, RealizationCheck, UChoice, SIGN_SAMPLES};
pub use lmatrix::{l_matrix, l_spectrum, phi_nu, phi_nu_poly, sigma_nu, sigma_nu_exact, tau_sq_nu, tau_sq_nu_exact, verify_l_matrix, LMatrixBlock, LMatrixReport, L_MATRIX_REL_TOL};
