pub mod bessel;
pub mod fd;
pub mod gamma;
pub mod jacobi;
pub mod quadrature;

pub use bessel::{bessel_j, bessel_j_window, bessel_zero};
pub use fd::{fd_convergence_order, fd_cross_check, FdCheck, FDOperator1D};
pub use gamma::log_gamma;
pub use jacobi::{jacobi_p, jacobi_p_generic, Scalar};
pub use quadrature::{composite, gauss_legendre, NeumaierSum, QuadratureRule};
