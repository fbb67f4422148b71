//! Exact operator algebra, spectra and numerical oracles for a particle with
//! position-dependent mass `sech² qx` in a semi-infinite channel.

pub mod coeffring;
pub mod diffalg;
pub mod classical;
pub mod cli;
pub mod error;
pub mod model2d;
pub mod model3d;
pub mod numerics;
pub mod quadalg;
pub mod report;
pub mod wavefn;

pub use error::{Error, Result};
