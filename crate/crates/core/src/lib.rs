//! Fisher information of the half-line hydrogen atom and the infinite well.
//!
//! The crate evaluates bound-state wavefunctions in position and momentum
//! space, integrates the Fisher functionals numerically, and checks them
//! against the closed forms `I_rho = 4/n^2`, `I_gamma = 2n^2`.

pub mod error;
pub mod fisher;
pub mod quadrature;
pub mod specfun;
pub mod systems;
pub mod verify;

pub use error::{Error, Result};
pub use fisher::{
    build_report, fisher_closed_hydrogen, fisher_momentum, fisher_position, orthonormality_check,
    well_fisher_momentum_direct, well_fisher_momentum_via_position, FisherReport, Overlap, Space,
};
pub use quadrature::{
    fourier_transform_numeric, integrate, FourierSample, IntegralResult, IntegrationDomain,
    QuadratureConfig,
};
pub use specfun::{
    kummer_m, laguerre, laguerre_derivative, laguerre_rodrigues_oracle, KummerParams, PolyIndex,
};
pub use systems::{
    hydrogen_energy, hydrogen_gamma, hydrogen_phi, hydrogen_psi, hydrogen_psi_derivative,
    hydrogen_rho, schrodinger_residual, well_energy, well_psi, BoundState, ComplexAmplitude,
    EnergyValue, SystemKind,
};
