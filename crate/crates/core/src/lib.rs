//! Photon-added and photon-subtracted finite Fock superpositions.
//!
//! The crate builds qudit states (with the generalized binomial family as
//! the built-in example), applies `a†ʳ` / `aᵗ` with renormalization,
//! evaluates ladder-operator moments and higher-order nonclassicality
//! witnesses, and computes Wigner functions, optical tomograms and the
//! negative Wigner volume.

pub mod error;
pub mod fock;
pub mod moments;
pub mod phase_space;
pub mod quadrature;
pub mod specfun;
pub mod witnesses;

pub use error::{Error, Result};
pub use fock::{
    add_photons, binomial_state, make_qudit, make_real_qudit, ngbs, ngbs_with_deviation, subtract_photons,
    NgbsParams, NgbsState, QuditState, StateRecord,
};
pub use moments::{factorial_moment, moment, number_moment, MomentOrder, MomentTable};
pub use phase_space::{
    nonclassical_volume, radon_check, tomogram, wigner, wigner_grid, PhaseSpaceGrid, QuadratureReport,
    TomogramSample, WignerField,
};
pub use witnesses::{hoa, hos_hillery, hosps_definition, hosps_literal, WitnessKind, WitnessResult};
pub use num_complex::Complex64;
