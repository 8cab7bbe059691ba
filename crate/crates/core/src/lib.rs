//! Eigenenergies of a particle in a box with a power-law well inside:
//! V(x) = s·|x|^p on |x| ≤ b with hard walls at ±b (or a wall at 0 for
//! half-line problems), in units where ħ = 2m = 1.
//!
//! Three routes to the same spectrum:
//! - [`wkb`]: modified WKB quantization with wall-aware phase conditions,
//! - [`maf`]: a uniform Airy-function quantization that stays smooth through
//!   the regime change where the classical turning point crosses the wall,
//! - [`oracle`]: a finite-difference reference solver used for validation.

pub mod airy;
mod bracket;
pub mod error;
pub mod maf;
pub mod model;
pub mod oracle;
pub mod phase;
mod quadrature;
pub mod wkb;

pub use airy::{airy_all, airy_first_zero, AiryQuad, AIRY_MAX_X, AIRY_MIN_X};
pub use error::{Error, Result};
pub use maf::{
    maf_coefficients, maf_eigenvalue, maf_residual, maf_spectrum, maf_wavefunction, MafWavefunction,
};
pub use model::{
    classify_regime, evaluate_potential, seam_energy, turning_point, BoxMode, EigenResult,
    Geometry, Method, Parity, Potential, Regime,
};
pub use oracle::{
    oracle_convergence_report, oracle_eigenvalue, oracle_spectrum, ConvergenceReport,
    ConvergenceRow, MeshSpec,
};
pub use phase::{
    allowed_action, forbidden_action, gamma_sq, phase_quantities, xi_at, PhaseQuantities, Side,
    XiValue,
};
pub use wkb::{wkb_eigenvalue, wkb_residual, wkb_spectrum};
