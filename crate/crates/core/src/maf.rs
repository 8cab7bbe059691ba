//! Uniform Airy-function quantization ("MAF"): the wavefunction ansatz
//! ψ(x) = [c₁·Ai(ξ) + c₂·Bi(ξ)]/√(ξ′) with ξ built from the phase integral
//! stays valid straight through the turning point, so a single residual
//! covers both regimes — including the seam E = V(b) where the WKB residual
//! family switches branch.
//!
//! Residuals (zero at eigenvalues):
//! * antisymmetric / half-line:  Ai(ξ₀)·Bi(ξ_b) − Bi(ξ₀)·Ai(ξ_b)
//! * symmetric:  {4ξ₀Ai′(ξ₀)+Ai(ξ₀)}·Bi(ξ_b) − {4ξ₀Bi′(ξ₀)+Bi(ξ₀)}·Ai(ξ_b)
//!
//! with ξ₀ = ξ(0), ξ_b = ξ(b). When ξ_b > 0 the Bi(ξ_b) factor grows like
//! e^{+τ}, τ = (2/3)ξ_b^{3/2}; the residual is therefore evaluated in the
//! balanced form A·[Bi(ξ_b)e^{−τ}] − B·[Ai(ξ_b)e^{+τ}]·e^{−2τ}, every factor
//! of which is representable, with the same zero set.

use crate::airy::airy_all;
use crate::bracket::{solve_nth, solve_seeded};
use crate::error::{invalid, Result};
use crate::model::{seam_energy, turning_point, EigenResult, Geometry, Method, Parity, Potential};
use crate::phase::{allowed_action, forbidden_action, gamma_sq, xi_at};
use crate::wkb::{check_tol, package, spectrum_by, wkb_eigenvalue};

/// Coefficients of the Ai and Bi terms of the MAF ansatz at an eigenvalue,
/// normalized to c1² + c2² = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MafWavefunction {
    pub c1: f64,
    pub c2: f64,
    pub energy: f64,
}

// Coefficients (A, B) of the residual A·Bi(ξ_b) − B·Ai(ξ_b): the center
// boundary condition — ψ(0) = 0 for odd states, ψ′(0) = 0 for even ones
// (the ξ″(0) = −ξ′(0)²/(2ξ₀) identity folds the envelope derivative into
// the 4ξ₀·Ai′ + Ai combination).
fn center_coefficients(parity: Parity, xi0: f64) -> Result<(f64, f64)> {
    let a0 = airy_all(xi0)?;
    Ok(match parity {
        Parity::Antisymmetric | Parity::HalfLine => (a0.ai, a0.bi),
        Parity::Symmetric => (
            4.0 * xi0 * a0.ai_prime + a0.ai,
            4.0 * xi0 * a0.bi_prime + a0.bi,
        ),
    })
}

/// Quantization residual at trial energy `energy`; zero at eigenvalues and —
/// unlike the WKB residual — continuous across the regime seam.
pub fn maf_residual(
    potential: &Potential,
    geometry: &Geometry,
    parity: Parity,
    energy: f64,
) -> Result<f64> {
    parity.check_compatible(geometry)?;
    let xi0 = xi_at(potential, energy, 0.0)?.xi;
    let xib = xi_at(potential, energy, geometry.b)?.xi;
    let (a, b) = center_coefficients(parity, xi0)?;
    let qb = airy_all(xib)?;
    if xib > 0.0 {
        let tau = 2.0 / 3.0 * xib * xib.sqrt();
        let bi_scaled = qb.bi * (-tau).exp();
        let ai_scaled = qb.ai * tau.exp();
        Ok(a * bi_scaled - b * ai_scaled * (-2.0 * tau).exp())
    } else {
        Ok(a * qb.bi - b * qb.ai)
    }
}

// Action between the wall and the turning point — how deep `energy` sits
// inside one WKB regime, in phase units. Within ~1 of the seam the two WKB
// residual families both carry an estimate of the same physical state, so
// WKB ordinals stop matching MAF ordinals there.
fn seam_action_distance(potential: &Potential, geometry: &Geometry, energy: f64) -> Result<f64> {
    if seam_energy(potential, geometry).is_none() {
        return Ok(f64::INFINITY);
    }
    let x_t = turning_point(potential, energy)?;
    if x_t >= geometry.b {
        allowed_action(potential, energy, geometry.b, x_t)
    } else {
        forbidden_action(potential, energy, x_t, geometry.b)
    }
}

/// The (n+1)-th ascending eigenvalue of the given parity class.
///
/// The WKB root for the same state seeds the bracket when it is trustworthy
/// (the two methods agree to a small fraction of the root spacing). A seed
/// in the seam band — or no WKB root at all — forces a scan of the MAF
/// residual from scratch, which needs no seam handling and establishes the
/// ordinal by construction.
pub fn maf_eigenvalue(
    potential: &Potential,
    geometry: &Geometry,
    parity: Parity,
    n: usize,
    tol: f64,
) -> Result<EigenResult> {
    parity.check_compatible(geometry)?;
    check_tol(tol)?;
    let mut f = |e: f64| maf_residual(potential, geometry, parity, e);
    let seed = match wkb_eigenvalue(potential, geometry, parity, n, 1.0) {
        Ok(r) if seam_action_distance(potential, geometry, r.energy)? >= 1.5 => Some(r.energy),
        _ => None,
    };
    let refined = match seed {
        Some(e) => solve_seeded(&mut f, potential, geometry, e, n, tol)?,
        None => solve_nth(&mut f, potential, geometry, n, tol, false)?,
    };
    package(potential, geometry, Method::Maf, parity, n, refined)
}

/// First `count` states ordered by energy; see `wkb_spectrum` for ordering.
pub fn maf_spectrum(
    potential: &Potential,
    geometry: &Geometry,
    count: usize,
    tol: f64,
) -> Result<Vec<EigenResult>> {
    spectrum_by(potential, geometry, count, tol, &mut maf_eigenvalue)
}

/// Ansatz coefficients for the state at `energy`, fixed by the center
/// boundary condition and normalized to c1² + c2² = 1 with a deterministic
/// overall sign (c1 > 0, or c2 > 0 when c1 vanishes).
pub fn maf_coefficients(
    potential: &Potential,
    geometry: &Geometry,
    parity: Parity,
    energy: f64,
) -> Result<MafWavefunction> {
    parity.check_compatible(geometry)?;
    let xi0 = xi_at(potential, energy, 0.0)?.xi;
    // ψ(0) ∝ c1·Ai(ξ₀) + c2·Bi(ξ₀) = 0 (odd); the same rotation applied to
    // the primed combination enforces ψ′(0) = 0 (even).
    let (a, b) = center_coefficients(parity, xi0)?;
    let (c1, c2) = (b, -a);
    let norm = c1.hypot(c2);
    if norm == 0.0 {
        return Err(invalid(
            "degenerate center condition: both coefficients vanish",
        ));
    }
    let sign = if c1 != 0.0 { c1.signum() } else { c2.signum() };
    Ok(MafWavefunction {
        c1: sign * c1 / norm,
        c2: sign * c2 / norm,
        energy,
    })
}

/// Un-normalized ψ at the points `xs` (all within [0, b]) for a converged
/// MAF eigenvalue.
pub fn maf_wavefunction(
    potential: &Potential,
    geometry: &Geometry,
    parity: Parity,
    result: &EigenResult,
    xs: &[f64],
) -> Result<Vec<f64>> {
    if result.method != Method::Maf {
        return Err(invalid(format!(
            "wavefunction evaluation requires a MAF result, got {:?}",
            result.method
        )));
    }
    let coeffs = maf_coefficients(potential, geometry, parity, result.energy)?;
    xs.iter()
        .map(|&x| {
            if !(0.0..=geometry.b).contains(&x) {
                return Err(invalid(format!(
                    "wavefunction sample {x} outside [0, {}]",
                    geometry.b
                )));
            }
            let xi = xi_at(potential, result.energy, x)?.xi;
            let q = airy_all(xi)?;
            Ok((coeffs.c1 * q.ai + coeffs.c2 * q.bi)
                / xi_slope(potential, result.energy, x, xi)?.sqrt())
        })
        .collect()
}

/// dξ/dx, computed algebraically from ξ′²·ξ = −Γ² (exact given ξ); at the
/// turning point the one-sided limit is V′(x_t)^{1/3}.
fn xi_slope(potential: &Potential, energy: f64, x: f64, xi: f64) -> Result<f64> {
    if xi.abs() <= 1e-8 {
        let (s, p) = match potential {
            Potential::Power { strength, exponent } => (*strength, *exponent),
            Potential::Free => {
                return Err(crate::error::domain(
                    "the free potential has no turning point to expand around",
                ))
            }
        };
        let x_t = crate::model::turning_point(potential, energy)?;
        Ok((s * p * x_t.powf(p - 1.0)).cbrt())
    } else {
        Ok((gamma_sq(potential, energy, x) / -xi).sqrt())
    }
}
