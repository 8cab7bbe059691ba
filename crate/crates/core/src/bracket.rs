//! Root bracketing and refinement for quantization residuals.
//!
//! The residuals are oscillatory in energy with quasi-uniform spacing in the
//! accumulated action θ_b, not in E, so the scan advances by steps sized from
//! the local action derivative dθ_b/dE (≤ π/4 of phase per step — a quarter of
//! the root spacing within one parity class). Near E = 0 the derivative may
//! shrink (large-p wells), so steps are additionally capped at a fraction of
//! the current energy, keeping the phase advance bounded even where the
//! derivative grows along the step.

use crate::error::{Error, Result};
use crate::model::{evaluate_potential, seam_energy, Geometry, Potential};
use crate::phase::phase_derivative;

/// Scan origin: effectively zero energy without tripping E > 0 domain checks.
pub(crate) const SCAN_START: f64 = 1e-8;

/// Refinement stops when the bracket width falls to this relative size.
const REL_WIDTH: f64 = 1e-12;

/// Roots closer to the regime seam than this (relative to the seam energy)
/// are reported as degenerate rather than trusted.
const SEAM_DEGENERACY_REL: f64 = 1e-6;

const FRAC_PI_4: f64 = std::f64::consts::FRAC_PI_4;

/// A refined root plus the work done to find it.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Refined {
    pub energy: f64,
    pub bracket: (f64, f64),
    pub evaluations: usize,
    /// |residual| at the returned energy (the quantity checked against tol).
    pub residual: f64,
}

/// Finds the (index+1)-th ascending root of `residual` above `SCAN_START`.
///
/// With `split_at_seam`, the scan never compares residual signs across
/// E = V(b), where the residual family itself switches branch; a root hiding
/// exactly at the seam is reported as degenerate, never silently bridged.
pub(crate) fn solve_nth<F>(
    residual: &mut F,
    potential: &Potential,
    geometry: &Geometry,
    index: usize,
    tol: f64,
    split_at_seam: bool,
) -> Result<Refined>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut evaluations = 0usize;
    let seam = seam_energy(potential, geometry);
    let ceiling = scan_ceiling(geometry, index, seam);

    let mut segments: Vec<(f64, f64)> = Vec::new();
    match seam {
        Some(s) if split_at_seam && s > SCAN_START => {
            // End the first segment a hair short of the seam so the regime
            // classifier cannot tie-break the endpoint into the wrong branch.
            let below = evaluate_potential(potential, geometry.b - 1e-11).min(s * (1.0 - 1e-12));
            segments.push((SCAN_START, below));
            segments.push((s, ceiling));
        }
        _ => segments.push((SCAN_START, ceiling)),
    }

    let mut remaining = index;
    for (seg_lo, seg_hi) in segments {
        if seg_hi <= seg_lo {
            continue;
        }
        let mut e_prev = seg_lo;
        evaluations += 1;
        let mut f_prev = residual(e_prev)?;
        while e_prev < seg_hi {
            let e_next = (e_prev + scan_step(potential, geometry, e_prev)?).min(seg_hi);
            evaluations += 1;
            let f_next = residual(e_next)?;
            if f_prev == 0.0 || f_prev * f_next < 0.0 {
                if remaining == 0 {
                    let refined = if f_prev == 0.0 {
                        Refined {
                            energy: e_prev,
                            bracket: (e_prev, e_prev),
                            evaluations: 0,
                            residual: 0.0,
                        }
                    } else {
                        refine(residual, e_prev, e_next, f_prev, f_next)?
                    };
                    evaluations += refined.evaluations;
                    return finish(
                        residual,
                        refined.energy,
                        refined.bracket,
                        seam,
                        tol,
                        evaluations,
                    );
                }
                remaining -= 1;
            }
            e_prev = e_next;
            f_prev = f_next;
        }
    }
    Err(Error::SearchExhausted { index, ceiling })
}

/// Refines a sign change already known to lie near `seed` (spacing permitting)
/// by expanding a bracket around it; falls back to a full scan when the
/// expansion exhausts half the local root spacing without a sign change.
pub(crate) fn solve_seeded<F>(
    residual: &mut F,
    potential: &Potential,
    geometry: &Geometry,
    seed: f64,
    index: usize,
    tol: f64,
) -> Result<Refined>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut evaluations = 0usize;
    let spacing_cap = 0.45 * std::f64::consts::PI
        / phase_derivative(potential, geometry, seed)?.max(f64::MIN_POSITIVE);
    let seam = seam_energy(potential, geometry);

    let mut width = 1e-4 * seed.abs().max(1.0);
    while width <= spacing_cap {
        let lo = (seed - width).max(SCAN_START);
        let hi = seed + width;
        evaluations += 2;
        let f_lo = residual(lo)?;
        let f_hi = residual(hi)?;
        if f_lo == 0.0 {
            return finish(residual, lo, (lo, lo), seam, tol, evaluations);
        }
        if f_hi == 0.0 {
            return finish(residual, hi, (hi, hi), seam, tol, evaluations);
        }
        if f_lo * f_hi < 0.0 {
            let refined = refine(residual, lo, hi, f_lo, f_hi)?;
            evaluations += refined.evaluations;
            return finish(
                residual,
                refined.energy,
                refined.bracket,
                seam,
                tol,
                evaluations,
            );
        }
        width *= 2.0;
    }
    // Seed too far from any root of this residual: authoritative slow path.
    solve_nth(residual, potential, geometry, index, tol, false)
}

fn scan_ceiling(geometry: &Geometry, index: usize, seam: Option<f64>) -> f64 {
    // Generous: far above both the seam and a hard-wall estimate for the
    // requested state; reached only when a quantization condition genuinely
    // has no such root.
    let k = 2.0 * (index as f64 + 1.0);
    let box_estimate = (k * std::f64::consts::FRAC_PI_2 / geometry.b).powi(2);
    1e6 * seam.unwrap_or(1.0).max(1.0) + 1e3 * box_estimate
}

fn scan_step(potential: &Potential, geometry: &Geometry, energy: f64) -> Result<f64> {
    let phase_cap = FRAC_PI_4 / phase_derivative(potential, geometry, energy)?;
    // dθ_b/dE grows like E^{1/p−1/2} for V = s·x^p, so cap the relative step
    // harder for small p to keep the phase advance under half a period.
    let growth = match potential {
        Potential::Power { exponent, .. } => (exponent / 3.0).min(0.5),
        Potential::Free => 0.5,
    };
    Ok(phase_cap.min(growth * energy.max(1e-6)))
}

/// Hybrid secant/bisection refinement of a sign-changing bracket.
fn refine<F>(residual: &mut F, lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Refined>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut lo, mut hi, mut f_lo, mut f_hi) = (lo, hi, f_lo, f_hi);
    let mut evaluations = 0usize;
    for iter in 0..240 {
        let width = hi - lo;
        if width <= REL_WIDTH * hi.abs().max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let trial = if iter % 2 == 0 {
            // Secant estimate, pushed back toward the middle if it crowds an
            // endpoint (slow one-sided convergence otherwise).
            let s = hi - f_hi * width / (f_hi - f_lo);
            s.clamp(lo + 0.125 * width, hi - 0.125 * width)
        } else {
            mid
        };
        evaluations += 1;
        let f_trial = residual(trial)?;
        if f_trial == 0.0 {
            return Ok(Refined {
                energy: trial,
                bracket: (trial, trial),
                evaluations,
                residual: 0.0,
            });
        }
        if (f_trial > 0.0) == (f_lo > 0.0) {
            lo = trial;
            f_lo = f_trial;
        } else {
            hi = trial;
            f_hi = f_trial;
        }
    }
    Ok(Refined {
        energy: 0.5 * (lo + hi),
        bracket: (lo, hi),
        evaluations,
        residual: f_lo.abs().min(f_hi.abs()),
    })
}

fn finish<F>(
    residual: &mut F,
    energy: f64,
    bracket: (f64, f64),
    seam: Option<f64>,
    tol: f64,
    mut evaluations: usize,
) -> Result<Refined>
where
    F: FnMut(f64) -> Result<f64>,
{
    if let Some(s) = seam {
        if (energy - s).abs() <= SEAM_DEGENERACY_REL * s {
            return Err(Error::DegenerateSeam {
                estimate: energy,
                seam: s,
            });
        }
    }
    evaluations += 1;
    let r = residual(energy)?;
    if r.abs() > tol {
        return Err(Error::ResidualAboveTolerance {
            energy,
            residual: r.abs(),
            tolerance: tol,
        });
    }
    Ok(Refined {
        energy,
        bracket,
        evaluations,
        residual: r.abs(),
    })
}
