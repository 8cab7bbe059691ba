//! Phase integrals for V(x) = s·|x|^p inside a hard-wall box: classically
//! allowed and forbidden actions, the wall-phase bookkeeping used by the WKB
//! quantization conditions, and the Airy argument ξ(x) used by the uniform
//! quantization condition.
//!
//! Every integral with an endpoint at the classical turning point x_t is
//! evaluated after the substitution u² = |x − x_t|, which removes the
//! square-root derivative singularity there: the transformed integrand
//! 2u·√(|E − V|) is smooth through u = 0, so plain Gauss panels converge at
//! full rate. The substitution is harmless when the endpoint stops short of
//! x_t, so it is applied unconditionally — one code path, no near-singular
//! special cases.

use crate::error::{invalid, Error, Result};
use crate::model::{
    classify_regime, evaluate_potential, turning_point, Geometry, Potential, Regime,
};
use crate::quadrature::integrate;

/// Wall-phase data for one (potential, box, energy) triple.
///
/// `theta_b` is the allowed action accumulated from the box center to
/// whichever comes first of the wall and the turning point; it drives both
/// quantization conditions in the wall-dominated regime and the scan step
/// control. `alpha`/`beta` exist only when the turning point lies inside the
/// box: `alpha` is the allowed action up to x_t plus the π/4 Maslov phase of
/// the smooth turning point, `beta` the tunneling action from x_t to the wall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseQuantities {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub theta_b: f64,
    pub regime: Regime,
}

/// Which side of the turning point an Airy argument belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Allowed,
    Forbidden,
}

/// Airy argument ξ(x): negative in the classically allowed region, zero at
/// the turning point, positive under the barrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiValue {
    pub xi: f64,
    pub side: Side,
}

/// Local momentum squared Γ²(x) = E − V(x) (positive where motion is allowed).
pub fn gamma_sq(potential: &Potential, energy: f64, x: f64) -> f64 {
    energy - evaluate_potential(potential, x)
}

// Absolute tolerance handed to the adaptive integrator, scaled so the phase
// carries ~12 reliable digits even for the deep states where actions are
// large.
fn action_tolerance(energy: f64, span: f64) -> f64 {
    1e-12 * (energy.abs().sqrt() * span.abs()).max(1.0)
}

// Relative slack for endpoint/turning-point comparisons; covers the rounding
// in x_t = (E/s)^{1/p} without letting genuinely misplaced endpoints through.
const ENDPOINT_SLACK: f64 = 1e-9;

/// ∫ √(E − V) dx over [x_lo, x_hi], which must lie in the allowed region
/// (x_hi may touch the turning point).
pub fn allowed_action(potential: &Potential, energy: f64, x_lo: f64, x_hi: f64) -> Result<f64> {
    check_interval(x_lo, x_hi)?;
    if let Potential::Free = potential {
        if energy <= 0.0 {
            return Err(Error::Domain {
                reason: format!("allowed action needs E > 0, got {energy}"),
            });
        }
        return Ok(energy.sqrt() * (x_hi - x_lo));
    }
    let x_t = turning_point(potential, energy)?;
    if x_hi > x_t * (1.0 + ENDPOINT_SLACK) {
        return Err(Error::Domain {
            reason: format!("allowed action endpoint {x_hi} lies beyond the turning point {x_t}"),
        });
    }
    let x_hi = x_hi.min(x_t);
    // u² = x_t − x maps the interval to [√(x_t−x_hi), √(x_t−x_lo)].
    let u_lo = (x_t - x_hi).max(0.0).sqrt();
    let u_hi = (x_t - x_lo).max(0.0).sqrt();
    let f = |u: f64| {
        let x = x_t - u * u;
        2.0 * u * gamma_sq(potential, energy, x).max(0.0).sqrt()
    };
    integrate(&f, u_lo, u_hi, action_tolerance(energy, x_hi - x_lo))
}

/// ∫ √(V − E) dx over [x_lo, x_hi], which must lie under the barrier
/// (x_lo may touch the turning point).
pub fn forbidden_action(potential: &Potential, energy: f64, x_lo: f64, x_hi: f64) -> Result<f64> {
    check_interval(x_lo, x_hi)?;
    if let Potential::Free = potential {
        return Err(Error::Domain {
            reason: "a free particle has no classically forbidden region".into(),
        });
    }
    let x_t = turning_point(potential, energy)?;
    if x_lo < x_t * (1.0 - ENDPOINT_SLACK) {
        return Err(Error::Domain {
            reason: format!("forbidden action endpoint {x_lo} lies before the turning point {x_t}"),
        });
    }
    let x_lo = x_lo.max(x_t);
    // u² = x − x_t maps the interval to [√(x_lo−x_t), √(x_hi−x_t)].
    let u_lo = (x_lo - x_t).max(0.0).sqrt();
    let u_hi = (x_hi - x_t).max(0.0).sqrt();
    let f = |u: f64| {
        let x = x_t + u * u;
        2.0 * u * (-gamma_sq(potential, energy, x)).max(0.0).sqrt()
    };
    integrate(&f, u_lo, u_hi, action_tolerance(energy, x_hi - x_lo))
}

/// Phase data for the quantization conditions at trial energy `energy`.
pub fn phase_quantities(
    potential: &Potential,
    geometry: &Geometry,
    energy: f64,
) -> Result<PhaseQuantities> {
    let regime = classify_regime(potential, energy, geometry)?;
    let b = geometry.b;
    match regime {
        Regime::TurningPointInside => {
            let x_t = turning_point(potential, energy)?;
            let theta_b = allowed_action(potential, energy, 0.0, x_t)?;
            let beta = forbidden_action(potential, energy, x_t, b)?;
            Ok(PhaseQuantities {
                alpha: Some(theta_b + std::f64::consts::FRAC_PI_4),
                beta: Some(beta),
                theta_b,
                regime,
            })
        }
        Regime::TurningPointOutside => Ok(PhaseQuantities {
            alpha: None,
            beta: None,
            theta_b: allowed_action(potential, energy, 0.0, b)?,
            regime,
        }),
    }
}

/// Airy argument of the uniform quantization condition:
/// ξ = −[(3/2)∫_x^{x_t}√(E−V)]^{2/3} on the allowed side,
/// ξ = +[(3/2)∫_{x_t}^{x}√(V−E)]^{2/3} under the barrier.
pub fn xi_at(potential: &Potential, energy: f64, x: f64) -> Result<XiValue> {
    if let Potential::Free = potential {
        return Err(Error::Domain {
            reason: "the uniform Airy mapping needs a finite turning point; \
                     the free potential has none"
                .into(),
        });
    }
    if x < 0.0 {
        return Err(invalid(format!("xi is defined for x ≥ 0, got {x}")));
    }
    let x_t = turning_point(potential, energy)?;
    if x <= x_t {
        let action = allowed_action(potential, energy, x, x_t)?;
        Ok(XiValue {
            xi: -(1.5 * action).powf(2.0 / 3.0),
            side: Side::Allowed,
        })
    } else {
        let action = forbidden_action(potential, energy, x_t, x)?;
        Ok(XiValue {
            xi: (1.5 * action).powf(2.0 / 3.0),
            side: Side::Forbidden,
        })
    }
}

/// dθ_b/dE = ½∫ dx/√(E−V) from the center to min(x_t, b): the local density
/// of states that sets safe scan steps and bracket widths.
pub(crate) fn phase_derivative(
    potential: &Potential,
    geometry: &Geometry,
    energy: f64,
) -> Result<f64> {
    let b = geometry.b;
    if let Potential::Free = potential {
        if energy <= 0.0 {
            return Err(Error::Domain {
                reason: format!("phase derivative needs E > 0, got {energy}"),
            });
        }
        return Ok(0.5 * b / energy.sqrt());
    }
    let x_t = turning_point(potential, energy)?;
    let x_hi = x_t.min(b);
    // Same u² = x_t − x substitution: near the turning point the transformed
    // integrand tends to the finite limit 2/√(V′(x_t)).
    let u_lo = (x_t - x_hi).max(0.0).sqrt();
    let u_hi = x_t.sqrt();
    let f = |u: f64| {
        let x = x_t - u * u;
        let g = gamma_sq(potential, energy, x);
        if g <= 0.0 {
            0.0
        } else {
            u / g.sqrt()
        }
    };
    integrate(&f, u_lo, u_hi, 1e-12_f64.max(1e-12 * b / energy.sqrt()))
}

fn check_interval(x_lo: f64, x_hi: f64) -> Result<()> {
    if !x_lo.is_finite() || !x_hi.is_finite() {
        return Err(invalid("action endpoints must be finite"));
    }
    if x_lo < 0.0 {
        return Err(invalid(format!("action endpoints must be ≥ 0, got {x_lo}")));
    }
    if x_hi < x_lo {
        return Err(invalid(format!(
            "action interval is reversed: [{x_lo}, {x_hi}]"
        )));
    }
    Ok(())
}
