//! Adaptive panel quadrature on a fixed 20-point Gauss–Legendre rule.
//!
//! Callers are expected to have removed endpoint derivative singularities
//! (the phase integrals substitute u² = |x − x_t| first), so integrands here
//! are smooth and the rule converges at spectral rate; adaptivity only has to
//! mop up panels far from the asymptotic regime.

use crate::error::{Error, Result};
use std::sync::OnceLock;

const N: usize = 20;
const MAX_DEPTH: u32 = 48;

/// Nodes and weights of the 20-point rule on [−1, 1], computed once by
/// Newton iteration on the Legendre polynomial recurrence.
fn rule() -> &'static [(f64, f64); N] {
    static RULE: OnceLock<[(f64, f64); N]> = OnceLock::new();
    RULE.get_or_init(|| {
        let mut out = [(0.0, 0.0); N];
        for (i, slot) in out.iter_mut().enumerate() {
            // Tricomi-style seed, accurate enough for Newton from any root.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (N as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(x);
                dp = d;
                let step = p / d;
                x -= step;
                if step.abs() <= 1e-16 {
                    let (p2, d2) = legendre_with_derivative(x);
                    dp = d2;
                    x -= p2 / d2;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            *slot = (x, w);
        }
        out
    })
}

/// (P₂₀(x), P₂₀′(x)) via the three-term recurrence.
fn legendre_with_derivative(x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 1..N {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = p_next;
    }
    let d = (N as f64) * (x * p - p_prev) / (x * x - 1.0);
    (p, d)
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for &(x, w) in rule().iter() {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// ∫_a^b f(x) dx to absolute tolerance `abs_tol` (a ≤ b). Fails with interval
/// diagnostics when panel refinement cannot reach the tolerance budget.
pub(crate) fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    debug_assert!(abs_tol > 0.0);
    if a == b {
        return Ok(0.0);
    }
    debug_assert!(a < b);
    let whole = panel(f, a, b);
    refine(f, a, b, whole, abs_tol, MAX_DEPTH)
}

fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let mid = 0.5 * (a + b);
    if mid <= a || mid >= b {
        // Interval has collapsed to machine width; nothing left to split.
        return Ok(whole);
    }
    let left = panel(f, a, mid);
    let right = panel(f, mid, b);
    let split = left + right;
    let err = (split - whole).abs();
    // The f64::EPSILON term stops the budget from demanding sub-ulp agreement
    // on large-magnitude integrals.
    if err <= tol.max(4.0 * f64::EPSILON * split.abs()) {
        return Ok(split);
    }
    if depth == 0 {
        return Err(Error::Quadrature {
            lo: a,
            hi: b,
            estimate: err,
            tolerance: tol,
        });
    }
    Ok(refine(f, a, mid, left, 0.5 * tol, depth - 1)?
        + refine(f, mid, b, right, 0.5 * tol, depth - 1)?)
}
