//! Reference eigenvalue solver: 3-point central finite differences on a
//! uniform Dirichlet grid, Sturm-sequence bisection for the k-th eigenvalue
//! of the resulting symmetric tridiagonal matrix, and Richardson
//! extrapolation over (h, h/2) to cancel the leading O(h²) discretization
//! error. The two quantization routes are validated against this solver, so
//! it shares no quadrature, phase-integral, or Airy code with them.

use crate::error::{invalid, Error, Result};
use crate::model::{
    classify_regime, evaluate_potential, BoxMode, EigenResult, Geometry, Method, Parity, Potential,
};

/// Interior grid resolution for the finite-difference solver; the domain
/// ([−b, b] or [0, b]) comes from the `Geometry`, giving spacing
/// h = span/(points + 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeshSpec {
    pub points: usize,
}

impl MeshSpec {
    pub fn new(points: usize) -> Result<Self> {
        if points < 64 {
            return Err(invalid(format!(
                "mesh needs at least 64 interior points, got {points}"
            )));
        }
        Ok(Self { points })
    }
}

// −ψ″ + Vψ discretized: diagonal 2/h² + V(x_i), constant off-diagonal −1/h².
struct Grid {
    diag: Vec<f64>,
    off: f64,
}

impl Grid {
    fn build(potential: &Potential, geometry: &Geometry, points: usize) -> Self {
        let (lo, span) = match geometry.mode {
            BoxMode::SymmetricBox => (-geometry.b, 2.0 * geometry.b),
            BoxMode::HalfLineBox => (0.0, geometry.b),
        };
        let h = span / (points + 1) as f64;
        let inv_h2 = 1.0 / (h * h);
        let diag = (0..points)
            .map(|i| 2.0 * inv_h2 + evaluate_potential(potential, lo + (i + 1) as f64 * h))
            .collect();
        Grid { diag, off: -inv_h2 }
    }

    // Number of eigenvalues strictly below `lambda` (Sturm sequence sign
    // count, with the LAPACK-style pivot floor so e²/q cannot overflow).
    fn count_below(&self, lambda: f64) -> usize {
        let e2 = self.off * self.off;
        let floor = (e2 * f64::MIN_POSITIVE).max(f64::MIN_POSITIVE);
        // q₀ = ∞ makes the first pivot d₀ − λ with no e²/q term.
        let mut q = f64::INFINITY;
        let mut count = 0;
        for &d in &self.diag {
            q = d - lambda - e2 / q;
            if q.abs() < floor {
                q = -floor;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    // k-th (0-based) eigenvalue by bisection; every V here is ≥ 0 so the
    // spectrum sits inside (0, max(diag) + 2|off|).
    fn eigenvalue(&self, k: usize, evaluations: &mut usize) -> Result<f64> {
        let mut lo = 0.0_f64;
        let mut hi = self.diag.iter().fold(0.0_f64, |m, &d| m.max(d)) + 2.0 * self.off.abs();
        for iterations in 0..240 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return Ok(mid);
            }
            *evaluations += 1;
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 1e-13 * hi.abs().max(1.0) {
                return Ok(0.5 * (lo + hi));
            }
            let _ = iterations;
        }
        Err(Error::OracleNonConvergence { iterations: 240 })
    }

    // One inverse-iteration eigenvector for the converged eigenvalue, via a
    // partial-pivot tridiagonal LU refactored per sweep. The start vector
    // breaks even/odd symmetry so the iteration cannot stall on a state of
    // the wrong parity class.
    fn eigenvector(&self, sigma: f64) -> Vec<f64> {
        let n = self.diag.len();
        let mut v: Vec<f64> = (0..n).map(|i| (1.0 + i as f64).sin() + 0.25).collect();
        for _ in 0..4 {
            self.solve_shifted(sigma, &mut v);
            let peak = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
            for x in &mut v {
                *x /= peak;
            }
        }
        v
    }

    fn solve_shifted(&self, sigma: f64, rhs: &mut [f64]) {
        let n = self.diag.len();
        let scale = self.diag.iter().fold(0.0_f64, |m, &d| m.max(d.abs())) + 2.0 * self.off.abs();
        let floor = f64::EPSILON * scale;
        let mut diag: Vec<f64> = self.diag.iter().map(|d| d - sigma).collect();
        let mut sup = vec![self.off; n - 1];
        let mut sup2 = vec![0.0; n.saturating_sub(2)];
        for i in 0..n - 1 {
            let mut sub = self.off;
            if sub.abs() > diag[i].abs() {
                std::mem::swap(&mut diag[i], &mut sub);
                {
                    let (a, b) = sup.split_at_mut(i + 1);
                    std::mem::swap(&mut a[i], &mut diag[i + 1]);
                    if i + 1 < n - 1 {
                        std::mem::swap(&mut sup2[i], &mut b[0]);
                    }
                }
                rhs.swap(i, i + 1);
            }
            if diag[i].abs() < floor {
                diag[i] = floor.copysign(diag[i]);
            }
            let m = sub / diag[i];
            diag[i + 1] -= m * sup[i];
            if i < n - 2 {
                sup[i + 1] -= m * sup2[i];
            }
            rhs[i + 1] -= m * rhs[i];
        }
        if diag[n - 1].abs() < floor {
            diag[n - 1] = floor.copysign(diag[n - 1]);
        }
        rhs[n - 1] /= diag[n - 1];
        rhs[n - 2] = (rhs[n - 2] - sup[n - 2] * rhs[n - 1]) / diag[n - 2];
        for i in (0..n - 2).rev() {
            rhs[i] = (rhs[i] - sup[i] * rhs[i + 1] - sup2[i] * rhs[i + 2]) / diag[i];
        }
    }
}

// Strict sign changes over entries clearly away from zero; grid values
// straddling a node flip sign, values sitting on one (below threshold) are
// skipped rather than miscounted.
fn interior_nodes(v: &[f64]) -> usize {
    let peak = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let threshold = 1e-8 * peak;
    let mut last = 0i8;
    let mut nodes = 0;
    for &x in v {
        let s = if x > threshold {
            1i8
        } else if x < -threshold {
            -1i8
        } else {
            0i8
        };
        if s != 0 {
            if last != 0 && s != last {
                nodes += 1;
            }
            last = s;
        }
    }
    nodes
}

fn parity_from_nodes(mode: BoxMode, nodes: usize) -> (Parity, usize) {
    match mode {
        BoxMode::HalfLineBox => (Parity::HalfLine, nodes),
        BoxMode::SymmetricBox => {
            if nodes.is_multiple_of(2) {
                (Parity::Symmetric, nodes / 2)
            } else {
                (Parity::Antisymmetric, (nodes - 1) / 2)
            }
        }
    }
}

/// Lowest `count` Dirichlet eigenvalues, Richardson-extrapolated over the
/// requested mesh and its exact halving (2·points + 1 interior points), with
/// parity labels and per-parity ordinals read off the fine-mesh
/// eigenvector's node count. `residual` is the extrapolation correction
/// |E_h − E_{h/2}|/3, an estimate of the remaining error.
pub fn oracle_spectrum(
    potential: &Potential,
    geometry: &Geometry,
    count: usize,
    mesh: MeshSpec,
) -> Result<Vec<EigenResult>> {
    MeshSpec::new(mesh.points)?;
    if count == 0 {
        return Err(invalid("state count must be at least 1"));
    }
    if count > mesh.points / 8 {
        return Err(invalid(format!(
            "{count} states need more than {} interior points for resolution",
            mesh.points
        )));
    }
    let coarse = Grid::build(potential, geometry, mesh.points);
    let fine = Grid::build(potential, geometry, 2 * mesh.points + 1);
    (0..count)
        .map(|k| {
            let mut evaluations = 0;
            let e_coarse = coarse.eigenvalue(k, &mut evaluations)?;
            let e_fine = fine.eigenvalue(k, &mut evaluations)?;
            let energy = (4.0 * e_fine - e_coarse) / 3.0;
            let residual = (e_fine - e_coarse).abs() / 3.0;
            let nodes = interior_nodes(&fine.eigenvector(e_fine));
            let (parity, index) = parity_from_nodes(geometry.mode, nodes);
            let delta = residual.max(1e-12 * energy.abs());
            Ok(EigenResult {
                energy,
                method: Method::Oracle,
                parity,
                index,
                regime: classify_regime(potential, energy, geometry)?,
                residual,
                bracket: (energy - delta, energy + delta),
                evaluations,
            })
        })
        .collect()
}

/// The oracle value for one state named the same way the quantization
/// routes name it: parity class plus per-parity ordinal.
pub fn oracle_eigenvalue(
    potential: &Potential,
    geometry: &Geometry,
    parity: Parity,
    n: usize,
    mesh: MeshSpec,
) -> Result<EigenResult> {
    parity.check_compatible(geometry)?;
    let count = match geometry.mode {
        BoxMode::HalfLineBox => n + 1,
        BoxMode::SymmetricBox => 2 * (n + 1),
    };
    let spectrum = oracle_spectrum(potential, geometry, count, mesh)?;
    spectrum
        .into_iter()
        .find(|r| r.parity == parity && r.index == n)
        .ok_or_else(|| invalid(format!("state ({parity:?}, {n}) not in the lowest {count}")))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub h: f64,
    pub energy: f64,
    /// Discretization order from this row and the two coarser ones
    /// (assumes a near-geometric mesh sequence); absent on the first two.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// h → 0 limit from the two finest meshes assuming O(h²) error.
    pub limit: f64,
    pub warnings: Vec<String>,
}

/// Raw (un-extrapolated) eigenvalue of global state `n` on each mesh, for
/// verifying the solver converges at the 3-point stencil's O(h²) rate.
/// Needs at least 3 meshes with strictly decreasing h; non-monotone
/// energy sequences are reported as warnings, not errors.
pub fn oracle_convergence_report(
    potential: &Potential,
    geometry: &Geometry,
    n: usize,
    meshes: &[MeshSpec],
) -> Result<ConvergenceReport> {
    if meshes.len() < 3 {
        return Err(invalid(format!(
            "convergence study needs at least 3 meshes, got {}",
            meshes.len()
        )));
    }
    let mut rows = Vec::with_capacity(meshes.len());
    for mesh in meshes {
        MeshSpec::new(mesh.points)?;
        if n + 1 > mesh.points / 8 {
            return Err(invalid(format!(
                "state {n} is not resolved by {} interior points",
                mesh.points
            )));
        }
        let grid = Grid::build(potential, geometry, mesh.points);
        let mut evaluations = 0;
        rows.push(grid.eigenvalue(n, &mut evaluations)?);
    }
    let hs: Vec<f64> = meshes
        .iter()
        .map(|m| {
            let span = match geometry.mode {
                BoxMode::SymmetricBox => 2.0 * geometry.b,
                BoxMode::HalfLineBox => geometry.b,
            };
            span / (m.points + 1) as f64
        })
        .collect();
    for w in hs.windows(2) {
        if w[1] >= w[0] {
            return Err(invalid("mesh spacings must be strictly decreasing"));
        }
    }
    let mut warnings = Vec::new();
    let mut out = Vec::with_capacity(rows.len());
    for i in 0..rows.len() {
        let order = if i >= 2 {
            let d1 = rows[i - 2] - rows[i - 1];
            let d2 = rows[i - 1] - rows[i];
            if d1 * d2 <= 0.0 {
                warnings.push(format!(
                    "non-monotone convergence between h={:.3e} and h={:.3e}",
                    hs[i - 2],
                    hs[i]
                ));
                None
            } else {
                Some((d1 / d2).ln() / (hs[i - 2] / hs[i - 1]).ln())
            }
        } else {
            None
        };
        out.push(ConvergenceRow {
            h: hs[i],
            energy: rows[i],
            order,
        });
    }
    let (ha, hb) = (hs[hs.len() - 2], hs[hs.len() - 1]);
    let (ea, eb) = (rows[rows.len() - 2], rows[rows.len() - 1]);
    let limit = (ha * ha * eb - hb * hb * ea) / (ha * ha - hb * hb);
    Ok(ConvergenceReport {
        rows: out,
        limit,
        warnings,
    })
}
