use crate::error::{domain, invalid, Result};

/// Confining profile. Units are fixed crate-wide to ħ = c = 2m = 1, so the
/// stationary problem reads ψ″ + (E − V)ψ = 0 and energies are plain numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    /// V ≡ 0 inside the walls. Test/CLI utility case; the box alone confines.
    Free,
    /// V(x) = strength·|x|^exponent with strength > 0, exponent > 0.
    Power { strength: f64, exponent: f64 },
}

impl Potential {
    pub fn power(strength: f64, exponent: f64) -> Result<Self> {
        if strength <= 0.0 || !strength.is_finite() {
            return Err(invalid(format!(
                "potential strength must be > 0, got {strength}"
            )));
        }
        if exponent <= 0.0 || !exponent.is_finite() {
            return Err(invalid(format!(
                "potential exponent must be > 0, got {exponent}"
            )));
        }
        Ok(Potential::Power { strength, exponent })
    }

    /// Harmonic well V = x².
    pub fn harmonic() -> Self {
        Potential::Power {
            strength: 1.0,
            exponent: 2.0,
        }
    }

    /// Quartic well V = x⁴.
    pub fn quartic() -> Self {
        Potential::Power {
            strength: 1.0,
            exponent: 4.0,
        }
    }

    /// Linear ramp V = x (unit field strength).
    pub fn linear() -> Self {
        Potential::Power {
            strength: 1.0,
            exponent: 1.0,
        }
    }
}

/// Hard-wall region: either a symmetric box [−b, b] whose states carry
/// parity, or a half-line box [0, b] with Dirichlet ends at 0 and b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub mode: BoxMode,
    /// Half-width of the symmetric box, or full width of the half-line box.
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxMode {
    SymmetricBox,
    HalfLineBox,
}

impl Geometry {
    pub fn symmetric(b: f64) -> Result<Self> {
        Self::new(BoxMode::SymmetricBox, b)
    }

    pub fn half_line(b: f64) -> Result<Self> {
        Self::new(BoxMode::HalfLineBox, b)
    }

    pub fn new(mode: BoxMode, b: f64) -> Result<Self> {
        if b <= 0.0 || !b.is_finite() {
            return Err(invalid(format!("box size must be > 0, got {b}")));
        }
        Ok(Geometry { mode, b })
    }
}

/// Symmetry class of a state. `HalfLine` reuses the antisymmetric analysis —
/// both impose ψ(0) = 0 — but is only meaningful on a half-line box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Symmetric,
    Antisymmetric,
    HalfLine,
}

impl Parity {
    /// Enforces the parity/geometry pairing rule.
    pub fn check_compatible(self, geo: &Geometry) -> Result<()> {
        let ok = match geo.mode {
            BoxMode::SymmetricBox => self != Parity::HalfLine,
            BoxMode::HalfLineBox => self == Parity::HalfLine,
        };
        if ok {
            Ok(())
        } else {
            Err(invalid(format!(
                "parity {self:?} is not valid for geometry {:?}",
                geo.mode
            )))
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Parity::Symmetric => "sym",
            Parity::Antisymmetric => "anti",
            Parity::HalfLine => "half",
        }
    }
}

/// Whether the classical turning point falls inside the walls (quantization
/// couples the decaying region) or beyond them (pure phase condition).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    TurningPointInside,
    TurningPointOutside,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::TurningPointInside => "inside",
            Regime::TurningPointOutside => "outside",
        }
    }
}

/// Which solver produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Wkb,
    Maf,
    Oracle,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Wkb => "wkb",
            Method::Maf => "maf",
            Method::Oracle => "oracle",
        }
    }
}

/// A converged eigenvalue with its provenance: the quantization residual at
/// the root, the final bracketing interval, and the evaluation count.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub energy: f64,
    pub method: Method,
    pub parity: Parity,
    /// Root ordinal within the parity class (0-based).
    pub index: usize,
    pub regime: Regime,
    /// Residual of the quantization function at `energy`; for the reference
    /// solver this is the Richardson correction magnitude instead.
    pub residual: f64,
    /// Bracket that pinned the root, `bracket.0 < energy < bracket.1`.
    pub bracket: (f64, f64),
    /// Number of residual evaluations spent bracketing and refining.
    pub evaluations: usize,
}

/// V(x) for the given profile; even in x by construction.
pub fn evaluate_potential(pot: &Potential, x: f64) -> f64 {
    match *pot {
        Potential::Free => 0.0,
        Potential::Power { strength, exponent } => strength * x.abs().powf(exponent),
    }
}

/// Positive solution x_t of V(x_t) = E. For the free profile there is no
/// turning point and +∞ is returned (every energy is classically allowed).
pub fn turning_point(pot: &Potential, energy: f64) -> Result<f64> {
    if energy <= 0.0 || !energy.is_finite() {
        return Err(domain(format!("turning point needs E > 0, got {energy}")));
    }
    match *pot {
        Potential::Free => Ok(f64::INFINITY),
        Potential::Power { strength, exponent } => Ok((energy / strength).powf(1.0 / exponent)),
    }
}

/// Tolerance for the regime tie-break at x_t = b.
const SEAM_TIE_TOL: f64 = 1e-12;

/// Inside iff x_t < b; exact ties (within 1e−12) count as outside, where the
/// quantization condition stays finite while the decay action degenerates to 0.
pub fn classify_regime(pot: &Potential, energy: f64, geo: &Geometry) -> Result<Regime> {
    let xt = turning_point(pot, energy)?;
    if xt < geo.b - SEAM_TIE_TOL {
        Ok(Regime::TurningPointInside)
    } else {
        Ok(Regime::TurningPointOutside)
    }
}

/// Energy of the regime seam, E = V(b); `None` for the free profile, which
/// is outside-regime at every energy.
pub fn seam_energy(pot: &Potential, geo: &Geometry) -> Option<f64> {
    match *pot {
        Potential::Free => None,
        Potential::Power { .. } => Some(evaluate_potential(pot, geo.b)),
    }
}
