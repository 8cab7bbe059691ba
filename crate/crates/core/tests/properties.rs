//! Structural invariants of the solvers, checked over randomized inputs
//! (proptest) and over fixed benchmark grids where an invariant quantifies
//! over a specific finite set.

use boxwell::maf::{maf_eigenvalue, maf_residual};
use boxwell::model::{
    classify_regime, evaluate_potential, seam_energy, turning_point, Geometry, Parity, Potential,
    Regime,
};
use boxwell::oracle::{oracle_eigenvalue, oracle_spectrum, MeshSpec};
use boxwell::phase::{allowed_action, forbidden_action, phase_quantities, xi_at};
use boxwell::wkb::{wkb_eigenvalue, wkb_residual, wkb_spectrum};
use boxwell::Error;
use proptest::prelude::*;
use std::f64::consts::PI;

fn power_exponent() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), Just(2.0), Just(4.0)]
}

// Phase-unit distance between `energy`'s turning point and the wall — how
// far the state is from the WKB regime seam.
fn seam_action_distance(pot: &Potential, geo: &Geometry, energy: f64) -> f64 {
    if seam_energy(pot, geo).is_none() {
        return f64::INFINITY;
    }
    let x_t = turning_point(pot, energy).unwrap();
    if x_t >= geo.b {
        allowed_action(pot, energy, geo.b, x_t).unwrap()
    } else {
        forbidden_action(pot, energy, x_t, geo.b).unwrap()
    }
}

fn potential() -> impl Strategy<Value = Potential> {
    (power_exponent(), 0.5f64..2.0).prop_map(|(p, s)| Potential::power(s, p).unwrap())
}

proptest! {
    #[test]
    fn turning_point_inverts_the_potential_and_grows_with_energy(
        pot in potential(),
        e1 in 0.1f64..40.0,
        factor in 1.05f64..4.0,
    ) {
        let e2 = e1 * factor;
        let x1 = turning_point(&pot, e1).unwrap();
        let x2 = turning_point(&pot, e2).unwrap();
        prop_assert!(x1 < x2);
        for (e, x) in [(e1, x1), (e2, x2)] {
            prop_assert!((evaluate_potential(&pot, x) - e).abs() <= 1e-12 * e);
        }
    }

    #[test]
    fn potentials_are_even(pot in potential(), x in -10.0f64..10.0) {
        prop_assert_eq!(
            evaluate_potential(&pot, x),
            evaluate_potential(&pot, -x)
        );
        prop_assert_eq!(
            evaluate_potential(&Potential::Free, x),
            evaluate_potential(&Potential::Free, -x)
        );
    }

    #[test]
    fn regime_switches_exactly_once_at_the_wall_energy(
        pot in potential(),
        b in 0.5f64..3.0,
    ) {
        let geo = Geometry::symmetric(b).unwrap();
        let seam = seam_energy(&pot, &geo).unwrap();
        let mut switched = false;
        let mut previous = None;
        for i in 0..60 {
            // Log sweep from well below to well above the seam, skipping the
            // tie band where the classifier is deliberately pinned.
            let e = seam * 10f64.powf(-2.0 + 4.0 * f64::from(i) / 59.0);
            if (e - seam).abs() <= 1e-9 * seam {
                continue;
            }
            let regime = classify_regime(&pot, e, &geo).unwrap();
            if let Some(prev) = previous {
                if regime != prev {
                    prop_assert!(!switched, "second regime change at E={e}");
                    prop_assert_eq!(prev, Regime::TurningPointInside);
                    prop_assert_eq!(regime, Regime::TurningPointOutside);
                    prop_assert!(e > seam);
                    switched = true;
                }
            }
            previous = Some(regime);
        }
        prop_assert!(switched);
    }

    #[test]
    fn boundary_phase_grows_with_energy(
        pot in potential(),
        b in 0.4f64..4.0,
        e1 in 0.05f64..30.0,
        factor in 1.01f64..3.0,
    ) {
        let geo = Geometry::symmetric(b).unwrap();
        let t1 = phase_quantities(&pot, &geo, e1).unwrap().theta_b;
        let t2 = phase_quantities(&pot, &geo, e1 * factor).unwrap().theta_b;
        prop_assert!(t2 > t1, "theta_b fell from {t1} to {t2}");
    }

    #[test]
    fn uniform_map_increases_through_the_turning_point(
        pot in potential(),
        e in 0.2f64..25.0,
    ) {
        let x_t = turning_point(&pot, e).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=50 {
            let x = 2.0 * x_t * f64::from(i) / 50.0;
            let xi = xi_at(&pot, e, x).unwrap().xi;
            prop_assert!(xi > prev, "xi not increasing at x={x}");
            prev = xi;
        }
        prop_assert!(xi_at(&pot, e, 0.999 * x_t).unwrap().xi < 0.0);
        prop_assert!(xi_at(&pot, e, 1.001 * x_t).unwrap().xi > 0.0);
        prop_assert!(xi_at(&pot, e, x_t).unwrap().xi.abs() < 1e-6);
    }

    #[test]
    fn allowed_action_is_additive(
        pot in potential(),
        e in 0.1f64..16.0,
        split in (0.05f64..0.95, 0.05f64..0.95),
    ) {
        let x_t = turning_point(&pot, e).unwrap();
        let (lo, hi) = if split.0 <= split.1 { split } else { (split.1, split.0) };
        let (a, b, c) = (0.0, lo * x_t, hi * x_t);
        let whole = allowed_action(&pot, e, a, c).unwrap();
        let parts =
            allowed_action(&pot, e, a, b).unwrap() + allowed_action(&pot, e, b, c).unwrap();
        prop_assert!((whole - parts).abs() <= 1e-10, "gap {}", whole - parts);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wkb_roots_sit_inside_sign_change_brackets_under_tolerance(
        pot in potential(),
        b in 0.5f64..4.0,
        half_line in any::<bool>(),
        odd in any::<bool>(),
        n in 0usize..3,
    ) {
        let (geo, parity) = if half_line {
            (Geometry::half_line(b).unwrap(), Parity::HalfLine)
        } else {
            let p = if odd { Parity::Antisymmetric } else { Parity::Symmetric };
            (Geometry::symmetric(b).unwrap(), p)
        };
        let tol = 1e-9;
        let result = match wkb_eigenvalue(&pot, &geo, parity, n, tol) {
            Err(Error::DegenerateSeam { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        prop_assert!(result.residual.abs() <= tol);
        let lo = wkb_residual(&pot, &geo, parity, result.bracket.0).unwrap();
        let hi = wkb_residual(&pot, &geo, parity, result.bracket.1).unwrap();
        prop_assert!(lo * hi <= 0.0, "bracket does not straddle: {lo} {hi}");
        prop_assert!(result.bracket.0 <= result.energy && result.energy <= result.bracket.1);
    }

    #[test]
    fn maf_roots_sit_inside_sign_change_brackets_under_tolerance(
        pot in potential(),
        b in 0.5f64..4.0,
        half_line in any::<bool>(),
        odd in any::<bool>(),
        n in 0usize..3,
    ) {
        let (geo, parity) = if half_line {
            (Geometry::half_line(b).unwrap(), Parity::HalfLine)
        } else {
            let p = if odd { Parity::Antisymmetric } else { Parity::Symmetric };
            (Geometry::symmetric(b).unwrap(), p)
        };
        let tol = 1e-9;
        let result = match maf_eigenvalue(&pot, &geo, parity, n, tol) {
            Err(Error::DegenerateSeam { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        prop_assert!(result.residual.abs() <= tol);
        let lo = maf_residual(&pot, &geo, parity, result.bracket.0).unwrap();
        let hi = maf_residual(&pot, &geo, parity, result.bracket.1).unwrap();
        prop_assert!(lo * hi <= 0.0, "bracket does not straddle: {lo} {hi}");
    }

    #[test]
    fn symmetric_spectra_interleave_parities(
        pot in potential(),
        b in 0.6f64..3.0,
        count in 3usize..6,
    ) {
        let geo = Geometry::symmetric(b).unwrap();
        let spectrum = match wkb_spectrum(&pot, &geo, count, 1e-9) {
            Err(Error::DegenerateSeam { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        // Ordinals are honest only away from the seam band: within ~1 action
        // unit of E = V(b) both residual families estimate the same physical
        // state and the raw ascending count double-books it (see the pinned
        // red case below). Discard draws that land any state in the band.
        for r in &spectrum {
            if seam_action_distance(&pot, &geo, r.energy) < 1.0 {
                return Ok(());
            }
        }
        prop_assert_eq!(spectrum.len(), count);
        for (k, r) in spectrum.iter().enumerate() {
            let want = if k % 2 == 0 { Parity::Symmetric } else { Parity::Antisymmetric };
            prop_assert_eq!(r.parity, want, "state {}", k);
            prop_assert_eq!(r.index, k / 2);
        }
        for w in spectrum.windows(2) {
            prop_assert!(w[0].energy < w[1].energy);
        }
    }

    #[test]
    fn oracle_spectra_ascend_and_label_by_node_count(
        pot in potential(),
        b in 0.6f64..3.0,
    ) {
        let geo = Geometry::symmetric(b).unwrap();
        let spectrum = oracle_spectrum(&pot, &geo, 4, MeshSpec { points: 192 }).unwrap();
        for (k, r) in spectrum.iter().enumerate() {
            let want = if k % 2 == 0 { Parity::Symmetric } else { Parity::Antisymmetric };
            prop_assert_eq!(r.parity, want, "state {}", k);
        }
        for w in spectrum.windows(2) {
            prop_assert!(w[0].energy < w[1].energy);
        }
    }
}

#[test]
fn closed_form_actions_match_quadrature_on_a_hundred_combinations() {
    // V = x²: ∫√(E−x²) = [x√(E−x²) + E·asin(x/√E)]/2; V = x: −(2/3)(E−x)^{3/2}.
    let harmonic = Potential::harmonic();
    let linear = Potential::linear();
    let mut checked = 0;
    for i in 0..10 {
        let e = 0.5 + 2.0 * f64::from(i);
        for j in 0..5 {
            let lo = f64::from(j) * 0.15;
            let hi = (lo + 0.2 + 0.1 * f64::from(j)).min(0.98);
            let x_t2 = e.sqrt();
            let prim = |x: f64| 0.5 * (x * (e - x * x).sqrt() + e * (x / x_t2).asin());
            let got = allowed_action(&harmonic, e, lo * x_t2, hi * x_t2).unwrap();
            let want = prim(hi * x_t2) - prim(lo * x_t2);
            assert!((got - want).abs() <= 1e-9, "harmonic E={e} [{lo},{hi}]");
            let x_t1 = e;
            let prim1 = |x: f64| -(2.0 / 3.0) * (e - x).powf(1.5);
            let got = allowed_action(&linear, e, lo * x_t1, hi * x_t1).unwrap();
            let want = prim1(hi * x_t1) - prim1(lo * x_t1);
            assert!((got - want).abs() <= 1e-9, "linear E={e} [{lo},{hi}]");
            checked += 2;
        }
    }
    assert_eq!(checked, 100);
}

#[test]
fn forbidden_action_matches_the_harmonic_closed_form() {
    // ∫√(x²−E) = [x√(x²−E) − E·ln((x+√(x²−E))/√E)]/2 above the turning point.
    let pot = Potential::harmonic();
    for &(e, hi) in &[(1.0_f64, 2.0_f64), (4.0, 3.0), (9.0, 4.5)] {
        let x_t = e.sqrt();
        let prim =
            |x: f64| 0.5 * (x * (x * x - e).sqrt() - e * ((x + (x * x - e).sqrt()) / x_t).ln());
        let got = forbidden_action(&pot, e, x_t, hi).unwrap();
        assert!((got - prim(hi)).abs() <= 1e-9, "E={e} hi={hi}");
    }
}

#[test]
fn free_box_wkb_levels_are_exact() {
    let pot = Potential::Free;
    for &b in &[0.5, 1.0, 2.7] {
        let geo = Geometry::symmetric(b).unwrap();
        let spectrum = wkb_spectrum(&pot, &geo, 6, 1e-10).unwrap();
        for (k, r) in spectrum.iter().enumerate() {
            let want = ((k + 1) as f64 * PI / (2.0 * b)).powi(2);
            assert!(
                (r.energy - want).abs() <= 1e-10 * want,
                "b={b} k={k}: {} vs {want}",
                r.energy
            );
        }
    }
}

#[test]
fn confinement_energies_fall_monotonically_toward_the_open_well() {
    // Shrinking walls squeeze every level up; by b = 5 the first harmonic
    // pair reaches the open-well values 1 and 3 from above.
    let pot = Potential::harmonic();
    let widths = [0.5, 1.0, 1.5, 2.0, 3.0, 5.0];
    let mut previous: Option<(f64, f64)> = None;
    for &b in &widths {
        let geo = Geometry::symmetric(b).unwrap();
        let sym = wkb_eigenvalue(&pot, &geo, Parity::Symmetric, 0, 1e-10)
            .unwrap()
            .energy;
        let anti = wkb_eigenvalue(&pot, &geo, Parity::Antisymmetric, 0, 1e-10)
            .unwrap()
            .energy;
        assert!(sym > 1.0 && anti > 3.0, "b={b}: {sym} {anti}");
        if let Some((ps, pa)) = previous {
            assert!(sym < ps && anti < pa, "not monotone at b={b}");
        }
        previous = Some((sym, anti));
    }
    let (sym5, anti5) = previous.unwrap();
    assert!((sym5 - 1.0).abs() <= 1e-4);
    assert!((anti5 - 3.0).abs() <= 1e-4);
}

#[test]
fn airy_zeros_interlace_on_the_negative_axis() {
    // Between consecutive zeros of Ai there is exactly one zero of Bi and
    // vice versa; locate sign changes on a fine grid of [−30, 0].
    let mut ai_zeros = Vec::new();
    let mut bi_zeros = Vec::new();
    let n = 30_000;
    let mut prev = boxwell::airy_all(-30.0).unwrap();
    for i in 1..=n {
        let x = -30.0 + 30.0 * i as f64 / n as f64;
        let q = boxwell::airy_all(x).unwrap();
        if prev.ai * q.ai < 0.0 {
            ai_zeros.push(x);
        }
        if prev.bi * q.bi < 0.0 {
            bi_zeros.push(x);
        }
        prev = q;
    }
    assert!(ai_zeros.len() > 20 && bi_zeros.len() > 20);
    for w in ai_zeros.windows(2) {
        let between = bi_zeros.iter().filter(|&&z| w[0] < z && z < w[1]).count();
        assert_eq!(between, 1, "Ai gap [{}, {}]", w[0], w[1]);
    }
    for w in bi_zeros.windows(2) {
        let between = ai_zeros.iter().filter(|&&z| w[0] < z && z < w[1]).count();
        assert_eq!(between, 1, "Bi gap [{}, {}]", w[0], w[1]);
    }
}

// The two cross-validation bounds below state the intended accuracy contract
// between the asymptotic routes and the reference solver. Measured behavior
// violates both on specific benchmark rows (the asymptotic error near the
// wall/turning-point seam is larger than the bounds allow), so these tests
// fail today; they are kept at the stated strength deliberately — loosening
// them would hide a real accuracy limit. The failing rows are enumerated in
// the assertion messages.

#[test]
fn symmetric_spectrum_interleaving_inside_the_seam_band() {
    // Claim under test: the sorted SymmetricBox spectrum always alternates
    // Symmetric, Antisymmetric, … — with no domain restriction. Pinned
    // counterexample: for V = 1.046·|x| with b ≈ 1.686 the ground state sits
    // ~0.1 action units from the seam, the Inside family roots it at 1.5156
    // and the Outside family again at 1.8338, and raw ascending per-parity
    // counting books both as symmetric states 0 and 1.
    let pot = Potential::power(1.0460578632153932, 1.0).unwrap();
    let geo = Geometry::symmetric(1.6859366030244878).unwrap();
    let spectrum = wkb_spectrum(&pot, &geo, 3, 1e-9).unwrap();
    for (k, r) in spectrum.iter().enumerate() {
        let want = if k % 2 == 0 {
            Parity::Symmetric
        } else {
            Parity::Antisymmetric
        };
        assert_eq!(
            r.parity,
            want,
            "state {k} at E={:.6} (seam distance {:.3})",
            r.energy,
            seam_action_distance(&pot, &geo, r.energy)
        );
    }
}

#[test]
fn cross_method_agreement_far_from_the_seam() {
    // Claim under test: WKB, MAF, and the reference solver agree within 0.2%
    // whenever the turning point is far from the wall (x_t < b/2 or
    // x_t > 2b), over p ∈ {1, 2, 4}, b ∈ {0.5, 1, 2, 5}.
    let mesh = MeshSpec { points: 2048 };
    let mut failures = Vec::new();
    for &p in &[1.0, 2.0, 4.0] {
        let pot = Potential::power(1.0, p).unwrap();
        for &b in &[0.5, 1.0, 2.0, 5.0] {
            let states: Vec<(Geometry, Parity, usize)> = if p == 1.0 {
                let geo = Geometry::half_line(b).unwrap();
                vec![(geo, Parity::HalfLine, 0), (geo, Parity::HalfLine, 1)]
            } else {
                let geo = Geometry::symmetric(b).unwrap();
                vec![(geo, Parity::Symmetric, 0), (geo, Parity::Antisymmetric, 0)]
            };
            for (geo, parity, n) in states {
                let wkb = match wkb_eigenvalue(&pot, &geo, parity, n, 1e-9) {
                    Err(Error::DegenerateSeam { .. }) => continue,
                    other => other.unwrap(),
                };
                let x_t = turning_point(&pot, wkb.energy).unwrap();
                if !(x_t < b / 2.0 || x_t > 2.0 * b) {
                    continue;
                }
                let maf = maf_eigenvalue(&pot, &geo, parity, n, 1e-9).unwrap();
                let oracle = oracle_eigenvalue(&pot, &geo, parity, n, mesh).unwrap();
                for (label, e) in [("WKB", wkb.energy), ("MAF", maf.energy)] {
                    let dev = (e - oracle.energy).abs() / oracle.energy;
                    if dev > 2e-3 {
                        failures.push(format!(
                            "p={p} b={b} {parity:?} n={n} {label}: {:+.3}% vs reference",
                            1e2 * (e - oracle.energy) / oracle.energy
                        ));
                    }
                }
            }
        }
    }
    assert!(
        failures.is_empty(),
        "cross-method agreement beyond 0.2%:\n{}",
        failures.join("\n")
    );
}

#[test]
fn wkb_and_maf_roots_agree_within_the_benchmark_gap() {
    // Claim under test: the two quantization routes differ by at most 0.05
    // in E on every benchmark-table row.
    let mut failures = Vec::new();
    let harmonic = Potential::harmonic();
    for &b in &[0.5, 1.0, 1.5, 2.0, 3.0, 5.0] {
        let geo = Geometry::symmetric(b).unwrap();
        let wkb = wkb_eigenvalue(&harmonic, &geo, Parity::Antisymmetric, 0, 1e-9).unwrap();
        let maf = maf_eigenvalue(&harmonic, &geo, Parity::Antisymmetric, 0, 1e-9).unwrap();
        if (wkb.energy - maf.energy).abs() > 0.05 {
            failures.push(format!(
                "p=2 b={b} anti n=0: gap {:.4}",
                (wkb.energy - maf.energy).abs()
            ));
        }
    }
    let quartic = Potential::quartic();
    let geo = Geometry::symmetric(1.0).unwrap();
    for (parity, n) in [
        (Parity::Symmetric, 0),
        (Parity::Antisymmetric, 0),
        (Parity::Symmetric, 1),
        (Parity::Antisymmetric, 1),
    ] {
        let wkb = wkb_eigenvalue(&quartic, &geo, parity, n, 1e-9).unwrap();
        let maf = maf_eigenvalue(&quartic, &geo, parity, n, 1e-9).unwrap();
        if (wkb.energy - maf.energy).abs() > 0.05 {
            failures.push(format!(
                "p=4 b=1 {parity:?} n={n}: gap {:.4}",
                (wkb.energy - maf.energy).abs()
            ));
        }
    }
    let linear = Potential::linear();
    for &b in &[0.3, 0.5, 0.8, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0] {
        let geo = Geometry::half_line(b).unwrap();
        let wkb = wkb_eigenvalue(&linear, &geo, Parity::HalfLine, 0, 1e-9).unwrap();
        let maf = maf_eigenvalue(&linear, &geo, Parity::HalfLine, 0, 1e-9).unwrap();
        if (wkb.energy - maf.energy).abs() > 0.05 {
            failures.push(format!(
                "p=1 b={b} half n=0: gap {:.4}",
                (wkb.energy - maf.energy).abs()
            ));
        }
    }
    assert!(
        failures.is_empty(),
        "route gap beyond 0.05:\n{}",
        failures.join("\n")
    );
}
