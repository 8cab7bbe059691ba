//! Airy functions Ai, Bi and first derivatives on the real line in double
//! precision, accurate to ~1e−13 relative (1e−15 absolute near zeros).
//!
//! Branch layout:
//!   x > 9        exponential asymptotic series (min term < 1e−15 there)
//!   x < −12      oscillatory asymptotic series (ζ ≥ 27.7, same bound)
//!   −12 ≤ x ≤ 9  Taylor marching of the ODE w″ = x·w: Ai is marched down
//!                from a seed at x=10 (downward is the stable direction for
//!                the recessive solution), Bi is summed by its Maclaurin
//!                series for x ≥ 0 (all terms positive — no cancellation)
//!                and marched down from the origin constants for x < 0.
//!
//! A direct Maclaurin sum is NOT fit for the whole band: for x ≳ 4 the Ai
//! combination c₁f − c₂g cancels to ~1e−5 of its terms and for x ≲ −7 the
//! alternating terms grow past 1e7, so double precision loses the 1e−12
//! absolute contract near the first Airy zeros. Marching sidesteps both.

use crate::error::{Error, Result};
use std::sync::OnceLock;

/// Ai, Bi, Ai′, Bi′ at a common argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryQuad {
    pub ai: f64,
    pub ai_prime: f64,
    pub bi: f64,
    pub bi_prime: f64,
}

/// Supported argument range. Above +100, Bi overflows f64 shortly after
/// (e^{(2/3)x^{3/2}} passes 1e308 near x ≈ 104); below −300 the phase
/// reduction of the oscillatory series starts losing digits.
pub const AIRY_MIN_X: f64 = -300.0;
pub const AIRY_MAX_X: f64 = 100.0;

const POS_SWITCH: f64 = 9.0;
const NEG_SWITCH: f64 = -12.0;

// Origin values: Ai(0) = 3^{−2/3}/Γ(2/3), Ai′(0) = −3^{−1/3}/Γ(1/3), and the
// Bi pair is √3 times each with the sign flipped on the derivative pairing.
const AI0: f64 = 0.355_028_053_887_817_2;
const AIP0: f64 = -0.258_819_403_792_806_8;
const BI0: f64 = 0.614_926_627_446_000_7;
const BIP0: f64 = 0.448_288_357_353_826_4;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// All four Airy values at `x`.
pub fn airy_all(x: f64) -> Result<AiryQuad> {
    if !x.is_finite() || !(AIRY_MIN_X..=AIRY_MAX_X).contains(&x) {
        return Err(Error::AiryRange {
            x,
            min: AIRY_MIN_X,
            max: AIRY_MAX_X,
        });
    }
    if x > POS_SWITCH {
        Ok(positive_asymptotic(x))
    } else if x < NEG_SWITCH {
        Ok(negative_asymptotic(x))
    } else {
        Ok(band(x))
    }
}

/// First (largest) negative zero a₁ of Ai, located on this implementation's
/// own values so that |Ai(a₁)| vanishes to evaluation accuracy.
pub fn airy_first_zero() -> f64 {
    static ZERO: OnceLock<f64> = OnceLock::new();
    *ZERO.get_or_init(|| {
        let ai = |x: f64| band(x).ai;
        let (mut lo, mut hi) = (-3.0, -2.0);
        debug_assert!(ai(lo) < 0.0 && ai(hi) > 0.0);
        for _ in 0..90 {
            let mid = 0.5 * (lo + hi);
            if ai(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= f64::EPSILON * mid.abs() {
                break;
            }
        }
        0.5 * (lo + hi)
    })
}

// ---------------------------------------------------------------------------
// Central band: Taylor marching and Maclaurin series.

fn band(x: f64) -> AiryQuad {
    let (ai, ai_prime) = {
        let seed = positive_asymptotic(10.0);
        taylor_march(10.0, seed.ai, seed.ai_prime, x)
    };
    let (bi, bi_prime) = if x >= 0.0 {
        bi_maclaurin(x)
    } else {
        taylor_march(0.0, BI0, BIP0, x)
    };
    AiryQuad {
        ai,
        ai_prime,
        bi,
        bi_prime,
    }
}

/// Integrates w″ = t·w from `start` to `target` in Taylor steps of ≤ 0.5.
fn taylor_march(start: f64, mut w: f64, mut wp: f64, target: f64) -> (f64, f64) {
    let span = target - start;
    let steps = (span.abs() / 0.5).ceil().max(1.0) as usize;
    for k in 0..steps {
        let a = start + span * (k as f64) / (steps as f64);
        let next = start + span * ((k + 1) as f64) / (steps as f64);
        let (nw, nwp) = taylor_step(a, w, wp, next - a);
        w = nw;
        wp = nwp;
    }
    (w, wp)
}

/// One Taylor step: series coefficients obey (k+2)(k+1)c_{k+2} = a·c_k + c_{k−1}.
fn taylor_step(a: f64, w: f64, wp: f64, h: f64) -> (f64, f64) {
    const TERMS: usize = 36;
    let mut c = [0.0f64; TERMS];
    c[0] = w;
    c[1] = wp;
    c[2] = 0.5 * a * w;
    for k in 1..TERMS - 2 {
        c[k + 2] = (a * c[k] + c[k - 1]) / (((k + 2) * (k + 1)) as f64);
    }
    let mut val = 0.0;
    let mut der = 0.0;
    for k in (1..TERMS).rev() {
        val = (val + c[k]) * h;
        der = (der + (k as f64) * c[k]) * if k > 1 { h } else { 1.0 };
    }
    (val + c[0], der)
}

/// Bi and Bi′ for x ≥ 0 from the Maclaurin pair f, g (every term positive).
fn bi_maclaurin(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    let mut f_term = 1.0;
    let mut f_sum = 1.0;
    let mut g_term = x;
    let mut g_sum = x;
    let mut fp_term = 0.5 * x * x;
    let mut fp_sum = fp_term;
    let mut gp_term = 1.0;
    let mut gp_sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        f_term *= x3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        f_sum += f_term;
        g_term *= x3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        g_sum += g_term;
        // f′ series starts at x²/2; its k-th ratio uses (3k)(3k+2).
        if k > 1 {
            fp_term *= x3 / ((3.0 * (kf - 1.0)) * (3.0 * (kf - 1.0) + 2.0));
            fp_sum += fp_term;
        }
        gp_term *= x3 / ((3.0 * kf - 2.0) * (3.0 * kf));
        gp_sum += gp_term;
        if f_term < 1e-18 * f_sum && g_term < 1e-18 * g_sum {
            break;
        }
    }
    let sqrt3 = 3.0f64.sqrt();
    let c2 = -AIP0;
    (
        sqrt3 * (AI0 * f_sum + c2 * g_sum),
        sqrt3 * (AI0 * fp_sum + c2 * gp_sum),
    )
}

// ---------------------------------------------------------------------------
// Asymptotic branches. u_k, v_k are the standard Airy expansion coefficients:
// u_0 = 1, u_k = u_{k−1}(6k−5)(6k−3)(6k−1)/(216·k·(2k−1)), v_k = u_k(6k+1)/(1−6k).

fn uv_coefficient(k: usize, u_prev: f64) -> (f64, f64) {
    let kf = k as f64;
    let u = u_prev * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
        / (216.0 * kf * (2.0 * kf - 1.0));
    let v = u * (6.0 * kf + 1.0) / (1.0 - 6.0 * kf);
    (u, v)
}

fn positive_asymptotic(x: f64) -> AiryQuad {
    let tau = 2.0 / 3.0 * x * x.sqrt();
    let quart = x.sqrt().sqrt();
    let inv = 1.0 / tau;
    let (mut s_ai, mut s_bi, mut s_aip, mut s_bip) = (1.0, 1.0, 1.0, 1.0);
    let mut u = 1.0;
    let mut pw = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..44 {
        let (nu, nv) = uv_coefficient(k, u);
        u = nu;
        pw *= inv;
        let tu = u * pw;
        if tu.abs() > last {
            break; // divergent tail reached
        }
        last = tu.abs();
        let tv = nv * pw;
        let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
        s_ai += sign * tu;
        s_bi += tu;
        s_aip += sign * tv;
        s_bip += tv;
        if tu.abs() < 1e-18 {
            break;
        }
    }
    let down = (-tau).exp();
    let up = tau.exp();
    AiryQuad {
        ai: down * s_ai / (2.0 * SQRT_PI * quart),
        ai_prime: -down * quart * s_aip / (2.0 * SQRT_PI),
        bi: up * s_bi / (SQRT_PI * quart),
        bi_prime: up * quart * s_bip / SQRT_PI,
    }
}

fn negative_asymptotic(x: f64) -> AiryQuad {
    let z = -x;
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let quart = z.sqrt().sqrt();
    let theta = zeta + std::f64::consts::FRAC_PI_4;
    let (sin_t, cos_t) = theta.sin_cos();
    // Even-index terms feed the P sums, odd-index the Q sums, with signs
    // alternating per PAIR of indices.
    let (mut p, mut q, mut pd, mut qd) = (1.0, 0.0, 1.0, 0.0);
    let mut u = 1.0;
    let mut pw = 1.0;
    let inv = 1.0 / zeta;
    let mut last = f64::INFINITY;
    for k in 1..52 {
        let (nu, nv) = uv_coefficient(k, u);
        u = nu;
        pw *= inv;
        let tu = u * pw;
        if tu.abs() > last {
            break;
        }
        last = tu.abs();
        let tv = nv * pw;
        // k = 1,2,3,4,… contributes with sign pattern +,−,−,+,+,−,−,…
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            q += sign * tu;
            qd += sign * tv;
        } else {
            p += sign * tu;
            pd += sign * tv;
        }
        if tu.abs() < 1e-18 {
            break;
        }
    }
    let env = 1.0 / (SQRT_PI * quart);
    let envd = quart / SQRT_PI;
    AiryQuad {
        ai: env * (sin_t * p - cos_t * q),
        ai_prime: -envd * (cos_t * pd + sin_t * qd),
        bi: env * (cos_t * p + sin_t * q),
        bi_prime: envd * (sin_t * pd - cos_t * qd),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wronskian(q: &AiryQuad) -> f64 {
        q.ai * q.bi_prime - q.ai_prime * q.bi
    }

    #[test]
    fn origin_constants() {
        let q = airy_all(0.0).unwrap();
        assert!((q.ai - AI0).abs() < 1e-14);
        assert!((q.ai_prime - AIP0).abs() < 1e-14);
        assert!((q.bi - BI0).abs() < 1e-14);
        assert!((q.bi_prime - BIP0).abs() < 1e-14);
    }

    #[test]
    fn branch_seams_agree() {
        // Band marching vs positive asymptotics, evaluated at the switch point.
        let b = band(POS_SWITCH);
        let a = positive_asymptotic(POS_SWITCH);
        assert!((b.ai - a.ai).abs() <= 1e-12 * a.ai.abs());
        assert!((b.bi - a.bi).abs() <= 1e-12 * a.bi.abs());
        assert!((b.ai_prime - a.ai_prime).abs() <= 1e-12 * a.ai_prime.abs());
        assert!((b.bi_prime - a.bi_prime).abs() <= 1e-12 * a.bi_prime.abs());
        // Band marching vs negative asymptotics.
        let b = band(NEG_SWITCH);
        let a = negative_asymptotic(NEG_SWITCH);
        for (x, y) in [
            (b.ai, a.ai),
            (b.bi, a.bi),
            (b.ai_prime, a.ai_prime),
            (b.bi_prime, a.bi_prime),
        ] {
            assert!((x - y).abs() <= 1e-11 * y.abs().max(1.0), "{x} vs {y}");
        }
    }

    #[test]
    fn wronskian_across_all_branches() {
        let w = 1.0 / std::f64::consts::PI;
        for i in 0..=600 {
            let x = -300.0 + f64::from(i);
            if x > 100.0 {
                break;
            }
            let q = airy_all(x).unwrap();
            assert!(
                (wronskian(&q) - w).abs() <= 1e-10 * w,
                "wronskian off at x={x}: {}",
                wronskian(&q)
            );
        }
    }

    #[test]
    fn first_zero_location() {
        let a1 = airy_first_zero();
        assert!((-3.0..-2.0).contains(&a1));
        assert!((a1 - -2.338_107_410_459_767).abs() < 1e-12);
        assert!(airy_all(a1).unwrap().ai.abs() <= 1e-12);
    }

    #[test]
    fn out_of_range_arguments_error() {
        assert!(matches!(airy_all(100.5), Err(Error::AiryRange { .. })));
        assert!(matches!(airy_all(-300.5), Err(Error::AiryRange { .. })));
        assert!(matches!(airy_all(f64::NAN), Err(Error::AiryRange { .. })));
        assert!(airy_all(100.0).is_ok());
        assert!(airy_all(-300.0).is_ok());
    }

    #[test]
    fn positive_monotonicity() {
        // Ai decreasing, Bi increasing for x > 0.
        let mut prev = airy_all(0.0).unwrap();
        for i in 1..=400 {
            let q = airy_all(0.25 * f64::from(i)).unwrap();
            assert!(q.ai < prev.ai);
            assert!(q.bi > prev.bi);
            assert!(q.ai > 0.0);
            prev = q;
        }
    }
}
