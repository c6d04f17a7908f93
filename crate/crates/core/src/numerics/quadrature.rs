//! Tanh-sinh (double exponential) quadrature on a finite interval.

use rug::Float;

use super::{pi, pow2};
use crate::error::{Error, Result};

/// Deepest refinement level; level `L` uses step `2^-L`.
pub const MAX_LEVEL: u32 = 12;
const MIN_LEVEL: u32 = 3;

#[derive(Clone, Debug)]
pub struct Quadrature {
    pub value: Float,
    /// `|I_L - I_{L-1}|` at the accepted level.
    pub delta: Float,
    pub level: u32,
    pub evaluations: usize,
}

/// `∫_a^b f` to an absolute tolerance of `2^-(prec+8)` on the inter-level delta.
///
/// `f` is evaluated at precision `wp`. Abscissae are formed from their
/// distance to the nearer endpoint, so integrable endpoint singularities at
/// `a` (including `a = 0`) are sampled without cancellation.
pub fn tanh_sinh<F>(f: &F, a: &Float, b: &Float, prec: u32, wp: u32) -> Result<Quadrature>
where
    F: Fn(&Float) -> Float + ?Sized,
{
    let half = Float::with_val(wp, b - a) / 2u32;
    let half_pi = pi(wp) / 2u32;
    let tol = pow2(-(prec as i32) - 8, 64);
    // Beyond t_max the weights fall below 2^-(2 wp) relative to `half`.
    let t_max = (2.0 * f64::from(wp + 16) * std::f64::consts::LN_2 / std::f64::consts::PI).asinh();

    let mid = Float::with_val(wp, a + &half);
    let mut sum = Float::with_val(wp, f(&mid) * &half_pi) * &half;
    let mut evaluations = 1usize;

    let node = |t: &Float, sum: &mut Float| {
        let u = Float::with_val(wp, t.sinh_ref()) * &half_pi;
        let e = Float::with_val(wp, -2 * u).exp();
        let one_e = Float::with_val(wp, 1u32 + &e);
        let d = Float::with_val(wp, &half * &e) * 2u32 / &one_e;
        let w = Float::with_val(wp, t.cosh_ref()) * &half_pi * &half * 4u32 * &e / Float::with_val(wp, one_e.square_ref());
        let left = Float::with_val(wp, a + &d);
        let right = Float::with_val(wp, b - &d);
        *sum += Float::with_val(wp, f(&left) + f(&right)) * w;
    };

    let mut prev: Option<Float> = None;
    let mut last_delta = Float::with_val(64, f64::INFINITY);
    for level in 0..=MAX_LEVEL {
        let h = pow2(-(level as i32), wp);
        let k_max = (t_max * f64::from(1u32 << level)).floor() as u64;
        let stride = if level == 0 { 1 } else { 2 };
        let mut k = 1;
        while k <= k_max {
            let t = Float::with_val(wp, &h * k);
            node(&t, &mut sum);
            evaluations += 2;
            k += stride;
        }
        let estimate = Float::with_val(wp, &sum * &h);
        if let Some(p) = prev.as_ref() {
            let delta = Float::with_val(64, &estimate - p).abs();
            if level >= MIN_LEVEL && delta <= tol {
                return Ok(Quadrature { value: estimate, delta, level, evaluations });
            }
            last_delta = delta;
        }
        prev = Some(estimate);
    }
    Err(Error::PrecisionUnreachable { level: MAX_LEVEL, log2_delta: super::log2_abs(&last_delta) })
}
