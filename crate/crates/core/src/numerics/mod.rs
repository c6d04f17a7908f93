//! Arbitrary-precision reals (MPFR floats), constants, and the quadrature
//! and series kernels behind every numeric check.
//!
//! Precision arguments named `prec` are absolute targets: a result is meant
//! to be within `2^-prec` of the true value. Kernels add [`GUARD_BITS`] plus
//! enough headroom for the magnitudes they handle.

mod complex;
mod constants;
mod quadrature;
mod series;

use rug::ops::Pow;
use rug::Float;

use crate::algebra::ClosedForm;

pub use complex::HPComplex;
pub use constants::{agm, gamma_quarter, pi, sqrt2};
pub use quadrature::{tanh_sinh, Quadrature, MAX_LEVEL};
pub use series::{geometric_tail_log2, sum_series, SeriesSum};

/// High-precision real; the value carries its own precision in bits.
pub type HPReal = Float;

pub const GUARD_BITS: u32 = 32;

/// Working precision for an absolute target of `2^-prec` on values up to `2^headroom`.
pub fn working_prec(prec: u32, headroom: f64) -> u32 {
    prec + GUARD_BITS + headroom.max(0.0).ceil() as u32
}

/// `2^e` at precision `prec`.
pub fn pow2(e: i32, prec: u32) -> Float {
    Float::with_val(prec, Float::i_exp(1, e))
}

/// `log2 |x|`, `-inf` for zero.
pub fn log2_abs(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = x.to_f64_exp();
    m.abs().log2() + f64::from(e)
}

/// Decimal rendering with `digits` significant digits.
pub fn decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits))
}

/// Significant decimal digits that are meaningful at absolute precision `prec`
/// for a value of the given magnitude.
pub fn meaningful_digits(x: &Float, prec: u32) -> usize {
    let bits = f64::from(prec) + log2_abs(x).max(-f64::from(prec));
    ((bits * std::f64::consts::LOG10_2).floor() as usize).clamp(1, 400)
}

fn log2_gamma_quarter() -> f64 {
    3.625_609_908_221_908_f64.log2()
}

/// Largest `log2` magnitude of any single monomial of `v`.
pub fn closed_form_magnitude(v: &ClosedForm) -> f64 {
    v.terms()
        .map(|(k, c)| {
            let c = c.to_f64().abs().log2();
            c + k.gamma as f64 * log2_gamma_quarter()
                + k.pi_half as f64 * 0.5 * std::f64::consts::PI.log2()
                + if k.sqrt2 { 0.5 } else { 0.0 }
        })
        .fold(0.0, f64::max)
}

/// Numeric value of a closed form, accurate to `2^-prec` absolutely.
///
/// Evaluates at a precision that covers the largest monomial so that
/// cancellation between terms cannot eat into the target.
pub fn to_real(v: &ClosedForm, prec: u32) -> HPReal {
    let wp = working_prec(prec, closed_form_magnitude(v));
    let g = gamma_quarter(wp);
    let sqrt_pi = pi(wp).sqrt();
    let s2 = sqrt2(wp);
    let mut acc = Float::with_val(wp, 0);
    for (k, c) in v.terms() {
        let mut t = Float::with_val(wp, c);
        if k.gamma != 0 {
            t *= Float::with_val(wp, (&g).pow(k.gamma as i32));
        }
        if k.pi_half != 0 {
            t *= Float::with_val(wp, (&sqrt_pi).pow(k.pi_half as i32));
        }
        if k.sqrt2 {
            t *= &s2;
        }
        acc += t;
    }
    acc
}
