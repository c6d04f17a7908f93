//! `π`, `√2` and `Γ(1/4)` at arbitrary precision, cached per precision.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::GUARD_BITS;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Which {
    Pi,
    Sqrt2,
    GammaQuarter,
}

type Cache = Mutex<HashMap<(Which, u32), Float>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Looks up `which` at `prec` bits, computing it at the next multiple of 64 on a miss.
fn cached(which: Which, prec: u32) -> Float {
    let bucket = prec.div_ceil(64) * 64;
    let hit = cache().lock().expect("constant cache poisoned").get(&(which, bucket)).cloned();
    let v = match hit {
        Some(v) => v,
        None => {
            let v = match which {
                Which::Pi => Float::with_val(bucket, Constant::Pi),
                Which::Sqrt2 => Float::with_val(bucket, 2).sqrt(),
                Which::GammaQuarter => gamma_quarter_uncached(bucket),
            };
            cache().lock().expect("constant cache poisoned").insert((which, bucket), v.clone());
            v
        }
    };
    Float::with_val(prec, &v)
}

pub fn pi(prec: u32) -> Float {
    cached(Which::Pi, prec)
}

pub fn sqrt2(prec: u32) -> Float {
    cached(Which::Sqrt2, prec)
}

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm(a: &Float, b: &Float) -> Float {
    let prec = a.prec().max(b.prec());
    let mut a = Float::with_val(prec, a);
    let mut b = Float::with_val(prec, b);
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 2));
    loop {
        let diff = Float::with_val(prec, &a - &b).abs();
        if diff <= Float::with_val(prec, &a * &eps) {
            return a;
        }
        let next_a = Float::with_val(prec, &a + &b) / 2u32;
        let next_b = Float::with_val(prec, &a * &b).sqrt();
        a = next_a;
        b = next_b;
    }
}

/// `Γ(1/4) = (2π)^(3/4) / √AGM(1, √2)`.
fn gamma_quarter_uncached(prec: u32) -> Float {
    let wp = prec + GUARD_BITS;
    let two_pi = Float::with_val(wp, Constant::Pi) * 2u32;
    let m = agm(&Float::with_val(wp, 1), &Float::with_val(wp, 2).sqrt());
    let num = Float::with_val(wp, two_pi.pow(Float::with_val(wp, 0.75)));
    Float::with_val(prec, num / m.sqrt())
}

/// `Γ(1/4)` to within `2^(-prec+4)`.
pub fn gamma_quarter(prec: u32) -> Float {
    cached(Which::GammaQuarter, prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_quarter_matches_mpfr_gamma() {
        for prec in [64u32, 200, 333] {
            let g = gamma_quarter(prec);
            let direct = Float::with_val(prec + 32, 0.25).gamma();
            let err = Float::with_val(prec + 32, &g - &direct).abs();
            assert!(err < Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 4)), "prec {prec}");
        }
    }

    #[test]
    fn agm_defining_identity() {
        let wp = 256;
        let g = gamma_quarter(wp);
        let m = agm(&Float::with_val(wp, 1), &sqrt2(wp));
        let two_pi = pi(wp) * 2u32;
        let lhs = Float::with_val(wp, g.square_ref()) * m / two_pi.pow(Float::with_val(wp, 1.5));
        let err = (lhs - 1u32).abs();
        assert!(err < Float::with_val(wp, Float::i_exp(1, -240)));
    }

    #[test]
    fn lower_precision_is_a_truncation_of_higher() {
        let hi = gamma_quarter(512);
        let lo = gamma_quarter(100);
        let err = Float::with_val(512, &hi - &lo).abs();
        assert!(err < Float::with_val(64, Float::i_exp(1, -96)));
        assert!(hi.to_string_radix(10, Some(20)).starts_with("3.625609908221908311"));
    }
}
