//! Direct summation of positive-rate series with an explicit tail majorant.

use rug::Float;

#[derive(Clone, Debug)]
pub struct SeriesSum {
    pub value: Float,
    /// Number of terms added.
    pub terms: u64,
    /// `log2` of the certified bound on the omitted tail.
    pub tail_log2: f64,
}

/// `Σ_{n ≥ start} term(n)`, stopping once `tail_log2(n)`, a bound on
/// `log2 Σ_{k ≥ n} |term(k)|`, drops below `target_log2`.
///
/// `tail_log2` may return `+inf` where its majorant is not yet valid.
pub fn sum_series<T, B>(start: u64, wp: u32, target_log2: f64, mut term: T, tail_log2: B) -> SeriesSum
where
    T: FnMut(u64) -> Float,
    B: Fn(u64) -> f64,
{
    let mut value = Float::with_val(wp, 0);
    let mut n = start;
    loop {
        value += term(n);
        n += 1;
        let tail = tail_log2(n);
        if tail < target_log2 {
            return SeriesSum { value, terms: n - start, tail_log2: tail };
        }
    }
}

/// `log2` of a bound on `Σ_{k ≥ 0} C (v + k·step)^s e^{-β (v + k·step)}`.
///
/// Consecutive terms shrink by at most `ρ = ((v+step)/v)^s e^{-β step}`, so the
/// tail is below `C v^s e^{-βv} / (1 - ρ)`; `+inf` when `ρ ≥ 1`.
pub fn geometric_tail_log2(log2_c: f64, s: u32, beta: f64, v: f64, step: f64) -> f64 {
    let s = f64::from(s);
    let ln_rho = s * ((v + step) / v).ln() - beta * step;
    if ln_rho >= -1e-9 {
        return f64::INFINITY;
    }
    let rho = ln_rho.exp();
    let ln_lead = s * v.ln() - beta * v;
    log2_c + ln_lead / std::f64::consts::LN_2 - (1.0 - rho).log2()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series_of_halves() {
        // Σ_{n≥1} 2^-n = 1 with the exact geometric tail 2^-(n-1).
        let s = sum_series(1, 128, -100.0, |n| Float::with_val(128, Float::i_exp(1, -(n as i32))), |n| -(n as f64) + 1.0);
        let err = (s.value - 1u32).abs();
        assert!(err < Float::with_val(64, Float::i_exp(1, -99)));
    }

    #[test]
    fn majorant_dominates_the_tail() {
        // Σ_{k≥10} k^3 e^{-k}, summed by brute force in f64.
        let exact: f64 = (10..400).map(|k| (k as f64).powi(3) * (-(k as f64)).exp()).sum();
        let bound = geometric_tail_log2(0.0, 3, 1.0, 10.0, 1.0);
        assert!(exact.log2() <= bound);
        assert!(bound < exact.log2() + 1.5);
        assert_eq!(geometric_tail_log2(0.0, 30, 1.0, 2.0, 1.0), f64::INFINITY);
    }
}
