//! Integrals `∫₀^∞ x^a / (cos x ± cosh x)^b dx` for `b ∈ {1, 2}`: exact
//! values for `a = 4p + 1`, `b = 2`, quadrature with certified tails, and
//! numeric checks of the identities tying them to hyperbolic series.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::algebra::ClosedForm;
use crate::error::{Error, Result};
use crate::jacobi::jacobi_tables;
use crate::numerics::{log2_abs, pi, pow2, tanh_sinh, working_prec, HPComplex};
use crate::sums::{
    alpha, alt_csch_numeric, alt_sech_numeric, beta_gamma, sum_closed_form, sum_closed_form_symbolic, sum_numeric,
    FamilyTag, SumFamily,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntegralKind {
    /// Denominator `(cos x + cosh x)²`.
    Plus2,
    /// Denominator `(cos x - cosh x)²`.
    Minus2,
    /// Denominator `cos x + cosh x`.
    Plus1,
    /// Denominator `cos x - cosh x`.
    Minus1,
}

impl IntegralKind {
    pub const ALL: [IntegralKind; 4] = [IntegralKind::Plus2, IntegralKind::Minus2, IntegralKind::Plus1, IntegralKind::Minus1];

    pub fn name(self) -> &'static str {
        match self {
            IntegralKind::Plus2 => "plus2",
            IntegralKind::Minus2 => "minus2",
            IntegralKind::Plus1 => "plus1",
            IntegralKind::Minus1 => "minus1",
        }
    }

    /// Power of the denominator.
    pub fn power(self) -> u32 {
        match self {
            IntegralKind::Plus2 | IntegralKind::Minus2 => 2,
            IntegralKind::Plus1 | IntegralKind::Minus1 => 1,
        }
    }

    fn minus(self) -> bool {
        matches!(self, IntegralKind::Minus2 | IntegralKind::Minus1)
    }

    /// Smallest exponent of `x` accepted.
    pub fn min_exponent(self) -> u32 {
        match self {
            IntegralKind::Minus2 => 5,
            IntegralKind::Minus1 => 2,
            _ => 0,
        }
    }
}

impl fmt::Display for IntegralKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IntegralKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IntegralKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown integral kind `{s}`")))
    }
}

/// `∫₀^∞ x^a / (cos x ± cosh x)^b dx`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegralSpec {
    pub kind: IntegralKind,
    pub a: u32,
}

impl IntegralSpec {
    pub fn new(kind: IntegralKind, a: u32) -> Result<IntegralSpec> {
        if a < kind.min_exponent() {
            return Err(Error::UnsupportedExponent { kind: kind.name().into(), exp: i64::from(a) });
        }
        Ok(IntegralSpec { kind, a })
    }
}

impl fmt::Display for IntegralSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(a={})", self.kind, self.a)
    }
}

// ---------------------------------------------------------------------------
// Exact values

fn sign(p: i64) -> i64 {
    if p % 2 == 0 {
        1
    } else {
        -1
    }
}

fn two_pow(e: i64) -> Rational {
    if e >= 0 {
        Rational::from(rug::Integer::from(1) << e as u32)
    } else {
        Rational::from((rug::Integer::from(1), rug::Integer::from(1) << (-e) as u32))
    }
}

fn sum_value(tag: FamilyTag, s: u32) -> Result<ClosedForm> {
    sum_closed_form(SumFamily::new(tag, s)?)
}

fn unsupported(kind: IntegralKind, p: i64) -> Error {
    Error::UnsupportedExponent { kind: kind.name().into(), exp: p }
}

/// Exact value of `∫ x^{4p+1} / (cos x ± cosh x)²`.
///
/// The minus case (`p ≥ 1`) combines the two `sinh` series it reduces to;
/// the plus case (`p ≥ 0`) uses `q_{4p}(½)` and `q″_{4p}(½)` directly.
pub fn integral_closed_form(kind: IntegralKind, p: i64) -> Result<ClosedForm> {
    match kind {
        IntegralKind::Minus2 => minus2_from_sums(p),
        IntegralKind::Plus2 => plus2_from_jacobi(p),
        _ => Err(unsupported(kind, p)),
    }
}

/// `(-1)^p 2^{2p-1} π^{4p+1} [(4p+1) Σ n^{4p}/sinh² - 2π Σ n^{4p+1} cosh/sinh³]`.
pub fn minus2_from_sums(p: i64) -> Result<ClosedForm> {
    if !(1..=1 << 12).contains(&p) {
        return Err(unsupported(IntegralKind::Minus2, p));
    }
    let s = 4 * p as u32;
    let sinh2 = sum_value(FamilyTag::Sinh2, s)?;
    let cosh_sinh3 = sum_value(FamilyTag::CoshSinh3, s + 1)?;
    let bracket = &sinh2.scale(&Rational::from(4 * p + 1)) - &(&cosh_sinh3 * &ClosedForm::pi_pow(1)).scale(&Rational::from(2));
    let factor = two_pow(2 * p - 1) * sign(p);
    Ok((&bracket * &ClosedForm::pi_pow(4 * p + 1)).scale(&factor))
}

/// The coefficients `(i_p, j_p)` of `Γ^{8p}/π^{2p}` and `Γ^{8p+8}/π^{2p+4}`,
/// assembled from the tabulated `α_{4p}`, `β_{4p+1}`, `γ_{4p+1}`.
pub fn minus2_coefficients_from_tables(p: i64) -> Result<(Rational, Rational)> {
    if !(1..=1 << 12).contains(&p) {
        return Err(unsupported(IntegralKind::Minus2, p));
    }
    let a = alpha(4 * p as u32)?;
    let (b, g) = beta_gamma(4 * p as u32 + 1)?;
    let i = two_pow(2 * p - 1) * sign(p) * (a * (4 * p + 1) - g * 2u32);
    let j = two_pow(2 * p) * (-sign(p)) * b;
    Ok((i, j))
}

/// `i Γ^{8p}/π^{2p} + j Γ^{8p+8}/π^{2p+4}`.
pub fn two_term(p: i64, i: Rational, j: Rational) -> ClosedForm {
    &ClosedForm::gamma_pi(i, 8 * p, 2 * p) + &ClosedForm::gamma_pi(j, 8 * p + 8, 2 * p + 4)
}

/// `∫ x^{4p+1}/(cos x + cosh x)²` from `q_{4p}(½)` and `q″_{4p}(½)`.
pub fn plus2_from_jacobi(p: i64) -> Result<ClosedForm> {
    if !(0..=1 << 12).contains(&p) {
        return Err(unsupported(IntegralKind::Plus2, p));
    }
    if p == 0 {
        return Ok(&ClosedForm::rational(Rational::from((-1, 8))) + &ClosedForm::gamma_pi(two_pow(-9), 8, 4));
    }
    let k = 4 * p as usize;
    let q = &jacobi_tables(k).q[k];
    let half = Rational::from((1, 2));
    let q0 = q.eval(&half);
    let q2 = q.derivative().derivative().eval(&half);
    let s = sign(p);
    let j = (Rational::from(4 * p) * &q0 + q2) * two_pow(-(6 * p + 11)) * s / Rational::from(p);
    let i = q0 * Rational::from(4 * p + 1) * two_pow(-(6 * p + 3)) * (-s);
    Ok(two_term(p, i, j))
}

/// `(-1)^p π^{4p+1}/2^{2p+1} [π Σ v^{4p+1} sinh/cosh³ - (4p+1) Σ v^{4p}/cosh²]`
/// with both series taken from their symbolic forms in `x`.
pub fn plus2_from_sums(p: i64) -> Result<ClosedForm> {
    if !(0..=1 << 12).contains(&p) {
        return Err(unsupported(IntegralKind::Plus2, p));
    }
    let s = 4 * p as u32;
    let cosh2 = sum_closed_form_symbolic(SumFamily::new(FamilyTag::Cosh2, s)?)?;
    let sinh_cosh3 = sum_closed_form_symbolic(SumFamily::new(FamilyTag::SinhCosh3, s + 1)?)?;
    let bracket = &(&sinh_cosh3 * &ClosedForm::pi_pow(1)) - &cosh2.scale(&Rational::from(4 * p + 1));
    let factor = two_pow(-(2 * p + 1)) * sign(p);
    Ok((&bracket * &ClosedForm::pi_pow(4 * p + 1)).scale(&factor))
}

// ---------------------------------------------------------------------------
// Quadrature

/// A quadrature value over `[0, T]` with the bound on the omitted `[T, ∞)`.
#[derive(Clone, Debug)]
pub struct NumericIntegral {
    pub value: Float,
    /// Sum of the per-panel inter-level deltas.
    pub quad_delta: Float,
    /// `log2` of the certified bound on `∫_T^∞ |f|`.
    pub tail_log2: f64,
    pub cutoff: u32,
    pub panels: usize,
    pub evaluations: usize,
}

fn log2_factorial(a: u32) -> f64 {
    (2..=a).map(|k| f64::from(k).log2()).sum()
}

/// Smallest even `T ≥ t_min` with `log2 C + a log2 T - rate T log2 e < target`.
fn cutoff(log2_c: f64, a: u32, rate: f64, t_min: u32, target_log2: f64) -> u32 {
    let bound = |t: f64| log2_c + f64::from(a) * t.log2() - rate * t * std::f64::consts::LOG2_E;
    let mut t = t_min.max(6).next_multiple_of(2);
    while bound(f64::from(t)) >= target_log2 {
        t += 2;
    }
    t
}

/// `∫_0^T f` over panels `[0,1], [1,2], [2,4], …, [T-2,T]`, evaluated in
/// parallel and summed in panel order.
fn panel_quadrature<F>(f: &F, t_end: u32, prec: u32, wp: u32) -> Result<(Float, Float, usize)>
where
    F: Fn(&Float) -> Float + Sync,
{
    let mut edges = vec![0u32, 1, 2];
    while *edges.last().unwrap() < t_end {
        let next = edges.last().unwrap() + 2;
        edges.push(next);
    }
    let panel_prec = prec + (edges.len() as f64).log2().ceil() as u32;
    let results: Vec<Result<_>> = edges
        .par_windows(2)
        .map(|w| tanh_sinh(f, &Float::with_val(wp, w[0]), &Float::with_val(wp, w[1]), panel_prec, wp))
        .collect();
    let mut value = Float::with_val(wp, 0);
    let mut delta = Float::with_val(64, 0);
    let mut evaluations = 0;
    for r in results {
        let q = r?;
        value += &q.value;
        delta += &q.delta;
        evaluations += q.evaluations;
    }
    Ok((value, delta, evaluations))
}

/// `-(cos x - cosh x)/x² = 2 Σ_j x^{4j}/(4j+2)!`, free of cancellation near 0.
fn minus_denominator_over_x2(x: &Float) -> Float {
    let wp = x.prec();
    let x4 = Float::with_val(wp, x.square_ref()).square();
    let mut term = Float::with_val(wp, 0.5);
    let mut acc = term.clone();
    let eps = pow2(-(wp as i32) - 4, 64);
    let mut j = 0u32;
    while term > eps {
        let d = (4 * j + 3) * (4 * j + 4) * (4 * j + 5) * (4 * j + 6);
        term = term * &x4 / d;
        acc += &term;
        j += 1;
    }
    acc * 2u32
}

fn integrand(kind: IntegralKind, a: u32, x: &Float) -> Float {
    let wp = x.prec();
    let b = kind.power();
    if kind.minus() && *x <= 1 {
        // x^a / (-x² S)^b with S > 0
        let s = minus_denominator_over_x2(x);
        let mut v = Float::with_val(wp, x.pow(a - 2 * b)) / s.pow(b);
        if b == 1 {
            v = -v;
        }
        return v;
    }
    let c = Float::with_val(wp, x.cos_ref());
    let h = Float::with_val(wp, x.cosh_ref());
    let d = if kind.minus() { c - h } else { c + h };
    Float::with_val(wp, x.pow(a)) / d.pow(b)
}

/// `∫₀^∞ x^a/(cos x ± cosh x)^b` to an absolute `2^-prec`, with a tail
/// bound below `2^-(prec+16)`.
///
/// Beyond `x = 5`, `|cos x ± cosh x| ≥ e^x/5`, so the tail is at most
/// `25 ∫_T^∞ x^a e^{-2x} ≤ 25 T^a e^{-2T}` (`T ≥ a`) for `b = 2` and
/// `5 ∫_T^∞ x^a e^{-x} ≤ 10 T^a e^{-T}` (`T ≥ 2a`) for `b = 1`.
pub fn integral_numeric(spec: IntegralSpec, prec: u32) -> Result<NumericIntegral> {
    let IntegralSpec { kind, a } = IntegralSpec::new(spec.kind, spec.a)?;
    if prec < 64 {
        return Err(Error::InvalidConfig(format!("precision {prec} is below 64 bits")));
    }
    let b = kind.power();
    let (log2_c, rate, t_min) = if b == 2 { (25f64.log2(), 2.0, a) } else { (10f64.log2(), 1.0, 2 * a) };
    let target = -f64::from(prec) - 16.0;
    let t_end = cutoff(log2_c, a, rate, t_min, target);
    let tail_log2 = log2_c + f64::from(a) * f64::from(t_end).log2() - rate * f64::from(t_end) * std::f64::consts::LOG2_E;
    // Size of ∫ C x^a e^{-bx}, which bounds every partial sum.
    let headroom = log2_c + log2_factorial(a) - f64::from(a + 1) * f64::from(b).log2();
    let wp = working_prec(prec, headroom);
    let f = move |x: &Float| integrand(kind, a, x);
    let (value, quad_delta, evaluations) = panel_quadrature(&f, t_end, prec, wp)?;
    Ok(NumericIntegral {
        value,
        quad_delta,
        tail_log2,
        cutoff: t_end,
        panels: (t_end as usize) / 2 + 1,
        evaluations,
    })
}

/// `|∫₀^∞ x e^{-2x} dx - 1/4|` through the same panels and cutoff rule,
/// with the tail `∫_T^∞ x e^{-2x} ≤ T e^{-2T}` (`T ≥ 1`).
pub fn quadrature_self_test(prec: u32) -> Result<Float> {
    let t_end = cutoff(0.0, 1, 2.0, 1, -f64::from(prec) - 16.0);
    let wp = working_prec(prec, 0.0);
    let f = |x: &Float| Float::with_val(x.prec(), x * Float::with_val(x.prec(), -2 * x.clone()).exp());
    let (v, _, _) = panel_quadrature(&f, t_end, prec, wp)?;
    Ok((v - 0.25f64).abs())
}

// ---------------------------------------------------------------------------
// Integral/series identities

/// Identities equating an integral (or one series) with hyperbolic series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `(cos x + cosh x)²` against `cosh` series; `a ≡ 1, 3 (mod 4)`.
    PlusSquare,
    /// `(cos x - cosh x)²` against `sinh` series; `a ≡ 1, 3 (mod 4)`.
    MinusSquare,
    /// `2∫x^{2a+1}/(cos x + cosh x) = π^{2a+2}(-1)^{a/2}/2^a Σ(-1)^n v^{2a+1}/cosh(vπ/2)`, even `a`.
    PlusLinear,
    /// `(1+i^{a+1})∫x^a/(cos x - cosh x) = 2i(1+i)^{a-1}π^{a+1} Σ(-1)^{n+1}n^a/sinh(nπ)`, `2 ≤ a ≤ 5`.
    MinusLinear,
}

impl Relation {
    pub const ALL: [Relation; 4] = [Relation::PlusSquare, Relation::MinusSquare, Relation::PlusLinear, Relation::MinusLinear];

    pub fn name(self) -> &'static str {
        match self {
            Relation::PlusSquare => "plus-square",
            Relation::MinusSquare => "minus-square",
            Relation::PlusLinear => "plus-linear",
            Relation::MinusLinear => "minus-linear",
        }
    }

    /// Whether `a` is in the implemented instance set.
    pub fn supports(self, a: u32) -> bool {
        match self {
            Relation::PlusSquare => a % 2 == 1,
            Relation::MinusSquare => (a % 4 == 1 && a >= 5) || (a % 4 == 3 && a >= 7),
            Relation::PlusLinear => a % 2 == 0,
            Relation::MinusLinear => (2..=5).contains(&a),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().replace('_', "-");
        Relation::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(&s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown relation `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub which: Relation,
    pub a: u32,
    pub lhs: HPComplex,
    pub rhs: HPComplex,
    /// Largest componentwise `|lhs - rhs|`.
    pub abs_delta: Float,
}

fn series(tag: FamilyTag, s: u32, prec: u32) -> Result<Float> {
    Ok(sum_numeric(SumFamily::new(tag, s)?, prec)?.value)
}

fn integral(kind: IntegralKind, a: u32, prec: u32) -> Result<Float> {
    Ok(integral_numeric(IntegralSpec::new(kind, a)?, prec)?.value)
}

/// Extra bits so that a series multiplied by `2^bits` stays within `2^-prec`.
fn boost(log2_factor: f64) -> u32 {
    log2_factor.max(0.0).ceil() as u32 + 4
}

/// Evaluates both sides of `which` at exponent `a` and reports their difference.
pub fn relation_check(which: Relation, a: u32, prec: u32) -> Result<RelationReport> {
    if !which.supports(a) {
        return Err(Error::UnsupportedExponent { kind: which.name().into(), exp: i64::from(a) });
    }
    let wp = prec + 64;
    let pi_ = pi(wp);
    let log2_pi = std::f64::consts::PI.log2();
    let af = f64::from(a);
    let (lhs, rhs) = match which {
        Relation::PlusSquare if a % 4 == 1 => {
            let p = i64::from(a / 4);
            let scale = Float::with_val(wp, pow2(2 * p as i32 + 1, wp) / Float::with_val(wp, (&pi_).pow(a))) * sign(p);
            let lhs = integral(IntegralKind::Plus2, a, prec)? * scale;
            let extra = prec + boost(log2_pi + af.log2());
            let rhs = Float::with_val(wp, &pi_ * series(FamilyTag::SinhCosh3, a, extra)?)
                - series(FamilyTag::Cosh2, a - 1, extra)? * a;
            (lhs, rhs)
        }
        Relation::PlusSquare => {
            let extra = prec + boost(af.log2());
            let lhs = series(FamilyTag::SinhCosh3, a, prec)?;
            let rhs = series(FamilyTag::Cosh2, a - 1, extra)? * a / &pi_;
            (lhs, rhs)
        }
        Relation::MinusSquare if a % 4 == 1 => {
            let p = i64::from(a / 4);
            let scale = Float::with_val(wp, pow2(-(2 * p as i32 - 1), wp) / Float::with_val(wp, (&pi_).pow(a))) * sign(p);
            let lhs = integral(IntegralKind::Minus2, a, prec)? * scale;
            let extra = prec + boost(log2_pi + af.log2() + 1.0);
            let rhs = series(FamilyTag::Sinh2, a - 1, extra)? * a
                - Float::with_val(wp, &pi_ * series(FamilyTag::CoshSinh3, a, extra)?) * 2u32;
            (lhs, rhs)
        }
        Relation::MinusSquare => {
            let extra = prec + boost(af.log2());
            let lhs = series(FamilyTag::CoshSinh3, a, prec)?;
            let rhs = series(FamilyTag::Sinh2, a - 1, extra)? * a / Float::with_val(wp, &pi_ * 2u32);
            (lhs, rhs)
        }
        Relation::PlusLinear => {
            let factor = Float::with_val(wp, (&pi_).pow(2 * a + 2)) / pow2(a as i32, wp) * sign(i64::from(a / 2));
            let extra = prec + boost(log2_abs(&factor));
            let lhs = integral(IntegralKind::Plus1, 2 * a + 1, prec + 1)? * 2u32;
            let rhs = alt_sech_numeric(2 * a + 1, &pi(extra + 64), extra)?.value * factor;
            (lhs, rhs)
        }
        Relation::MinusLinear => {
            let i_pow = HPComplex::from_i64(0, 1, wp).pow(a + 1);
            let left_factor = &HPComplex::from_i64(1, 0, wp) + &i_pow;
            let lhs = left_factor.scale(&integral(IntegralKind::Minus1, a, prec + 2)?);
            let pi_pow = Float::with_val(wp, (&pi_).pow(a + 1));
            let right_factor = (&HPComplex::from_i64(0, 2, wp) * &HPComplex::from_i64(1, 1, wp).pow(a - 1)).scale(&pi_pow);
            let extra = prec + boost(log2_abs(&right_factor.max_abs()));
            let sum = alt_csch_numeric(a, &pi(extra + 64), extra)?.value;
            let rhs = right_factor.scale(&sum);
            let abs_delta = (&lhs - &rhs).max_abs();
            return Ok(RelationReport { which, a, lhs, rhs, abs_delta });
        }
    };
    let abs_delta = Float::with_val(wp, &lhs - &rhs).abs();
    Ok(RelationReport { which, a, lhs: HPComplex::real(lhs), rhs: HPComplex::real(rhs), abs_delta })
}
