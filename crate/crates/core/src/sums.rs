//! Hyperbolic series: symbolic forms in `x`, closed forms at `y = π`, and
//! direct summation with certified tails.
//!
//! Routing of closed forms at `x = 1/2`:
//!
//! | family        | exponent     | route                                              |
//! |---------------|--------------|----------------------------------------------------|
//! | `Sinh2`       | `s = 0`      | `(1 - P)/6`                                        |
//! | `Sinh2`       | even `s ≥ 2` | `4 Φ_{1,s}`                                        |
//! | `CoshSinh3`   | odd `s`      | `-½ d/dy` of `Sinh2(s-1)`                          |
//! | `Cosh2`       | even `s`     | explicit formula in `q_s(½)`, `q_s'(½)`            |
//! | `SinhCosh3`   | odd `s`      | explicit formula in `q_{s-1}`, its derivatives     |
//! | `Alt*`, `Fermi` | see [`FamilyTag`] | Jacobi polynomial forms evaluated at `½`     |
//!
//! `Cosh2` and `SinhCosh3` also have symbolic forms (`σ z^{2m+1}(z q' + 2m z' q)`
//! and its `y`-derivative); those are kept as an independent route.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::algebra::{bernoulli, euler_number, ClosedForm, EllipticExpr, Key, Poly};
use crate::eisenstein::{eisenstein_pqr, series_table};
use crate::error::{Error, Result};
use crate::jacobi::jacobi_tables;
use crate::numerics::{geometric_tail_log2, pi, sum_series, working_prec, SeriesSum};

/// The summed families. `v` runs over `n ≥ 1` or over odd `2n + 1`, `n ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyTag {
    /// `Σ n^s / sinh²(ny)`, even `s`.
    Sinh2,
    /// `Σ n^s cosh(ny) / sinh³(ny)`, odd `s`.
    CoshSinh3,
    /// `Σ v^s / cosh²(vy/2)`, even `s`.
    Cosh2,
    /// `Σ v^s sinh(vy/2) / cosh³(vy/2)`, odd `s`.
    SinhCosh3,
    /// `Σ (-1)^n v^s / (e^{vy} - 1)`, even `s`.
    AltExpMinus,
    /// `Σ (-1)^n v^s / (e^{vy} + 1)`, even `s`.
    AltExpPlus,
    /// `Σ (-1)^n v^s / sinh²(vy/2)`, odd `s`.
    AltSinh2,
    /// `Σ (-1)^n v^s / cosh²(vy/2)`, odd `s`.
    AltCosh2,
    /// `Σ v^s / (e^{vy} + 1)`, odd `s`.
    Fermi,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 9] = [
        FamilyTag::Sinh2,
        FamilyTag::CoshSinh3,
        FamilyTag::Cosh2,
        FamilyTag::SinhCosh3,
        FamilyTag::AltExpMinus,
        FamilyTag::AltExpPlus,
        FamilyTag::AltSinh2,
        FamilyTag::AltCosh2,
        FamilyTag::Fermi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Sinh2 => "sinh2",
            FamilyTag::CoshSinh3 => "cosh-sinh3",
            FamilyTag::Cosh2 => "cosh2",
            FamilyTag::SinhCosh3 => "sinh-cosh3",
            FamilyTag::AltExpMinus => "alt-exp-minus",
            FamilyTag::AltExpPlus => "alt-exp-plus",
            FamilyTag::AltSinh2 => "alt-sinh2",
            FamilyTag::AltCosh2 => "alt-cosh2",
            FamilyTag::Fermi => "fermi",
        }
    }

    /// Whether the exponent must be odd.
    pub fn odd_exponent(self) -> bool {
        matches!(self, FamilyTag::CoshSinh3 | FamilyTag::SinhCosh3 | FamilyTag::AltSinh2 | FamilyTag::AltCosh2 | FamilyTag::Fermi)
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name() == norm)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown family `{s}`")))
    }
}

/// A family together with the exponent of `n` (or of `2n + 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SumFamily {
    pub tag: FamilyTag,
    pub exp: u32,
}

impl SumFamily {
    pub fn new(tag: FamilyTag, exp: u32) -> Result<SumFamily> {
        let ok = if tag.odd_exponent() { exp % 2 == 1 } else { exp % 2 == 0 };
        if ok {
            Ok(SumFamily { tag, exp })
        } else {
            Err(Error::UnsupportedFamilyExponent { family: tag.name().to_string(), exp })
        }
    }

    /// Every admissible exponent up to `max_exp`, for every family.
    pub fn all_up_to(max_exp: u32) -> Vec<SumFamily> {
        FamilyTag::ALL
            .into_iter()
            .flat_map(|tag| (0..=max_exp).filter_map(move |s| SumFamily::new(tag, s).ok()))
            .collect()
    }
}

impl fmt::Display for SumFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.tag, self.exp)
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn sign(m: u32) -> i64 {
    if m % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Σ 1/sinh²(ny) = (1 - P)/6`.
fn sinh2_zero() -> EllipticExpr {
    (&EllipticExpr::one() - &eisenstein_pqr().p).scale(&q(1, 6))
}

/// `σ z^{2m+1} (z q_{2m}' + 2m z' q_{2m}) (-1)^m / (2m)`, and `σ z z'` for `m = 0`.
fn cosh2_symbolic(m: u32) -> EllipticExpr {
    let sigma = EllipticExpr::sigma();
    if m == 0 {
        return &(&sigma * &EllipticExpr::z()) * &EllipticExpr::jet(1);
    }
    let tables = jacobi_tables(2 * m as usize);
    let qm = &tables.q[2 * m as usize];
    let inner = &(&EllipticExpr::z() * &EllipticExpr::poly(qm.derivative()))
        + &(&EllipticExpr::jet(1) * &EllipticExpr::poly(qm.scale(&Rational::from(2 * m))));
    (&(&sigma * &EllipticExpr::zpow(2 * m + 1)) * &inner).scale(&q(sign(m), 2 * i64::from(m)))
}

/// The sum as an expression in `x`, `√(1-x)` and the `z`-jets.
pub fn sum_symbolic(family: SumFamily) -> Result<EllipticExpr> {
    let SumFamily { tag, exp: s } = SumFamily::new(family.tag, family.exp)?;
    Ok(match tag {
        FamilyTag::Sinh2 if s == 0 => sinh2_zero(),
        FamilyTag::Sinh2 => series_table(s as usize / 2).phi(s as usize / 2).scale(&q(4, 1)),
        FamilyTag::CoshSinh3 => sum_symbolic(SumFamily { tag: FamilyTag::Sinh2, exp: s - 1 })?
            .diff_y()
            .scale(&q(-1, 2)),
        FamilyTag::Cosh2 => cosh2_symbolic(s / 2),
        FamilyTag::SinhCosh3 => -&cosh2_symbolic((s - 1) / 2).diff_y(),
        FamilyTag::AltExpMinus => {
            let m = s / 2;
            let p = &jacobi_tables(s as usize).p[s as usize];
            let main = &EllipticExpr::zpow(s + 1) * &EllipticExpr::poly(p.clone());
            (&main - &EllipticExpr::constant(euler_number(m as usize))).scale(&q(sign(m), 4))
        }
        FamilyTag::AltExpPlus => {
            let m = s / 2;
            let f = &jacobi_tables(s as usize).f[s as usize];
            let main = &(&EllipticExpr::r() * &EllipticExpr::zpow(s + 1)) * &EllipticExpr::poly(f.clone());
            (&EllipticExpr::constant(euler_number(m as usize)) - &main).scale(&q(sign(m), 4))
        }
        FamilyTag::AltSinh2 => {
            let m = (s - 1) / 2;
            let p = &jacobi_tables(2 * m as usize).p[2 * m as usize];
            let inner = &EllipticExpr::zpow(2 * m + 1) * &EllipticExpr::poly(p.clone());
            let outer = &EllipticExpr::sigma() * &EllipticExpr::zpow(2);
            (&outer * &inner.diff_x()).scale(&Rational::from(sign(m)))
        }
        FamilyTag::AltCosh2 => {
            let m = (s - 1) / 2;
            let f = &jacobi_tables(2 * m as usize).f[2 * m as usize];
            let inner = &(&EllipticExpr::r() * &EllipticExpr::zpow(2 * m + 1)) * &EllipticExpr::poly(f.clone());
            let outer = &EllipticExpr::sigma() * &EllipticExpr::zpow(2);
            (&outer * &inner.diff_x()).scale(&Rational::from(-sign(m)))
        }
        FamilyTag::Fermi => {
            let m = (s + 1) / 2;
            let qm = &jacobi_tables(2 * m as usize).q[2 * m as usize];
            let main = (&EllipticExpr::zpow(2 * m) * &EllipticExpr::poly(qm.clone())).scale(&Rational::from(sign(m)));
            let two_pow = Rational::from(Integer::from(1) << (2 * m - 1));
            let constant = Rational::from(2 * (two_pow - 1u32)) * bernoulli(2 * m as usize);
            (&main + &EllipticExpr::constant(constant)).scale(&q(1, 8 * i64::from(m)))
        }
    })
}

/// `(q_k(½), q_k'(½), q_k''(½))`.
fn q_values_at_half(k: usize) -> (Rational, Rational, Rational) {
    let half = q(1, 2);
    let qk: &Poly = &jacobi_tables(k).q[k];
    let d1 = qk.derivative();
    let d2 = d1.derivative();
    (qk.eval(&half), d1.eval(&half), d2.eval(&half))
}

fn pow2_rat(e: i64) -> Rational {
    if e >= 0 {
        Rational::from(Integer::from(1) << e as u32)
    } else {
        Rational::from((Integer::from(1), Integer::from(1) << (-e) as u32))
    }
}

/// Closed forms of the `cosh` families from the values of `q_k` at `½`.
fn cosh_family_closed_form(tag: FamilyTag, s: u32) -> ClosedForm {
    let m = i64::from(s / 4);
    match (tag, s % 4) {
        (FamilyTag::Cosh2, 2) => {
            let (_, d1, _) = q_values_at_half(s as usize);
            let c = -d1 * pow2_rat(-(4 * m + 7)) / Rational::from(2 * m + 1);
            ClosedForm::gamma_pi(c, 8 * m + 8, 6 * m + 6)
        }
        (FamilyTag::Cosh2, 0) => {
            let (v, _, _) = q_values_at_half(s as usize);
            ClosedForm::gamma_pi(v * pow2_rat(-(4 * m + 1)), 8 * m, 6 * m + 1)
        }
        (FamilyTag::SinhCosh3, 1) => {
            let (v, _, d2) = q_values_at_half(4 * m as usize);
            let mut lead = Rational::from(4 * &v);
            if m > 0 {
                lead += d2 / Rational::from(m);
            }
            let scale = pow2_rat(-2 * (2 * m + 5));
            let a = ClosedForm::gamma_pi(lead * &scale, 8 * m + 8, 6 * m + 6);
            let b = ClosedForm::gamma_pi(Rational::from(256 * (4 * m + 1)) * v * scale, 8 * m, 6 * m + 2);
            &a + &b
        }
        (FamilyTag::SinhCosh3, 3) => {
            // Sign fixed by Σ v^{4m+3} sinh/cosh³ = ((4m+3)/π) Σ v^{4m+2}/cosh².
            let (_, d1, _) = q_values_at_half(4 * m as usize + 2);
            let c = -Rational::from(4 * m + 3) * d1 * pow2_rat(-(4 * m + 7)) / Rational::from(2 * m + 1);
            ClosedForm::gamma_pi(c, 8 * m + 8, 6 * m + 7)
        }
        _ => unreachable!("exponent parity is validated by SumFamily::new"),
    }
}

/// Exact value of the sum at `y = π`.
pub fn sum_closed_form(family: SumFamily) -> Result<ClosedForm> {
    let family = SumFamily::new(family.tag, family.exp)?;
    match family.tag {
        FamilyTag::Cosh2 | FamilyTag::SinhCosh3 => Ok(cosh_family_closed_form(family.tag, family.exp)),
        _ => sum_symbolic(family)?.eval_at_half(),
    }
}

/// The `Cosh2`/`SinhCosh3` value through the symbolic route instead of the `q`-formulas.
pub fn sum_closed_form_symbolic(family: SumFamily) -> Result<ClosedForm> {
    sum_symbolic(family)?.eval_at_half()
}

/// Monomials allowed by the sharp closed forms for the value at `y = π`.
pub fn permitted_support(family: SumFamily) -> Vec<Key> {
    let k = Key::gamma_over_pi;
    let s = i64::from(family.exp);
    match family.tag {
        FamilyTag::Sinh2 if s == 0 => vec![Key::ONE, k(0, 1)],
        FamilyTag::Sinh2 if s % 4 == 2 => {
            let m = (s + 2) / 4;
            let mut v = vec![k(8 * m, 6 * m)];
            if m == 1 {
                v.push(k(0, 2));
            }
            v
        }
        FamilyTag::Sinh2 => {
            let m = s / 4;
            vec![k(8 * m, 6 * m + 1)]
        }
        FamilyTag::CoshSinh3 if s % 4 == 3 => {
            let m = (s + 1) / 4;
            let mut v = vec![k(8 * m, 6 * m + 1)];
            if m == 1 {
                v.push(k(0, 3));
            }
            v
        }
        FamilyTag::CoshSinh3 => {
            let m = (s - 1) / 4;
            vec![k(8 * m + 8, 6 * m + 6), k(8 * m, 6 * m + 2)]
        }
        FamilyTag::Cosh2 if s % 4 == 2 => {
            let m = (s - 2) / 4;
            vec![k(8 * m + 8, 6 * m + 6)]
        }
        FamilyTag::Cosh2 => {
            let m = s / 4;
            vec![k(8 * m, 6 * m + 1)]
        }
        FamilyTag::SinhCosh3 if s % 4 == 1 => {
            let m = (s - 1) / 4;
            vec![k(8 * m + 8, 6 * m + 6), k(8 * m, 6 * m + 2)]
        }
        FamilyTag::SinhCosh3 => {
            let m = (s - 3) / 4;
            vec![k(8 * m + 8, 6 * m + 7)]
        }
        _ => Vec::new(),
    }
}

/// Monomials allowed by the coarser headline membership statements.
///
/// For `Sinh2` with `s = 4m - 4`, `m ≥ 2`, this admits `Γ^{8m-4}/π^{6m-3}`
/// on top of [`permitted_support`].
pub fn headline_support(family: SumFamily) -> Vec<Key> {
    let k = Key::gamma_over_pi;
    let s = i64::from(family.exp);
    match family.tag {
        FamilyTag::Sinh2 if s % 4 == 0 => {
            let m = s / 4 + 1;
            let mut v = vec![k(8 * m - 8, 6 * m - 5), k(8 * m - 4, 6 * m - 3)];
            if m == 1 {
                v.push(Key::ONE);
            }
            v
        }
        FamilyTag::CoshSinh3 if s % 4 == 1 => {
            let m = (s + 3) / 4;
            vec![k(8 * m, 6 * m), k(8 * m - 8, 6 * m - 4)]
        }
        _ => permitted_support(family),
    }
}

/// True when `v` has no monomial outside `allowed`.
pub fn support_within(v: &ClosedForm, allowed: &[Key]) -> bool {
    v.support().iter().all(|k| allowed.contains(k))
}

/// Coefficient of `key` in `v` after checking that `v` lives on `allowed`.
fn extract(v: &ClosedForm, key: Key, allowed: &[Key], context: &str) -> Result<Rational> {
    if let Some(bad) = v.support().into_iter().find(|k| !allowed.contains(k)) {
        return Err(Error::UnexpectedMonomial { context: context.to_string(), key: bad.to_string() });
    }
    Ok(v.coefficient(key))
}

/// `α_k`: the `Γ`-coefficient of `Σ n^k / sinh²(nπ)`, even `k ≥ 2`.
pub fn alpha(k: u32) -> Result<Rational> {
    let fam = SumFamily::new(FamilyTag::Sinh2, k)?;
    if k == 0 {
        return Err(Error::UnsupportedFamilyExponent { family: "alpha".into(), exp: k });
    }
    let v = sum_closed_form(fam)?;
    let allowed = permitted_support(fam);
    extract(&v, allowed[0], &allowed, &fam.to_string())
}

/// `(β_k, γ_k)` for `Σ n^k cosh(nπ)/sinh³(nπ)`, odd `k ≥ 3`.
pub fn beta_gamma(k: u32) -> Result<(Rational, Rational)> {
    let fam = SumFamily::new(FamilyTag::CoshSinh3, k)?;
    if k < 3 {
        return Err(Error::UnsupportedFamilyExponent { family: "beta".into(), exp: k });
    }
    let v = sum_closed_form(fam)?;
    let allowed = permitted_support(fam);
    let beta = extract(&v, allowed[0], &allowed, &fam.to_string())?;
    let gamma = allowed.get(1).map(|&key| v.coefficient(key)).unwrap_or_default();
    Ok((beta, gamma))
}

// ---------------------------------------------------------------------------
// Direct summation

#[derive(Clone, Copy)]
enum Kernel {
    InvSinh2,
    CoshOverSinh3,
    InvCosh2,
    SinhOverCosh3,
    InvExpMinusOne,
    InvExpPlusOne,
    InvCosh,
    InvSinh,
}

impl Kernel {
    fn eval(self, t: &Float) -> Float {
        let p = t.prec();
        match self {
            Kernel::InvSinh2 => Float::with_val(p, t.sinh_ref()).square().recip(),
            Kernel::CoshOverSinh3 => Float::with_val(p, t.cosh_ref()) / Float::with_val(p, t.sinh_ref()).pow(3u32),
            Kernel::InvCosh2 => Float::with_val(p, t.cosh_ref()).square().recip(),
            Kernel::SinhOverCosh3 => Float::with_val(p, t.sinh_ref()) / Float::with_val(p, t.cosh_ref()).pow(3u32),
            Kernel::InvExpMinusOne => Float::with_val(p, t.exp_m1_ref()).recip(),
            Kernel::InvExpPlusOne => (Float::with_val(p, t.exp_ref()) + 1u32).recip(),
            Kernel::InvCosh => Float::with_val(p, t.cosh_ref()).recip(),
            Kernel::InvSinh => Float::with_val(p, t.sinh_ref()).recip(),
        }
    }
}

/// Shape of a series `Σ sign · v^s · K(v · y · scale)`.
#[derive(Clone, Copy)]
struct Shape {
    odd: bool,
    /// `(-1)^n` for odd `v = 2n+1`, `(-1)^{n+1}` for `v = n`.
    alternating: bool,
    /// Multiplier of `y` in the kernel argument, in halves.
    half_units: u32,
    kernel: Kernel,
    /// `|K(t)| ≤ C e^{-rate·t}` once `t ≥ π/2`.
    c: f64,
    rate: f64,
}

fn shape_of(tag: FamilyTag) -> Shape {
    let sh = |odd, alternating, half_units, kernel, c, rate| Shape { odd, alternating, half_units, kernel, c, rate };
    match tag {
        FamilyTag::Sinh2 => sh(false, false, 2, Kernel::InvSinh2, 5.0, 2.0),
        FamilyTag::CoshSinh3 => sh(false, false, 2, Kernel::CoshOverSinh3, 6.0, 2.0),
        FamilyTag::Cosh2 => sh(true, false, 1, Kernel::InvCosh2, 4.0, 2.0),
        FamilyTag::SinhCosh3 => sh(true, false, 1, Kernel::SinhOverCosh3, 4.0, 2.0),
        FamilyTag::AltExpMinus => sh(true, true, 2, Kernel::InvExpMinusOne, 2.0, 1.0),
        FamilyTag::AltExpPlus => sh(true, true, 2, Kernel::InvExpPlusOne, 1.0, 1.0),
        FamilyTag::AltSinh2 => sh(true, true, 1, Kernel::InvSinh2, 5.0, 2.0),
        FamilyTag::AltCosh2 => sh(true, true, 1, Kernel::InvCosh2, 4.0, 2.0),
        FamilyTag::Fermi => sh(true, false, 2, Kernel::InvExpPlusOne, 1.0, 1.0),
    }
}

fn direct_sum(shape: Shape, s: u32, y: &Float, prec: u32) -> Result<SeriesSum> {
    let y64 = y.to_f64();
    if y64 < std::f64::consts::PI - 1e-12 {
        return Err(Error::InvalidConfig("direct summation needs y ≥ π".into()));
    }
    let arg_per_v = y64 * f64::from(shape.half_units) / 2.0;
    let beta = shape.rate * arg_per_v;
    let log2_c = shape.c.log2();
    let (step, start) = if shape.odd { (2.0, 0u64) } else { (1.0, 1u64) };
    let v_of = move |n: u64| if shape.odd { 2 * n + 1 } else { n };
    let peak = (1..=u64::from(s) + 2)
        .map(|v| log2_c + f64::from(s) * (v as f64).log2() - beta * v as f64 / std::f64::consts::LN_2)
        .fold(0.0, f64::max);
    let wp = working_prec(prec, peak);
    let y = Float::with_val(wp, y);
    let half_y = Float::with_val(wp, &y * shape.half_units) / 2u32;
    let term = |n: u64| {
        let v = v_of(n);
        let t = Float::with_val(wp, &half_y * v);
        let mut val = shape.kernel.eval(&t) * Float::with_val(wp, Integer::from(v).pow(s));
        let negative = shape.alternating && if shape.odd { n % 2 == 1 } else { n % 2 == 0 };
        if negative {
            val = -val;
        }
        val
    };
    let tail = |n: u64| geometric_tail_log2(log2_c, s, beta, v_of(n) as f64, step);
    Ok(sum_series(start, wp, -f64::from(prec) - 16.0, term, tail))
}

/// Direct summation at `y = π` to within `2^-(prec+16)` plus rounding.
pub fn sum_numeric(family: SumFamily, prec: u32) -> Result<SeriesSum> {
    let family = SumFamily::new(family.tag, family.exp)?;
    sum_numeric_at(family, &pi(prec + 64), prec)
}

/// Direct summation at any `y ≥ π`.
pub fn sum_numeric_at(family: SumFamily, y: &Float, prec: u32) -> Result<SeriesSum> {
    direct_sum(shape_of(family.tag), family.exp, y, prec)
}

/// `Σ_{n≥0} (-1)^n (2n+1)^s / cosh((2n+1)y/2)`.
pub fn alt_sech_numeric(s: u32, y: &Float, prec: u32) -> Result<SeriesSum> {
    let shape = Shape { odd: true, alternating: true, half_units: 1, kernel: Kernel::InvCosh, c: 2.0, rate: 1.0 };
    direct_sum(shape, s, y, prec)
}

/// `Σ_{n≥1} (-1)^{n+1} n^s / sinh(ny)`.
pub fn alt_csch_numeric(s: u32, y: &Float, prec: u32) -> Result<SeriesSum> {
    let shape = Shape { odd: false, alternating: true, half_units: 2, kernel: Kernel::InvSinh, c: 3.0, rate: 1.0 };
    direct_sum(shape, s, y, prec)
}

/// `Σ_{n≥1} n / (e^{2ny} - 1)`.
pub fn exp_minus_numeric(y: &Float, prec: u32) -> Result<SeriesSum> {
    let shape = Shape { odd: false, alternating: false, half_units: 4, kernel: Kernel::InvExpMinusOne, c: 2.0, rate: 1.0 };
    direct_sum(shape, 1, y, prec)
}
