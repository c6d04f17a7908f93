//! The identity suite behind `verify`: exact checks on closed forms and
//! numeric checks at two precisions.

use std::time::Instant;

use rayon::prelude::*;
use rug::{Float, Rational};
use serde::Serialize;

use crate::algebra::{ClosedForm, Key};
use crate::conjecture::conjecture_check;
use crate::eisenstein::{phi_grading_holds, s_grading_holds, series_table};
use crate::error::Result;
use crate::integrals::{
    integral_closed_form, integral_numeric, minus2_coefficients_from_tables, minus2_from_sums, plus2_from_jacobi,
    plus2_from_sums, quadrature_self_test, relation_check, two_term, IntegralKind, IntegralSpec, Relation,
};
use crate::jacobi::{jacobi_tables, q_symmetry_holds};
use crate::known;
use crate::numerics::{gamma_quarter, log2_abs, pi, to_real};
use crate::sums::{
    alpha, alt_sech_numeric, beta_gamma, headline_support, permitted_support, sum_closed_form,
    sum_closed_form_symbolic, sum_numeric, support_within, FamilyTag, SumFamily,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    ExactPass,
    NumericPass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyEntry {
    pub id: &'static str,
    pub anchor: &'static str,
    pub status: Status,
    /// `0` for exact checks, else the worst `|lhs - rhs|` at the higher precision as `2^e`.
    pub delta: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    /// Higher of the two precisions; the lower one is `prec - 72` (at least 64).
    pub prec: u32,
    pub pmax: u32,
}

impl SuiteConfig {
    pub fn precisions(&self) -> [u32; 2] {
        [self.prec.saturating_sub(72).max(64), self.prec]
    }
}

/// Allowed `|lhs - rhs|` at precision `prec`.
pub fn tolerance_log2(prec: u32) -> f64 {
    -f64::from(prec) + 24.0
}

struct Finding {
    pass: bool,
    numeric: bool,
    delta: String,
    detail: String,
}

fn exact(failures: Vec<String>, detail: String) -> Finding {
    let pass = failures.is_empty();
    let detail = if pass { detail } else { failures.join("; ") };
    Finding { pass, numeric: false, delta: "0".into(), detail }
}

fn format_log2(l: f64) -> String {
    if l == f64::NEG_INFINITY {
        "0".into()
    } else {
        format!("2^{l:.1}")
    }
}

/// Runs `deltas` at both precisions; every delta must be within tolerance.
fn numeric<F>(cfg: &SuiteConfig, deltas: F, detail: &str) -> Finding
where
    F: Fn(u32) -> Result<Vec<(String, Float)>> + Sync,
{
    let mut failures = Vec::new();
    let mut worst_hi = f64::NEG_INFINITY;
    let mut shrink = f64::INFINITY;
    let [lo, hi] = cfg.precisions();
    let mut worst_lo = f64::NEG_INFINITY;
    for prec in [lo, hi] {
        match deltas(prec) {
            Ok(list) => {
                for (label, d) in list {
                    let l = log2_abs(&d);
                    if l >= tolerance_log2(prec) {
                        failures.push(format!("{label} at {prec} bits: {}", format_log2(l)));
                    }
                    if prec == hi {
                        worst_hi = worst_hi.max(l);
                    } else {
                        worst_lo = worst_lo.max(l);
                    }
                }
            }
            Err(e) => failures.push(format!("at {prec} bits: {e}")),
        }
    }
    if worst_lo.is_finite() && worst_hi.is_finite() {
        shrink = worst_lo - worst_hi;
    }
    let pass = failures.is_empty();
    let detail = if pass {
        let shrink = if shrink.is_finite() { format!(", shrink 2^{shrink:.0}") } else { String::new() };
        format!("{detail}; worst {} at {lo} bits{shrink}", format_log2(worst_lo))
    } else {
        failures.join("; ")
    };
    Finding { pass, numeric: true, delta: format_log2(worst_hi), detail }
}

fn diff(a: &Float, b: &Float) -> Float {
    Float::with_val(a.prec().max(b.prec()), a - b).abs()
}

fn fam(tag: FamilyTag, s: u32) -> SumFamily {
    SumFamily::new(tag, s).expect("valid family")
}

// ---------------------------------------------------------------------------
// Exact checks

fn alpha_table(_: &SuiteConfig) -> Finding {
    let mut bad = Vec::new();
    for (k, v) in known::ALPHA {
        match alpha(k) {
            Ok(a) if a == v.value() => {}
            Ok(a) => bad.push(format!("alpha_{k} = {a}")),
            Err(e) => bad.push(format!("alpha_{k}: {e}")),
        }
    }
    let s2 = sum_closed_form(fam(FamilyTag::Sinh2, 2));
    let expected = &ClosedForm::gamma_pi(Rational::from((1, 3 << 9)), 8, 6) - &ClosedForm::gamma_pi(Rational::from((1, 8)), 0, 2);
    if s2.as_ref().ok() != Some(&expected) {
        bad.push("exponent 2 constant term".into());
    }
    exact(bad, "k = 2..20, including the -1/(8π²) term at k = 2".into())
}

fn beta_gamma_table(_: &SuiteConfig) -> Finding {
    let mut bad = Vec::new();
    for (k, b, g) in known::BETA_GAMMA {
        match beta_gamma(k) {
            Ok((bb, gg)) if bb == b.value() && gg == g.value() => {}
            Ok((bb, gg)) => bad.push(format!("k={k}: ({bb}, {gg})")),
            Err(e) => bad.push(format!("k={k}: {e}")),
        }
    }
    exact(bad, "k = 3..23".into())
}

fn integral_table(kind: IntegralKind, rows: &[(i64, known::Dyadic, known::Dyadic)]) -> Vec<String> {
    let mut bad = Vec::new();
    for &(p, i, j) in rows {
        match integral_closed_form(kind, p) {
            Ok(v) if v == two_term(p, i.value(), j.value()) => {}
            Ok(v) => bad.push(format!("p={p}: {v}")),
            Err(e) => bad.push(format!("p={p}: {e}")),
        }
    }
    bad
}

fn minus2_table(_: &SuiteConfig) -> Finding {
    exact(integral_table(IntegralKind::Minus2, &known::MINUS2), "p = 1..7".into())
}

fn plus2_table(_: &SuiteConfig) -> Finding {
    let mut bad = integral_table(IntegralKind::Plus2, &known::PLUS2);
    let zero = &ClosedForm::rational(Rational::from((-1, 8))) + &ClosedForm::gamma_pi(Rational::from((1, 512)), 8, 4);
    if integral_closed_form(IntegralKind::Plus2, 0).ok() != Some(zero) {
        bad.push("p=0".into());
    }
    exact(bad, "p = 0..7".into())
}

fn minus2_routes(cfg: &SuiteConfig) -> Finding {
    let mut bad = Vec::new();
    for p in 1..=i64::from(cfg.pmax) {
        let a = minus2_from_sums(p);
        let b = minus2_coefficients_from_tables(p).map(|(i, j)| two_term(p, i, j));
        match (a, b) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => bad.push(format!("p={p}: {a:?} vs {b:?}")),
        }
    }
    exact(bad, format!("sum combination vs coefficient tables, p = 1..{}", cfg.pmax))
}

fn plus2_routes(cfg: &SuiteConfig) -> Finding {
    let mut bad = Vec::new();
    for p in 0..=i64::from(cfg.pmax) {
        match (plus2_from_jacobi(p), plus2_from_sums(p)) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => bad.push(format!("p={p}: {a:?} vs {b:?}")),
        }
    }
    exact(bad, format!("q-polynomial values vs symbolic sums, p = 0..{}", cfg.pmax))
}

fn cosh_routes(_: &SuiteConfig) -> Finding {
    let mut bad = Vec::new();
    for s in 0..=30 {
        let tag = if s % 2 == 0 { FamilyTag::Cosh2 } else { FamilyTag::SinhCosh3 };
        let f = fam(tag, s);
        match (sum_closed_form(f), sum_closed_form_symbolic(f)) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => bad.push(f.to_string()),
        }
    }
    exact(bad, "exponents 0..30".into())
}

fn sinh_cosh3_examples(_: &SuiteConfig) -> Finding {
    let mut bad = Vec::new();
    for (s, c1, g1, p1, c2, g2, p2) in known::SINH_COSH3 {
        let expected = &ClosedForm::gamma_pi(c1.value(), g1, p1) + &ClosedForm::gamma_pi(c2.value(), g2, p2);
        if sum_closed_form(fam(FamilyTag::SinhCosh3, s)).ok() != Some(expected) {
            bad.push(format!("s={s}"));
        }
    }
    exact(bad, "s = 5, 7, 9, 11".into())
}

fn classical_values() -> [(SumFamily, ClosedForm); 3] {
    [
        (fam(FamilyTag::Sinh2, 0), &ClosedForm::rational(Rational::from((1, 6))) - &ClosedForm::gamma_pi(Rational::from((1, 2)), 0, 1)),
        (fam(FamilyTag::Cosh2, 2), ClosedForm::gamma_pi(Rational::from((1, 192)), 8, 6)),
        (fam(FamilyTag::Sinh2, 6), ClosedForm::gamma_pi(Rational::from((1, 7 << 14)), 16, 12)),
    ]
}

fn classical_spot_values(_: &SuiteConfig) -> Finding {
    let bad = classical_values()
        .into_iter()
        .filter(|(f, v)| sum_closed_form(*f).ok().as_ref() != Some(v))
        .map(|(f, _)| f.to_string())
        .collect();
    exact(bad, "1/6 - 1/(2π), Γ⁸/(192π⁶), Γ¹⁶/(7·2¹⁴π¹²)".into())
}

fn gradings(_: &SuiteConfig) -> Finding {
    let t = series_table(6);
    let mut bad = Vec::new();
    for m in 1..=6 {
        if !s_grading_holds(&t, m) {
            bad.push(format!("S m={m}"));
        }
        if !phi_grading_holds(&t, m) {
            bad.push(format!("Phi m={m}"));
        }
    }
    exact(bad, "m = 1..6".into())
}

fn nc_integrality(_: &SuiteConfig) -> Finding {
    let t = jacobi_tables(24);
    let bad = (0..=24).filter(|&m| !t.f[m].is_integral()).map(|m| format!("f_{m}")).collect();
    exact(bad, "m = 0..24".into())
}

fn q_symmetry(_: &SuiteConfig) -> Finding {
    let t = jacobi_tables(36);
    let half = Rational::from((1, 2));
    let mut bad: Vec<String> = (0..=18).filter(|&j| !q_symmetry_holds(&t.q[2 * j], j)).map(|j| format!("q_{}", 2 * j)).collect();
    for m in 1..=9 {
        let q2 = &t.q[4 * m - 2];
        let q4 = &t.q[4 * m];
        if q2.eval(&half) != 0 || q2.derivative().derivative().eval(&half) != 0 {
            bad.push(format!("q_{} at 1/2", 4 * m - 2));
        }
        if q4.derivative().eval(&half) != 0 {
            bad.push(format!("q'_{} at 1/2", 4 * m));
        }
    }
    exact(bad, "2j ≤ 36 with q_{4m-2}(½) = q'_{4m}(½) = q''_{4m-2}(½) = 0".into())
}

fn jacobi_polynomials(_: &SuiteConfig) -> Finding {
    use crate::algebra::Poly;
    let t = jacobi_tables(6);
    let mut bad = Vec::new();
    let checks = [
        (&t.f[2], Poly::from_i64(&[1])),
        (&t.f[4], Poly::from_i64(&[5, -4])),
        (&t.f[6], Poly::from_i64(&[61, -76, 16])),
        (&t.p[2], Poly::from_i64(&[1, -1])),
        (&t.p[4], Poly::from_i64(&[5, -6, 1])),
        (&t.p[6], Poly::from_i64(&[61, -107, 47, -1])),
    ];
    for (i, (got, want)) in checks.iter().enumerate() {
        if *got != want {
            bad.push(format!("entry {i}"));
        }
    }
    exact(bad, "f_2, f_4, f_6, p_2, p_4, p_6".into())
}

fn pure_sum_relations(_: &SuiteConfig) -> Finding {
    let mut bad = Vec::new();
    let inv_pi = ClosedForm::pi_pow(-1);
    for p in 1..=6u32 {
        let a = 4 * p - 1;
        let lhs = sum_closed_form(fam(FamilyTag::SinhCosh3, a));
        let rhs = sum_closed_form(fam(FamilyTag::Cosh2, a - 1)).map(|v| (&v * &inv_pi).scale(&Rational::from(a)));
        if lhs.ok() != rhs.ok() {
            bad.push(format!("cosh a={a}"));
        }
        if p >= 2 {
            let lhs = sum_closed_form(fam(FamilyTag::CoshSinh3, a));
            let rhs = sum_closed_form(fam(FamilyTag::Sinh2, a - 1)).map(|v| (&v * &inv_pi).scale(&Rational::from((a, 2))));
            if lhs.ok() != rhs.ok() {
                bad.push(format!("sinh a={a}"));
            }
        }
    }
    exact(bad, "a = 4p - 1, p ≤ 6 (p ≥ 2 for the sinh form)".into())
}

/// Membership of the computed sums in the sharp and headline supports, and
/// which headline monomials are never used.
pub fn support_report(m_max: u32) -> (Vec<String>, Vec<String>) {
    let mut bad = Vec::new();
    let mut unused = Vec::new();
    for m in 1..=m_max {
        let fams = [
            fam(FamilyTag::Sinh2, 4 * m - 2),
            fam(FamilyTag::Sinh2, 4 * m - 4),
            fam(FamilyTag::CoshSinh3, 4 * m - 1),
            fam(FamilyTag::CoshSinh3, 4 * m - 3),
            fam(FamilyTag::Cosh2, 4 * m - 2),
            fam(FamilyTag::Cosh2, 4 * m - 4),
            fam(FamilyTag::SinhCosh3, 4 * m - 3),
            fam(FamilyTag::SinhCosh3, 4 * m - 1),
        ];
        for f in fams {
            let v = match sum_closed_form(f) {
                Ok(v) => v,
                Err(e) => {
                    bad.push(format!("{f}: {e}"));
                    continue;
                }
            };
            let head = headline_support(f);
            if !support_within(&v, &head) {
                bad.push(format!("{f} outside headline support"));
            }
            if !support_within(&v, &permitted_support(f)) {
                bad.push(format!("{f} outside sharp support"));
            }
            let used: Vec<Key> = v.support();
            for k in head.iter().filter(|k| !used.contains(k) && !permitted_support(f).contains(k)) {
                unused.push(format!("{f}: {k}"));
            }
        }
    }
    (bad, unused)
}

fn headline_supports(_: &SuiteConfig) -> Finding {
    let (bad, unused) = support_report(6);
    let detail = format!("m ≤ 6; {} headline monomials admitted but never present (first: {})", unused.len(), unused.first().map_or("none", |s| s.as_str()));
    exact(bad, detail)
}

fn conjecture_relations(cfg: &SuiteConfig) -> Finding {
    match conjecture_check(cfg.pmax) {
        Ok(rows) => {
            let bad = rows.iter().filter(|r| !r.holds()).map(|r| format!("p={}", r.p)).collect();
            exact(bad, format!("g and h relations, p = 1..{}", cfg.pmax))
        }
        Err(e) => exact(vec![e.to_string()], String::new()),
    }
}

// ---------------------------------------------------------------------------
// Numeric checks

fn gamma_constant(cfg: &SuiteConfig) -> Finding {
    numeric(
        cfg,
        |prec| {
            let wp = prec + 32;
            let direct = Float::with_val(wp, 0.25).gamma();
            Ok(vec![("gamma(1/4)".into(), diff(&gamma_quarter(wp), &direct))])
        },
        "AGM value vs MPFR gamma",
    )
}

fn quadrature_engine(cfg: &SuiteConfig) -> Finding {
    numeric(cfg, |prec| Ok(vec![("x e^{-2x}".into(), quadrature_self_test(prec)?)]), "∫ x e^{-2x} = 1/4")
}

fn families_numeric(cfg: &SuiteConfig) -> Finding {
    numeric(
        cfg,
        |prec| {
            SumFamily::all_up_to(30)
                .into_par_iter()
                .map(|f| {
                    let n = sum_numeric(f, prec)?.value;
                    let c = to_real(&sum_closed_form(f)?, prec);
                    Ok((f.to_string(), diff(&n, &c)))
                })
                .collect()
        },
        "every family, exponent ≤ 30",
    )
}

fn integrals_numeric(cfg: &SuiteConfig, kind: IntegralKind, ps: std::ops::RangeInclusive<i64>) -> Finding {
    numeric(
        cfg,
        |prec| {
            ps.clone()
                .map(|p| {
                    let n = integral_numeric(IntegralSpec::new(kind, 4 * p as u32 + 1)?, prec)?.value;
                    let c = to_real(&integral_closed_form(kind, p)?, prec);
                    Ok((format!("p={p}"), diff(&n, &c)))
                })
                .collect()
        },
        "quadrature vs closed form",
    )
}

fn minus2_numeric(cfg: &SuiteConfig) -> Finding {
    integrals_numeric(cfg, IntegralKind::Minus2, 1..=4)
}

fn plus2_numeric(cfg: &SuiteConfig) -> Finding {
    integrals_numeric(cfg, IntegralKind::Plus2, 0..=4)
}

/// `4 ∫ t/(cos t + cosh t) dt` and `Γ⁴(1/4)/(8π)`.
pub fn lemniscate_integral(prec: u32) -> Result<(Float, Float)> {
    let wp = prec + 32;
    let n = integral_numeric(IntegralSpec::new(IntegralKind::Plus1, 1)?, prec + 2)?.value * 4u32;
    let c = to_real(&ClosedForm::gamma_pi(Rational::from((1, 8)), 4, 1), wp);
    Ok((n, c))
}

fn lemniscate(cfg: &SuiteConfig) -> Finding {
    numeric(
        cfg,
        |prec| {
            let (n, c) = lemniscate_integral(prec)?;
            Ok(vec![("4∫".into(), diff(&n, &c))])
        },
        "4∫ t/(cos t + cosh t) = Γ⁴/(8π), a quarter of the printed Γ⁴/(2π)",
    )
}

fn relations(cfg: &SuiteConfig, which: Relation, instances: &[u32]) -> Finding {
    numeric(
        cfg,
        |prec| instances.iter().map(|&a| Ok((format!("a={a}"), relation_check(which, a, prec)?.abs_delta))).collect(),
        &format!("a ∈ {instances:?}"),
    )
}

fn plus_square(cfg: &SuiteConfig) -> Finding {
    relations(cfg, Relation::PlusSquare, &[1, 3, 5, 7])
}

fn minus_square(cfg: &SuiteConfig) -> Finding {
    relations(cfg, Relation::MinusSquare, &[5, 7, 9, 11])
}

fn plus_linear(cfg: &SuiteConfig) -> Finding {
    relations(cfg, Relation::PlusLinear, &[0, 2, 4])
}

fn minus_linear(cfg: &SuiteConfig) -> Finding {
    relations(cfg, Relation::MinusLinear, &[2, 3, 4, 5])
}

fn alt_sech_cube(cfg: &SuiteConfig) -> Finding {
    numeric(
        cfg,
        |prec| Ok(vec![("s=3".into(), alt_sech_numeric(3, &pi(prec + 64), prec)?.value.abs())]),
        "Σ(-1)^n v³/cosh(vπ/2) = 0",
    )
}

// ---------------------------------------------------------------------------

type CheckFn = fn(&SuiteConfig) -> Finding;

/// `(id, anchor, check)` in report order.
const SUITE: &[(&str, &str, CheckFn)] = &[
    ("alpha-table", "sinh^-2 series coefficient table", alpha_table),
    ("beta-gamma-table", "cosh/sinh^3 series coefficient tables", beta_gamma_table),
    ("minus2-table", "minus-square integral table", minus2_table),
    ("plus2-table", "plus-square integral table", plus2_table),
    ("minus2-routes", "minus-square integral via two assemblies", minus2_routes),
    ("plus2-routes", "plus-square integral via two assemblies", plus2_routes),
    ("cosh-routes", "cosh^-2 series via q-values and symbolic forms", cosh_routes),
    ("sinh-cosh3-examples", "sinh/cosh^3 series examples", sinh_cosh3_examples),
    ("classical-values", "classical sinh^-2 and cosh^-2 values", classical_spot_values),
    ("gradings", "graded pieces of S and Phi series", gradings),
    ("nc-integrality", "integrality of nc coefficients", nc_integrality),
    ("q-symmetry", "reflection symmetry of u·ds coefficients", q_symmetry),
    ("jacobi-polynomials", "low-order nc and dc coefficients", jacobi_polynomials),
    ("pure-sum-relations", "series relations at a = 4p - 1", pure_sum_relations),
    ("headline-supports", "membership statements as monomial supports", headline_supports),
    ("conjecture", "rational relations between integral coefficients", conjecture_relations),
    ("gamma-quarter", "Γ(1/4) from the AGM", gamma_constant),
    ("quadrature-engine", "half-line quadrature self-test", quadrature_engine),
    ("families-numeric", "direct summation vs closed forms", families_numeric),
    ("minus2-numeric", "minus-square quadrature vs closed form", minus2_numeric),
    ("plus2-numeric", "plus-square quadrature vs closed form", plus2_numeric),
    ("lemniscate-integral", "two-sided integral of 1/(cos√x + cosh√x)", lemniscate),
    ("plus-square", "plus-square integral vs cosh series", plus_square),
    ("minus-square", "minus-square integral vs sinh series", minus_square),
    ("plus-linear", "linear plus integral vs alternating sech series", plus_linear),
    ("minus-linear", "linear minus integral vs alternating csch series", minus_linear),
    ("alt-sech-cube", "alternating sech cube series vanishes at x = 1/2", alt_sech_cube),
];

/// `(id, anchor)` of every entry, in report order.
pub fn suite_ids() -> impl Iterator<Item = (&'static str, &'static str)> {
    SUITE.iter().map(|&(id, anchor, _)| (id, anchor))
}

/// Runs the suite, entries in parallel, report in [`SUITE`] order.
pub fn run_suite(cfg: &SuiteConfig, progress: &(dyn Fn(&str) + Sync)) -> Vec<VerifyEntry> {
    SUITE
        .par_iter()
        .map(|&(id, anchor, check)| {
            let start = Instant::now();
            let f = check(cfg);
            let runtime_ms = start.elapsed().as_millis() as u64;
            progress(&format!("{id}: {}", if f.pass { "ok" } else { "FAIL" }));
            let status = match (f.pass, f.numeric) {
                (false, _) => Status::Fail,
                (true, false) => Status::ExactPass,
                (true, true) => Status::NumericPass,
            };
            VerifyEntry { id, anchor, status, delta: f.delta, detail: f.detail, runtime_ms: Some(runtime_ms) }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::pow2;

    #[test]
    fn exact_entries_pass() {
        let cfg = SuiteConfig { prec: 128, pmax: 4 };
        for &(id, _, check) in SUITE {
            if ["alpha-table", "minus2-table", "plus2-table", "q-symmetry", "headline-supports", "pure-sum-relations"].contains(&id) {
                let f = check(&cfg);
                assert!(f.pass && !f.numeric, "{id}: {}", f.detail);
            }
        }
    }

    #[test]
    fn headline_extra_monomials_are_unused() {
        let (bad, unused) = support_report(3);
        assert!(bad.is_empty(), "{bad:?}");
        assert!(unused.iter().any(|u| u.contains("sinh2")), "{unused:?}");
    }

    #[test]
    fn precisions_pair() {
        assert_eq!(SuiteConfig { prec: 200, pmax: 8 }.precisions(), [128, 200]);
        assert_eq!(SuiteConfig { prec: 80, pmax: 8 }.precisions(), [64, 80]);
    }

    #[test]
    fn numeric_failures_are_reported() {
        let cfg = SuiteConfig { prec: 96, pmax: 1 };
        let f = numeric(&cfg, |p| Ok(vec![("x".into(), pow2(-(p as i32) + 30, 64))]), "t");
        assert!(!f.pass && f.detail.contains("x at"));
    }
}
