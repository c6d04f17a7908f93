//! Coefficients of the two squared-denominator integrals and the rational
//! relations between them.
//!
//! `i_p, j_p` come from the `sinh` series (Eisenstein recursion); `g_p, h_p`
//! from `q_{4p}` (Jacobi expansion). The relations tested are
//! `g_p = -(2^{2p-1} - (-1)^p)/2^{2p-1} · i_p` and
//! `h_p = -(2^{2p-1} + (-1)^p)/2^{2p-1} · j_p`.

use rayon::prelude::*;
use rug::{Integer, Rational};
use serde::Serialize;

use crate::algebra::{ClosedForm, Key};
use crate::error::{Error, Result};
use crate::integrals::{integral_closed_form, IntegralKind};

pub const DEFAULT_PMAX: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientQuadruple {
    pub p: u32,
    pub i: Rational,
    pub j: Rational,
    pub g: Rational,
    pub h: Rational,
}

fn split(v: &ClosedForm, p: i64, context: &str) -> Result<(Rational, Rational)> {
    let low = Key::gamma_over_pi(8 * p, 2 * p);
    let high = Key::gamma_over_pi(8 * p + 8, 2 * p + 4);
    if let Some(bad) = v.support().into_iter().find(|k| *k != low && *k != high) {
        return Err(Error::UnexpectedMonomial { context: context.into(), key: bad.to_string() });
    }
    Ok((v.coefficient(low), v.coefficient(high)))
}

/// `(i_p, j_p, g_p, h_p)` read off the two closed forms.
pub fn coefficients(p: u32) -> Result<CoefficientQuadruple> {
    if p == 0 {
        return Err(Error::UnsupportedExponent { kind: "coefficients".into(), exp: 0 });
    }
    let pi = i64::from(p);
    let minus = integral_closed_form(IntegralKind::Minus2, pi)?;
    let plus = integral_closed_form(IntegralKind::Plus2, pi)?;
    let (i, j) = split(&minus, pi, "minus2")?;
    let (g, h) = split(&plus, pi, "plus2")?;
    Ok(CoefficientQuadruple { p, i, j, g, h })
}

/// `(2^{2p-1} ∓ (-1)^p) / 2^{2p-1}` for `minus = true / false`.
fn ratio(p: u32, minus: bool) -> Rational {
    let base = Integer::from(1) << (2 * p - 1);
    let s = if p % 2 == 0 { 1 } else { -1 };
    let num = if minus { Integer::from(&base - s) } else { Integer::from(&base + s) };
    Rational::from((num, base))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureEntry {
    pub p: u32,
    pub i: String,
    pub j: String,
    pub g: String,
    pub h: String,
    pub g_relation_ok: bool,
    pub h_relation_ok: bool,
}

impl ConjectureEntry {
    fn from_quadruple(c: &CoefficientQuadruple) -> ConjectureEntry {
        let g_ok = c.g == -(ratio(c.p, true) * &c.i);
        let h_ok = c.h == -(ratio(c.p, false) * &c.j);
        ConjectureEntry {
            p: c.p,
            i: c.i.to_string(),
            j: c.j.to_string(),
            g: c.g.to_string(),
            h: c.h.to_string(),
            g_relation_ok: g_ok,
            h_relation_ok: h_ok,
        }
    }

    pub fn holds(&self) -> bool {
        self.g_relation_ok && self.h_relation_ok
    }
}

/// Both relations for `1 ≤ p ≤ pmax`, in order of `p`.
pub fn conjecture_check(pmax: u32) -> Result<Vec<ConjectureEntry>> {
    if pmax == 0 {
        return Err(Error::InvalidConfig("pmax must be at least 1".into()));
    }
    (1..=pmax)
        .into_par_iter()
        .map(|p| coefficients(p).map(|c| ConjectureEntry::from_quadruple(&c)))
        .collect()
}
