//! The ring `Q(x)[r, z, z', z'', ...]` with `r^2 = 1 - x`.
//!
//! `z` is `(2/π) K(x)` and `z_j` its `j`-th derivative in `x`; `r` stands for
//! `√(1-x)`. Every symbolic identity in the crate is an [`EllipticExpr`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;
use serde::{Deserialize, Serialize};

use super::closed_form::{parse_rational, rational_string, ClosedForm, Key};
use super::zjet::zjet_at_half;
use super::{Poly, RatFun};
use crate::error::{Error, Result};

/// `r^r_exp · Π z_j^jets[j]`. `jets` carries no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub r_exp: u8,
    pub jets: Vec<u32>,
}

impl Monomial {
    pub fn new(r_exp: u8, mut jets: Vec<u32>) -> Self {
        debug_assert!(r_exp < 2);
        while jets.last() == Some(&0) {
            jets.pop();
        }
        Monomial { r_exp, jets }
    }

    /// Exponent of `z_j`.
    pub fn jet(&self, j: usize) -> u32 {
        self.jets.get(j).copied().unwrap_or(0)
    }

    /// Total degree in the `z_j`.
    pub fn weight(&self) -> u32 {
        self.jets.iter().sum()
    }

    fn times(&self, other: &Monomial) -> (Monomial, bool) {
        let n = self.jets.len().max(other.jets.len());
        let jets = (0..n).map(|j| self.jet(j) + other.jet(j)).collect();
        let r = self.r_exp + other.r_exp;
        (Monomial::new(r % 2, jets), r == 2)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.r_exp == 1 {
            parts.push("r".to_string());
        }
        for (j, &d) in self.jets.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let name = match j {
                0 => "z".to_string(),
                1 => "z'".to_string(),
                2 => "z''".to_string(),
                _ => format!("z[{j}]"),
            };
            parts.push(if d == 1 { name } else { format!("{name}^{d}") });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// A canonical element of `Q(x)[r, z_0, z_1, ...]/(r^2 - (1 - x))`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EllipticExpr {
    terms: BTreeMap<Monomial, RatFun>,
}

impl EllipticExpr {
    pub fn zero() -> Self {
        EllipticExpr::default()
    }

    pub fn one() -> Self {
        EllipticExpr::constant(1)
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        EllipticExpr::term(RatFun::constant(c), Monomial::default())
    }

    pub fn poly(p: Poly) -> Self {
        EllipticExpr::term(RatFun::from(p), Monomial::default())
    }

    pub fn term(c: RatFun, m: Monomial) -> Self {
        let mut e = EllipticExpr::zero();
        e.add_term(m, c);
        e
    }

    pub fn x() -> Self {
        EllipticExpr::poly(Poly::x())
    }

    /// `σ = x(1 - x)`.
    pub fn sigma() -> Self {
        EllipticExpr::poly(Poly::sigma())
    }

    /// `r = √(1 - x)`.
    pub fn r() -> Self {
        EllipticExpr::term(RatFun::one(), Monomial::new(1, vec![]))
    }

    /// The jet `z_j = d^j z / dx^j`.
    pub fn jet(j: usize) -> Self {
        let mut jets = vec![0; j + 1];
        jets[j] = 1;
        EllipticExpr::term(RatFun::one(), Monomial::new(0, jets))
    }

    pub fn z() -> Self {
        EllipticExpr::jet(0)
    }

    /// `z^k`.
    pub fn zpow(k: u32) -> Self {
        EllipticExpr::term(RatFun::one(), Monomial::new(0, vec![k]))
    }

    fn add_term(&mut self, m: Monomial, c: RatFun) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RatFun)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> RatFun {
        self.terms.get(m).cloned().unwrap_or_else(RatFun::zero)
    }

    /// Highest jet index present, `None` for expressions free of `z`.
    pub fn jet_order(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.jets.len().checked_sub(1)).max()
    }

    /// True when every coefficient is a polynomial in `x`.
    pub fn has_polynomial_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.as_poly().is_some())
    }

    pub fn scale(&self, c: &Rational) -> EllipticExpr {
        if *c == 0 {
            return EllipticExpr::zero();
        }
        EllipticExpr {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.scale(c))).collect(),
        }
    }

    pub fn scale_i64(&self, n: i64, d: i64) -> EllipticExpr {
        self.scale(&Rational::from((n, d)))
    }

    pub fn mul_ratfun(&self, c: &RatFun) -> EllipticExpr {
        let mut out = EllipticExpr::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn mul_poly(&self, p: &Poly) -> EllipticExpr {
        self.mul_ratfun(&RatFun::from(p.clone()))
    }

    pub fn pow(&self, n: u32) -> EllipticExpr {
        let mut acc = EllipticExpr::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal `d/dx`: `z_j' = z_{j+1}`, `r' = -r / (2(1 - x))`, Leibniz rule.
    pub fn diff_x(&self) -> EllipticExpr {
        let mut out = EllipticExpr::zero();
        let dr = RatFun::new(Poly::constant(Rational::from((-1, 2))), Poly::one_minus_x());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.derivative());
            if m.r_exp == 1 {
                out.add_term(m.clone(), c * &dr);
            }
            for (j, &d) in m.jets.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                let mut jets = m.jets.clone();
                jets[j] -= 1;
                if jets.len() == j + 1 {
                    jets.push(0);
                }
                jets[j + 1] += 1;
                out.add_term(Monomial::new(m.r_exp, jets), c.scale(&Rational::from(d)));
            }
        }
        out
    }

    /// Formal `d/dy` with `y = π K'/K`, using `dx/dy = -x(1-x) z^2`.
    pub fn diff_y(&self) -> EllipticExpr {
        let factor = EllipticExpr::term(RatFun::from(-&Poly::sigma()), Monomial::new(0, vec![2]));
        &factor * &self.diff_x()
    }

    /// Specializes at `x = 1/2`, where `r = √2/2` and `z_j` are the values of [`zjet_at_half`].
    pub fn eval_at_half(&self) -> Result<ClosedForm> {
        let half = Rational::from((1, 2));
        let order = self.jet_order().map_or(0, |j| j + 1);
        let jets: Vec<ClosedForm> = (0..order).map(zjet_at_half).collect();
        let r_half = ClosedForm::monomial(half.clone(), Key::new(0, 0, true));
        let mut out = ClosedForm::zero();
        for (m, c) in &self.terms {
            let c = c.eval(&half).ok_or(Error::PoleAtHalf)?;
            let mut v = ClosedForm::rational(c);
            if m.r_exp == 1 {
                v = &v * &r_half;
            }
            for (j, &d) in m.jets.iter().enumerate() {
                if d > 0 {
                    v = &v * &jets[j].pow(d);
                }
            }
            out = &out + &v;
        }
        Ok(out)
    }
}

impl From<Poly> for EllipticExpr {
    fn from(p: Poly) -> Self {
        EllipticExpr::poly(p)
    }
}

impl Add for &EllipticExpr {
    type Output = EllipticExpr;
    fn add(self, rhs: &EllipticExpr) -> EllipticExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &EllipticExpr {
    type Output = EllipticExpr;
    fn sub(self, rhs: &EllipticExpr) -> EllipticExpr {
        self + &(-rhs)
    }
}

impl Neg for &EllipticExpr {
    type Output = EllipticExpr;
    fn neg(self) -> EllipticExpr {
        EllipticExpr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &EllipticExpr {
    type Output = EllipticExpr;
    fn mul(self, rhs: &EllipticExpr) -> EllipticExpr {
        let one_minus_x = RatFun::from(Poly::one_minus_x());
        let mut out = EllipticExpr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let (m, reduce) = ma.times(mb);
                let mut c = ca * cb;
                if reduce {
                    c = &c * &one_minus_x;
                }
                out.add_term(m, c);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for EllipticExpr {
            type Output = EllipticExpr;
            fn $m(self, rhs: EllipticExpr) -> EllipticExpr { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl fmt::Display for EllipticExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m == Monomial::default() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

/// One term in the stable JSON shape: coefficient polynomials as ascending
/// coefficient arrays of `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExprTerm {
    pub coeff_num: Vec<String>,
    pub coeff_den: Vec<String>,
    pub r_exp: u8,
    pub jets: Vec<u32>,
}

impl EllipticExpr {
    pub fn to_terms(&self) -> Vec<ExprTerm> {
        let arr = |p: &Poly| p.coeffs().iter().map(rational_string).collect();
        self.terms
            .iter()
            .map(|(m, c)| ExprTerm {
                coeff_num: arr(c.numer()),
                coeff_den: arr(c.denom()),
                r_exp: m.r_exp,
                jets: m.jets.clone(),
            })
            .collect()
    }

    pub fn from_terms(terms: &[ExprTerm]) -> Option<EllipticExpr> {
        let poly = |v: &[String]| -> Option<Poly> {
            Some(Poly::from_coeffs(v.iter().map(|s| parse_rational(s)).collect::<Option<_>>()?))
        };
        let mut out = EllipticExpr::zero();
        for t in terms {
            if t.r_exp > 1 {
                return None;
            }
            let den = poly(&t.coeff_den)?;
            if den.is_zero() {
                return None;
            }
            out.add_term(Monomial::new(t.r_exp, t.jets.clone()), RatFun::new(poly(&t.coeff_num)?, den));
        }
        Some(out)
    }
}

impl Serialize for EllipticExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for EllipticExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<ExprTerm>::deserialize(d)?;
        EllipticExpr::from_terms(&terms).ok_or_else(|| serde::de::Error::custom("malformed expression term"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn r_squared_reduces() {
        let rr = &EllipticExpr::r() * &EllipticExpr::r();
        assert_eq!(rr, EllipticExpr::poly(Poly::one_minus_x()));
    }

    #[test]
    fn z_times_zprime_is_one_term() {
        let e = &EllipticExpr::z() * &EllipticExpr::jet(1);
        let (m, c) = e.terms().next().unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(m, &Monomial::new(0, vec![1, 1]));
        assert_eq!(c, &RatFun::one());
    }

    #[test]
    fn derivative_of_r() {
        let d = EllipticExpr::r().diff_x();
        let expected = EllipticExpr::term(
            RatFun::new(Poly::constant(q(-1, 2)), Poly::one_minus_x()),
            Monomial::new(1, vec![]),
        );
        assert_eq!(d, expected);
        // (r^2)' = -1 both ways
        let r = EllipticExpr::r();
        let lhs = (&r * &r).diff_x();
        let rhs = &(&d * &r) + &(&r * &d);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, EllipticExpr::constant(-1));
    }

    #[test]
    fn derivative_of_s3() {
        // z^4 (1 - σ)/240  ->  z^3 z' (1 - σ)/60 - z^4 σ'/240
        let one_minus_sigma = &Poly::one() - &Poly::sigma();
        let s3 = EllipticExpr::zpow(4).mul_poly(&one_minus_sigma).scale(&q(1, 240));
        let expected = &EllipticExpr::term(RatFun::from(one_minus_sigma.scale(&q(1, 60))), Monomial::new(0, vec![3, 1]))
            - &EllipticExpr::zpow(4).mul_poly(&Poly::sigma().derivative()).scale(&q(1, 240));
        assert_eq!(s3.diff_x(), expected);
    }

    #[test]
    fn diff_y_of_z_and_constants() {
        let expected = EllipticExpr::term(RatFun::from(-&Poly::sigma()), Monomial::new(0, vec![2, 1]));
        assert_eq!(EllipticExpr::z().diff_y(), expected);
        assert!(EllipticExpr::one().diff_y().is_zero());
    }

    #[test]
    fn evaluation_at_half() {
        assert_eq!(
            EllipticExpr::r().eval_at_half().unwrap(),
            ClosedForm::monomial(q(1, 2), Key::new(0, 0, true))
        );
        let one_minus_sigma = &Poly::one() - &Poly::sigma();
        let s3 = EllipticExpr::zpow(4).mul_poly(&one_minus_sigma).scale(&q(1, 240));
        assert_eq!(s3.eval_at_half().unwrap(), ClosedForm::gamma_pi(q(1, 5120), 8, 6));
        let pole = EllipticExpr::term(RatFun::new(Poly::one(), Poly::from_i64(&[1, -2])), Monomial::default());
        assert_eq!(pole.eval_at_half(), Err(Error::PoleAtHalf));
    }

    #[test]
    fn json_round_trip() {
        let e = &(&EllipticExpr::r().diff_x() * &EllipticExpr::jet(2)) + &EllipticExpr::sigma();
        let s = serde_json::to_string(&e).unwrap();
        let back: EllipticExpr = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }
}
