//! Exact values of the form `Σ c · Γ(1/4)^a · π^(b/2) · √2^e`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::Rational;
use serde::{Deserialize, Serialize};

/// Exponent triple of one monomial `Γ(1/4)^gamma · π^(pi_half/2) · √2^sqrt2`.
///
/// Ordering is lexicographic on `(gamma, pi_half, sqrt2)`, which fixes the
/// serialization order of [`ClosedForm`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub gamma: i64,
    pub pi_half: i64,
    pub sqrt2: bool,
}

impl Key {
    pub const ONE: Key = Key { gamma: 0, pi_half: 0, sqrt2: false };

    pub fn new(gamma: i64, pi_half: i64, sqrt2: bool) -> Self {
        Key { gamma, pi_half, sqrt2 }
    }

    /// `Γ^gamma / π^pi_pow` with an integer power of π.
    pub fn gamma_over_pi(gamma: i64, pi_pow: i64) -> Self {
        Key::new(gamma, -2 * pi_pow, false)
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.gamma != 0 {
            parts.push(format!("G^{}", self.gamma));
        }
        if self.pi_half != 0 {
            if self.pi_half % 2 == 0 {
                parts.push(format!("pi^{}", self.pi_half / 2));
            } else {
                parts.push(format!("pi^({}/2)", self.pi_half));
            }
        }
        if self.sqrt2 {
            parts.push("sqrt2".to_string());
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// A finite Q-linear combination of monomials in `Γ(1/4)`, `√π` and `√2`.
///
/// Zero coefficients are never stored, so two values are equal exactly when
/// their coefficient maps are.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosedForm {
    terms: BTreeMap<Key, Rational>,
}

impl ClosedForm {
    pub fn zero() -> Self {
        ClosedForm::default()
    }

    pub fn rational(c: impl Into<Rational>) -> Self {
        ClosedForm::monomial(c, Key::ONE)
    }

    pub fn monomial(c: impl Into<Rational>, key: Key) -> Self {
        let mut v = ClosedForm::zero();
        v.add_term(key, c.into());
        v
    }

    /// `c · Γ^gamma / π^pi_pow`.
    pub fn gamma_pi(c: impl Into<Rational>, gamma: i64, pi_pow: i64) -> Self {
        ClosedForm::monomial(c, Key::gamma_over_pi(gamma, pi_pow))
    }

    /// `π^k` for integer `k`.
    pub fn pi_pow(k: i64) -> Self {
        ClosedForm::monomial(1, Key::new(0, 2 * k, false))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Monomials with a nonzero coefficient, in canonical order.
    pub fn support(&self) -> Vec<Key> {
        self.terms.keys().copied().collect()
    }

    /// Stored coefficient of `key`, or zero.
    pub fn coefficient(&self, key: Key) -> Rational {
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, key: Key, c: Rational) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &Rational) -> ClosedForm {
        if *c == 0 {
            return ClosedForm::zero();
        }
        ClosedForm {
            terms: self.terms.iter().map(|(k, v)| (*k, Rational::from(v * c))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> ClosedForm {
        // Single monomials are the common case; raise them directly.
        if self.terms.len() == 1 {
            let (k, c) = self.terms.iter().next().expect("one term");
            let n64 = i64::from(n);
            let mut coeff = Rational::from(c.pow(n));
            let sqrt2 = k.sqrt2 && n % 2 == 1;
            if k.sqrt2 {
                coeff <<= n / 2;
            }
            return ClosedForm::monomial(
                coeff,
                Key::new(k.gamma * n64, k.pi_half * n64, sqrt2),
            );
        }
        let mut acc = ClosedForm::rational(1);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &ClosedForm {
    type Output = ClosedForm;
    fn add(self, rhs: &ClosedForm) -> ClosedForm {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &ClosedForm {
    type Output = ClosedForm;
    fn sub(self, rhs: &ClosedForm) -> ClosedForm {
        self + &(-rhs)
    }
}

impl Neg for &ClosedForm {
    type Output = ClosedForm;
    fn neg(self) -> ClosedForm {
        ClosedForm {
            terms: self.terms.iter().map(|(k, v)| (*k, Rational::from(-v))).collect(),
        }
    }
}

impl Mul for &ClosedForm {
    type Output = ClosedForm;
    fn mul(self, rhs: &ClosedForm) -> ClosedForm {
        let mut out = ClosedForm::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let mut c = Rational::from(ca * cb);
                let sqrt2 = ka.sqrt2 ^ kb.sqrt2;
                if ka.sqrt2 && kb.sqrt2 {
                    c *= 2;
                }
                out.add_term(
                    Key::new(ka.gamma + kb.gamma, ka.pi_half + kb.pi_half, sqrt2),
                    c,
                );
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for ClosedForm {
            type Output = ClosedForm;
            fn $m(self, rhs: ClosedForm) -> ClosedForm { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = *c < 0;
            let mag = Rational::from(c.abs_ref());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *k == Key::ONE {
                write!(f, "{mag}")?;
            } else {
                write!(f, "({mag})*{k}")?;
            }
        }
        Ok(())
    }
}

/// One monomial in the stable JSON shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormTerm {
    pub coeff: String,
    pub gamma_exp: i64,
    pub pi_half_exp: i64,
    pub sqrt2: bool,
}

pub(crate) fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub(crate) fn parse_rational(s: &str) -> Option<Rational> {
    Rational::parse(s.trim()).ok().map(Rational::from)
}

impl ClosedForm {
    pub fn to_terms(&self) -> Vec<ClosedFormTerm> {
        self.terms
            .iter()
            .map(|(k, c)| ClosedFormTerm {
                coeff: rational_string(c),
                gamma_exp: k.gamma,
                pi_half_exp: k.pi_half,
                sqrt2: k.sqrt2,
            })
            .collect()
    }

    pub fn from_terms(terms: &[ClosedFormTerm]) -> Option<ClosedForm> {
        let mut v = ClosedForm::zero();
        for t in terms {
            v.add_term(Key::new(t.gamma_exp, t.pi_half_exp, t.sqrt2), parse_rational(&t.coeff)?);
        }
        Some(v)
    }
}

impl Serialize for ClosedForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClosedForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<ClosedFormTerm>::deserialize(d)?;
        ClosedForm::from_terms(&terms)
            .ok_or_else(|| serde::de::Error::custom("malformed rational coefficient"))
    }
}
