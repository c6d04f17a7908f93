//! Dense univariate polynomials in `x` over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

/// A polynomial `c_0 + c_1 x + ... + c_d x^d` with exact rational coefficients.
///
/// The coefficient vector never carries trailing zeros, so the zero polynomial
/// is the empty vector and equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::from(1))
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        Poly::from_coeffs(vec![c.into()])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::from_coeffs(vec![Rational::new(), Rational::from(1)])
    }

    /// `c * x^k`.
    pub fn monomial(c: impl Into<Rational>, k: usize) -> Self {
        let mut coeffs = vec![Rational::new(); k + 1];
        coeffs[k] = c.into();
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    /// `1 - x`, the square of the complementary modulus.
    pub fn one_minus_x() -> Self {
        Poly::from_i64(&[1, -1])
    }

    /// `x(1 - x)`.
    pub fn sigma() -> Self {
        Poly::from_i64(&[0, 1, -1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Returns the constant value if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::new()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 1
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if *c == 0 {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| Rational::from(a * c)).collect(),
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| Rational::from(c * Integer::from(k)))
                .collect(),
        )
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= at;
            acc += c;
        }
        acc
    }

    /// The polynomial `p(1 - x)`.
    pub fn reflect(&self) -> Poly {
        let mut acc = Poly::zero();
        let base = Poly::one_minus_x();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &base) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| *c.denom() == 1)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    ///
    /// Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::new(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = Rational::from(&rem[k + dd] / &lead);
            if c != 0 {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= Rational::from(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Scales so that the leading coefficient is one. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&Rational::from(l.recip_ref())),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => Rational::from(a + b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += Rational::from(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let mag = Rational::from(c.abs_ref());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag == 1) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn sigma_prime_squared_is_one_minus_four_sigma() {
        let s = Poly::sigma();
        let sp = s.derivative();
        let lhs = &sp * &sp;
        let rhs = &Poly::one() - &s.scale(&q(4, 1));
        assert_eq!(lhs, rhs);
        assert_eq!(sp.derivative(), Poly::constant(-2));
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = &Poly::from_i64(&[-1, 1]) * &Poly::from_i64(&[2, 1]);
        let b = &Poly::from_i64(&[-1, 1]) * &Poly::from_i64(&[-3, 1]);
        assert_eq!(Poly::gcd(&a, &b), Poly::from_i64(&[-1, 1]));
        let (quot, rem) = a.div_rem(&Poly::from_i64(&[-1, 1]));
        assert!(rem.is_zero());
        assert_eq!(quot, Poly::from_i64(&[2, 1]));
        assert_eq!(Poly::gcd(&Poly::zero(), &Poly::zero()), Poly::zero());
    }

    #[test]
    fn reflect_and_eval() {
        let p = Poly::from_i64(&[1, -2]);
        assert_eq!(p.reflect(), Poly::from_i64(&[-1, 2]));
        assert_eq!(p.eval(&q(1, 2)), 0);
        assert_eq!(Poly::sigma().eval(&q(1, 2)), q(1, 4));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(Poly::from_i64(&[61, -76, 16]).to_string(), "61 - 76*x + 16*x^2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::from_i64(&[0, -1]).to_string(), "-x");
    }
}
