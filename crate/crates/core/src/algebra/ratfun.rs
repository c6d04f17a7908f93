//! Rational functions in `x` over the rationals.
//!
//! Differentiating `√(1-x)` produces `(1-x)` denominators, so the coefficient
//! ring of [`EllipticExpr`](super::EllipticExpr) is `Q(x)` rather than `Q[x]`.
//! In practice nearly every coefficient is a polynomial and the arithmetic
//! below short-circuits that case.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;

use super::Poly;

/// `numerator / denominator`, reduced, with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun::from(Poly::zero())
    }

    pub fn one() -> Self {
        RatFun::from(Poly::one())
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        RatFun::from(Poly::constant(c))
    }

    /// Builds `num / den`, reducing by the gcd. Panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun::zero();
        }
        if let Some(c) = den.as_constant() {
            let inv = Rational::from(c.recip_ref());
            return RatFun { num: num.scale(&inv), den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = Rational::from(den.leading().expect("nonzero").recip_ref());
        RatFun { num: num.scale(&lead), den: den.scale(&lead) }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator if the denominator is one.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if *c == 0 {
            return RatFun::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn derivative(&self) -> RatFun {
        if self.den.is_one() {
            return RatFun::from(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFun::new(n, &self.den * &self.den)
    }

    /// Value at a rational point, or `None` at a pole.
    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        let d = self.den.eval(at);
        if d == 0 {
            return None;
        }
        Some(self.num.eval(at) / d)
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFun::from(&self.num + &rhs.num);
            }
            return RatFun::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFun::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from(&self.num * &rhs.num);
        }
        RatFun::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_common_factors() {
        let one_minus_x = Poly::one_minus_x();
        let r = RatFun::new(&one_minus_x * &Poly::x(), &one_minus_x * &one_minus_x);
        assert_eq!(r.numer(), &Poly::from_i64(&[0, -1]));
        assert_eq!(r.denom(), &Poly::from_i64(&[-1, 1]));
    }

    #[test]
    fn derivative_of_reciprocal() {
        // d/dx 1/(1-x) = 1/(1-x)^2
        let r = RatFun::new(Poly::one(), Poly::one_minus_x());
        let d = r.derivative();
        let expected = RatFun::new(Poly::one(), Poly::one_minus_x().pow(2));
        assert_eq!(d, expected);
    }

    #[test]
    fn pole_detection() {
        let r = RatFun::new(Poly::one(), Poly::from_i64(&[1, -2]));
        assert_eq!(r.eval(&Rational::from((1, 2))), None);
        assert_eq!(r.eval(&Rational::from(0)), Some(Rational::from(1)));
    }

    #[test]
    fn sum_cancels_to_polynomial() {
        let a = RatFun::new(Poly::x(), Poly::one_minus_x());
        let b = RatFun::new(Poly::from_i64(&[-1]), Poly::one_minus_x());
        // (x - 1)/(1 - x) = -1
        assert_eq!((&a + &b).as_poly(), Some(&Poly::constant(-1)));
    }
}
