//! Rectangular complex numbers over [`Float`].

use std::ops::{Add, Mul, Neg, Sub};

use rug::Float;

#[derive(Clone, Debug, PartialEq)]
pub struct HPComplex {
    pub re: Float,
    pub im: Float,
}

impl HPComplex {
    pub fn new(re: Float, im: Float) -> Self {
        HPComplex { re, im }
    }

    pub fn real(re: Float) -> Self {
        let prec = re.prec();
        HPComplex { re, im: Float::new(prec) }
    }

    /// `a + b i` with small integer parts.
    pub fn from_i64(a: i64, b: i64, prec: u32) -> Self {
        HPComplex { re: Float::with_val(prec, a), im: Float::with_val(prec, b) }
    }

    pub fn scale(&self, s: &Float) -> HPComplex {
        HPComplex {
            re: Float::with_val(self.re.prec(), &self.re * s),
            im: Float::with_val(self.im.prec(), &self.im * s),
        }
    }

    pub fn pow(&self, n: u32) -> HPComplex {
        let prec = self.re.prec();
        let mut acc = HPComplex::from_i64(1, 0, prec);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `max(|re|, |im|)`.
    pub fn max_abs(&self) -> Float {
        let re = Float::with_val(self.re.prec(), self.re.abs_ref());
        let im = Float::with_val(self.im.prec(), self.im.abs_ref());
        if re > im {
            re
        } else {
            im
        }
    }
}

impl Add for &HPComplex {
    type Output = HPComplex;
    fn add(self, rhs: &HPComplex) -> HPComplex {
        HPComplex {
            re: Float::with_val(self.re.prec(), &self.re + &rhs.re),
            im: Float::with_val(self.im.prec(), &self.im + &rhs.im),
        }
    }
}

impl Sub for &HPComplex {
    type Output = HPComplex;
    fn sub(self, rhs: &HPComplex) -> HPComplex {
        HPComplex {
            re: Float::with_val(self.re.prec(), &self.re - &rhs.re),
            im: Float::with_val(self.im.prec(), &self.im - &rhs.im),
        }
    }
}

impl Neg for &HPComplex {
    type Output = HPComplex;
    fn neg(self) -> HPComplex {
        HPComplex { re: Float::with_val(self.re.prec(), -&self.re), im: Float::with_val(self.im.prec(), -&self.im) }
    }
}

impl Mul for &HPComplex {
    type Output = HPComplex;
    fn mul(self, rhs: &HPComplex) -> HPComplex {
        let p = self.re.prec();
        let re = Float::with_val(p, &self.re * &rhs.re) - Float::with_val(p, &self.im * &rhs.im);
        let im = Float::with_val(p, &self.re * &rhs.im) + Float::with_val(p, &self.im * &rhs.re);
        HPComplex { re, im }
    }
}
