//! Maclaurin coefficients of the Jacobi functions as polynomials in `x = k²`.
//!
//! `sn, cn, dn` come from integrating `sn' = cn·dn`, `cn' = -sn·dn`,
//! `dn' = -x·sn·cn` term by term. The families `f_m, p_m, q_m` are `m!`
//! times the coefficients of `nc`, `dc` and `u·ds`.

use std::sync::{Arc, OnceLock, RwLock};

use rug::{Integer, Rational};

use crate::algebra::Poly;

/// A power series `Σ_{k ≤ N} c_k u^k` with coefficients in `Q[x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesQx {
    coeffs: Vec<Poly>,
}

impl SeriesQx {
    /// Series truncated at order `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Poly>) -> Self {
        assert!(!coeffs.is_empty());
        SeriesQx { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    /// Coefficient `k` of `self · other`.
    fn product_coeff(&self, other: &SeriesQx, k: usize) -> Poly {
        let mut acc = Poly::zero();
        for i in 0..=k {
            let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        acc
    }

    pub fn mul(&self, other: &SeriesQx) -> SeriesQx {
        let n = self.order().min(other.order());
        SeriesQx::new((0..=n).map(|k| self.product_coeff(other, k)).collect())
    }

    pub fn sub(&self, other: &SeriesQx) -> SeriesQx {
        let n = self.order().min(other.order());
        SeriesQx::new((0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect())
    }

    pub fn scale_poly(&self, p: &Poly) -> SeriesQx {
        SeriesQx::new(self.coeffs.iter().map(|c| c * p).collect())
    }

    /// `1/self`; the constant term must be `1`.
    pub fn recip(&self) -> SeriesQx {
        assert!(self.coeffs[0].is_one(), "series reciprocal needs a unit constant term");
        let mut out = vec![Poly::one()];
        for k in 1..=self.order() {
            let mut acc = Poly::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() && !out[k - i].is_zero() {
                    acc = &acc + &(&self.coeffs[i] * &out[k - i]);
                }
            }
            out.push(-&acc);
        }
        SeriesQx::new(out)
    }

    /// `self / u`; the constant term must vanish.
    pub fn shift_down(&self) -> SeriesQx {
        assert!(self.coeffs[0].is_zero());
        SeriesQx::new(self.coeffs[1..].to_vec())
    }

    /// `m! · c_m` for every `m`.
    pub fn factorial_scaled(&self) -> Vec<Poly> {
        let mut fact = Integer::from(1);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| {
                if m > 0 {
                    fact *= m as u64;
                }
                c.scale(&Rational::from(&fact))
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct JacobiTriple {
    pub sn: SeriesQx,
    pub cn: SeriesQx,
    pub dn: SeriesQx,
}

/// `sn, cn, dn` to order `N` from the derivative system.
pub fn jacobi_sn_cn_dn(order: usize) -> JacobiTriple {
    let n = order.max(1);
    let mut s = vec![Poly::zero()];
    let mut c = vec![Poly::one()];
    let mut d = vec![Poly::one()];
    let x = Poly::x();
    let coeff = |a: &[Poly], b: &[Poly], k: usize| {
        let mut acc = Poly::zero();
        for i in 0..=k {
            if !a[i].is_zero() && !b[k - i].is_zero() {
                acc = &acc + &(&a[i] * &b[k - i]);
            }
        }
        acc
    };
    for k in 0..n {
        let inv = Rational::from((1, k as i64 + 1));
        let s_next = coeff(&c, &d, k).scale(&inv);
        let c_next = coeff(&s, &d, k).scale(&-inv.clone());
        let d_next = (&coeff(&s, &c, k) * &x).scale(&-inv);
        s.push(s_next);
        c.push(c_next);
        d.push(d_next);
    }
    JacobiTriple { sn: SeriesQx::new(s), cn: SeriesQx::new(c), dn: SeriesQx::new(d) }
}

/// `f_m(x) = m! [u^m] nc(u)` for `m ≤ N`.
pub fn nc_series(order: usize) -> Vec<Poly> {
    jacobi_sn_cn_dn(order).cn.recip().factorial_scaled()[..=order].to_vec()
}

/// `p_m(x) = m! [u^m] dc(u)` for `m ≤ N`.
pub fn dc_series(order: usize) -> Vec<Poly> {
    let t = jacobi_sn_cn_dn(order);
    t.dn.mul(&t.cn.recip()).factorial_scaled()[..=order].to_vec()
}

/// `q_m(x) = m! [u^m] u·ds(u)` for `m ≤ N`.
pub fn uds_series(order: usize) -> Vec<Poly> {
    let t = jacobi_sn_cn_dn(order + 1);
    let sn_over_u = t.sn.shift_down();
    let dn = SeriesQx::new(t.dn.coeffs()[..=order].to_vec());
    dn.mul(&sn_over_u.recip()).factorial_scaled()
}

/// The three polynomial families up to a common order.
#[derive(Clone, Debug)]
pub struct JacobiTables {
    pub f: Vec<Poly>,
    pub p: Vec<Poly>,
    pub q: Vec<Poly>,
}

impl JacobiTables {
    pub fn build(order: usize) -> JacobiTables {
        let t = jacobi_sn_cn_dn(order + 1);
        let nc = SeriesQx::new(t.cn.coeffs()[..=order].to_vec()).recip();
        let dn = SeriesQx::new(t.dn.coeffs()[..=order].to_vec());
        let dc = dn.mul(&nc);
        let uds = dn.mul(&t.sn.shift_down().recip());
        JacobiTables { f: nc.factorial_scaled(), p: dc.factorial_scaled(), q: uds.factorial_scaled() }
    }

    pub fn order(&self) -> usize {
        self.f.len() - 1
    }
}

/// Default truncation, enough for `q_{4p}` and its derivatives up to `p = 8`.
pub const DEFAULT_ORDER: usize = 36;

/// A shared table of order at least `order`.
pub fn jacobi_tables(order: usize) -> Arc<JacobiTables> {
    static SHARED: OnceLock<RwLock<Arc<JacobiTables>>> = OnceLock::new();
    let lock = SHARED.get_or_init(|| RwLock::new(Arc::new(JacobiTables::build(DEFAULT_ORDER))));
    {
        let t = lock.read().expect("jacobi table poisoned");
        if t.order() >= order {
            return Arc::clone(&t);
        }
    }
    let mut t = lock.write().expect("jacobi table poisoned");
    if t.order() < order {
        *t = Arc::new(JacobiTables::build(order));
    }
    Arc::clone(&t)
}

/// `q_{2j}(1 - x) = (-1)^j q_{2j}(x)`.
pub fn q_symmetry_holds(q2j: &Poly, j: usize) -> bool {
    let reflected = q2j.reflect();
    if j % 2 == 0 {
        reflected == *q2j
    } else {
        reflected == -q2j
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn sn_cubic_coefficient() {
        let t = jacobi_sn_cn_dn(5);
        assert_eq!(t.sn.coeff(3), &Poly::from_coeffs(vec![q(-1, 6), q(-1, 6)]));
        assert_eq!(t.sn.coeff(1), &Poly::one());
    }

    #[test]
    fn modulus_zero_degenerates_to_circular_functions() {
        let t = jacobi_sn_cn_dn(12);
        let zero = Rational::new();
        let mut fact = Integer::from(1);
        for k in 0..=12usize {
            if k > 0 {
                fact *= k as u64;
            }
            let sin_k = match k % 4 {
                1 => Rational::from((1, 1)) / Rational::from(&fact),
                3 => Rational::from((-1, 1)) / Rational::from(&fact),
                _ => Rational::new(),
            };
            assert_eq!(t.sn.coeff(k).eval(&zero), sin_k, "k={k}");
            let dn0 = if k == 0 { Rational::from(1) } else { Rational::new() };
            assert_eq!(t.dn.coeff(k).eval(&zero), dn0);
        }
    }

    #[test]
    fn pythagorean_identities() {
        let t = jacobi_sn_cn_dn(16);
        let s2 = t.sn.mul(&t.sn);
        let one_minus_c2 = SeriesQx::new(
            t.cn.mul(&t.cn).coeffs().iter().enumerate().map(|(k, c)| if k == 0 { &Poly::one() - c } else { -c }).collect(),
        );
        assert_eq!(s2, one_minus_c2);
        let one_minus_d2 = SeriesQx::new(
            t.dn.mul(&t.dn).coeffs().iter().enumerate().map(|(k, c)| if k == 0 { &Poly::one() - c } else { -c }).collect(),
        );
        assert_eq!(s2.scale_poly(&Poly::x()), one_minus_d2);
    }

    #[test]
    fn printed_low_order_polynomials() {
        let f = nc_series(6);
        assert_eq!(f[0], Poly::one());
        assert_eq!(f[4], Poly::from_i64(&[5, -4]));
        assert_eq!(f[6], Poly::from_i64(&[61, -76, 16]));
        let p = dc_series(6);
        assert_eq!(p[0], Poly::one());
        assert_eq!(p[2], Poly::from_i64(&[1, -1]));
        assert_eq!(p[6], Poly::from_i64(&[61, -107, 47, -1]));
        let qq = uds_series(4);
        assert_eq!(qq[0], Poly::one());
        assert_eq!(qq[2], Poly::from_coeffs(vec![q(1, 3), q(-2, 3)]));
        assert_eq!(qq[2].eval(&q(1, 2)), 0);
    }

    #[test]
    fn shared_tables_agree_with_direct_routes() {
        let t = JacobiTables::build(10);
        assert_eq!(t.f, nc_series(10));
        assert_eq!(t.p, dc_series(10));
        assert_eq!(t.q, uds_series(10));
    }

    #[test]
    fn odd_entries_vanish_and_symmetry_holds() {
        let t = JacobiTables::build(20);
        for m in (1..=20).step_by(2) {
            assert!(t.f[m].is_zero() && t.p[m].is_zero() && t.q[m].is_zero());
        }
        for j in 0..=10 {
            assert!(q_symmetry_holds(&t.q[2 * j], j), "j={j}");
        }
    }
}
