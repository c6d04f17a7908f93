//! Ramanujan's series `S_{2m+1}` and `Φ_{1,2m}` as elliptic expressions.
//!
//! With `q = e^{-y}`, `S_m = -B_{m+1}/(2(m+1)) + Σ n^m q^{2n}/(1 - q^{2n})`
//! and `Φ_{a,m} = Σ n^m q^{2n}/(1 - q^{2n})^{a+1}`. The symbolic forms come
//! from `P, Q, R` and two convolution recursions; [`phi_numeric`] sums the
//! defining series directly.

use std::sync::{Arc, OnceLock, RwLock};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::algebra::{EllipticExpr, Monomial, Poly, RatFun};
use crate::numerics::{geometric_tail_log2, sum_series, working_prec};

/// Ramanujan's `P`, `Q`, `R` in terms of `x` and `z`.
#[derive(Clone, Debug)]
pub struct EisensteinTriple {
    pub p: EllipticExpr,
    pub q: EllipticExpr,
    pub r: EllipticExpr,
}

pub fn eisenstein_pqr() -> EisensteinTriple {
    let z = EllipticExpr::z();
    let zp = EllipticExpr::jet(1);
    let p = &(&z * &z).mul_poly(&Poly::from_i64(&[1, -2]))
        + &(&z * &zp).mul_poly(&Poly::sigma().scale(&Rational::from(6)));
    let q = EllipticExpr::zpow(4).mul_poly(&Poly::from_i64(&[1, -1, 1]));
    let r_poly = &(&Poly::from_i64(&[1, 1]) * &Poly::from_coeffs(vec![Rational::from(1), Rational::from((-1, 2))]))
        * &Poly::from_i64(&[1, -2]);
    let r = EllipticExpr::zpow(6).mul_poly(&r_poly);
    EisensteinTriple { p, q, r }
}

fn binomial(n: u32, k: u32) -> Rational {
    Rational::from(Integer::binomial_u(n, k))
}

/// Memoized `S_{2k+1}` for `0 ≤ k ≤ m_max` and `Φ_{1,2m}` for `1 ≤ m ≤ m_max`.
#[derive(Clone, Debug)]
pub struct SeriesTable {
    s: Vec<EllipticExpr>,
    phi: Vec<EllipticExpr>,
}

impl SeriesTable {
    pub fn build(m_max: usize) -> SeriesTable {
        let m_max = m_max.max(2);
        let EisensteinTriple { p, q, r } = eisenstein_pqr();
        let mut s = vec![
            p.scale_i64(-1, 24),
            q.scale_i64(1, 240),
            r.scale_i64(-1, 504),
        ];
        // S_{2n+3} = 12(2n+1)(n+1)/((2n+5)(n-1)) Σ_{k=1}^{n-1} C(2n,2k) S_{2k+1} S_{2n-2k+1}
        let mut n = 2usize;
        while s.len() <= m_max {
            let mut acc = EllipticExpr::zero();
            for k in 1..n {
                let term = &s[k] * &s[n - k];
                acc = &acc + &term.scale(&binomial(2 * n as u32, 2 * k as u32));
            }
            let (n_i, n1) = (n as i64, n as i64 - 1);
            let factor = Rational::from((12 * (2 * n_i + 1) * (n_i + 1), (2 * n_i + 5) * n1));
            s.push(acc.scale(&factor));
            n += 1;
        }
        s.truncate(m_max + 1);

        // Φ_{1,2n} = (2n+3)/(2(2n+1)) S_{2n+1} - Σ_{k=1}^{n} C(2n,2k-1) S_{2k-1} S_{2n-2k+1}
        let mut phi = vec![EllipticExpr::zero()];
        for n in 1..=m_max {
            let n_i = n as i64;
            let mut acc = s[n].scale(&Rational::from((2 * n_i + 3, 2 * (2 * n_i + 1))));
            for k in 1..=n {
                let term = &s[k - 1] * &s[n - k];
                acc = &acc - &term.scale(&binomial(2 * n as u32, 2 * k as u32 - 1));
            }
            phi.push(acc);
        }
        SeriesTable { s, phi }
    }

    pub fn m_max(&self) -> usize {
        self.phi.len() - 1
    }

    /// `S_{2k+1}`.
    pub fn s(&self, k: usize) -> &EllipticExpr {
        &self.s[k]
    }

    /// `Φ_{1,2m}` for `m ≥ 1`.
    pub fn phi(&self, m: usize) -> &EllipticExpr {
        assert!(m >= 1, "Φ_{{1,2m}} is indexed from m = 1");
        &self.phi[m]
    }
}

/// Default memoization depth.
pub const DEFAULT_M_MAX: usize = 12;

/// A shared table holding at least `Φ_{1,2m}` for `m ≤ m_max`.
pub fn series_table(m_max: usize) -> Arc<SeriesTable> {
    static SHARED: OnceLock<RwLock<Arc<SeriesTable>>> = OnceLock::new();
    let lock = SHARED.get_or_init(|| RwLock::new(Arc::new(SeriesTable::build(DEFAULT_M_MAX))));
    {
        let t = lock.read().expect("series table poisoned");
        if t.m_max() >= m_max {
            return Arc::clone(&t);
        }
    }
    let mut t = lock.write().expect("series table poisoned");
    if t.m_max() < m_max {
        *t = Arc::new(SeriesTable::build(m_max));
    }
    Arc::clone(&t)
}

/// `S_{2m-1}` for `m ≥ 1`.
pub fn s_series(m: usize) -> EllipticExpr {
    assert!(m >= 1);
    series_table(m).s(m - 1).clone()
}

/// `Φ_{1,2m}` for `m ≥ 1`.
pub fn phi_series(m: usize) -> EllipticExpr {
    series_table(m).phi(m).clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// Coefficient lies in `Q[σ]`, i.e. is invariant under `x ↦ 1 - x`.
    Even,
    /// Coefficient lies in `Q[σ]σ'`, i.e. changes sign under `x ↦ 1 - x`.
    Odd,
}

fn has_parity(c: &RatFun, parity: Parity) -> bool {
    let Some(p) = c.as_poly() else { return false };
    let reflected = p.reflect();
    match parity {
        Parity::Even => reflected == *p,
        Parity::Odd => reflected == -p,
    }
}

/// True when every term of `e` sits on one of the listed monomials in `z`,
/// `z'` with a coefficient of the stated parity.
pub fn in_graded_piece(e: &EllipticExpr, allowed: &[(u32, u32, Parity)]) -> bool {
    e.terms().all(|(m, c)| {
        m.r_exp == 0
            && m.jets.len() <= 2
            && allowed
                .iter()
                .any(|&(z0, z1, par)| *m == Monomial::new(0, vec![z0, z1]) && has_parity(c, par))
    })
}

/// `S_{4m-1} ∈ z^{4m}Q[σ]` and `S_{4m+1} ∈ z^{4m+2}Q[σ]σ'`.
pub fn s_grading_holds(table: &SeriesTable, m: usize) -> bool {
    let m = m as u32;
    let a = in_graded_piece(table.s(2 * m as usize - 1), &[(4 * m, 0, Parity::Even)]);
    let b = in_graded_piece(table.s(2 * m as usize), &[(4 * m + 2, 0, Parity::Odd)]);
    a && b
}

/// `Φ_{1,4m+2} ∈ z^{4m+4}Q[σ] + z^{4m+3}z'Q[σ]σ'` and
/// `Φ_{1,4m} ∈ z^{4m+2}Q[σ]σ' + z^{4m+1}z'Q[σ]`.
pub fn phi_grading_holds(table: &SeriesTable, m: usize) -> bool {
    let mu = m as u32;
    let a = in_graded_piece(
        table.phi(2 * m + 1),
        &[(4 * mu + 4, 0, Parity::Even), (4 * mu + 3, 1, Parity::Odd)],
    );
    let b = in_graded_piece(
        table.phi(2 * m),
        &[(4 * mu + 2, 0, Parity::Odd), (4 * mu + 1, 1, Parity::Even)],
    );
    a && b
}

/// `Σ_{n≥1} n^m q^{2n} / (1 - q^{2n})^{a+1}` to within `2^-prec`, for `0 < q < 1`.
pub fn phi_numeric(a: u32, m: u32, q: &Float, prec: u32) -> Float {
    let q2 = Float::with_val(q.prec().max(prec + 64), q.square_ref());
    let beta = -q2.to_f64().ln();
    // (1 - q^{2n})^{-(a+1)} ≤ (1 - q^2)^{-(a+1)}
    let log2_c = -f64::from(a + 1) * (1.0 - q2.to_f64()).log2();
    let peak = if m == 0 { 0.0 } else { f64::from(m) * (f64::from(m) / beta).log2() };
    let wp = working_prec(prec, log2_c + peak);
    let q2 = Float::with_val(wp, &q2);
    let mut q2n = Float::with_val(wp, 1);
    let term = |n: u64| {
        q2n *= &q2;
        let den = Float::with_val(wp, 1u32 - &q2n).pow(a + 1);
        Float::with_val(wp, Integer::from(n).pow(m)) * &q2n / den
    };
    let target = -f64::from(prec) - 16.0;
    let tail = |n: u64| geometric_tail_log2(log2_c, m, beta, n as f64, 1.0);
    sum_series(1, wp, target, term, tail).value
}
