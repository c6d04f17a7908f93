//! Bernoulli and Euler (secant) numbers by exact convolution recurrences.

use rug::{Integer, Rational};

/// `B_0 ..= B_n` with `x/(e^x - 1) = Σ B_k x^k / k!`, so `B_1 = -1/2`.
pub fn bernoulli_table(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::from(1));
    for m in 1..=n {
        // Σ_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from(bk * &binom);
            binom *= (m + 1 - k) as u64;
            binom /= (k + 1) as u64;
        }
        b.push(-acc / Integer::from(m + 1));
    }
    b
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_table(n).pop().expect("nonempty")
}

/// Secant numbers `E_0 ..= E_n` with `sec x = Σ E_m x^(2m) / (2m)!`.
pub fn euler_table(n: usize) -> Vec<Integer> {
    let mut e: Vec<Integer> = Vec::with_capacity(n + 1);
    e.push(Integer::from(1));
    for m in 1..=n {
        // sec·cos = 1:  Σ_{k=0}^{m} (-1)^(m-k) C(2m, 2k) E_k = 0
        let mut acc = Integer::new();
        for (k, ek) in e.iter().enumerate() {
            let term = Integer::from(Integer::binomial_u(2 * m as u32, 2 * k as u32)) * ek;
            if (m - k) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(-acc);
    }
    e
}

pub fn euler_number(n: usize) -> Rational {
    Rational::from(euler_table(n).pop().expect("nonempty"))
}
