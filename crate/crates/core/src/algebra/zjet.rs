//! Derivatives of `z = (2/π) K(x)` at the self-dual point `x = 1/2`.
//!
//! `d^n z/dx^n (1/2) = ((1/2)_n)^2 √π / Γ(n/2 + 3/4)^2`, and the Gamma value
//! reduces to `Γ(1/4)` through `Γ(3/4) = √2 π / Γ(1/4)` for even `n` and
//! `Γ(5/4) = Γ(1/4)/4` for odd `n`. No `√2` survives the squaring.

use rug::Rational;

use super::closed_form::{ClosedForm, Key};

/// Pochhammer symbol `(a)_n`.
fn pochhammer(a: &Rational, n: usize) -> Rational {
    let mut acc = Rational::from(1);
    let mut t = a.clone();
    for _ in 0..n {
        acc *= &t;
        t += 1;
    }
    acc
}

/// The `n`-th `x`-derivative of `z` at `x = 1/2`.
pub fn zjet_at_half(n: usize) -> ClosedForm {
    let half_n = pochhammer(&Rational::from((1, 2)), n);
    let num = Rational::from(half_n.square_ref());
    let k = n / 2;
    if n % 2 == 0 {
        // √π Γ(1/4)^2 / (2 π^2 ((3/4)_k)^2)
        let p = pochhammer(&Rational::from((3, 4)), k);
        let den = Rational::from(p.square_ref()) * 2u32;
        ClosedForm::monomial(num / den, Key::new(2, -3, false))
    } else {
        // 16 √π / (Γ(1/4)^2 ((5/4)_k)^2)
        let p = pochhammer(&Rational::from((5, 4)), k);
        let den = Rational::from(p.square_ref());
        ClosedForm::monomial(num * 16u32 / den, Key::new(-2, 1, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_jets() {
        assert_eq!(zjet_at_half(0), ClosedForm::monomial(Rational::from((1, 2)), Key::new(2, -3, false)));
        assert_eq!(zjet_at_half(1), ClosedForm::monomial(4, Key::new(-2, 1, false)));
        assert_eq!(zjet_at_half(2), zjet_at_half(0));
        assert_eq!(zjet_at_half(3), ClosedForm::monomial(36, Key::new(-2, 1, false)));
    }

    #[test]
    fn z_times_zprime_is_two_over_pi() {
        assert_eq!(&zjet_at_half(0) * &zjet_at_half(1), ClosedForm::gamma_pi(2, 0, 1));
    }
}
