use lemnisum::algebra::{ClosedForm, EllipticExpr, Key, Monomial, Poly, RatFun, Rational};
use lemnisum::numerics::{pow2, tanh_sinh, to_real};
use lemnisum::sums::{sum_closed_form, sum_numeric, FamilyTag, SumFamily};
use proptest::prelude::*;
use rug::ops::Pow;
use rug::Float;

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 0..4).prop_map(|c| Poly::from_i64(&c))
}

fn coeff() -> impl Strategy<Value = RatFun> {
    // Denominators stay nonzero at x = 1/2.
    (poly(), prop_oneof![Just(Poly::one()), Just(Poly::x()), Just(Poly::from_i64(&[1, 1]))])
        .prop_map(|(n, d)| RatFun::new(n, d))
}

fn monomial() -> impl Strategy<Value = Monomial> {
    (0u8..2, prop::collection::vec(0u32..3, 0..3)).prop_map(|(r, jets)| Monomial::new(r, jets))
}

fn expr() -> impl Strategy<Value = EllipticExpr> {
    prop::collection::vec((coeff(), monomial()), 0..3).prop_map(|terms| {
        terms.into_iter().fold(EllipticExpr::zero(), |acc, (c, m)| &acc + &EllipticExpr::term(c, m))
    })
}

fn closed_form() -> impl Strategy<Value = ClosedForm> {
    prop::collection::vec((-9i64..=9, 1i64..=9, -8i64..=8, -6i64..=6, any::<bool>()), 0..4).prop_map(|terms| {
        terms.into_iter().fold(ClosedForm::zero(), |acc, (n, d, g, p, s)| {
            &acc + &ClosedForm::monomial(Rational::from((n, d)), Key::new(g, p, s))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn expr_ring_axioms(a in expr(), b in expr(), c in expr()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &EllipticExpr::one(), a.clone());
    }

    #[test]
    fn derivatives_obey_leibniz(a in expr(), b in expr()) {
        let ab = &a * &b;
        prop_assert_eq!(ab.diff_x(), &(&a.diff_x() * &b) + &(&a * &b.diff_x()));
        prop_assert_eq!(ab.diff_y(), &(&a.diff_y() * &b) + &(&a * &b.diff_y()));
        prop_assert_eq!((&a + &b).diff_x(), &a.diff_x() + &b.diff_x());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in expr(), b in expr()) {
        let (ea, eb) = (a.eval_at_half().unwrap(), b.eval_at_half().unwrap());
        prop_assert_eq!((&a * &b).eval_at_half().unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).eval_at_half().unwrap(), &ea + &eb);
    }

    #[test]
    fn expr_json_round_trip(a in expr()) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<EllipticExpr>(&s).unwrap(), a);
    }

    #[test]
    fn closed_form_arithmetic(a in closed_form(), b in closed_form()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<ClosedForm>(&s).unwrap(), a.clone());
        // to_real is additive up to the target precision.
        let prec = 96;
        let lhs = to_real(&(&a + &b), prec);
        let rhs = Float::with_val(prec + 64, to_real(&a, prec) + to_real(&b, prec));
        prop_assert!(Float::with_val(prec + 64, lhs - rhs).abs() < pow2(-(prec as i32) + 2, 64));
    }

    #[test]
    fn poly_reflection_and_division(p in poly(), d in poly()) {
        prop_assert_eq!(p.reflect().reflect(), p.clone());
        if !d.is_zero() {
            let (q, r) = p.div_rem(&d);
            prop_assert_eq!(&(&q * &d) + &r, p.clone());
            prop_assert!(r.is_zero() || r.degree() < d.degree());
        }
    }

    #[test]
    fn quadrature_integrates_monomials(k in 0u32..24, prec in 64u32..160) {
        let wp = prec + 32;
        let f = move |x: &Float| Float::with_val(x.prec(), x.pow(k));
        let q = tanh_sinh(&f, &Float::with_val(wp, 0), &Float::with_val(wp, 1), prec, wp).unwrap();
        let exact = Float::with_val(wp, 1) / (k + 1);
        prop_assert!((q.value - exact).abs() < pow2(-(prec as i32), 64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn direct_sums_match_closed_forms(tag_ix in 0usize..9, half in 0u32..10, prec in 64u32..192) {
        let tag = FamilyTag::ALL[tag_ix];
        let s = if tag.odd_exponent() { 2 * half + 1 } else { 2 * half };
        let f = SumFamily::new(tag, s).unwrap();
        let n = sum_numeric(f, prec).unwrap().value;
        let c = to_real(&sum_closed_form(f).unwrap(), prec);
        prop_assert!(Float::with_val(prec + 64, n - c).abs() < pow2(-(prec as i32) + 8, 64), "{}", f);
    }
}
