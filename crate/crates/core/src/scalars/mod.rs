//! Exact scalars: rationals, generalized binomials, and univariate rational
//! functions in a formal variable `t`.

mod poly;
mod ratfunc;
mod rational;

pub use poly::Poly;
pub use ratfunc::{rf_derivative_at_zero, rf_eval, RationalFunction1V};
pub use rational::{binom_rational, Rational};

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn rational() -> impl Strategy<Value = Rational> {
        (-60i64..60, 1i64..25).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        rational().prop_filter("nonzero", |r| !r.is_zero())
    }

    fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
        proptest::collection::vec(rational(), 0..=max_deg + 1).prop_map(Poly::new)
    }

    /// Rational functions with a nonzero constant term in the denominator.
    fn smooth_rf() -> impl Strategy<Value = RationalFunction1V> {
        (poly(3), nonzero_rational(), poly(2)).prop_map(|(num, d0, rest)| {
            let mut den = vec![d0];
            den.extend(rest.coeffs().iter().cloned());
            RationalFunction1V::new(num, Poly::new(den)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn add_sub_roundtrip(a in rational(), b in rational()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn mul_div_roundtrip(a in rational(), b in nonzero_rational()) {
            prop_assert_eq!(&(&a * &b) / &b, a);
        }

        #[test]
        fn binom_matches_integer_binomial(a in 0i64..20, i in 0u32..8) {
            prop_assume!(a >= i as i64);
            let mut expected: i64 = 1;
            for j in 0..i as i64 {
                expected = expected * (a - j) / (j + 1);
            }
            prop_assert_eq!(binom_rational(&Rational::from(a), i), Rational::from(expected));
        }

        #[test]
        fn leibniz_rule_at_zero(f in smooth_rf(), g in smooth_rf()) {
            let fg = &f * &g;
            let lhs = rf_derivative_at_zero(&fg).unwrap();
            let rhs = rf_derivative_at_zero(&f).unwrap() * g.eval_at_zero().unwrap()
                + f.eval_at_zero().unwrap() * rf_derivative_at_zero(&g).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn display_parse_roundtrip(a in rational()) {
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }
    }
}
