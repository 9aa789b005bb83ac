mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qfib::matrix::det_cofactor;
use qfib::quad::{alpha_pow, beta_pow, QuadElem};
use qfib::sequences::{fib, lucas, qfib, qfib_explicit, qfib_neg_closed, qfib_shift, transform_t};
use qfib::{Point, Poly, Var};

use common::{laurent, polynomial, small_matrix};

fn nonzero_int() -> impl Strategy<Value = i64> {
    prop_oneof![-4i64..=-1, 1i64..=4]
}

fn point() -> impl Strategy<Value = Point> {
    (nonzero_int(), nonzero_int(), nonzero_int(), nonzero_int())
        .prop_map(|(x, s, q, z)| Point::integers(x, s, q, z))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn addition_is_a_commutative_group(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &Poly::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(-(-a.clone()), a);
    }

    #[test]
    fn multiplication_is_commutative_associative_and_distributive(
        a in laurent(), b in laurent(), c in laurent()
    ) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Poly::one(), a.clone());
        prop_assert!((&a * &Poly::zero()).is_zero());
    }

    #[test]
    fn text_round_trips(a in laurent()) {
        let text = a.to_string();
        let back: Poly = text.parse().unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn exact_division_undoes_multiplication(a in polynomial(), b in polynomial()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn laurent_division_undoes_multiplication(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div_laurent(&b).unwrap(), a);
    }

    #[test]
    fn substitutions_are_homomorphisms(a in laurent(), b in laurent(), m in -3i32..=3, n in -4i64..=6) {
        prop_assert_eq!(a.subst_q_invert().subst_q_invert(), a.clone());
        prop_assert_eq!(a.subst_s_scale(m).subst_s_scale(-m), a.clone());
        prop_assert_eq!(a.subst_s_scale(m).subst_s_scale(2), a.subst_s_scale(m + 2));
        prop_assert_eq!(transform_t(&transform_t(&a, n), n), a.clone());
        let ab = &a * &b;
        prop_assert_eq!(ab.subst_s_scale(m), &a.subst_s_scale(m) * &b.subst_s_scale(m));
        prop_assert_eq!(transform_t(&ab, n), &transform_t(&a, n) * &transform_t(&b, n));
        prop_assert_eq!(ab.subst_q_one(), &a.subst_q_one() * &b.subst_q_one());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in laurent(), b in laurent(), at in point()) {
        let (va, vb) = (a.eval(&at).unwrap(), b.eval(&at).unwrap());
        prop_assert_eq!((&a * &b).eval(&at).unwrap(), &va * &vb);
        prop_assert_eq!((&a + &b).eval(&at).unwrap(), &va + &vb);
        prop_assert_eq!(Poly::one().eval(&at).unwrap(), BigRational::from_integer(BigInt::from(1)));
    }

    #[test]
    fn extension_conjugation_is_multiplicative(
        a in laurent(), b in laurent(), c in laurent(), d in laurent()
    ) {
        let e = QuadElem::new(a, b);
        let f = QuadElem::new(c, d);
        prop_assert_eq!((&e * &f).conj(), &e.conj() * &f.conj());
        prop_assert_eq!((&e * &f).norm(), &e.norm() * &f.norm());
        prop_assert_eq!(e.conj().conj(), e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bareiss_matches_cofactor_expansion(m in small_matrix()) {
        prop_assert_eq!(m.det().unwrap(), det_cofactor(&m).unwrap());
    }
}

#[test]
fn alpha_powers_have_fibonacci_components() {
    let s = Poly::s();
    for n in -6..=12 {
        let a = alpha_pow(n);
        assert_eq!(a, QuadElem::new(&s * &fib(n - 1), fib(n)), "n={n}");
        assert_eq!(a.trace(), lucas(n));
        assert_eq!(&a * &alpha_pow(-n), QuadElem::one());
        assert_eq!(
            &a - &beta_pow(n),
            QuadElem::new(-(&Poly::x() * &fib(n)), &fib(n) + &fib(n))
        );
        for m in -3..=3 {
            assert_eq!(&a * &alpha_pow(m), alpha_pow(n + m));
        }
    }
}

#[test]
fn alternate_recurrence_holds_on_both_sides_of_zero() {
    let qs: Poly = "q*s".parse().unwrap();
    for n in -6..=14 {
        let rhs = &(&Poly::x() * &qfib_shift(n - 1, 1)) + &(&qs * &qfib_shift(n - 2, 2));
        assert_eq!(qfib(n), rhs, "n={n}");
    }
}

#[test]
fn explicit_and_closed_forms_agree_with_the_recurrence() {
    for n in 0..=14 {
        assert_eq!(qfib_explicit(n), qfib(n), "n={n}");
    }
    for n in 1..=8 {
        assert_eq!(qfib_neg_closed(n), qfib(-n), "n={n}");
    }
}

#[test]
fn q_one_gives_the_classical_polynomials() {
    for n in -6..=14 {
        assert_eq!(qfib(n).subst_q_one(), fib(n), "n={n}");
    }
}

#[test]
fn transform_moves_shifts() {
    for n in -3..=6 {
        for m in 0..=8 {
            for a in -2..=3 {
                assert_eq!(
                    transform_t(&qfib_shift(m, a), n),
                    qfib_shift(m, n - m - a),
                    "n={n} m={m} a={a}"
                );
            }
        }
    }
}

#[test]
fn classical_values_at_one_are_fibonacci_numbers() {
    let mut a = 0i64;
    let mut b = 1i64;
    for n in 0..=30 {
        let v = fib(n)
            .subst_int(Var::X, 1)
            .unwrap()
            .subst_int(Var::S, 1)
            .unwrap();
        assert_eq!(v, Poly::constant(a));
        (a, b) = (b, a + b);
    }
}
