use num_complex::Complex64;
use proptest::prelude::*;

use sl2char::polyring::{power_sums, symmetrize_laurent};
use sl2char::{poly_format, poly_parse, LaurentPoly, TracePoly, Var};

fn poly() -> impl Strategy<Value = TracePoly> {
    let term = (-20i64..=20, prop::collection::vec(0u32..=3, 3));
    prop::collection::vec(term, 0..6).prop_map(|terms| {
        TracePoly::from_terms(
            terms
                .into_iter()
                .map(|(c, e)| (c, vec![(Var::X, e[0]), (Var::Y, e[1]), (Var::Z, e[2])])),
        )
    })
}

fn point() -> impl Strategy<Value = [Complex64; 3]> {
    prop::array::uniform3((-1.5f64..1.5, -1.5f64..1.5)).prop_map(|a| a.map(|(re, im)| Complex64::new(re, im)))
}

fn at(p: &TracePoly, t: &[Complex64; 3]) -> Complex64 {
    p.eval_xyz(t[0], t[1], t[2]).unwrap()
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, TracePoly::zero());
        prop_assert_eq!(&a * &TracePoly::one(), a.clone());
        prop_assert_eq!(-(-a.clone()), a);
    }

    #[test]
    fn eval_is_a_ring_homomorphism(a in poly(), b in poly(), t in point()) {
        let (va, vb) = (at(&a, &t), at(&b, &t));
        let sum = at(&(&a + &b), &t);
        let prod = at(&(&a * &b), &t);
        prop_assert!((sum - (va + vb)).norm() <= 1e-12 * (1.0 + va.norm() + vb.norm()));
        prop_assert!((prod - va * vb).norm() <= 1e-12 * (1.0 + (va * vb).norm()) * 10.0);
    }

    #[test]
    fn format_parse_round_trip(a in poly()) {
        prop_assert_eq!(poly_parse(&poly_format(&a)).unwrap(), a);
    }

    #[test]
    fn degree_of_product_adds(a in poly(), b in poly()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!((&a * &b).degree(), a.degree() + b.degree());
    }

    #[test]
    fn symmetrization_matches_numeric_value(
        coeffs in prop::collection::vec(-50i64..=50, 1..10),
        r in 0.5f64..2.0,
        arg in 0.0f64..std::f64::consts::TAU,
    ) {
        let mut terms = vec![(0, TracePoly::constant(coeffs[0]))];
        for (e, &c) in coeffs.iter().enumerate().skip(1) {
            terms.push((e as i64, TracePoly::constant(c)));
            terms.push((-(e as i64), TracePoly::constant(c)));
        }
        let f = LaurentPoly::from_terms(terms);
        let h = symmetrize_laurent(&f).unwrap();
        prop_assert_eq!(LaurentPoly::expand_symmetric(&h), f.clone());
        let zeta = Complex64::from_polar(r, arg);
        let direct = f.eval(zeta, |_| None).unwrap();
        let via_u = h.eval(|v| (v == Var::U).then_some(zeta + 1.0 / zeta)).unwrap();
        prop_assert!((direct - via_u).norm() <= 1e-9 * (1.0 + direct.norm()));
    }
}

#[test]
fn power_sums_follow_the_recurrence() {
    let p = power_sums(12);
    assert_eq!(p.len(), 13);
    assert_eq!(p[2].to_string(), "u^2 - 2");
    assert_eq!(p[3].to_string(), "u^3 - 3*u");
    for n in 0..=12i64 {
        let f = if n == 0 {
            LaurentPoly::term(0, TracePoly::constant(2))
        } else {
            LaurentPoly::from_terms([(n, TracePoly::one()), (-n, TracePoly::one())])
        };
        assert_eq!(symmetrize_laurent(&f).unwrap(), p[n as usize]);
    }
}

#[test]
fn asymmetric_laurent_is_rejected() {
    let f = LaurentPoly::from_terms([(2, TracePoly::one()), (-1, TracePoly::one())]);
    assert!(symmetrize_laurent(&f).is_err());
    let reserved = LaurentPoly::term(0, TracePoly::var(Var::U));
    assert!(symmetrize_laurent(&reserved).is_err());
}

#[test]
fn unbound_variable_is_reported() {
    let p = poly_parse("x*t1 + 1").unwrap();
    assert!(p.eval_xyz(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)).is_err());
}
