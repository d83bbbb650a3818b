use futaki_core::exactalg::{rat, ExpPoly, LaurentPoly};
use futaki_core::futaki::*;
use futaki_core::geometry::examples::*;
use futaki_core::geometry::{CompleteIntersection, DiagonalField};
use proptest::prelude::*;
use rug::Rational;

fn closed_form(a: i64, b: i64, c: i64) -> ExpPoly {
    // −e^{at}/(48t²) − e^{bt}/(24t²) + e^{ct}/(16t²)
    let mut p = ExpPoly::zero();
    p.add_term(Rational::from(a), LaurentPoly::monomial(rat(-1, 48), -2));
    p.add_term(Rational::from(b), LaurentPoly::monomial(rat(-1, 24), -2));
    p.add_term(Rational::from(c), LaurentPoly::monomial(rat(1, 16), -2));
    p
}

#[test]
fn cubic_surface_function() {
    let f = f_function(&cubic_surface(), &cubic_surface_field());
    assert_eq!(f, closed_form(-4, 8, 4));
    assert_eq!(
        f.to_string(),
        "-(1/48)*t^-2*exp(-4*t) + (1/16)*t^-2*exp(4*t) - (1/24)*t^-2*exp(8*t)"
    );
}

#[test]
fn quadric_pair_function() {
    assert_eq!(f_function(&quadric_pair(), &quadric_pair_field()), closed_form(-5, 7, 3));
}

#[test]
fn limits_at_zero() {
    for (ci, v) in [(cubic_surface(), cubic_surface_field()), (quadric_pair(), quadric_pair_field())] {
        assert_eq!(f_function(&ci, &v).limit_at_zero().unwrap(), Rational::from(-1));
    }
}

#[test]
fn worked_examples_two_paths() {
    for (ci, v) in [(cubic_surface(), cubic_surface_field()), (quadric_pair(), quadric_pair_field())] {
        assert_eq!(f_function(&ci, &v), f_function_recursive(&ci, &v));
        assert!(verify_recursion(&ci, &v).iter().all(RecursionCheck::holds));
    }
}

#[test]
fn derivative_along_itself_is_euler_operator() {
    for (ci, v) in [(cubic_surface(), cubic_surface_field()), (quadric_pair(), quadric_pair_field())] {
        let f = f_function(&ci, &v);
        assert_eq!(fut_derivative(&ci, &v, &v).unwrap(), f.euler_derivative());
    }
}

#[test]
fn classical_futaki_coefficient() {
    let ci = cubic_surface();
    let w = cubic_surface_field();
    let series = f_function(&ci, &w).series(2);
    assert_eq!(series.coeff(0), Rational::from(-1));
    assert_eq!(series.coeff(1), rat(-8, 3));
    assert_eq!(series.coeff(2), rat(-20, 3));
    // Fut_0(W) as a function of t is t·(−8/3) + O(t²)
    let fut = fut_derivative(&ci, &DiagonalField::zero(&ci), &w).unwrap();
    assert_eq!(fut, ExpPoly::from_laurent(LaurentPoly::monomial(rat(-8, 3), 1)));
}

#[test]
fn zero_direction_and_zero_field() {
    let ci = quadric_pair();
    let zero = DiagonalField::zero(&ci);
    assert!(fut_derivative(&ci, &zero, &zero).unwrap().is_zero());
    assert_eq!(f_function(&ci, &zero), ExpPoly::constant(Rational::from(-1)));
}

#[test]
fn inadmissible_direction_is_rejected() {
    let ci = cubic_surface();
    let bad = DiagonalField::new(
        &CompleteIntersection::new(3, vec![3], None).unwrap(),
        vec![Rational::from(1), Rational::from(-1), Rational::new(), Rational::new()],
        Some(vec![Rational::new()]),
    )
    .unwrap();
    let err = fut_derivative(&ci, &cubic_surface_field(), &bad).unwrap_err();
    assert!(matches!(err, futaki_core::Error::InadmissibleDirection(_)));
}

#[test]
fn numeric_agrees_with_symbolic() {
    let prec = 256;
    let tol = 2f64.powi(-(prec as i32 - 16));
    for (ci, v) in [(cubic_surface(), cubic_surface_field()), (quadric_pair(), quadric_pair_field())] {
        let f = f_function(&ci, &v);
        for t in [rat(1, 10), rat(1, 4), rat(-1, 3)] {
            let exact = f.eval(&t, prec).unwrap();
            let num = f_numeric(&ci, &v, &t, prec);
            assert!(num.relative_error(&exact).to_f64() <= tol, "t={t}");
        }
    }
}

#[test]
fn clustered_eigenvalues() {
    let prec = 256;
    let tol = 2f64.powi(-(prec as i32 - 16));
    let ci = CompleteIntersection::new(3, vec![2], None).unwrap();
    let eps = Rational::from((1, 1_000_000_000));
    let lam = vec![
        Rational::from(-3),
        Rational::from(1),
        Rational::from(1) - eps.clone(),
        Rational::from(1) + eps,
    ];
    let v = DiagonalField::new(&ci, lam, Some(vec![Rational::from(2)])).unwrap();
    let f = f_function(&ci, &v);
    for t in [rat(1, 10), rat(1, 4), rat(-1, 3)] {
        let exact = f.eval(&t, prec).unwrap();
        let num = f_numeric(&ci, &v, &t, prec);
        assert!(num.relative_error(&exact).to_f64() <= tol, "t={t}");
    }
}

#[test]
fn dual_numeric_matches_symbolic_derivative() {
    let prec = 256;
    let ci = quadric_pair();
    let v = quadric_pair_field();
    let w = DiagonalField::new(
        &ci,
        vec![rat(-7, 1), rat(3, 1), rat(-2, 1), rat(-3, 1), rat(9, 1)],
        None,
    )
    .unwrap();
    let exact = fut_derivative(&ci, &v, &w).unwrap();
    for t in [rat(1, 10), rat(-1, 3)] {
        let sym = exact.eval(&t, prec).unwrap();
        let num = fut_numeric(&ci, &v, &w, &t, prec).unwrap();
        assert!(num.relative_error(&sym).to_f64() < 1e-60);
    }
}

fn fano_config() -> impl Strategy<Value = (usize, Vec<u32>)> {
    (1usize..=9).prop_flat_map(|n| {
        proptest::collection::vec(1u32..=4, 0..=3.min(n - 1)).prop_filter_map("Fano", move |d| {
            let total: u32 = d.iter().sum();
            (total as usize <= n).then_some((n, d))
        })
    })
}

fn traceless(raw: &[i64], den: i64) -> Vec<Rational> {
    let mut v: Vec<Rational> = raw.iter().map(|&x| rat(x, den)).collect();
    let tr: Rational = v.iter().sum();
    v.push(-tr);
    v
}

fn random_field(n: usize, s: usize) -> impl Strategy<Value = (Vec<Rational>, Vec<Rational>)> {
    (
        proptest::collection::vec(-5i64..=5, n),
        proptest::collection::vec(-6i64..=6, s),
        1i64..4,
    )
        .prop_map(|(raw, w, den)| (traceless(&raw, den), w.iter().map(|&x| rat(x, den)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn zero_field_is_minus_one((n, d) in fano_config()) {
        let ci = CompleteIntersection::new(n, d, None).unwrap();
        let f = f_function(&ci, &DiagonalField::zero(&ci));
        prop_assert_eq!(f, ExpPoly::constant(Rational::from(-1)));
    }

    #[test]
    fn random_fields_two_paths_and_limit(
        ((n, d), field) in fano_config().prop_filter("small", |(n, _)| *n <= 5)
            .prop_flat_map(|(n, d)| { let s = d.len(); (Just((n, d)), random_field(n, s)) })
    ) {
        let ci = CompleteIntersection::new(n, d, None).unwrap();
        let v = DiagonalField::new(&ci, field.0, Some(field.1)).unwrap();
        let f = f_function(&ci, &v);
        prop_assert_eq!(&f, &f_function_recursive(&ci, &v));
        prop_assert!(verify_recursion(&ci, &v).iter().all(RecursionCheck::holds));
        prop_assert_eq!(f.limit_at_zero().unwrap(), Rational::from(-1));
    }

    #[test]
    fn scaling_covariance(c in prop::sample::select(vec![rat(2, 1), rat(-1, 1), rat(1, 3)])) {
        for (ci, v) in [(cubic_surface(), cubic_surface_field()), (quadric_pair(), quadric_pair_field())] {
            let lhs = f_function(&ci, &v.scaled(&c));
            prop_assert_eq!(lhs, f_function(&ci, &v).rescale_variable(&c));
        }
    }

    #[test]
    fn derivative_is_linear(a in -4i64..4, b in -4i64..4, c in -4i64..4, e in -4i64..4) {
        let ci = quadric_pair();
        let v = quadric_pair_field();
        // admissible directions: λ_1 = x, λ_3 = y, λ_4 = 2x − y, λ_2 = −2x/3, λ_0 = −7x/3
        let dir = |x: i64, y: i64| {
            let x = Rational::from(x * 3);
            let y = Rational::from(y);
            DiagonalField::new(&ci, vec![
                x.clone() * rat(-7, 3), x.clone(), x.clone() * rat(-2, 3), y.clone(), x * 2 - y,
            ], None).unwrap()
        };
        let w1 = dir(a, b);
        let w2 = dir(c, e);
        let sum = fut_derivative(&ci, &v, &w1.plus(&w2)).unwrap();
        let parts = &fut_derivative(&ci, &v, &w1).unwrap() + &fut_derivative(&ci, &v, &w2).unwrap();
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn numeric_concavity(
        ((n, d), v, w) in fano_config().prop_filter("small", |(n, _)| *n <= 6)
            .prop_flat_map(|(n, d)| { let s = d.len(); (Just((n, d)), random_field(n, s), random_field(n, s)) })
    ) {
        // F_i = z_i^{d_i}, so the weights follow from the eigenvalues
        let supports = d.iter().enumerate().map(|(i, &di)| {
            let mut a = vec![0u32; n + 1];
            a[i] = di;
            vec![a]
        }).collect();
        let ci = CompleteIntersection::new(n, d, Some(supports)).unwrap();
        let v = DiagonalField::new(&ci, v.0, None).unwrap();
        let w = DiagonalField::new(&ci, w.0, None).unwrap();
        let h = rat(1, 1000);
        let t = Rational::from(1);
        let prec = 192;
        let at = |s: &Rational| f_numeric(&ci, &v.plus(&w.scaled(s)), &t, prec);
        let second = &(&at(&h) + &at(&-h.clone())) - &at(&Rational::new()).mul_pow2(1);
        prop_assert!(second.to_f64() <= 1e-40);
    }
}

#[test]
fn projective_space_function() {
    // s = 0: F = −I_{0,0}
    let ci = CompleteIntersection::projective_space(2).unwrap();
    let v = DiagonalField::new(&ci, vec![rat(1, 1), rat(-2, 1), rat(1, 1)], None).unwrap();
    let f = f_function(&ci, &v);
    let i00 = futaki_core::localization::i0l_symbolic(2, 3, v.eigenvalues(), 0);
    assert_eq!(f, -i00);
    let num = f_numeric(&ci, &v, &rat(1, 2), 128);
    assert!(num.relative_error(&f.eval(&rat(1, 2), 128).unwrap()).to_f64() < 1e-30);
}
