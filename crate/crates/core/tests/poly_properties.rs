use fischer_core::rational::{frac, int};
use fischer_core::text::ParseErrorKind;
use fischer_core::{format_polynomial, parse_polynomial, Multiplicity, Polynomial, QuadraticOperator, Rational};
use proptest::prelude::*;

fn rational(lim: i64) -> impl Strategy<Value = Rational> {
    (-lim..=lim, 1..=lim).prop_map(|(n, d)| frac(n, d))
}

fn capped(mut e: Vec<u32>, max_degree: u32) -> Vec<u32> {
    let mut budget = max_degree;
    for v in e.iter_mut() {
        *v = (*v).min(budget);
        budget -= *v;
    }
    e
}

fn poly(dim: usize, max_degree: u32, terms: usize, lim: i64) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_degree, dim), rational(lim)),
        0..=terms,
    )
    .prop_map(move |ts| {
        Polynomial::from_terms(
            dim,
            ts.into_iter().map(|(e, c)| (capped(e, max_degree), c)),
        )
        .unwrap()
    })
}

fn nonzero_poly(dim: usize, max_degree: u32, terms: usize, lim: i64) -> impl Strategy<Value = Polynomial> {
    poly(dim, max_degree, terms, lim).prop_filter("nonzero", |p| !p.is_zero())
}

fn operator(dim: usize) -> impl Strategy<Value = QuadraticOperator> {
    prop::collection::vec(rational(5), dim * dim).prop_map(move |v| {
        let mut c = vec![vec![int(0); dim]; dim];
        for i in 0..dim {
            for j in 0..=i {
                c[i][j] = v[i * dim + j].clone();
                c[j][i] = v[i * dim + j].clone();
            }
        }
        QuadraticOperator::new(c).unwrap()
    })
}

fn dim_and<T: std::fmt::Debug, S: Strategy<Value = T>>(
    f: impl Fn(usize) -> S + Clone,
) -> impl Strategy<Value = (usize, T)> {
    (1usize..=3).prop_flat_map(move |d| (Just(d), f(d)))
}

fn point(dim: usize, lim: i64) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(lim), dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_axioms((_, (p, q, r)) in dim_and(|d| (poly(d, 3, 4, 6), poly(d, 3, 4, 6), poly(d, 3, 4, 6)))) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Polynomial::one(p.dim()), p.clone());
    }

    #[test]
    fn operator_is_linear(
        (_, (op, p, q)) in dim_and(|d| (operator(d), poly(d, 4, 5, 6), poly(d, 4, 5, 6))),
        a in rational(7),
        b in rational(7),
    ) {
        let lhs = op.apply(&(&p.scale(&a) + &q.scale(&b))).unwrap();
        let rhs = &op.apply(&p).unwrap().scale(&a) + &op.apply(&q).unwrap().scale(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_law((_, (p, q)) in dim_and(|d| (nonzero_poly(d, 4, 4, 6), nonzero_poly(d, 4, 4, 6)))) {
        let pq = &p * &q;
        prop_assert_eq!(pq.degree().unwrap(), p.degree().unwrap() + q.degree().unwrap());
        prop_assert_eq!(pq.principal_part().unwrap(), &p.principal_part().unwrap() * &q.principal_part().unwrap());
        prop_assert_eq!(pq.initial_part().unwrap(), &p.initial_part().unwrap() * &q.initial_part().unwrap());
    }

    #[test]
    fn components_sum_and_scale((d, (p, x)) in dim_and(|d| (nonzero_poly(d, 5, 6, 6), point(d, 5)))) {
        let parts = p.homogeneous_components().unwrap();
        let total = parts.values().fold(Polynomial::zero(d), |acc, c| &acc + c);
        prop_assert_eq!(&total, &p);
        let doubled: Vec<Rational> = x.iter().map(|v| v * int(2)).collect();
        for (n, c) in &parts {
            prop_assert!(c.is_homogeneous());
            prop_assert_eq!(c.evaluate(&doubled).unwrap(), c.evaluate(&x).unwrap() * int(2).pow(*n as i32));
        }
    }

    #[test]
    fn translation_evaluates((_, (p, x0, v)) in dim_and(|d| (poly(d, 4, 5, 6), point(d, 4), point(d, 4)))) {
        let t = p.translate(&x0).unwrap();
        let shifted: Vec<Rational> = x0.iter().zip(&v).map(|(a, b)| a + b).collect();
        prop_assert_eq!(t.evaluate(&shifted).unwrap(), p.evaluate(&v).unwrap());
        let back: Vec<Rational> = x0.iter().map(|a| -a).collect();
        prop_assert_eq!(t.translate(&back).unwrap(), p);
    }

    #[test]
    fn multiplicity_is_additive((_, (p, q, x0)) in dim_and(|d| (poly(d, 3, 4, 4), poly(d, 3, 4, 4), point(d, 2)))) {
        let add = |a: Multiplicity, b: Multiplicity| match (a, b) {
            (Multiplicity::Finite(m), Multiplicity::Finite(n)) => Multiplicity::Finite(m + n),
            _ => Multiplicity::Infinite,
        };
        prop_assert_eq!(
            (&p * &q).multiplicity_at(&x0).unwrap(),
            add(p.multiplicity_at(&x0).unwrap(), q.multiplicity_at(&x0).unwrap())
        );
    }

    #[test]
    fn forced_zero_raises_multiplicity((_, (p, x0)) in dim_and(|d| (nonzero_poly(d, 3, 4, 4), point(d, 3)))) {
        // p(x) − p(x0) vanishes at x0
        let c = Polynomial::constant(p.dim(), p.evaluate(&x0).unwrap());
        let g = &p - &c;
        prop_assert!(g.multiplicity_at(&x0).unwrap().at_least(1));
    }

    #[test]
    fn exact_divide_recovers((_, (psi, q)) in dim_and(|d| (nonzero_poly(d, 3, 4, 6), poly(d, 3, 4, 6)))) {
        prop_assert_eq!((&psi * &q).exact_divide(&psi).unwrap(), Some(q));
    }

    #[test]
    fn exact_divide_rejects_remainders((_, (psi, q)) in dim_and(|d| (nonzero_poly(d, 2, 3, 6), poly(d, 2, 3, 6)))) {
        prop_assume!(psi.degree().unwrap() >= 1);
        let f = &(&psi * &q) + &Polynomial::one(psi.dim());
        prop_assert_eq!(f.exact_divide(&psi).unwrap(), None);
    }

    #[test]
    fn text_round_trip((d, p) in (1usize..=4).prop_flat_map(|d| (Just(d), poly(d, 6, 8, 1000)))) {
        let s = format_polynomial(&p);
        prop_assert_eq!(parse_polynomial(&s, Some(d)).unwrap(), p.clone());
        if !p.is_zero() && !p.is_constant() {
            let inferred = parse_polynomial(&s, None).unwrap();
            prop_assert!(inferred.dim() <= d);
        }
    }
}

#[test]
fn malformed_inputs_point_at_the_offender() {
    let corpus: &[(&str, &str)] = &[
        ("2x", "x"),
        ("3*x + 4y", "y"),
        ("x + w", "w"),
        ("x^-1", "-"),
        ("x^y", "y"),
        ("x + y1", "y1"),
        ("x0 + 1", "x0"),
        ("1/0 * x", "0"),
        ("x / 2", "/"),
        ("x # y", "#"),
        ("x) ", ")"),
        ("x**2", "*"),
        ("(x + 1))", ")"),
        ("x^2^3", "^"),
        ("x + 1/-2", "-"),
    ];
    for &(text, offender) in corpus {
        let e = parse_polynomial(text, None).unwrap_err();
        assert!(e.span.start < e.span.end && e.span.end <= text.len(), "{text}: {e}");
        let covered = &text[e.span.start..e.span.end];
        assert!(covered.contains(offender), "{text}: span {} covers {covered:?}, expected {offender:?}", e.span);
    }
    for text in ["(x + 1", "x + ", "x^", "2*"] {
        let e = parse_polynomial(text, None).unwrap_err();
        assert_eq!((e.span.start, e.span.end), (text.len(), text.len()), "{text}");
    }
}

#[test]
fn dimension_conflicts() {
    let e = parse_polynomial("x + z", Some(2)).unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::DimensionConflict { declared: 2, used: 3 });
    assert_eq!((e.span.start, e.span.end), (4, 5));
    assert_eq!(parse_polynomial("x", Some(3)).unwrap().dim(), 3);
}
