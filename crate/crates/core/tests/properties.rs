use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use paralift::geometry::{lie_bracket, nijenhuis};
use paralift::random::{Generator, Shape};
use paralift::{parse, Assignment, Chart, EndoField, Expr, Monomial, ScalarField, SplitComplex, VectorField};

fn tm1() -> Chart {
    Chart::tangent_of(Chart::base(1))
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn coefficient() -> impl Strategy<Value = SplitComplex> {
    (-6i64..=6, -6i64..=6, 1i64..=4).prop_map(|(a, b, d)| SplitComplex::new(rational(a, d), rational(b, d)))
}

/// Polynomials of degree at most 3 per symbol over the given chart.
fn expr_over(chart: Chart, max_terms: usize) -> impl Strategy<Value = Expr> {
    let n = chart.dim();
    prop::collection::vec((coefficient(), prop::collection::vec(0u32..=2, n)), 0..=max_terms).prop_map(move |terms| {
        terms
            .into_iter()
            .map(|(c, exps)| {
                let m = Monomial::from_factors(exps.into_iter().enumerate().map(|(a, e)| (chart.symbol(a), e)));
                Expr::term(c, m)
            })
            .sum()
    })
}

fn point(chart: Chart) -> impl Strategy<Value = Assignment> {
    prop::collection::vec((-7i64..=7, 1i64..=7, -7i64..=7, 1i64..=7), chart.dim()).prop_map(move |vals| {
        let mut a = Assignment::new();
        for (k, (n1, d1, n2, d2)) in vals.into_iter().enumerate() {
            a.insert(chart.symbol(k), SplitComplex::new(rational(n1, d1), rational(n2, d2)));
        }
        a
    })
}

fn base_vector(m: usize) -> impl Strategy<Value = VectorField> {
    let c = Chart::base(m);
    prop::collection::vec(expr_over(c, 2), c.dim()).prop_map(move |comps| VectorField::new(c, comps).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_then_parse_is_identity(e in expr_over(tm1(), 4)) {
        let text = e.to_string();
        let back = parse(&text, &tm1()).unwrap();
        prop_assert_eq!(back, e, "printed as {}", text);
    }

    #[test]
    fn leibniz_rule(f in expr_over(tm1(), 3), g in expr_over(tm1(), 3), k in 0usize..4) {
        let s = tm1().symbol(k);
        let lhs = (&f * &g).differentiate(s);
        let rhs = &(&f.differentiate(s) * &g) + &(&f * &g.differentiate(s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(f in expr_over(tm1(), 3), g in expr_over(tm1(), 3), p in point(tm1())) {
        let (vf, vg) = (f.evaluate(&p).unwrap(), g.evaluate(&p).unwrap());
        prop_assert_eq!((&f + &g).evaluate(&p).unwrap(), &vf + &vg);
        prop_assert_eq!((&f * &g).evaluate(&p).unwrap(), &vf * &vg);
        prop_assert_eq!((-&f).evaluate(&p).unwrap(), -&vf);
        prop_assert_eq!(Expr::one().evaluate(&p).unwrap(), SplitComplex::one());
    }

    #[test]
    fn split_parts_recompose(e in expr_over(tm1(), 4)) {
        let (p, q) = e.split_parts();
        prop_assert!(p.is_real() && q.is_real());
        prop_assert_eq!(&p + &(&Expr::j() * &q), e);
    }

    #[test]
    fn bracket_is_antisymmetric(x in base_vector(1), y in base_vector(1)) {
        let xy = lie_bracket(&x, &y).unwrap();
        let yx = lie_bracket(&y, &x).unwrap();
        prop_assert_eq!(xy, yx.neg());
    }

    #[test]
    fn bracket_satisfies_jacobi(x in base_vector(1), y in base_vector(1), z in base_vector(1)) {
        let b = |a: &VectorField, c: &VectorField| lie_bracket(a, c).unwrap();
        let total = b(&x, &b(&y, &z)).add(&b(&y, &b(&z, &x))).unwrap().add(&b(&z, &b(&x, &y))).unwrap();
        prop_assert!(total.is_zero());
    }
}

fn endo(m: usize) -> impl Strategy<Value = EndoField> {
    let c = Chart::base(m);
    let n = c.dim();
    prop::collection::vec(prop::collection::vec(expr_over(c, 1), n), n).prop_map(move |rows| EndoField::new(c, rows).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nijenhuis_is_antisymmetric(f in endo(1), x in base_vector(1), y in base_vector(1)) {
        let xy = nijenhuis(&f, &x, &y).unwrap();
        let yx = nijenhuis(&f, &y, &x).unwrap();
        prop_assert_eq!(xy, yx.neg());
    }

    #[test]
    fn nijenhuis_tensorial_defect(f in endo(1), x in base_vector(1), y in base_vector(1), g in expr_over(Chart::base(1), 2)) {
        // For a general F the four-bracket formula picks up (Yg)(F^2 X - X).
        let g = ScalarField::new(Chart::base(1), g).unwrap();
        let lhs = nijenhuis(&f, &x.scale(&g).unwrap(), &y).unwrap();
        let f2x = f.compose(&f).unwrap().apply(&x).unwrap();
        let defect = f2x.sub(&x).unwrap().scale(&y.derive(&g).unwrap()).unwrap();
        let rhs = nijenhuis(&f, &x, &y).unwrap().scale(&g).unwrap().add(&defect).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nijenhuis_is_tensorial_for_involutions(seed in any::<u64>(), m in 1usize..=2) {
        let c = Chart::base(m);
        let mut gen = Generator::new(seed, 2, 2);
        let f = gen.involution(&c);
        let (x, y) = (gen.vector(&c, Shape::Random), gen.vector(&c, Shape::Random));
        let g = gen.scalar(&c, Shape::Random);
        let n = nijenhuis(&f, &x, &y).unwrap().scale(&g).unwrap();
        prop_assert_eq!(nijenhuis(&f, &x.scale(&g).unwrap(), &y).unwrap(), n.clone());
        prop_assert_eq!(nijenhuis(&f, &x, &y.scale(&g).unwrap()).unwrap(), n);
    }
}
