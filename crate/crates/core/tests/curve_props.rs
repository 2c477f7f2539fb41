use adele_forge::curve::{riemann_roch_space, Curve, Divisor, Function, Point};
use adele_forge::field::{FieldSpec, Polynomial, RationalFunction};
use adele_forge::fixtures::small_places;
use proptest::prelude::*;

fn p1() -> Curve {
    Curve::projective_line(&FieldSpec::prime(7).unwrap()).unwrap()
}

fn e31() -> Curve {
    Curve::elliptic_i64(31, 0, 1).unwrap()
}

fn poly(k: &FieldSpec, raw: &[i64]) -> Polynomial {
    let p = Polynomial::from_i64(k, raw);
    if p.is_zero() {
        Polynomial::one(k)
    } else {
        p
    }
}

fn rational(k: &FieldSpec, num: &[i64], den: &[i64]) -> RationalFunction {
    RationalFunction::new(poly(k, num), poly(k, den)).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 1..=4)
}

/// a(x) + b(x)·y on the elliptic curve, or a(t) on P¹.
fn function(curve: &Curve, a: (&[i64], &[i64]), b: Option<&[i64]>) -> Function {
    let k = curve.field();
    let a = rational(k, a.0, a.1);
    match b {
        Some(b) if curve.is_elliptic() => {
            Function::new(curve, a, RationalFunction::from_poly(Polynomial::from_i64(k, b))).unwrap()
        }
        _ => Function::rational(curve, a),
    }
}

fn divisor(curve: &Curve, terms: &[(usize, i64)]) -> Divisor {
    let places = small_places(curve).unwrap();
    let mut d = Divisor::zero(curve);
    for (i, n) in terms {
        d = d.try_add(&Divisor::single(curve, places[i % places.len()].clone(), *n).unwrap()).unwrap();
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn valuations_are_additive(n1 in coeffs(), d1 in coeffs(), n2 in coeffs(), d2 in coeffs(), b in coeffs(), elliptic: bool) {
        let curve = if elliptic { Curve::elliptic_i64(7, 1, 3).unwrap() } else { p1() };
        let f = function(&curve, (&n1, &d1), Some(&b));
        let g = function(&curve, (&n2, &d2), None);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = &f * &g;
        for place in small_places(&curve).unwrap() {
            prop_assert_eq!(fg.valuation(&place).unwrap(), f.valuation(&place).unwrap() + g.valuation(&place).unwrap());
        }
        let df = f.principal_divisor().unwrap();
        prop_assert_eq!(df.degree(), 0);
        prop_assert_eq!(fg.principal_divisor().unwrap(), df.try_add(&g.principal_divisor().unwrap()).unwrap());
    }

    #[test]
    fn riemann_roch_on_the_line(terms in prop::collection::vec((0usize..20, -3i64..=3), 0..4)) {
        let d = divisor(&p1(), &terms);
        prop_assert_eq!(riemann_roch_space(&d).unwrap().len() as i64, (d.degree() + 1).max(0));
    }

    #[test]
    fn riemann_roch_basis_lies_in_the_space(terms in prop::collection::vec((0usize..20, -2i64..=3), 0..4)) {
        let curve = Curve::elliptic_i64(5, 1, 1).unwrap();
        let d = divisor(&curve, &terms);
        let basis = riemann_roch_space(&d).unwrap();
        let expected = if d.degree() > 0 { d.degree() } else if d.degree() < 0 { 0 } else { basis.len() as i64 };
        prop_assert_eq!(basis.len() as i64, expected);
        prop_assert!(basis.len() <= 1 || d.degree() != 0);
        for f in &basis {
            let effective = f.principal_divisor().unwrap().try_add(&d).unwrap();
            prop_assert!(effective.is_effective(), "div {} + D not effective", f);
        }
    }

    #[test]
    fn group_law(i in 0usize..36, j in 0usize..36, k in 0usize..36) {
        let e = e31();
        let pts = e.rational_points().unwrap();
        prop_assert_eq!(pts.len(), 36);
        let (a, b, c) = (&pts[i], &pts[j], &pts[k]);
        let ab = e.add_points(a, b).unwrap();
        prop_assert!(e.contains(&ab));
        prop_assert_eq!(&ab, &e.add_points(b, a).unwrap());
        prop_assert_eq!(e.add_points(&ab, c).unwrap(), e.add_points(a, &e.add_points(b, c).unwrap()).unwrap());
        prop_assert_eq!(e.add_points(a, &e.negate(a).unwrap()).unwrap(), Point::Infinity);
    }

    #[test]
    fn scalar_multiples_match_repeated_addition(i in 0usize..36, n in -8i64..=8) {
        let e = e31();
        let p = &e.rational_points().unwrap()[i];
        let mut acc = Point::Infinity;
        for _ in 0..n.abs() {
            acc = e.add_points(&acc, p).unwrap();
        }
        if n < 0 {
            acc = e.negate(&acc).unwrap();
        }
        prop_assert_eq!(e.scalar_multiple(n, p).unwrap(), acc);
    }

    #[test]
    fn torsion_matches_brute_force(l in 1i64..=6) {
        let e = e31();
        let brute: Vec<Point> = e
            .rational_points()
            .unwrap()
            .into_iter()
            .filter(|p| e.scalar_multiple(l, p).unwrap().is_infinity())
            .collect();
        let mut found = e.torsion_points(l).unwrap();
        found.sort();
        let mut brute = brute;
        brute.sort();
        prop_assert_eq!(found, brute);
    }

    #[test]
    fn point_places_are_rational(i in 0usize..36) {
        let e = e31();
        let p = &e.rational_points().unwrap()[i];
        let place = e.point_place(p).unwrap();
        prop_assert_eq!(place.degree(), 1);
        if let (Some(x), Some(_)) = (p.x(), p.y()) {
            let h = &Function::x(&e) - &Function::constant(&e, x.clone());
            prop_assert!(h.valuation(&place).unwrap() >= 1);
        }
    }
}
