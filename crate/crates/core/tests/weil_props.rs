use adele_forge::curve::{Curve, Divisor, Point};
use adele_forge::signs::SignConventions;
use adele_forge::weil::{massey_triple_curve, miller_function, weil_pairing_idelic, weil_pairing_miller, TorsionClass};
use proptest::prelude::*;

fn e31() -> Curve {
    Curve::elliptic_i64(31, 0, 1).unwrap()
}

fn torsion(curve: &Curve, l: i64) -> Vec<Point> {
    curve.torsion_points(l).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn miller_chains_have_the_declared_divisor(i in 0usize..9, r in 0usize..36, l in 2i64..=3) {
        let e = e31();
        let pts = torsion(&e, l);
        let p = &pts[i % pts.len()];
        let offset = &e.rational_points().unwrap()[r];
        let f = miller_function(&e, p, l, offset).unwrap();
        let pr = e.add_points(p, offset).unwrap();
        let expected = Divisor::from_terms(&e, [(e.point_place(&pr).unwrap(), l), (e.point_place(offset).unwrap(), -l)]).unwrap();
        prop_assert_eq!(f.divisor(), &expected);
        prop_assert_eq!(&f.expand().unwrap().principal_divisor().unwrap(), &expected);
    }

    #[test]
    fn pairing_is_bilinear_and_alternating(i in 0usize..9, j in 0usize..9, a in -4i64..=4, b in -4i64..=4) {
        let e = e31();
        let pts = torsion(&e, 3);
        let (p, q) = (&pts[i], &pts[j]);
        let base = weil_pairing_idelic(&e, p, q, 3).unwrap();
        prop_assert!(base.value.pow(3).is_one());
        let scaled = weil_pairing_idelic(&e, &e.scalar_multiple(a, p).unwrap(), &e.scalar_multiple(b, q).unwrap(), 3).unwrap();
        prop_assert_eq!(scaled.value, base.value.powi(a * b).unwrap());
        let swapped = weil_pairing_idelic(&e, q, p, 3).unwrap();
        prop_assert!((&swapped.value * &base.value).is_one());
        prop_assert!(weil_pairing_idelic(&e, p, p, 3).unwrap().value.is_one());
        prop_assert_eq!(base, weil_pairing_miller(&e, p, q, 3).unwrap());
    }

    #[test]
    fn massey_image_ignores_the_representatives(i in 1usize..9, j in 1usize..9, s in 0usize..36, r in 0usize..36) {
        let e = e31();
        let pts = torsion(&e, 3);
        let offsets = e.rational_points().unwrap();
        let alpha = TorsionClass::from_point(&e, &pts[i], 3, &offsets[s]).unwrap();
        let beta = TorsionClass::from_point(&e, &pts[j], 3, &offsets[r]).unwrap();
        let Ok(m) = massey_triple_curve(&alpha, &beta, 3) else { return Ok(()) };
        let w = weil_pairing_miller(&e, &pts[i], &pts[j], 3).unwrap();
        prop_assert_eq!(m.direct_image, w.value.powi(SignConventions::RESOLVED.massey_exponent).unwrap());
    }

    #[test]
    fn two_torsion_pairing_is_a_sign(i in 0usize..4, j in 0usize..4) {
        let e = Curve::elliptic_i64(5, -1, 0).unwrap();
        let pts = torsion(&e, 2);
        let w = weil_pairing_idelic(&e, &pts[i], &pts[j], 2).unwrap();
        let minus_one = e.field().from_i64(-1);
        prop_assert!(w.value.is_one() || w.value == minus_one);
        prop_assert_eq!(w.value.is_one(), i == j || pts[i].is_infinity() || pts[j].is_infinity());
    }
}
