use adele_forge::adelic::{
    adelic_differential, cochain_product, cochain_sum, cohomology_dims, divisor_cocycle, nu_curve, AdeleCochain,
    Coefficients, Component,
};
use adele_forge::curve::{riemann_roch_space, Curve, Divisor};
use adele_forge::field::FieldSpec;
use adele_forge::fixtures::{self, small_places};
use proptest::prelude::*;

fn curves() -> [Curve; 2] {
    [Curve::projective_line(&FieldSpec::prime(5).unwrap()).unwrap(), Curve::elliptic_i64(5, 1, 1).unwrap()]
}

fn divisor(curve: &Curve, terms: &[(usize, i64)]) -> Divisor {
    let places = small_places(curve).unwrap();
    let mut d = Divisor::zero(curve);
    for (i, n) in terms {
        d = d.try_add(&Divisor::single(curve, places[i % places.len()].clone(), *n).unwrap()).unwrap();
    }
    d
}

fn terms() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..16, -2i64..=2), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cohomology_obeys_riemann_roch_and_duality(t in terms(), which in 0usize..2) {
        let curve = &curves()[which];
        let d = divisor(curve, &t);
        let r = cohomology_dims(curve, &d).unwrap();
        prop_assert!(r.satisfies_riemann_roch(&d));
        let dual = riemann_roch_space(&curve.canonical_divisor().try_sub(&d).unwrap()).unwrap().len();
        prop_assert_eq!(r.h1, dual);
        prop_assert_eq!(r.h0, r.basis.len());
    }

    #[test]
    fn cohomology_grows_with_the_divisor(t in terms(), i in 0usize..16, which in 0usize..2) {
        let curve = &curves()[which];
        let d = divisor(curve, &t);
        let bigger = divisor(curve, &[t.clone(), vec![(i, 1)]].concat());
        let (a, b) = (cohomology_dims(curve, &d).unwrap(), cohomology_dims(curve, &bigger).unwrap());
        prop_assert!(a.h0 <= b.h0 && b.h1 <= a.h1);
    }

    #[test]
    fn nu_recovers_divisors(t in terms(), u in terms(), which in 0usize..2) {
        let curve = &curves()[which];
        let (d1, d2) = (divisor(curve, &t), divisor(curve, &u));
        let c1 = divisor_cocycle(&d1).unwrap();
        prop_assert!(adelic_differential(&c1).unwrap().is_zero());
        prop_assert_eq!(nu_curve(&c1).unwrap().to_divisor(curve).unwrap(), d1.clone());
        let sum = cochain_sum(&c1, &divisor_cocycle(&d2).unwrap()).unwrap();
        prop_assert_eq!(nu_curve(&sum).unwrap().to_divisor(curve).unwrap(), d1.try_add(&d2).unwrap());
    }

    #[test]
    fn differential_squares_to_zero(seed: u64) {
        let curve = Curve::projective_line(&FieldSpec::prime(7).unwrap()).unwrap();
        let mut rng = fixtures::rng(seed);
        let f = fixtures::random_p1_function(&curve, &mut rng, 3).unwrap();
        let g = fixtures::random_p1_function(&curve, &mut rng, 3).unwrap();
        let cf = AdeleCochain::diagonal(&curve, Coefficients::Milnor(1), Component::Function(f)).unwrap();
        let cg = AdeleCochain::diagonal(&curve, Coefficients::Milnor(1), Component::Function(g)).unwrap();
        prop_assert!(adelic_differential(&cf).unwrap().is_zero());
        let product = cochain_product(&cf, &cg).unwrap();
        prop_assert!(adelic_differential(&product).unwrap().is_zero());
        let dd = adelic_differential(&adelic_differential(&product).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
    }
}
