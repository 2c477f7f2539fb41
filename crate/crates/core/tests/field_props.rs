use adele_forge::field::{
    factor_polynomial, factor_polynomial_seeded, minimal_polynomial, roots, FieldElement, FieldSpec, Polynomial,
};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = FieldSpec> {
    (prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), 1usize..=3).prop_map(|(p, k)| {
        if k == 1 {
            FieldSpec::prime(p).unwrap()
        } else {
            FieldSpec::canonical_extension(p, k).unwrap()
        }
    })
}

fn element(k: &FieldSpec, raw: &[u64]) -> FieldElement {
    let p = k.characteristic();
    let coeffs: Vec<u64> = raw.iter().take(k.degree()).map(|c| c % p).collect();
    k.element(&coeffs).unwrap()
}

fn with_elements(n: usize) -> impl Strategy<Value = (FieldSpec, Vec<FieldElement>)> {
    (field(), prop::collection::vec(prop::collection::vec(any::<u64>(), 3), n)).prop_map(|(k, raws)| {
        let elems = raws.iter().map(|r| element(&k, r)).collect();
        (k, elems)
    })
}

fn prime_poly() -> impl Strategy<Value = Polynomial> {
    (prop::sample::select(vec![2u64, 3, 5, 7]), prop::collection::vec(any::<u64>(), 1..=10), 1u64..100).prop_map(
        |(p, mut raw, lead)| {
            let k = FieldSpec::prime(p).unwrap();
            raw.push(lead % (p - 1) + 1);
            Polynomial::from_u64(&k, &raw.iter().map(|c| c % p).collect::<Vec<_>>())
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_axioms((_, e) in with_elements(3)) {
        let (a, b, c) = (&e[0], &e[1], &e[2]);
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(&(a - b) + b, a.clone());
    }

    #[test]
    fn division_inverts_multiplication((_, e) in with_elements(2)) {
        let (a, b) = (&e[0], &e[1]);
        prop_assume!(!b.is_zero());
        prop_assert!((b * &b.inv().unwrap()).is_one());
        prop_assert_eq!(&(a / b) * b, a.clone());
        prop_assert_eq!(b.powi(-3).unwrap(), b.inv().unwrap().pow(3));
    }

    #[test]
    fn every_element_is_fixed_by_the_field_order((k, e) in with_elements(1)) {
        let a = &e[0];
        prop_assert_eq!(a.pow_u128(k.order()), a.clone());
        let mut f = a.clone();
        for _ in 0..k.degree() {
            f = f.frobenius();
        }
        prop_assert_eq!(f, a.clone());
    }

    #[test]
    fn norm_is_multiplicative((_, e) in with_elements(2)) {
        let (a, b) = (&e[0], &e[1]);
        prop_assert_eq!((a * b).norm_to_prime_field(), &a.norm_to_prime_field() * &b.norm_to_prime_field());
    }

    #[test]
    fn minimal_polynomial_annihilates((k, e) in with_elements(1)) {
        let a = &e[0];
        let m = minimal_polynomial(a);
        prop_assert!(m.is_monic() && m.is_irreducible());
        prop_assert!(m.lift_to(&k).eval(a).is_zero());
        prop_assert_eq!(m.degree(), Some(a.orbit_size()));
    }

    #[test]
    fn square_roots_match_brute_force((k, e) in with_elements(1)) {
        let a = &e[0];
        let brute = k.elements().iter().any(|s| &(s * s) == a);
        match a.sqrt() {
            Some(s) => prop_assert_eq!(&(&s * &s), a),
            None => prop_assert!(!brute),
        }
        prop_assert_eq!(a.is_square(), brute);
    }

    #[test]
    fn factorization_reassembles_into_irreducibles(f in prime_poly(), s1: u64, s2: u64) {
        let fac = factor_polynomial(&f).unwrap();
        prop_assert_eq!(fac.reassemble(), f.clone());
        for (g, m) in &fac.factors {
            prop_assert!(g.is_monic() && g.is_irreducible() && *m >= 1);
        }
        let mut sorted = fac.factors.clone();
        sorted.sort();
        prop_assert_eq!(&sorted, &fac.factors);
        prop_assert_eq!(&factor_polynomial_seeded(&f, s1).unwrap().factors, &fac.factors);
        prop_assert_eq!(&factor_polynomial_seeded(&f, s2).unwrap().factors, &fac.factors);
    }

    #[test]
    fn roots_match_brute_force(f in prime_poly()) {
        let k = f.field().clone();
        let brute: Vec<FieldElement> = k.elements().into_iter().filter(|x| f.eval(x).is_zero()).collect();
        let mut found = roots(&f).unwrap();
        found.sort();
        found.dedup();
        prop_assert_eq!(found, brute);
    }

    #[test]
    fn gcd_divides_both(f in prime_poly(), g in prime_poly()) {
        prop_assume!(f.field() == g.field());
        let d = f.gcd(&g);
        prop_assert!(f.rem(&d).unwrap().is_zero() && g.rem(&d).unwrap().is_zero());
        let (q, r) = f.divrem(&g).unwrap();
        prop_assert_eq!(&(&q * &g) + &r, f.clone());
    }
}
