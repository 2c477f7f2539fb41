use adele_forge::field::FieldSpec;
use adele_forge::fixtures;
use adele_forge::surface::{
    dlog2_pole_check, fulton_multiplicity, intersection_number, parshin_point_reciprocity, surface_product_cycle,
    MultiPoly, Multiplicity, PlaneCurve, SurfaceDivisor,
};
use proptest::prelude::*;

fn k7() -> FieldSpec {
    FieldSpec::prime(7).unwrap()
}

fn line() -> impl Strategy<Value = [i64; 3]> {
    [0i64..7, 0i64..7, 0i64..7].prop_filter("nonzero", |c| c.iter().any(|x| *x != 0))
}

fn conic() -> PlaneCurve {
    PlaneCurve::from_i64(&k7(), &[(1, [1, 1, 0]), (1, [0, 0, 2]), (2, [2, 0, 0])]).unwrap()
}

fn distinct_lines(cs: &[[i64; 3]]) -> Option<Vec<PlaneCurve>> {
    let lines: Vec<PlaneCurve> = cs.iter().map(|c| PlaneCurve::line(&k7(), *c).unwrap()).collect();
    for i in 0..lines.len() {
        for j in 0..i {
            if lines[i] == lines[j] {
                return None;
            }
        }
    }
    Some(lines)
}

fn bivariate(terms: &[(i64, [u32; 2])]) -> MultiPoly {
    let owned: Vec<(i64, Vec<u32>)> = terms.iter().map(|(c, e)| (*c, e.to_vec())).collect();
    let borrowed: Vec<(i64, &[u32])> = owned.iter().map(|(c, e)| (*c, e.as_slice())).collect();
    MultiPoly::from_i64(&k7(), 2, &borrowed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn distinct_lines_meet_once(a in line(), b in line()) {
        let Some(ls) = distinct_lines(&[a, b]) else { return Ok(()) };
        let (d1, d2) = (SurfaceDivisor::curve(&ls[0]), SurfaceDivisor::curve(&ls[1]));
        prop_assert_eq!(intersection_number(&d1, &d2).unwrap(), 1);
        let cycle = surface_product_cycle(&d1, &d2).unwrap();
        let nonzero: Vec<_> = cycle.iter().filter(|(_, m)| **m != 0).collect();
        prop_assert_eq!(nonzero.len(), 1);
        prop_assert_eq!(nonzero[0].0.degree(), 1);
        prop_assert_eq!(*nonzero[0].1, 1);
    }

    #[test]
    fn lines_meet_a_conic_twice(a in line()) {
        let l = SurfaceDivisor::curve(&PlaneCurve::line(&k7(), a).unwrap());
        let c = SurfaceDivisor::curve(&conic());
        prop_assert_eq!(intersection_number(&l, &c).unwrap(), 2);
        prop_assert_eq!(intersection_number(&c, &l).unwrap(), 2);
        let weighted: i64 = surface_product_cycle(&l, &c).unwrap().iter().map(|(x, m)| x.degree() as i64 * m).sum();
        prop_assert_eq!(weighted, 2);
    }

    #[test]
    fn intersection_is_bilinear(a in line(), b in line(), c in line(), m in -2i64..=2, n in -2i64..=2) {
        let Some(ls) = distinct_lines(&[a, b, c]) else { return Ok(()) };
        let k = k7();
        let d1 = SurfaceDivisor::new(&k, [(ls[0].clone(), m), (ls[1].clone(), n)]).unwrap();
        prop_assume!(!d1.is_zero());
        let d2 = SurfaceDivisor::new(&k, [(ls[2].clone(), 1), (conic(), 1)]).unwrap();
        prop_assert_eq!(intersection_number(&d1, &d2).unwrap(), 3 * (m + n));
        let split = intersection_number(&SurfaceDivisor::curve(&ls[0]), &d2).unwrap() * m
            + intersection_number(&SurfaceDivisor::curve(&ls[1]), &d2).unwrap() * n;
        prop_assert_eq!(intersection_number(&d1, &d2).unwrap(), split);
    }

    #[test]
    fn parshin_sums_vanish(seed: u64) {
        for (s, x) in fixtures::parshin_symbols(2, seed).unwrap() {
            prop_assert_eq!(parshin_point_reciprocity(&s, &x).unwrap(), 0);
        }
    }

    #[test]
    fn dlog_two_forms_have_simple_poles(seed: u64) {
        for s in fixtures::dlog2_symbols(3, seed).unwrap() {
            prop_assert!(dlog2_pole_check(&s).unwrap() <= 1);
        }
    }

    #[test]
    fn fulton_counts_contact_order(n in 1u32..=6, c in 1i64..7) {
        // y against y − c·x^n meets the origin with multiplicity n
        let f = bivariate(&[(1, [0, 1])]);
        let g = bivariate(&[(1, [0, 1]), (-c, [n, 0])]);
        let origin = [k7().zero(), k7().zero()];
        prop_assert_eq!(fulton_multiplicity(&f, &g, &origin).unwrap(), Multiplicity::Finite(n as u64));
        prop_assert_eq!(fulton_multiplicity(&g, &f, &origin).unwrap(), Multiplicity::Finite(n as u64));
        prop_assert_eq!(fulton_multiplicity(&f, &f, &origin).unwrap(), Multiplicity::Infinite);
    }

    #[test]
    fn fulton_ignores_multiples_of_the_other_curve(a in 0i64..7, b in 0i64..7, e in 0u32..3) {
        let f = bivariate(&[(1, [0, 2]), (-1, [3, 0]), (-1, [2, 0])]);
        let g = bivariate(&[(1, [0, 1]), (-2, [1, 0])]);
        let h = bivariate(&[(a, [e, 0]), (b, [0, 1])]);
        let shifted = &g + &(&h * &f);
        let origin = [k7().zero(), k7().zero()];
        prop_assert_eq!(fulton_multiplicity(&f, &g, &origin).unwrap(), fulton_multiplicity(&f, &shifted, &origin).unwrap());
    }
}
