use adele_forge::curve::{Curve, Function, Place};
use adele_forge::field::FieldSpec;
use adele_forge::fixtures::{self, small_places};
use adele_forge::milnor::{dlog_k1, form_residue, gersten_boundary, tame_symbol, weil_reciprocity_check, MilnorSymbol};
use proptest::prelude::*;

fn p1() -> Curve {
    Curve::projective_line(&FieldSpec::prime(7).unwrap()).unwrap()
}

fn functions(seed: u64, n: usize) -> Vec<Function> {
    let curve = p1();
    let mut rng = fixtures::rng(seed);
    (0..n).map(|_| fixtures::random_p1_function(&curve, &mut rng, 3).unwrap()).collect()
}

fn places_of(fs: &[&Function]) -> Vec<Place> {
    let mut out: Vec<Place> = fs.iter().flat_map(|f| f.support_places().unwrap()).collect();
    out.extend(small_places(fs[0].curve()).unwrap());
    out.sort();
    out.dedup();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reciprocity_on_the_line(seed: u64) {
        let curve = p1();
        let mut rng = fixtures::rng(seed);
        let s = fixtures::random_p1_symbol(&curve, &mut rng).unwrap();
        prop_assert!(weil_reciprocity_check(&s).unwrap().is_one());
    }

    #[test]
    fn reciprocity_on_an_elliptic_curve(a in prop::collection::vec(-3i64..=3, 1..=3), b in prop::collection::vec(-3i64..=3, 1..=3), c in -3i64..=3) {
        let e = Curve::elliptic_i64(5, 1, 1).unwrap();
        let x = Function::x(&e);
        let y = Function::y(&e).unwrap();
        let poly = |cs: &[i64]| cs.iter().rev().fold(Function::from_i64(&e, 0), |acc, k| &(&acc * &x) + &Function::from_i64(&e, *k));
        let f = &poly(&a) + &(&y * &Function::from_i64(&e, c));
        let g = poly(&b);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let s = MilnorSymbol::pair(&f, &g).unwrap();
        prop_assert!(weil_reciprocity_check(&s).unwrap().is_one());
    }

    #[test]
    fn tame_symbol_is_bimultiplicative(seed: u64) {
        let fs = functions(seed, 3);
        let (f1, f2, g) = (&fs[0], &fs[1], &fs[2]);
        let joint = MilnorSymbol::pair(&(f1 * f2), g).unwrap();
        let split = MilnorSymbol::pair(f1, g).unwrap().times(&MilnorSymbol::pair(f2, g).unwrap()).unwrap();
        for v in places_of(&[f1, f2, g]) {
            prop_assert_eq!(tame_symbol(&joint, &v).unwrap(), tame_symbol(&split, &v).unwrap(), "at {}", v);
        }
    }

    #[test]
    fn tame_symbol_is_antisymmetric(seed: u64) {
        let fs = functions(seed, 2);
        let (f, g) = (&fs[0], &fs[1]);
        let both = MilnorSymbol::pair(f, g).unwrap().times(&MilnorSymbol::pair(g, f).unwrap()).unwrap();
        prop_assert!(gersten_boundary(&both).unwrap().is_empty());
        let square = MilnorSymbol::pair(f, f).unwrap();
        let minus_one = MilnorSymbol::pair(f, &Function::from_i64(f.curve(), -1)).unwrap();
        prop_assert_eq!(gersten_boundary(&square).unwrap(), gersten_boundary(&minus_one).unwrap());
    }

    #[test]
    fn steinberg_symbols_have_trivial_boundary(seed: u64) {
        let f = functions(seed, 1).remove(0);
        let g = &Function::one(f.curve()) - &f;
        prop_assume!(!g.is_zero() && f.constant_value().is_none());
        prop_assert!(gersten_boundary(&MilnorSymbol::pair(&f, &g).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn dlog_residue_is_the_valuation(seed: u64) {
        let f = functions(seed, 1).remove(0);
        prop_assume!(f.constant_value().is_none());
        let w = dlog_k1(&f).unwrap();
        let k = f.curve().field();
        let mut sum = k.zero();
        for v in places_of(&[&f]) {
            let r = form_residue(&w, &v).unwrap();
            if v.degree() == 1 {
                prop_assert_eq!(&r, &k.from_i64(f.valuation(&v).unwrap()), "at {}", v);
            }
            sum = &sum + &r;
        }
        prop_assert!(sum.is_zero());
    }
}
