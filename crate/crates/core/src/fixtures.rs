//! Seeded input generators shared by the self-check, the examples and the tests.
//!
//! Everything here produces inputs only; expected values are computed by the
//! callers from independent oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{Curve, Divisor, Function, Place, Point};
use crate::error::Result;
use crate::field::{FieldSpec, Polynomial, RationalFunction};
use crate::milnor::MilnorSymbol;
use crate::surface::{FactoredFunction, MultiPoly, PlaneCurve, ProjectivePoint, SurfaceDivisor, SurfaceSymbol};
use crate::weil::miller_function;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_poly(field: &FieldSpec, rng: &mut ChaCha8Rng, max_deg: usize) -> Polynomial {
    let p = field.characteristic();
    loop {
        let deg = rng.gen_range(0..=max_deg);
        let coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
        let poly = Polynomial::from_u64(field, &coeffs);
        if !poly.is_zero() {
            return poly;
        }
    }
}

/// A nonzero rational function of t with numerator and denominator of degree ≤ `max_deg`.
pub fn random_p1_function(curve: &Curve, rng: &mut ChaCha8Rng, max_deg: usize) -> Result<Function> {
    let k = curve.field();
    let num = random_poly(k, rng, max_deg);
    let den = random_poly(k, rng, max_deg);
    Ok(Function::rational(curve, RationalFunction::new(num, den)?))
}

/// A symbol with one to three entries of random rational functions on P¹.
pub fn random_p1_symbol(curve: &Curve, rng: &mut ChaCha8Rng) -> Result<MilnorSymbol> {
    let n = rng.gen_range(1..=3);
    let mut entries = Vec::with_capacity(n);
    for _ in 0..n {
        let f = random_p1_function(curve, rng, 3)?;
        let g = random_p1_function(curve, rng, 3)?;
        entries.push((f, g, rng.gen_range(-2i64..=2)));
    }
    MilnorSymbol::from_entries(curve, entries)
}

/// Divisors of degree in [−6, 6] spread over rational and higher-degree places.
pub fn rr_divisors(curve: &Curve, count: usize, seed: u64) -> Result<Vec<Divisor>> {
    let mut rng = rng(seed);
    let places = small_places(curve)?;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut d = Divisor::zero(curve);
        for _ in 0..rng.gen_range(1..=3) {
            let place = places[rng.gen_range(0..places.len())].clone();
            let deg = place.degree() as i64;
            let n = rng.gen_range(-3i64..=3);
            if (d.degree() + n * deg).abs() <= 6 {
                d = d.try_add(&Divisor::single(curve, place, n)?)?;
            }
        }
        out.push(d);
    }
    Ok(out)
}

/// Rational places plus a few of degree two.
pub fn small_places(curve: &Curve) -> Result<Vec<Place>> {
    let k = curve.field();
    let mut out = Vec::new();
    if curve.is_elliptic() {
        for pt in curve.rational_points()? {
            out.push(curve.point_place(&pt)?);
        }
    } else {
        out.push(Place::Infinity);
        for a in k.elements() {
            out.push(Place::rational(&a));
        }
    }
    let p = k.characteristic();
    let mut quadratics = 0;
    'outer: for b in 0..p {
        for c in 1..p {
            let pi = Polynomial::from_u64(k, &[c, b, 1]);
            if crate::field::roots(&pi)?.is_empty() {
                for place in curve.places_over(&pi) {
                    if place.degree() == 2 {
                        out.push(place);
                        quadratics += 1;
                    }
                }
                if quadratics >= 2 {
                    break 'outer;
                }
            }
        }
    }
    Ok(out)
}

/// The two main pairing curves, both with full rational 2- and 3-torsion.
pub fn pairing_curves() -> Result<Vec<Curve>> {
    Ok(vec![Curve::elliptic_i64(31, 0, 1)?, Curve::elliptic_i64(43, 0, 1)?])
}

/// Symbols {f, g} whose entries are expanded Miller functions on an elliptic curve.
pub fn miller_symbols(curve: &Curve, l: i64, count: usize) -> Result<Vec<MilnorSymbol>> {
    let torsion: Vec<Point> = curve.torsion_points(l)?.into_iter().filter(|p| !p.is_infinity()).collect();
    let offsets = curve.rational_points()?;
    let mut functions = Vec::new();
    'outer: for p in &torsion {
        for r in &offsets {
            let f = miller_function(curve, p, l, r)?.expand()?;
            if f.constant_value().is_none() {
                functions.push(f);
            }
            if functions.len() >= 2 * count {
                break 'outer;
            }
        }
    }
    let n = functions.len();
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let f = &functions[i % n];
        let g = &functions[(3 * i + 1) % n];
        out.push(MilnorSymbol::pair(f, g)?);
    }
    Ok(out)
}

/// Named pairs of divisors on P² over GF(7).
pub fn intersection_suite() -> Result<Vec<(String, SurfaceDivisor, SurfaceDivisor)>> {
    let k = FieldSpec::prime(7)?;
    let line = |c: [i64; 3]| PlaneCurve::line(&k, c);
    let curve = |t: &[(i64, [u32; 3])]| PlaneCurve::from_i64(&k, t);
    let one = |c: PlaneCurve| SurfaceDivisor::curve(&c);

    let tangent_conic = curve(&[(1, [0, 1, 1]), (-1, [2, 0, 0])])?;
    let inert_conic = curve(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (-3, [0, 0, 2])])?;
    let second_conic = curve(&[(1, [1, 1, 0]), (1, [0, 0, 2]), (2, [2, 0, 0])])?;
    let osculating = curve(&[(1, [0, 1, 1]), (-1, [2, 0, 0]), (1, [0, 2, 0])])?;
    let cubic = curve(&[(1, [0, 2, 1]), (-1, [3, 0, 0]), (-2, [0, 0, 3])])?;

    let mut out = vec![
        ("two coordinate lines".to_string(), one(line([1, 0, 0])?), one(line([0, 1, 0])?)),
        ("tangent line to a conic".into(), one(tangent_conic.clone()), one(line([0, 1, 0])?)),
        ("line meeting a conic in a GF(49) point".into(), one(line([0, 1, 0])?), one(inert_conic.clone())),
        ("two conics".into(), one(tangent_conic.clone()), one(second_conic.clone())),
        ("osculating conics".into(), one(tangent_conic.clone()), one(osculating)),
        (
            "weighted lines against a line".into(),
            SurfaceDivisor::new(&k, [(line([1, 0, 0])?, 2), (line([0, 1, 0])?, 1)])?,
            one(line([1, 1, 1])?),
        ),
        ("cubic against a line".into(), one(cubic.clone()), one(line([1, 0, 0])?)),
        ("cubic against a conic".into(), one(cubic.clone()), one(second_conic.clone())),
        (
            "difference of lines against a conic".into(),
            SurfaceDivisor::new(&k, [(line([1, -1, 0])?, 1), (line([0, 0, 1])?, -1)])?,
            one(inert_conic),
        ),
        ("line against a cubic at a flex".into(), one(line([0, 0, 1])?), one(cubic)),
        ("generic lines".into(), one(line([1, 2, 3])?), one(line([3, 1, 5])?)),
    ];
    out.push((
        "conic sum against a line".into(),
        SurfaceDivisor::new(&k, [(tangent_conic, 1), (second_conic, 2)])?,
        one(line([1, 3, 1])?),
    ));
    Ok(out)
}

fn element_value(k: &FieldSpec, n: i64) -> i64 {
    k.from_i64(n).coefficients()[0] as i64
}

/// Lines through the rational point (x0 : x1 : 1).
fn line_through(k: &FieldSpec, rng: &mut ChaCha8Rng, x0: i64, x1: i64) -> Result<PlaneCurve> {
    let p = k.characteristic() as i64;
    loop {
        let a = rng.gen_range(0..p);
        let b = rng.gen_range(0..p);
        if a == 0 && b == 0 {
            continue;
        }
        let c = element_value(k, -(a * x0 + b * x1));
        return PlaneCurve::line(k, [a, b, c]);
    }
}

fn random_line(k: &FieldSpec, rng: &mut ChaCha8Rng) -> Result<PlaneCurve> {
    let p = k.characteristic() as i64;
    loop {
        let c = [rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..p)];
        if c != [0, 0, 0] {
            return PlaneCurve::line(k, c);
        }
    }
}

/// A degree-zero function built from the given curves and a random line.
fn ratio(k: &FieldSpec, rng: &mut ChaCha8Rng, curves: &[PlaneCurve]) -> Result<FactoredFunction> {
    let mut forms: Vec<(MultiPoly, i64)> = Vec::new();
    let mut deg = 0i64;
    for c in curves {
        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
        forms.push((c.form().clone(), e));
        deg += e * c.degree() as i64;
    }
    let base = random_line(k, rng)?;
    forms.push((base.form().clone(), -deg));
    FactoredFunction::from_forms(k, &forms)
}

/// Symbols on P²/GF(7) whose support passes through a chosen rational point,
/// together with that point. Every support curve is smooth there.
pub fn parshin_symbols(count: usize, seed: u64) -> Result<Vec<(SurfaceSymbol, ProjectivePoint)>> {
    let k = FieldSpec::prime(7)?;
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (x0, x1) = (rng.gen_range(0..7i64), rng.gen_range(0..7i64));
        let x = ProjectivePoint::rational(&k, [x0, x1, 1])?;
        let mut through = Vec::new();
        for _ in 0..3 {
            through.push(line_through(&k, &mut rng, x0, x1)?);
        }
        // L1·L2 − L3² with L1, L3 through x and L2 not: smooth at x
        let l2 = random_line(&k, &mut rng)?;
        let conic_form = &(through[0].form() * l2.form()) - &through[2].form().pow(2);
        if let Ok((_, conic)) = PlaneCurve::with_scalar(&conic_form) {
            if conic.degree() == 2 && conic.is_smooth_at(&x) {
                through.push(conic);
            }
        }
        let f = ratio(&k, &mut rng, &through[..2])?;
        let g = ratio(&k, &mut rng, &through[1..])?;
        let extra = random_line(&k, &mut rng)?;
        let h = ratio(&k, &mut rng, &[through[0].clone(), extra])?;
        let mut entries = vec![(f.clone(), g, 1), (h, f, rng.gen_range(-2i64..=2))];
        entries.retain(|(_, _, e)| *e != 0);
        let s = SurfaceSymbol::from_entries(&k, entries)?;
        let smooth = s.support().iter().all(|c| !c.contains(&x) || c.is_smooth_at(&x));
        if smooth {
            out.push((s, x));
        }
    }
    Ok(out)
}

/// Random symbols of products of lines and a smooth conic, for dlog bounds.
pub fn dlog2_symbols(count: usize, seed: u64) -> Result<Vec<SurfaceSymbol>> {
    let k = FieldSpec::prime(7)?;
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    let conic = PlaneCurve::from_i64(&k, &[(1, [1, 1, 0]), (1, [0, 0, 2]), (2, [2, 0, 0])])?;
    for _ in 0..count {
        let mut curves = vec![random_line(&k, &mut rng)?, random_line(&k, &mut rng)?];
        if rng.gen_bool(0.3) {
            curves.push(conic.clone());
        }
        let f = ratio(&k, &mut rng, &curves[..1])?;
        let g = ratio(&k, &mut rng, &curves[1..])?;
        out.push(SurfaceSymbol::pair(&f, &g)?);
    }
    Ok(out)
}
