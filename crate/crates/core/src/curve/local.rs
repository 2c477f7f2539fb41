//! Laurent expansions of functions at places, in a fixed uniformizer s:
//!
//! * P¹, finite place with root t₀ in k(v): s = t − t₀
//! * P¹, infinity: s = 1/t
//! * elliptic point with y₀ ≠ 0: s = x − x₀
//! * elliptic point with y₀ = 0: s = y
//! * elliptic origin: s = x/y

use super::{Curve, Function, Place};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, Polynomial, RationalFunction, Series};

const MAX_PRECISION: i64 = 1 << 14;

/// Expansions of the coordinate functions at a place.
pub(crate) struct LocalCoordinates {
    pub field: FieldSpec,
    pub x: Series,
    pub y: Option<Series>,
}

/// Coordinates at `place` with `n` significant terms each.
pub(crate) fn coordinates(curve: &Curve, place: &Place, n: i64) -> LocalCoordinates {
    let k = curve.residue_field(place);
    let one = k.one();
    match place {
        Place::Finite(_) => {
            let t0 = curve.place_root(place).expect("finite place");
            let x = Series::from_poly(&Polynomial::new(&k, vec![t0, one]), n);
            LocalCoordinates { field: k, x, y: None }
        }
        Place::Infinity => LocalCoordinates { x: Series::monomial(one, -1, n - 1), field: k, y: None },
        Place::Point { x, y, .. } if y.is_zero() => {
            let r = two_torsion_branch(curve, x, n + 2);
            let xs = Series::constant(x.clone(), n + 2).add(&r);
            LocalCoordinates { x: xs, y: Some(Series::monomial(one, 1, n + 1)), field: k }
        }
        Place::Point { x, y, .. } => {
            let xs = Series::from_poly(&Polynomial::new(&k, vec![x.clone(), one]), n);
            let ys = sqrt_branch(curve, x, y, n);
            LocalCoordinates { x: xs, y: Some(ys), field: k }
        }
        Place::Origin => {
            let (x, y) = origin_branch(curve, n);
            LocalCoordinates { x, y: Some(y), field: k }
        }
    }
}

/// y as a power series in s = x − x₀ with y(0) = y₀, from y² = F(x₀ + s).
fn sqrt_branch(curve: &Curve, x0: &FieldElement, y0: &FieldElement, n: i64) -> Series {
    let k = x0.field();
    let g = curve.rhs().lift_to(k).shift(x0);
    let n = n.max(1) as usize;
    let inv2y0 = (&k.from_u64(2) * y0).inv().expect("odd characteristic, y0 nonzero");
    let mut c = vec![y0.clone()];
    for m in 1..n {
        let mut acc = g.coeff(m);
        for i in 1..m {
            acc = &acc - &(&c[i] * &c[m - i]);
        }
        c.push(&acc * &inv2y0);
    }
    Series::from_coeffs(k, 0, c)
}

/// r(s) with x = x₀ + r(s), s = y, at a root x₀ of F.
fn two_torsion_branch(curve: &Curve, x0: &FieldElement, prec: i64) -> Series {
    let k = x0.field();
    let g = curve.rhs().lift_to(k).shift(x0);
    let c1_inv = g.coeff(1).inv().expect("simple root of the cubic");
    let c2 = g.coeff(2);
    let s2 = Series::monomial(k.one(), 2, prec);
    let mut r = s2.scale(&c1_inv);
    for _ in 0..(prec / 2 + 2) {
        let r2 = r.mul(&r);
        let r3 = r2.mul(&r);
        r = s2.sub(&r2.scale(&c2)).sub(&r3).scale(&c1_inv).truncate(prec);
    }
    r
}

/// x and y as Laurent series in t = x/y at the origin, via w = 1/y.
fn origin_branch(curve: &Curve, n: i64) -> (Series, Series) {
    let k = curve.field();
    let (a, b) = (curve.a(), curve.b());
    let prec = n + 3;
    let t = Series::monomial(k.one(), 1, prec);
    let t3 = Series::monomial(k.one(), 3, prec);
    let mut w = t3.clone();
    for _ in 0..(n / 2 + 2) {
        let w2 = w.mul(&w);
        let w3 = w2.mul(&w);
        w = t3.add(&t.mul(&w2).scale(&a)).add(&w3.scale(&b)).truncate(prec);
    }
    let y = w.inv().expect("w has valuation three");
    let x = t.mul(&y);
    (x, y)
}

fn eval_rational(r: &RationalFunction, x: &Series) -> Result<Series> {
    let num = Series::eval_poly(r.num(), x);
    if r.den().is_one() {
        return Ok(num);
    }
    let den = Series::eval_poly(r.den(), x);
    num.div(&den)
}

/// Expansion of f at the place with about `n` significant terms.
pub(crate) fn expand(f: &Function, place: &Place, n: i64) -> Result<Series> {
    let lc = coordinates(f.curve(), place, n);
    let a = eval_rational(f.a(), &lc.x)?;
    if f.b().is_zero() {
        return Ok(a);
    }
    let b = eval_rational(f.b(), &lc.x)?;
    let y = lc.y.expect("elliptic place");
    Ok(if f.a().is_zero() { b.mul(&y) } else { a.add(&b.mul(&y)) })
}

fn order_at_infinity(r: &RationalFunction) -> Option<i64> {
    (!r.is_zero()).then(|| r.den().degree_i64() - r.num().degree_i64())
}

/// Valuation from exact formulas where one applies, expansions otherwise.
pub(crate) fn exact_valuation(f: &Function, place: &Place) -> Option<i64> {
    match place {
        Place::Finite(pi) => f.a().valuation_at(pi).ok(),
        Place::Infinity => f.a().valuation_at_infinity().ok(),
        // v_O(x) = −2 and v_O(y) = −3: the two summands never tie
        Place::Origin => {
            let va = order_at_infinity(f.a()).map(|v| 2 * v);
            let vb = order_at_infinity(f.b()).map(|v| 2 * v - 3);
            match (va, vb) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            }
        }
        Place::Point { x, y, degree } => {
            let pi = crate::field::minimal_polynomial(x);
            let vn = f.norm().valuation_at(&pi).ok()?;
            if y.is_zero() {
                // ramified: v_P restricted to k(x) is 2·v_π and v_P(N f) = 2·v_P(f)
                Some(vn)
            } else if pi.degree() != Some(*degree) {
                // inert: the conjugate place is the place itself
                Some(vn / 2)
            } else {
                None
            }
        }
    }
}

/// (valuation, leading coefficient) by adaptive-precision expansion.
pub(crate) fn leading_term(f: &Function, place: &Place) -> Result<(i64, FieldElement)> {
    let hint = exact_valuation(f, place).unwrap_or(0).abs();
    let mut n = (hint + 4).max(8);
    loop {
        match expand(f, place, n) {
            Ok(s) => {
                if let (Some(v), Some(c)) = (s.valuation(), s.leading()) {
                    return Ok((v, c.clone()));
                }
            }
            Err(Error::Precision(_)) => {}
            Err(e) => return Err(e),
        }
        n *= 2;
        if n > MAX_PRECISION {
            return Err(Error::Precision(format!("expansion of {f} at {place}")));
        }
    }
}

/// Expansion with at least `rel` known significant terms.
pub(crate) fn expand_with_relative(f: &Function, place: &Place, rel: i64) -> Result<Series> {
    let hint = exact_valuation(f, place).unwrap_or(0).abs();
    let mut n = (hint + rel + 2).max(8);
    loop {
        match expand(f, place, n) {
            Ok(s) if s.valuation().is_some() && s.relative_prec() >= rel => return Ok(s),
            Ok(_) | Err(Error::Precision(_)) => {}
            Err(e) => return Err(e),
        }
        n *= 2;
        if n > MAX_PRECISION {
            return Err(Error::Precision(format!("expansion of {f} at {place}")));
        }
    }
}

pub(crate) fn valuation(f: &Function, place: &Place) -> Result<i64> {
    match exact_valuation(f, place) {
        Some(v) => Ok(v),
        None => Ok(leading_term(f, place)?.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_expansion_satisfies_equation() {
        let e = Curve::elliptic_i64(7, 3, 2).unwrap();
        let lc = coordinates(&e, &Place::Origin, 12);
        let y = lc.y.unwrap();
        let lhs = y.mul(&y);
        let rhs = Series::eval_poly(&e.rhs(), &lc.x);
        let diff = lhs.sub(&rhs);
        assert_eq!(diff.valuation(), None);
        assert_eq!(lc.x.valuation(), Some(-2));
        assert_eq!(y.valuation(), Some(-3));
        assert!(diff.prec() >= 0);
    }

    #[test]
    fn two_torsion_expansion_satisfies_equation() {
        let e = Curve::elliptic_i64(5, -1, 0).unwrap();
        let f = e.field().clone();
        let place = Place::elliptic_point(&e, &f.from_u64(1), &f.zero()).unwrap();
        let lc = coordinates(&e, &place, 10);
        let y = lc.y.unwrap();
        let diff = y.mul(&y).sub(&Series::eval_poly(&e.rhs(), &lc.x));
        assert_eq!(diff.valuation(), None);
        assert!(diff.prec() >= 8);
    }
}
