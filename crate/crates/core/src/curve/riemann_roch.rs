//! Bases of Riemann–Roch spaces L(D) = {f : div f + D ≥ 0} ∪ {0}.

use std::collections::BTreeMap;

use super::{local, Divisor, Function, Place};
use crate::error::Result;
use crate::field::linalg::Matrix;
use crate::field::{minimal_polynomial, FieldElement, Polynomial, RationalFunction, Series};

/// A basis of L(D) over the base field.
pub fn riemann_roch_space(d: &Divisor) -> Result<Vec<Function>> {
    if d.curve().is_elliptic() {
        elliptic_space(d)
    } else {
        projective_line_space(d)
    }
}

/// On P¹: {t^i·r/q : 0 ≤ i ≤ deg D}, q carrying the allowed poles and r the forced zeros.
fn projective_line_space(d: &Divisor) -> Result<Vec<Function>> {
    let curve = d.curve();
    let f = curve.field();
    let mut q = Polynomial::one(f);
    let mut r = Polynomial::one(f);
    for (place, &n) in d.iter() {
        if let Place::Finite(pi) = place {
            if n > 0 {
                q = &q * &pi.pow(n as u64);
            } else {
                r = &r * &pi.pow((-n) as u64);
            }
        }
    }
    let deg = d.degree();
    let base = RationalFunction::new(r, q)?;
    Ok((0..=deg.max(-1))
        .filter(|_| deg >= 0)
        .map(|i| {
            let ti = RationalFunction::from_poly(Polynomial::monomial(f.one(), i as usize));
            Function::rational(curve, &ti * &base)
        })
        .collect())
}

fn ramification(place: &Place) -> i64 {
    match place {
        Place::Point { y, .. } if y.is_zero() => 2,
        _ => 1,
    }
}

/// Elliptic case: f = g/q(x) with g ∈ span{x^i y^j} and q clearing the affine poles.
fn elliptic_space(d: &Divisor) -> Result<Vec<Function>> {
    let curve = d.curve();
    let f = curve.field();
    // exponent of each π(x) in the denominator
    let mut q_exp: BTreeMap<Polynomial, i64> = BTreeMap::new();
    for (place, &n) in d.iter() {
        if let Place::Point { x, .. } = place {
            if n > 0 {
                let e = ramification(place);
                let c = (n + e - 1) / e;
                let slot = q_exp.entry(minimal_polynomial(x)).or_insert(0);
                *slot = (*slot).max(c);
            }
        }
    }
    let mut q = Polynomial::one(f);
    for (pi, &c) in &q_exp {
        q = &q * &pi.pow(c as u64);
    }
    let deg_q = q.degree().unwrap_or(0) as i64;
    let bound = d.get(&Place::Origin) + 2 * deg_q;
    if bound < 0 {
        return Ok(Vec::new());
    }
    let monomials: Vec<(usize, usize)> = (0..=1usize)
        .flat_map(|j| (0..).take_while(move |i| 2 * i + 3 * j as i64 <= bound).map(move |i| (i as usize, j)))
        .collect();

    // affine places where a vanishing condition may apply
    let mut places: Vec<Place> = d.support().filter(|p| matches!(p, Place::Point { .. })).cloned().collect();
    for pi in q_exp.keys() {
        places.extend(curve.places_over(pi));
    }
    places.sort();
    places.dedup();

    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for place in &places {
        let Place::Point { x, .. } = place else { continue };
        let vq = ramification(place) * q_exp.get(&minimal_polynomial(x)).copied().unwrap_or(0);
        let need = vq - d.get(place);
        if need <= 0 {
            continue;
        }
        let lc = local::coordinates(curve, place, need + 2);
        let y = lc.y.expect("elliptic place");
        let mut xpow = vec![Series::constant(lc.field.one(), need + 2)];
        let max_i = monomials.iter().map(|m| m.0).max().unwrap_or(0);
        for _ in 0..max_i {
            let next = xpow.last().unwrap().mul(&lc.x);
            xpow.push(next);
        }
        let expansions: Vec<Series> =
            monomials.iter().map(|&(i, j)| if j == 0 { xpow[i].clone() } else { xpow[i].mul(&y) }).collect();
        let kdeg = lc.field.degree();
        for s in 0..need {
            for comp in 0..kdeg {
                rows.push(
                    expansions
                        .iter()
                        .map(|e| {
                            let c = e.coeff(s).expect("enough precision");
                            f.from_u64(c.coefficients()[comp])
                        })
                        .collect(),
                );
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..monomials.len())
            .map(|i| (0..monomials.len()).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect()
    } else {
        Matrix::from_rows(f, rows, monomials.len()).kernel()
    };
    let qr = RationalFunction::from_poly(q);
    kernel
        .into_iter()
        .map(|v| {
            let mut a = vec![f.zero(); monomials.len() + 1];
            let mut b = vec![f.zero(); monomials.len() + 1];
            for (c, &(i, j)) in v.iter().zip(&monomials) {
                if j == 0 {
                    a[i] = c.clone();
                } else {
                    b[i] = c.clone();
                }
            }
            let a = &RationalFunction::from_poly(Polynomial::new(f, a)) / &qr;
            let b = &RationalFunction::from_poly(Polynomial::new(f, b)) / &qr;
            Function::new(curve, a, b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Curve;
    use crate::field::FieldSpec;

    fn in_space(f: &Function, d: &Divisor) -> bool {
        let div = f.principal_divisor().unwrap();
        div.try_add(d).unwrap().is_effective()
    }

    #[test]
    fn p1_examples() {
        let c = Curve::projective_line(&FieldSpec::prime(5).unwrap()).unwrap();
        let d = Divisor::single(&c, Place::Infinity, 2).unwrap();
        let basis = riemann_roch_space(&d).unwrap();
        assert_eq!(basis.len(), 3);
        assert!(basis.iter().all(|f| in_space(f, &d)));
        let neg = Divisor::single(&c, Place::Infinity, -1).unwrap();
        assert!(riemann_roch_space(&neg).unwrap().is_empty());
    }

    #[test]
    fn elliptic_examples() {
        let e = Curve::elliptic_i64(5, 1, 1).unwrap();
        assert_eq!(riemann_roch_space(&Divisor::zero(&e)).unwrap().len(), 1);
        let d = Divisor::single(&e, Place::Origin, 3).unwrap();
        let basis = riemann_roch_space(&d).unwrap();
        assert_eq!(basis.len(), 3);
        assert!(basis.iter().all(|f| in_space(f, &d)));
        let p = e.point_place(&e.point_i64(0, 1).unwrap()).unwrap();
        let dd = Divisor::from_terms(&e, [(p.clone(), 2), (Place::Origin, -1)]).unwrap();
        let b = riemann_roch_space(&dd).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b.iter().all(|f| in_space(f, &dd)));
    }
}
