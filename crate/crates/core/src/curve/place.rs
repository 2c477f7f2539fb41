use std::collections::BTreeMap;
use std::fmt;

use super::{Curve, Function};
use crate::error::{Error, Result};
use crate::field::{descend, minimal_polynomial, roots, FieldElement, FieldSpec, Polynomial};

/// A place of one of the supported function fields.
///
/// Elliptic points of degree d are stored by the smallest Frobenius conjugate
/// of their coordinates inside the canonical GF(p^d), so two places are equal
/// exactly when they are the same Galois orbit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    /// Monic irreducible polynomial of P¹.
    Finite(Polynomial),
    /// The point at infinity of P¹.
    Infinity,
    Point {
        x: FieldElement,
        y: FieldElement,
        degree: usize,
    },
    /// The identity of the elliptic curve.
    Origin,
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "({})", p.display_var("t")),
            Place::Infinity => write!(f, "inf"),
            Place::Point { x, y, degree: 1 } => write!(f, "({x},{y})"),
            Place::Point { x, y, degree } => write!(f, "({x},{y})[deg {degree}]"),
            Place::Origin => write!(f, "O"),
        }
    }
}

fn orbit_representative(x: &FieldElement, y: &FieldElement, d: usize) -> (FieldElement, FieldElement) {
    let mut best = (x.clone(), y.clone());
    let (mut cx, mut cy) = best.clone();
    for _ in 1..d {
        cx = cx.frobenius();
        cy = cy.frobenius();
        if (&cx, &cy) < (&best.0, &best.1) {
            best = (cx.clone(), cy.clone());
        }
    }
    best
}

impl Place {
    /// The place of P¹ cut out by a monic irreducible polynomial over GF(p).
    pub fn finite(pi: Polynomial) -> Result<Place> {
        if !pi.field().is_prime_field() {
            return Err(Error::InvalidInput("places of P1 are polynomials over GF(p)".into()));
        }
        if !pi.is_monic() || !pi.is_irreducible() {
            return Err(Error::InvalidInput(format!("{pi} is not monic irreducible")));
        }
        Ok(Place::Finite(pi))
    }

    /// The rational place t = c of P¹.
    pub fn rational(c: &FieldElement) -> Place {
        Place::Finite(Polynomial::linear(c))
    }

    /// The orbit of an affine point of the elliptic curve, coordinates in any GF(p^k).
    pub fn elliptic_point(curve: &Curve, x: &FieldElement, y: &FieldElement) -> Result<Place> {
        if !curve.is_elliptic() {
            return Err(Error::CurveMismatch("affine points live on the elliptic model".into()));
        }
        if x.field() != y.field() || x.field().characteristic() != curve.field().characteristic() {
            return Err(Error::FieldMismatch("point coordinates".into()));
        }
        let lhs = y * y;
        let rhs = curve.rhs().eval(x);
        if lhs != rhs {
            return Err(Error::OffCurve(format!("({x},{y})")));
        }
        let c = descend(&[x.clone(), y.clone()]);
        let degree = c[0].field().degree();
        let (x, y) = orbit_representative(&c[0], &c[1], degree);
        Ok(Place::Point { x, y, degree })
    }

    /// Residue degree [k(v):k].
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(1),
            Place::Point { degree, .. } => *degree,
            Place::Infinity | Place::Origin => 1,
        }
    }

    pub(crate) fn belongs_to(&self, curve: &Curve) -> bool {
        match self {
            Place::Finite(p) => !curve.is_elliptic() && p.field() == curve.field(),
            Place::Infinity => !curve.is_elliptic(),
            Place::Point { x, .. } => {
                curve.is_elliptic() && x.field().characteristic() == curve.field().characteristic()
            }
            Place::Origin => curve.is_elliptic(),
        }
    }
}

impl Curve {
    /// Residue field k(v), presented as GF(p)[t]/(π) for P¹ places and as the
    /// canonical GF(p^d) for elliptic points.
    pub fn residue_field(&self, place: &Place) -> FieldSpec {
        match place {
            Place::Finite(pi) => FieldSpec::from_irreducible(pi),
            Place::Point { x, .. } => x.field().clone(),
            Place::Infinity | Place::Origin => self.field().clone(),
        }
    }

    /// All places lying over the monic irreducible π(x) (x = t on P¹).
    pub fn places_over(&self, pi: &Polynomial) -> Vec<Place> {
        if !self.is_elliptic() {
            return vec![Place::Finite(pi.clone())];
        }
        let p = self.field().characteristic();
        let e = pi.degree().expect("non-constant");
        let rhs = self.rhs();
        let ext = FieldSpec::canonical_extension(p, e).expect("valid degree");
        let x0 = roots(&pi.lift_to(&ext)).expect("nonzero")[0].clone();
        let fx = rhs.eval(&x0);
        let mk = |x: &FieldElement, y: &FieldElement, d: usize| {
            let (x, y) = orbit_representative(x, y, d);
            Place::Point { x, y, degree: d }
        };
        if fx.is_zero() {
            return vec![mk(&x0, &ext.zero(), e)];
        }
        if let Some(y0) = fx.sqrt() {
            let mut out = vec![mk(&x0, &y0, e), mk(&x0, &-&y0, e)];
            out.sort();
            return out;
        }
        let big = FieldSpec::canonical_extension(p, 2 * e).expect("valid degree");
        let x1 = roots(&pi.lift_to(&big)).expect("nonzero")[0].clone();
        let y1 = rhs.eval(&x1).sqrt().expect("square in the quadratic extension");
        vec![mk(&x1, &y1, 2 * e)]
    }

    /// The place's root of π on P¹, or its x-coordinate on the elliptic curve, in k(v).
    pub(crate) fn place_root(&self, place: &Place) -> Option<FieldElement> {
        match place {
            Place::Finite(pi) => {
                if pi.degree() == Some(1) {
                    Some(-&pi.coeff(0))
                } else {
                    FieldSpec::from_irreducible(pi).generator()
                }
            }
            Place::Point { x, .. } => Some(x.clone()),
            _ => None,
        }
    }

    /// A global function with valuation exactly one at the place.
    pub fn local_equation(&self, place: &Place) -> Result<Function> {
        if !place.belongs_to(self) {
            return Err(Error::CurveMismatch(format!("{place} is not a place of {self}")));
        }
        Ok(match place {
            Place::Finite(pi) => Function::polynomial(self, pi.clone()),
            Place::Infinity => Function::t(self).inv()?,
            Place::Origin => Function::x(self).div(&Function::y(self)?)?,
            Place::Point { x, y, .. } => {
                if y.is_zero() {
                    Function::y(self)?
                } else {
                    Function::polynomial(self, minimal_polynomial(x))
                }
            }
        })
    }
}

/// Finite formal sum of places with integer multiplicities.
#[derive(Clone, PartialEq, Eq)]
pub struct Divisor {
    curve: Curve,
    terms: BTreeMap<Place, i64>,
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, n)| format!("{n}*{p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Divisor {
    pub fn zero(curve: &Curve) -> Self {
        Divisor { curve: curve.clone(), terms: BTreeMap::new() }
    }

    pub fn from_terms(curve: &Curve, terms: impl IntoIterator<Item = (Place, i64)>) -> Result<Self> {
        let mut d = Self::zero(curve);
        for (p, n) in terms {
            if !p.belongs_to(curve) {
                return Err(Error::CurveMismatch(format!("{p} is not a place of {curve}")));
            }
            d.add_term(p, n);
        }
        Ok(d)
    }

    /// n·(place)
    pub fn single(curve: &Curve, place: Place, n: i64) -> Result<Self> {
        Self::from_terms(curve, [(place, n)])
    }

    pub(crate) fn with(mut self, place: Place, n: i64) -> Self {
        self.add_term(place, n);
        self
    }

    pub(crate) fn add_term(&mut self, place: Place, n: i64) {
        let slot = self.terms.entry(place.clone()).or_insert(0);
        *slot += n;
        if *slot == 0 {
            self.terms.remove(&place);
        }
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn get(&self, place: &Place) -> i64 {
        self.terms.get(place).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, &i64)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, n)| n * p.degree() as i64).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&n| n >= 0)
    }

    pub fn try_add(&self, other: &Divisor) -> Result<Divisor> {
        self.curve.ensure_same(&other.curve)?;
        let mut out = self.clone();
        for (p, n) in &other.terms {
            out.add_term(p.clone(), *n);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Divisor) -> Result<Divisor> {
        self.try_add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Divisor {
        let mut out = Self::zero(&self.curve);
        if k != 0 {
            for (p, n) in &self.terms {
                out.terms.insert(p.clone(), n * k);
            }
        }
        out
    }

    /// Terms as a plain map.
    pub fn as_map(&self) -> &BTreeMap<Place, i64> {
        &self.terms
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn places_over_split_ramified_inert() {
        // y^2 = x^3 - x over GF(5)
        let e = Curve::elliptic_i64(5, -1, 0).unwrap();
        let f = e.field().clone();
        // x: F(0) = 0, ramified
        let over_x = e.places_over(&Polynomial::x(&f));
        assert_eq!(over_x.len(), 1);
        assert_eq!(over_x[0].degree(), 1);
        // x - 2: F(2) = 6 = 1, a square: split
        let split = e.places_over(&Polynomial::from_i64(&f, &[-2, 1]));
        assert_eq!(split.len(), 2);
        // y^2 = x^3 + x + 1: F(1) = 3 is not a square mod 5
        let g = Curve::elliptic_i64(5, 1, 1).unwrap();
        let inert = g.places_over(&Polynomial::from_i64(&f, &[-1, 1]));
        assert_eq!(inert.len(), 1);
        assert_eq!(inert[0].degree(), 2);
    }

    #[test]
    fn divisor_degree_with_weights() {
        let f = FieldSpec::prime(3).unwrap();
        let c = Curve::projective_line(&f).unwrap();
        let d = Divisor::from_terms(
            &c,
            [(Place::finite(Polynomial::from_u64(&f, &[1, 0, 1])).unwrap(), 1), (Place::Infinity, -2)],
        )
        .unwrap();
        assert_eq!(d.degree(), 0);
    }
}
