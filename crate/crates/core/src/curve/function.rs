use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{local, Curve, Divisor, Place};
use crate::error::{Error, Result};
use crate::field::{factor_polynomial, FieldElement, Polynomial, RationalFunction};

/// Element a(x) + b(x)·y of the function field. On P¹, b is always zero and x is t.
#[derive(Clone, PartialEq, Eq)]
pub struct Function {
    curve: Curve,
    a: RationalFunction,
    b: RationalFunction,
}

fn show(r: &RationalFunction, var: &str) -> String {
    if r.den().is_one() {
        r.num().display_var(var)
    } else {
        format!("({})/({})", r.num().display_var(var), r.den().display_var(var))
    }
}

impl fmt::Debug for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = if self.curve.is_elliptic() { "x" } else { "t" };
        if self.b.is_zero() {
            return write!(f, "{}", show(&self.a, var));
        }
        if self.a.is_zero() {
            return write!(f, "({})*y", show(&self.b, var));
        }
        write!(f, "{} + ({})*y", show(&self.a, var), show(&self.b, var))
    }
}

impl Function {
    pub fn new(curve: &Curve, a: RationalFunction, b: RationalFunction) -> Result<Self> {
        if a.field() != curve.field() || b.field() != curve.field() {
            return Err(Error::FieldMismatch("function coefficients".into()));
        }
        if !curve.is_elliptic() && !b.is_zero() {
            return Err(Error::CurveMismatch("P1 functions have no y component".into()));
        }
        Ok(Function { curve: curve.clone(), a, b })
    }

    pub fn rational(curve: &Curve, a: RationalFunction) -> Self {
        let b = RationalFunction::zero(curve.field());
        Function { curve: curve.clone(), a, b }
    }

    pub fn polynomial(curve: &Curve, p: Polynomial) -> Self {
        Self::rational(curve, RationalFunction::from_poly(p))
    }

    pub fn constant(curve: &Curve, c: FieldElement) -> Self {
        Self::rational(curve, RationalFunction::constant(c))
    }

    pub fn from_i64(curve: &Curve, n: i64) -> Self {
        Self::constant(curve, curve.field().from_i64(n))
    }

    pub fn one(curve: &Curve) -> Self {
        Self::from_i64(curve, 1)
    }

    /// The coordinate t on P¹ (equal to x on the elliptic curve).
    pub fn t(curve: &Curve) -> Self {
        Self::rational(curve, RationalFunction::t(curve.field()))
    }

    pub fn x(curve: &Curve) -> Self {
        Self::t(curve)
    }

    pub fn y(curve: &Curve) -> Result<Self> {
        if !curve.is_elliptic() {
            return Err(Error::CurveMismatch("P1 has no y coordinate".into()));
        }
        let f = curve.field();
        Ok(Function { curve: curve.clone(), a: RationalFunction::zero(f), b: RationalFunction::one(f) })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn a(&self) -> &RationalFunction {
        &self.a
    }

    pub fn b(&self) -> &RationalFunction {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Whether the function is a constant of the base field.
    pub fn constant_value(&self) -> Option<FieldElement> {
        (self.b.is_zero() && self.a.is_constant()).then(|| self.a.num().coeff(0))
    }

    /// N(a + b·y) = a² − b²·F(x); the function itself on P¹.
    pub fn norm(&self) -> RationalFunction {
        if self.b.is_zero() {
            return if self.curve.is_elliptic() { &self.a * &self.a } else { self.a.clone() };
        }
        let f = RationalFunction::from_poly(self.curve.rhs());
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * &f)
    }

    /// a − b·y
    pub fn conjugate(&self) -> Self {
        Function { curve: self.curve.clone(), a: self.a.clone(), b: -&self.b }
    }

    pub fn try_add(&self, o: &Function) -> Result<Self> {
        self.curve.ensure_same(&o.curve)?;
        Ok(Function { curve: self.curve.clone(), a: &self.a + &o.a, b: &self.b + &o.b })
    }

    pub fn try_mul(&self, o: &Function) -> Result<Self> {
        self.curve.ensure_same(&o.curve)?;
        if self.b.is_zero() && o.b.is_zero() {
            return Ok(Self::rational(&self.curve, &self.a * &o.a));
        }
        let f = RationalFunction::from_poly(self.curve.rhs());
        let a = &(&self.a * &o.a) + &(&(&self.b * &o.b) * &f);
        let b = &(&self.a * &o.b) + &(&self.b * &o.a);
        Ok(Function { curve: self.curve.clone(), a, b })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Self::rational(&self.curve, self.a.inv()?));
        }
        let n = self.norm().inv()?;
        let c = self.conjugate();
        Ok(Function { curve: self.curve.clone(), a: &c.a * &n, b: &c.b * &n })
    }

    pub fn div(&self, o: &Function) -> Result<Self> {
        self.try_mul(&o.inv()?)
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(&self.curve);
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.try_mul(&sq)?;
            }
            sq = sq.try_mul(&sq)?;
            n >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Function { curve: self.curve.clone(), a: self.a.scale(c), b: self.b.scale(c) }
    }

    /// Normalized discrete valuation at a place of the same curve.
    pub fn valuation(&self, place: &Place) -> Result<i64> {
        self.check_place(place)?;
        if self.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        local::valuation(self, place)
    }

    /// Leading coefficient in the fixed local uniformizer of the place, in k(v).
    pub fn leading_coefficient(&self, place: &Place) -> Result<FieldElement> {
        self.check_place(place)?;
        if self.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        Ok(local::leading_term(self, place)?.1)
    }

    /// Valuation together with the leading coefficient.
    pub fn leading_term(&self, place: &Place) -> Result<(i64, FieldElement)> {
        self.check_place(place)?;
        if self.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        local::leading_term(self, place)
    }

    /// Value in k(v); `None` at a pole.
    pub fn value_at(&self, place: &Place) -> Result<Option<FieldElement>> {
        self.check_place(place)?;
        let k = self.curve.residue_field(place);
        if self.is_zero() {
            return Ok(Some(k.zero()));
        }
        let (v, lc) = local::leading_term(self, place)?;
        Ok(match v {
            0 => Some(lc),
            v if v > 0 => Some(k.zero()),
            _ => None,
        })
    }

    fn check_place(&self, place: &Place) -> Result<()> {
        if place.belongs_to(&self.curve) {
            Ok(())
        } else {
            Err(Error::CurveMismatch(format!("{place} is not a place of {}", self.curve)))
        }
    }

    /// Places where a, b or the norm can have a zero or pole, as monic irreducibles in x.
    pub(crate) fn candidate_polynomials(&self) -> Result<Vec<Polynomial>> {
        let n = self.norm();
        let mut polys = vec![n.num().clone(), n.den().clone()];
        if self.curve.is_elliptic() {
            polys.push(self.a.den().clone());
            polys.push(self.b.den().clone());
        }
        let mut out = Vec::new();
        for p in polys {
            if p.is_zero() || p.is_constant() {
                continue;
            }
            for (f, _) in factor_polynomial(&p)?.factors {
                out.push(f);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Support of div(f) as a list of places (sorted).
    pub fn support_places(&self) -> Result<Vec<Place>> {
        Ok(self.principal_divisor()?.support().cloned().collect())
    }

    /// div(f) = Σ_v v(f)·v.
    pub fn principal_divisor(&self) -> Result<Divisor> {
        if self.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        let mut d = Divisor::zero(&self.curve);
        if !self.curve.is_elliptic() {
            let num = factor_polynomial(self.a.num())?;
            let den = factor_polynomial(self.a.den())?;
            for (p, m) in num.factors {
                d.add_term(Place::Finite(p), m as i64);
            }
            for (p, m) in den.factors {
                d.add_term(Place::Finite(p), -(m as i64));
            }
            d.add_term(Place::Infinity, self.a.valuation_at_infinity()?);
            return Ok(d);
        }
        for pi in self.candidate_polynomials()? {
            for place in self.curve.places_over(&pi) {
                let v = local::valuation(self, &place)?;
                d.add_term(place, v);
            }
        }
        d.add_term(Place::Origin, local::valuation(self, &Place::Origin)?);
        Ok(d)
    }
}

impl<'a> Add<&'a Function> for &'a Function {
    type Output = Function;
    fn add(self, rhs: &Function) -> Function {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a Function> for &'a Function {
    type Output = Function;
    fn sub(self, rhs: &Function) -> Function {
        self.try_add(&-rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Mul<&'a Function> for &'a Function {
    type Output = Function;
    fn mul(self, rhs: &Function) -> Function {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Function {
    type Output = Function;
    fn neg(self) -> Function {
        Function { curve: self.curve.clone(), a: -&self.a, b: -&self.b }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn p1(p: u64) -> Curve {
        Curve::projective_line(&FieldSpec::prime(p).unwrap()).unwrap()
    }

    #[test]
    fn valuations_on_p1() {
        let c = p1(5);
        let f = c.field().clone();
        let t = Function::t(&c);
        let g = (&t * &t).div(&(&t - &Function::one(&c))).unwrap();
        assert_eq!(g.valuation(&Place::rational(&f.zero())).unwrap(), 2);
        let h = (&(&t * &t) + &Function::one(&c)).div(&t).unwrap();
        assert_eq!(h.valuation(&Place::Infinity).unwrap(), -1);
    }

    #[test]
    fn x_has_double_pole_at_origin() {
        let e = Curve::elliptic_i64(5, 1, 0).unwrap();
        assert_eq!(Function::x(&e).valuation(&Place::Origin).unwrap(), -2);
        let d = Function::x(&e).principal_divisor().unwrap();
        let f = e.field().clone();
        let origin_pt = Place::elliptic_point(&e, &f.zero(), &f.zero()).unwrap();
        assert_eq!(d.get(&origin_pt), 2);
        assert_eq!(d.get(&Place::Origin), -2);
        assert_eq!(d.degree(), 0);
    }

    #[test]
    fn divisor_of_y_is_two_torsion() {
        let e = Curve::elliptic_i64(5, -1, 0).unwrap();
        let f = e.field().clone();
        let d = Function::y(&e).unwrap().principal_divisor().unwrap();
        for x in [0, 1, 4] {
            let pt = Place::elliptic_point(&e, &f.from_u64(x), &f.zero()).unwrap();
            assert_eq!(d.get(&pt), 1);
        }
        assert_eq!(d.get(&Place::Origin), -3);
        assert_eq!(d.as_map().len(), 4);
    }

    #[test]
    fn zero_has_no_valuation() {
        let c = p1(5);
        let z = Function::from_i64(&c, 0);
        assert_eq!(z.valuation(&Place::Infinity), Err(Error::ValuationOfZero));
    }
}
