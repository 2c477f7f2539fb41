use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{FieldElement, FieldSpec, Polynomial};
use crate::error::{Error, Result};

/// Element of k(t) in canonical form: coprime, monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num.display_var("t"))
        } else {
            write!(f, "({})/({})", self.num.display_var("t"), self.den.display_var("t"))
        }
    }
}

/// num/den in canonical form.
pub fn normalize_rational(num: &Polynomial, den: &Polynomial) -> Result<RationalFunction> {
    RationalFunction::new(num.clone(), den.clone())
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.field()));
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let (lc, den) = den.monic();
        let num = num.scale(&lc.inv()?);
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let den = Polynomial::one(p.field());
        RationalFunction { num: p, den }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Self::from_poly(Polynomial::zero(field))
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::from_poly(Polynomial::one(field))
    }

    /// The coordinate t.
    pub fn t(field: &FieldSpec) -> Self {
        Self::from_poly(Polynomial::x(field))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn field(&self) -> &FieldSpec {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = e.unsigned_abs();
        Ok(RationalFunction { num: base.num.pow(n), den: base.den.pow(n) })
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }.renorm()
    }

    fn renorm(self) -> Self {
        if self.num.is_zero() {
            Self::zero(self.num.field())
        } else {
            self
        }
    }

    /// Value at a point; `None` at a pole. Works for points in extensions.
    pub fn eval(&self, x: &FieldElement) -> Option<FieldElement> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(x) * &d.inv().ok()?)
    }

    /// Order of vanishing at the monic irreducible π (negative for poles).
    pub fn valuation_at(&self, pi: &Polynomial) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        Ok(self.num.multiplicity_of(pi) as i64 - self.den.multiplicity_of(pi) as i64)
    }

    /// Order at infinity: deg den − deg num.
    pub fn valuation_at_infinity(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        Ok(self.den.degree_i64() - self.num.degree_i64())
    }

    /// Formal derivative d/dt.
    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    /// Substitute t ↦ t + c.
    pub fn shift(&self, c: &FieldElement) -> Self {
        Self::new(self.num.shift(c), self.den.shift(c)).expect("nonzero denominator")
    }

    /// Lift prime-field coefficients into an extension field.
    pub fn lift_to(&self, field: &FieldSpec) -> Self {
        RationalFunction { num: self.num.lift_to(field), den: self.den.lift_to(field) }
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(n, &self.den * &rhs.den).expect("nonzero")
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero(self.field());
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn cancels_common_factor() {
        let f = gf(5);
        let r =
            normalize_rational(&Polynomial::from_i64(&f, &[-1, 0, 1]), &Polynomial::from_i64(&f, &[-1, 1])).unwrap();
        assert_eq!(r, RationalFunction::from_poly(Polynomial::from_u64(&f, &[1, 1])));
    }

    #[test]
    fn zero_numerator_and_scaling() {
        let f = gf(5);
        let z = normalize_rational(&Polynomial::zero(&f), &Polynomial::x(&f)).unwrap();
        assert!(z.is_zero());
        assert!(z.den().is_one());
        let r = normalize_rational(&Polynomial::from_u64(&f, &[0, 2]), &Polynomial::from_u64(&f, &[4])).unwrap();
        assert_eq!(r.num(), &Polynomial::from_u64(&f, &[0, 3]));
    }

    #[test]
    fn zero_denominator_rejected() {
        let f = gf(7);
        assert_eq!(normalize_rational(&Polynomial::one(&f), &Polynomial::zero(&f)), Err(Error::ZeroDenominator));
    }

    #[test]
    fn valuations() {
        let f = gf(5);
        let r =
            RationalFunction::new(Polynomial::from_u64(&f, &[0, 0, 1]), Polynomial::from_i64(&f, &[-1, 1])).unwrap();
        assert_eq!(r.valuation_at(&Polynomial::x(&f)).unwrap(), 2);
        let s = RationalFunction::new(Polynomial::from_u64(&f, &[1, 0, 1]), Polynomial::x(&f)).unwrap();
        assert_eq!(s.valuation_at_infinity().unwrap(), -1);
    }
}
