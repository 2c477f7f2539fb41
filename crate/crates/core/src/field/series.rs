use std::fmt;

use super::{FieldElement, FieldSpec, Polynomial};
use crate::error::{Error, Result};

/// Truncated Laurent series Σ_{i ≥ val} c_i s^i, known modulo s^prec.
///
/// `coeffs[j]` is the coefficient of s^(val + j); `coeffs.len() == prec - val`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    field: FieldSpec,
    val: i64,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("({c})s^{}", self.val + j as i64))
            .collect();
        write!(f, "{} + O(s^{})", terms.join(" + "), self.prec())
    }
}

impl Series {
    /// Zero known to absolute precision `prec`.
    pub fn zero(field: &FieldSpec, prec: i64) -> Self {
        Series { field: field.clone(), val: prec, coeffs: Vec::new() }
    }

    pub fn from_coeffs(field: &FieldSpec, val: i64, coeffs: Vec<FieldElement>) -> Self {
        Series { field: field.clone(), val, coeffs }.normalized()
    }

    pub fn constant(c: FieldElement, prec: i64) -> Self {
        Self::monomial(c, 0, prec)
    }

    /// c·s^n + O(s^prec).
    pub fn monomial(c: FieldElement, n: i64, prec: i64) -> Self {
        let field = c.field().clone();
        if prec <= n {
            return Self::zero(&field, prec);
        }
        let mut coeffs = vec![field.zero(); (prec - n) as usize];
        coeffs[0] = c;
        Series { field, val: n, coeffs }.normalized()
    }

    /// A polynomial in s, truncated at `prec`.
    pub fn from_poly(p: &Polynomial, prec: i64) -> Self {
        let field = p.field().clone();
        if prec <= 0 {
            return Self::zero(&field, prec);
        }
        let coeffs = (0..prec as usize).map(|i| p.coeff(i)).collect();
        Series { field, val: 0, coeffs }.normalized()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn prec(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    /// Number of known significant coefficients.
    pub fn relative_prec(&self) -> i64 {
        self.coeffs.len() as i64
    }

    /// Valuation, or `None` if the series is zero to the known precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.first()
    }

    /// Coefficient of s^i (zero below the valuation); `None` past the precision.
    pub fn coeff(&self, i: i64) -> Option<FieldElement> {
        if i >= self.prec() {
            return None;
        }
        if i < self.val {
            return Some(self.field.zero());
        }
        Some(self.coeffs[(i - self.val) as usize].clone())
    }

    fn normalized(mut self) -> Self {
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.val += lead_zeros as i64;
        }
        self
    }

    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec() {
            return self.clone();
        }
        if prec <= self.val {
            return Self::zero(&self.field, prec);
        }
        let mut out = self.clone();
        out.coeffs.truncate((prec - self.val) as usize);
        out
    }

    pub fn add(&self, other: &Series) -> Series {
        let prec = self.prec().min(other.prec());
        let val = self.val.min(other.val);
        if prec <= val {
            return Self::zero(&self.field, prec);
        }
        let coeffs = (val..prec).map(|i| &self.coeff(i).unwrap() + &other.coeff(i).unwrap()).collect();
        Series { field: self.field.clone(), val, coeffs }.normalized()
    }

    pub fn neg(&self) -> Series {
        Series { field: self.field.clone(), val: self.val, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> Series {
        if c.is_zero() {
            return Self::zero(&self.field, self.prec());
        }
        Series { field: self.field.clone(), val: self.val, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiply by s^n.
    pub fn shift(&self, n: i64) -> Series {
        Series { field: self.field.clone(), val: self.val + n, coeffs: self.coeffs.clone() }
    }

    pub fn mul(&self, other: &Series) -> Series {
        // absolute precision of a product is limited by each factor's error times the other's valuation
        let prec = (self.prec() + other.val).min(other.prec() + self.val);
        let val = self.val + other.val;
        if prec <= val || self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero(&self.field, prec);
        }
        let n = (prec - val) as usize;
        let mut coeffs = vec![self.field.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Series { field: self.field.clone(), val, coeffs }.normalized()
    }

    /// Multiplicative inverse; requires a known nonzero leading term.
    pub fn inv(&self) -> Result<Series> {
        let lead =
            self.leading().ok_or_else(|| Error::Precision("inverting a series with unknown leading term".into()))?;
        let n = self.coeffs.len();
        let li = lead.inv()?;
        let mut out = vec![self.field.zero(); n];
        out[0] = li.clone();
        for k in 1..n {
            let mut acc = self.field.zero();
            for j in 1..=k {
                acc = &acc + &(&self.coeffs[j] * &out[k - j]);
            }
            out[k] = -&(&acc * &li);
        }
        Ok(Series { field: self.field.clone(), val: -self.val, coeffs: out })
    }

    pub fn div(&self, other: &Series) -> Result<Series> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn powi(&self, e: i64) -> Result<Series> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::constant(self.field.one(), base.relative_prec().max(1));
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Evaluate a polynomial (coefficients in this field or its prime field) at the series.
    pub fn eval_poly(p: &Polynomial, s: &Series) -> Series {
        let field = s.field.clone();
        let lift = p.field() != &field;
        let prec = s.prec();
        let mut acc: Option<Series> = None;
        for c in p.coeffs().iter().rev() {
            let c = Self::constant(if lift { field.lift(c) } else { c.clone() }, prec);
            acc = Some(match acc {
                None => c,
                Some(a) => a.mul(s).add(&c),
            });
        }
        acc.unwrap_or_else(|| Self::zero(&field, prec))
    }

    /// Derivative d/ds.
    pub fn derivative(&self) -> Series {
        let coeffs =
            self.coeffs.iter().enumerate().map(|(j, c)| c * &self.field.from_i64(self.val + j as i64)).collect();
        Series { field: self.field.clone(), val: self.val - 1, coeffs }.normalized()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_inverse() {
        let f = FieldSpec::prime(7).unwrap();
        // 1/(1 - s) = 1 + s + s^2 + ...
        let one_minus = Series::from_poly(&Polynomial::from_i64(&f, &[1, -1]), 6);
        let inv = one_minus.inv().unwrap();
        for i in 0..6 {
            assert!(inv.coeff(i).unwrap().is_one());
        }
        assert_eq!(inv.prec(), 6);
    }

    #[test]
    fn laurent_product_precision() {
        let f = FieldSpec::prime(5).unwrap();
        let s = Series::monomial(f.one(), 1, 5);
        let sinv = s.inv().unwrap();
        assert_eq!(sinv.valuation(), Some(-1));
        let one = s.mul(&sinv);
        assert_eq!(one.valuation(), Some(0));
        assert!(one.leading().unwrap().is_one());
    }
}
