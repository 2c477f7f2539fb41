use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{FieldElement, FieldSpec};
use crate::error::{Error, Result};

/// Univariate polynomial over a finite field, lowest degree coefficient first.
///
/// The coefficient list never ends in a zero; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var("x"))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var("x"))
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the constant term up.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl Polynomial {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        Polynomial { field: field.clone(), coeffs }
    }

    pub fn from_u64(field: &FieldSpec, coeffs: &[u64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_u64(c)).collect())
    }

    pub fn from_i64(field: &FieldSpec, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Polynomial { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    /// The monomial c·x^n.
    pub fn monomial(c: FieldElement, n: usize) -> Self {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); n];
        coeffs.push(c);
        Self::new(&field, coeffs)
    }

    /// The indeterminate x.
    pub fn x(field: &FieldSpec) -> Self {
        Self::monomial(field.one(), 1)
    }

    /// x - c
    pub fn linear(c: &FieldElement) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![-c, field.one()])
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn degree_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Split off the leading coefficient: returns (lc, monic part).
    pub fn monic(&self) -> (FieldElement, Polynomial) {
        if self.is_zero() {
            return (self.field.zero(), self.clone());
        }
        let lc = self.leading();
        let inv = lc.inv().expect("nonzero leading coefficient");
        (lc, self.scale(&inv))
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        Self::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Lift a prime-field polynomial into an extension of the same characteristic.
    pub fn lift_to(&self, field: &FieldSpec) -> Polynomial {
        if &self.field == field {
            return self.clone();
        }
        assert!(self.field.is_prime_field(), "can only lift prime-field polynomials");
        Self::new(field, self.coeffs.iter().map(|c| field.lift(c)).collect())
    }

    /// Evaluate at a point of the same field, or of an extension when the
    /// polynomial has prime-field coefficients.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let lift = x.field() != &self.field;
        let target = x.field().clone();
        let mut acc = target.zero();
        for c in self.coeffs.iter().rev() {
            let c = if lift { target.lift(c) } else { c.clone() };
            acc = &(&acc * x) + &c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &self.field.from_u64(i as u64)).collect();
        Self::new(&self.field, coeffs)
    }

    pub fn divrem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dn = d.coeffs.len();
        if self.coeffs.len() < dn {
            return Ok((Self::zero(&self.field), self.clone()));
        }
        let lead_inv = d.leading().inv()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len() - dn + 1];
        while r.len() >= dn {
            let top = r.last().unwrap().clone();
            let shift = r.len() - dn;
            if !top.is_zero() {
                let c = &top * &lead_inv;
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[shift + j] = &r[shift + j] - &(&c * dj);
                }
                q[shift] = c;
            }
            r.pop();
        }
        Ok((Self::new(&self.field, q), Self::new(&self.field, r)))
    }

    pub fn rem(&self, d: &Polynomial) -> Result<Polynomial> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient; `None` when d does not divide self.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic().1
    }

    /// Returns (g, s, t) with s·self + t·other = g, g monic.
    pub fn ext_gcd(&self, other: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().inv().expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn pow(&self, mut e: u64) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// self^e mod m.
    pub fn pow_mod(&self, mut e: u128, m: &Polynomial) -> Polynomial {
        let mut base = self.rem(m).expect("nonzero modulus");
        let mut acc = Self::one(&self.field).rem(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m).expect("nonzero modulus");
            }
            base = (&base * &base).rem(m).expect("nonzero modulus");
            e >>= 1;
        }
        acc
    }

    /// Substitute x ↦ x + c.
    pub fn shift(&self, c: &FieldElement) -> Polynomial {
        let lin = Self::new(&self.field, vec![c.clone(), self.field.one()]);
        let mut acc = Self::zero(&self.field);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(a.clone());
        }
        acc
    }

    /// Multiplicity of the factor `p` (assumed non-constant).
    pub fn multiplicity_of(&self, p: &Polynomial) -> usize {
        let mut n = 0;
        let mut cur = self.clone();
        while !cur.is_zero() {
            match cur.exact_div(p) {
                Some(q) => {
                    cur = q;
                    n += 1;
                }
                None => break,
            }
        }
        n
    }

    /// Reverse the coefficient list relative to degree `n` (x^n f(1/x)).
    pub fn reverse(&self, n: usize) -> Polynomial {
        let mut coeffs = vec![self.field.zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Self::new(&self.field, coeffs)
    }

    /// Rabin's test: no common factor with x^{q^i} - x for i ≤ deg/2.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic().1;
        let q = self.field.order();
        let x = Self::x(&self.field);
        let mut xp = x.clone();
        for _ in 1..=n / 2 {
            xp = xp.pow_mod(q, &f);
            let g = (&xp - &x).gcd(&f);
            if !g.is_one() {
                return false;
            }
        }
        true
    }

    /// f mod π read in the residue field GF(p)[t]/(π), for monic irreducible π
    /// over the prime field. Degree one places reduce to evaluation at the root.
    pub fn reduce_at(&self, pi: &Polynomial, residue: &FieldSpec) -> FieldElement {
        if pi.degree() == Some(1) {
            let root = -&pi.coeff(0);
            return self.eval(&root);
        }
        let r = self.rem(pi).expect("nonzero modulus");
        let raw: Vec<u64> = r.coeffs.iter().map(|c| c.coeff(0)).collect();
        residue.element(&raw).expect("reduced degree fits")
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = if self.field.is_prime_field() { c.to_string() } else { format!("({c})") };
            terms.push(match i {
                0 => cs,
                1 if c.is_one() => var.to_string(),
                1 => format!("{cs}{var}"),
                _ if c.is_one() => format!("{var}^{i}"),
                _ => format!("{cs}{var}^{i}"),
            });
        }
        terms.join(" + ")
    }

    /// Coefficients as integers (prime-field polynomials only).
    pub fn to_u64(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.coeff(0)).collect()
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        Polynomial::new(&self.field, coeffs)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        Polynomial::new(&self.field, coeffs)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::new(&self.field, out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reassembles() {
        let f = FieldSpec::prime(7).unwrap();
        let a = Polynomial::from_u64(&f, &[3, 0, 5, 1, 2]);
        let b = Polynomial::from_u64(&f, &[1, 4, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree_i64() < 2);
    }

    #[test]
    fn ext_gcd_bezout() {
        let f = FieldSpec::prime(5).unwrap();
        let a = Polynomial::from_u64(&f, &[4, 0, 1]); // x^2 - 1
        let b = Polynomial::from_u64(&f, &[4, 1]); // x - 1
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn shift_and_irreducibility() {
        let f = FieldSpec::prime(3).unwrap();
        let p = Polynomial::from_u64(&f, &[1, 0, 1]);
        assert!(p.is_irreducible());
        let c = f.from_u64(1);
        assert_eq!(p.shift(&c).eval(&f.zero()), p.eval(&c));
        assert!(!Polynomial::from_u64(&f, &[2, 0, 1]).is_irreducible());
    }
}
