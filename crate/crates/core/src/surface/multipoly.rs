//! Sparse multivariate polynomials over a finite field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, Polynomial};

/// Polynomial in `nvars` variables; exponent vectors map to nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl PartialOrd for MultiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars
            .cmp(&other.nvars)
            .then_with(|| self.total_degree().cmp(&other.total_degree()))
            .then_with(|| self.terms.iter().cmp(other.terms.iter()))
    }
}

impl std::hash::Hash for MultiPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        for (e, c) in &self.terms {
            e.hash(state);
            c.coefficients().hash(state);
        }
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<String> = match self.nvars {
            2 => vec!["u".into(), "v".into()],
            n => (0..n).map(|i| format!("X{i}")).collect(),
        };
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{k}", names[i]) })
                .collect();
            parts.push(match (c.is_one(), mono.is_empty()) {
                (_, true) => format!("{c}"),
                (true, false) => mono.join("*"),
                (false, false) => format!("{c}*{}", mono.join("*")),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl MultiPoly {
    pub fn zero(field: &FieldSpec, nvars: usize) -> Self {
        MultiPoly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement, nvars: usize) -> Self {
        let mut p = Self::zero(c.field(), nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(field: &FieldSpec, nvars: usize) -> Self {
        Self::constant(field.one(), nvars)
    }

    /// The variable with index `i`.
    pub fn var(field: &FieldSpec, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(field.one(), e)
    }

    pub fn monomial(c: FieldElement, exponents: Vec<u32>) -> Self {
        let mut p = Self::zero(c.field(), exponents.len());
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    /// Sum of the given terms; coefficients must lie in `field`.
    pub fn from_terms(
        field: &FieldSpec,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, FieldElement)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::InvalidInput(format!("exponent vector {e:?} for {nvars} variables")));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(format!("coefficient {c}")));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Convenience constructor from (coefficient, exponents) pairs with integer coefficients.
    pub fn from_i64(field: &FieldSpec, nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(field, nvars, terms.iter().map(|(c, e)| (e.to_vec(), field.from_i64(*c))))
            .expect("well-formed terms")
    }

    fn add_term(&mut self, e: Vec<u32>, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            Some(d) => degs.all(|x| x == d),
            None => true,
        }
    }

    /// Largest term in the lexicographic order of exponent vectors.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect();
        MultiPoly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    /// Scaled so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.field, self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients re-embedded into an extension of their prime field.
    pub fn lift_to(&self, field: &FieldSpec) -> Self {
        if &self.field == field {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), field.lift(c))).collect();
        MultiPoly { field: field.clone(), nvars: self.nvars, terms }
    }

    fn coerce(&self, c: &FieldElement, target: &FieldSpec) -> FieldElement {
        if c.field() == target {
            c.clone()
        } else {
            target.lift(c)
        }
    }

    /// Value at a point; prime-field coefficients are lifted into the point's field.
    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars, "point dimension");
        let target = point.first().map(|x| x.field().clone()).unwrap_or_else(|| self.field.clone());
        let mut acc = target.zero();
        for (e, c) in &self.terms {
            let mut t = self.coerce(c, &target);
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k as u64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                out.add_term(e2, c * &self.field.from_u64(e[var] as u64));
            }
        }
        out
    }

    /// Set variable `var` to one and drop it.
    pub fn dehomogenize(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.field, self.nvars - 1);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.remove(var);
            out.add_term(e2, c.clone());
        }
        out
    }

    /// f(x + a): moves the point `a` to the origin. The result lives over the point's field.
    pub fn translate(&self, a: &[FieldElement]) -> Self {
        let target = a.first().map(|x| x.field().clone()).unwrap_or_else(|| self.field.clone());
        let n = self.nvars;
        let shifted: Vec<MultiPoly> =
            (0..n).map(|i| &Self::var(&target, n, i) + &Self::constant(a[i].clone(), n)).collect();
        let mut out = Self::zero(&target, n);
        for (e, c) in &self.terms {
            let mut t = Self::constant(self.coerce(c, &target), n);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &shifted[i].pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Substitute a linear combination of the variables for each variable.
    pub fn linear_substitute(&self, images: &[MultiPoly]) -> Self {
        let target = images[0].field().clone();
        let mut out = Self::zero(&target, images[0].nvars);
        for (e, c) in &self.terms {
            let mut t = Self::constant(self.coerce(c, &target), images[0].nvars);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &images[i].pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Bivariate only: the univariate polynomial in variable `keep` after setting the other to `value`.
    pub fn restrict(&self, keep: usize, value: &FieldElement) -> Polynomial {
        assert_eq!(self.nvars, 2);
        let other = 1 - keep;
        let target = value.field().clone();
        let mut coeffs: Vec<FieldElement> = Vec::new();
        for (e, c) in &self.terms {
            let k = e[keep] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, target.zero());
            }
            let t = &self.coerce(c, &target) * &value.pow(e[other] as u64);
            coeffs[k] = &coeffs[k] + &t;
        }
        Polynomial::new(&target, coeffs)
    }

    /// Bivariate only: coefficients of powers of variable `main`, as polynomials in the other.
    pub fn coefficients_in(&self, main: usize) -> Vec<Polynomial> {
        assert_eq!(self.nvars, 2);
        let other = 1 - main;
        let deg = self.degree_in(main).unwrap_or(0) as usize;
        let mut raw: Vec<Vec<FieldElement>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let slot = &mut raw[e[main] as usize];
            let k = e[other] as usize;
            if slot.len() <= k {
                slot.resize(k + 1, self.field.zero());
            }
            slot[k] = c.clone();
        }
        raw.into_iter().map(|c| Polynomial::new(&self.field, c)).collect()
    }

    /// Division with remainder by a single divisor, lexicographic order.
    pub fn divrem(&self, d: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
        let (ld, lc) = d.leading_term().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inv()?;
        let mut q = Self::zero(&self.field, self.nvars);
        let mut r = Self::zero(&self.field, self.nvars);
        let mut p = self.clone();
        while let Some((e, c)) = p.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(ld).all(|(a, b)| a >= b) {
                let shift: Vec<u32> = e.iter().zip(ld).map(|(a, b)| a - b).collect();
                let t = Self::monomial(&c * &lc_inv, shift);
                p = &p - &(&t * d);
                q = &q + &t;
            } else {
                p.terms.remove(&e);
                r.add_term(e, c);
            }
        }
        Ok((q, r))
    }

    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Largest k with d^k dividing self (self nonzero).
    pub fn multiplicity_of(&self, d: &MultiPoly) -> usize {
        let mut k = 0;
        let mut cur = self.clone();
        while !cur.is_zero() && d.total_degree().unwrap_or(0) > 0 {
            match cur.exact_div(d) {
                Some(q) => {
                    cur = q;
                    k += 1;
                }
                None => break,
            }
        }
        k
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self + &(-o)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        MultiPoly { field: self.field.clone(), nvars: self.nvars, terms }
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_division() {
        let f = FieldSpec::prime(7).unwrap();
        let u = MultiPoly::var(&f, 2, 0);
        let v = MultiPoly::var(&f, 2, 1);
        let a = &(&u * &v) + &u;
        let b = &(&u - &v) * &a;
        assert_eq!(b.exact_div(&a).unwrap(), &u - &v);
        assert!(b.exact_div(&(&u + &v)).is_none());
        assert_eq!(b.multiplicity_of(&u), 1);
        assert_eq!((&b * &u).multiplicity_of(&u), 2);
        let t = a.translate(&[f.one(), f.from_i64(2)]);
        assert_eq!(t.eval(&[f.zero(), f.zero()]), a.eval(&[f.one(), f.from_i64(2)]));
        assert_eq!(a.partial(1), u);
    }
}
