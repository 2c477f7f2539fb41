//! Exact arithmetic over GF(p) and GF(p^k).
//!
//! A [`FieldSpec`] is a cheap handle (reference counted) describing the field;
//! every [`FieldElement`] carries the handle of the field it lives in. Arithmetic between
//! elements of different fields is a contract violation: the operator impls
//! panic, the `try_*` methods report [`Error::FieldMismatch`].

mod factor;
pub mod linalg;
mod poly;
mod rational;
mod series;

pub use factor::{factor_polynomial, factor_polynomial_seeded, roots, Factorization};
pub use poly::Polynomial;
pub use rational::{normalize_rational, RationalFunction};
pub use series::Series;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug)]
struct SpecInner {
    p: u64,
    k: usize,
    /// Monic modulus, low degree first, length `k + 1`. Empty for prime fields.
    modulus: Vec<u64>,
}

/// Description of a finite field GF(p^k) = GF(p)[a]/(modulus).
#[derive(Clone)]
pub struct FieldSpec(Arc<SpecInner>);

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})[{:?}]", self.0.p, self.0.k, self.0.modulus)
        }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.k.hash(state);
        self.0.modulus.hash(state);
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!("characteristic {p} too large")));
        }
        Ok(FieldSpec(Arc::new(SpecInner { p, k: 1, modulus: Vec::new() })))
    }

    /// GF(p)[a]/(modulus) for a user supplied monic modulus (low degree first).
    ///
    /// Irreducibility is verified, never trusted. A degree one modulus yields
    /// the prime field itself.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Self> {
        let base = Self::prime(p)?;
        let coeffs: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        let poly = Polynomial::from_u64(&base, &coeffs);
        let k = poly.degree().ok_or_else(|| Error::InvalidField("zero modulus".into()))?;
        if k == 0 {
            return Err(Error::InvalidField("constant modulus".into()));
        }
        if !poly.leading().is_one() {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if k == 1 {
            return Ok(base);
        }
        if !poly.is_irreducible() {
            return Err(Error::InvalidField(format!("modulus {poly} is reducible over GF({p})")));
        }
        Ok(Self::from_verified(p, poly))
    }

    /// GF(p^k) presented by the lexicographically first monic irreducible
    /// polynomial of degree k. Two calls with the same arguments give equal specs.
    pub fn canonical_extension(p: u64, k: usize) -> Result<Self> {
        let base = Self::prime(p)?;
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        if k == 1 {
            return Ok(base);
        }
        let mut digits = vec![0u64; k];
        loop {
            let mut coeffs = digits.clone();
            coeffs.push(1);
            let poly = Polynomial::from_u64(&base, &coeffs);
            if poly.is_irreducible() {
                return Ok(Self::from_verified(p, poly));
            }
            // odometer increment
            let mut i = 0;
            loop {
                if i == k {
                    return Err(Error::InvalidField(format!("no irreducible of degree {k}")));
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    /// The residue field GF(p)[t]/(poly) of a monic irreducible prime-field polynomial.
    pub(crate) fn from_irreducible(poly: &Polynomial) -> Self {
        let field = poly.field();
        debug_assert_eq!(field.degree(), 1);
        if poly.degree() == Some(1) {
            return field.clone();
        }
        Self::from_verified(field.characteristic(), poly.clone())
    }

    fn from_verified(p: u64, poly: Polynomial) -> Self {
        let k = poly.degree().unwrap_or(0);
        let modulus = poly.coeffs().iter().map(|c| c.coeff(0)).collect();
        FieldSpec(Arc::new(SpecInner { p, k, modulus }))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Extension degree k over the prime field.
    pub fn degree(&self) -> usize {
        self.0.k
    }

    /// Field order p^k.
    pub fn order(&self) -> u128 {
        (self.0.p as u128).pow(self.0.k as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    /// The prime subfield GF(p).
    pub fn prime_field(&self) -> FieldSpec {
        if self.is_prime_field() {
            self.clone()
        } else {
            FieldSpec(Arc::new(SpecInner { p: self.0.p, k: 1, modulus: Vec::new() }))
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), c: vec![0; self.0.k] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> FieldElement {
        let mut c = vec![0; self.0.k];
        c[0] = n % self.0.p;
        FieldElement { field: self.clone(), c }
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        let p = self.0.p as i64;
        self.from_u64(n.rem_euclid(p) as u64)
    }

    /// Element from its coefficient vector in the power basis 1, a, a², ...
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.k {
            return Err(Error::InvalidInput(format!("{} coefficients for a degree {} field", coeffs.len(), self.0.k)));
        }
        let mut c = vec![0; self.0.k];
        for (dst, src) in c.iter_mut().zip(coeffs) {
            *dst = src % self.0.p;
        }
        Ok(FieldElement { field: self.clone(), c })
    }

    /// The generator a of the power basis; `None` for a prime field.
    pub fn generator(&self) -> Option<FieldElement> {
        if self.0.k == 1 {
            return None;
        }
        let mut c = vec![0; self.0.k];
        c[1] = 1;
        Some(FieldElement { field: self.clone(), c })
    }

    /// Embed an element of the prime field.
    pub fn lift(&self, e: &FieldElement) -> FieldElement {
        assert!(e.field.is_prime_field() && e.field.0.p == self.0.p, "lift from a non-prime field");
        self.from_u64(e.c[0])
    }

    /// All elements, in coefficient-lexicographic order. Intended for small fields.
    pub fn elements(&self) -> Vec<FieldElement> {
        self.iter_elements().collect()
    }

    /// The same order as `elements`, produced lazily.
    pub fn iter_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let p = self.0.p as u128;
        (0..self.order()).map(move |mut n| {
            let mut c = vec![0u64; self.0.k];
            for slot in c.iter_mut() {
                *slot = (n % p) as u64;
                n /= p;
            }
            FieldElement { field: self.clone(), c }
        })
    }

    /// A deterministic generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        let q1 = self.order() - 1;
        let primes = prime_factors_u128(q1);
        for g in self.iter_elements().skip(1) {
            if primes.iter().all(|&r| !g.pow_u128(q1 / r).is_one()) {
                return g;
            }
        }
        unreachable!("finite fields have primitive elements")
    }
}

fn prime_factors_u128(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid on integers
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i128) as u64
}

/// An element of a finite field, stored as coefficients in the power basis.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldSpec,
    c: Vec<u64>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.0.k == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let mut terms = Vec::new();
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, _) => format!("{c}"),
                (1, 1) => "a".to_string(),
                (1, _) => format!("{c}a"),
                (_, 1) => format!("a^{i}"),
                _ => format!("{c}a^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.cmp(&other.c)
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.c
    }

    pub(crate) fn coeff(&self, i: usize) -> u64 {
        self.c[i]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    /// Whether the element lies in the prime subfield.
    pub fn is_prime_subfield(&self) -> bool {
        self.c[1..].iter().all(|&x| x == 0)
    }

    /// Reinterpret an element of the prime subfield as an element of GF(p).
    pub fn to_prime_field(&self) -> Option<FieldElement> {
        self.is_prime_subfield().then(|| self.field.prime_field().from_u64(self.c[0]))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!("{:?} vs {:?}", self.field, other.field)))
        }
    }

    fn expect_same(&self, other: &Self) {
        if let Err(e) = self.check(other) {
            panic!("{e}");
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let inv = other.inv()?;
        Ok(self * &inv)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.0.p;
        if self.field.0.k == 1 {
            return Ok(self.field.from_u64(inv_mod(self.c[0], p)));
        }
        // extended Euclid in GF(p)[a] against the modulus
        let m = &self.field.0.modulus;
        let (mut r0, mut r1) = (m.clone(), trim(self.c.clone()));
        let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (vec![], vec![1]);
        while !r1.is_empty() {
            let (q, r) = raw_divrem(&r0, &r1, p);
            let t2 = raw_sub(&t0, &raw_mul(&q, &t1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t2);
        }
        // r0 is a nonzero constant
        let scale = inv_mod(r0[0], p);
        let mut c: Vec<u64> = t0.iter().map(|&x| mulmod(x, scale, p)).collect();
        c.resize(self.field.0.k, 0);
        Ok(FieldElement { field: self.field.clone(), c })
    }

    pub fn pow(&self, e: u64) -> Self {
        self.pow_u128(e as u128)
    }

    pub fn pow_u128(&self, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    pub fn frobenius(&self) -> Self {
        self.pow(self.field.0.p)
    }

    /// N(a) = a · a^p · … · a^{p^{k-1}}, returned as an element of GF(p).
    pub fn norm_to_prime_field(&self) -> FieldElement {
        let mut acc = self.field.one();
        let mut conj = self.clone();
        for _ in 0..self.field.0.k {
            acc = &acc * &conj;
            conj = conj.frobenius();
        }
        acc.to_prime_field().expect("norm lies in the prime field")
    }

    /// Tr(a) = a + a^p + … + a^{p^{k-1}}, returned as an element of GF(p).
    pub fn trace_to_prime_field(&self) -> FieldElement {
        let mut acc = self.field.zero();
        let mut conj = self.clone();
        for _ in 0..self.field.0.k {
            acc = &acc + &conj;
            conj = conj.frobenius();
        }
        acc.to_prime_field().expect("trace lies in the prime field")
    }

    /// Square root, if one exists (odd characteristic only).
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let q = self.field.order();
        if q.is_multiple_of(2) {
            // squaring is a bijection in characteristic 2
            return Some(self.pow_u128(q / 2));
        }
        if !self.pow_u128((q - 1) / 2).is_one() {
            return None;
        }
        // Tonelli-Shanks
        let mut s = 0u32;
        let mut t = q - 1;
        while t.is_multiple_of(2) {
            t /= 2;
            s += 1;
        }
        let z =
            self.field.iter_elements().skip(1).find(|z| !z.pow_u128((q - 1) / 2).is_one()).expect("non-residue exists");
        let mut m = s;
        let mut c = z.pow_u128(t);
        let mut x = self.pow_u128(t.div_ceil(2));
        let mut b = self.pow_u128(t);
        while !b.is_one() {
            let mut i = 0;
            let mut b2 = b.clone();
            while !b2.is_one() {
                b2 = &b2 * &b2;
                i += 1;
            }
            let mut g = c.clone();
            for _ in 0..(m - i - 1) {
                g = &g * &g;
            }
            x = &x * &g;
            c = &g * &g;
            b = &b * &c;
            m = i;
        }
        Some(x)
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// Smallest subfield degree containing the element (size of its Frobenius orbit).
    pub fn orbit_size(&self) -> usize {
        let mut conj = self.frobenius();
        let mut n = 1;
        while conj != *self {
            conj = conj.frobenius();
            n += 1;
        }
        n
    }
}

// ---- raw coefficient-vector helpers over GF(p), low degree first ----

pub(crate) fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn raw_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn raw_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn raw_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = inv_mod(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let coef = mulmod(*r.last().unwrap(), lead_inv, p);
        q[shift] = coef;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - mulmod(coef, bj, p)) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn reduce_mod(v: &mut Vec<u64>, modulus: &[u64], p: u64) {
    let k = modulus.len() - 1;
    while v.len() > k {
        let top = v.pop().unwrap();
        if top == 0 {
            continue;
        }
        let base = v.len() - k;
        for j in 0..k {
            v[base + j] = (v[base + j] + p - mulmod(top, modulus[j], p)) % p;
        }
    }
    v.resize(k, 0);
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.expect_same(rhs);
        let p = self.field.0.p;
        let c = self.c.iter().zip(&rhs.c).map(|(a, b)| (a + b) % p).collect();
        FieldElement { field: self.field.clone(), c }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.expect_same(rhs);
        let p = self.field.0.p;
        let c = self.c.iter().zip(&rhs.c).map(|(a, b)| (a + p - b) % p).collect();
        FieldElement { field: self.field.clone(), c }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.expect_same(rhs);
        let p = self.field.0.p;
        let k = self.field.0.k;
        if k == 1 {
            return FieldElement { field: self.field.clone(), c: vec![mulmod(self.c[0], rhs.c[0], p)] };
        }
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in rhs.c.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mulmod(x, y, p)) % p;
            }
        }
        reduce_mod(&mut prod, &self.field.0.modulus, p);
        FieldElement { field: self.field.clone(), c: prod }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.try_div(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.field.0.p;
        let c = self.c.iter().map(|&a| (p - a) % p).collect();
        FieldElement { field: self.field.clone(), c }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Minimal polynomial over GF(p) of an element of any finite field.
pub fn minimal_polynomial(a: &FieldElement) -> Polynomial {
    let field = a.field();
    let mut acc = Polynomial::one(field);
    let mut conj = a.clone();
    for _ in 0..a.orbit_size() {
        acc = &acc * &Polynomial::linear(&conj);
        conj = conj.frobenius();
    }
    let prime = field.prime_field();
    let coeffs = acc.coeffs().iter().map(|c| c.to_prime_field().expect("conjugate products are rational")).collect();
    Polynomial::new(&prime, coeffs)
}

/// Re-express elements of one field inside the canonical GF(p^d), where d is
/// the least common multiple of their orbit sizes.
///
/// All elements are mapped through the same embedding, so algebraic relations
/// among them survive.
pub fn descend(elems: &[FieldElement]) -> Vec<FieldElement> {
    let Some(first) = elems.first() else { return Vec::new() };
    let field = first.field().clone();
    let p = field.characteristic();
    let d = elems.iter().fold(1usize, |acc, e| lcm(acc, e.orbit_size()));
    let target = FieldSpec::canonical_extension(p, d).expect("valid extension degree");
    if field == target {
        return elems.to_vec();
    }
    if d == 1 {
        return elems.iter().map(|e| e.to_prime_field().expect("rational element")).collect();
    }
    // image in `field` of the generator of the canonical GF(p^d)
    let modulus = Polynomial::from_u64(&field.prime_field(), target.modulus()).lift_to(&field);
    let r = roots(&modulus).expect("nonzero")[0].clone();
    let e = field.degree();
    let mut powers = Vec::with_capacity(d);
    let mut acc = field.one();
    for _ in 0..d {
        powers.push(acc.clone());
        acc = &acc * &r;
    }
    let prime = field.prime_field();
    let rows = (0..e).map(|i| powers.iter().map(|w| prime.from_u64(w.coeff(i))).collect()).collect();
    let m = linalg::Matrix::from_rows(&prime, rows, d);
    elems
        .iter()
        .map(|x| {
            let rhs: Vec<FieldElement> = (0..e).map(|i| prime.from_u64(x.coeff(i))).collect();
            let sol = m.solve(&rhs).expect("element lies in the subfield");
            let raw: Vec<u64> = sol.iter().map(|c| c.coeff(0)).collect();
            target.element(&raw).expect("d coefficients")
        })
        .collect()
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// N_{GF(p^k)/GF(p)}(a).
pub fn norm_to_prime_field(a: &FieldElement) -> FieldElement {
    a.norm_to_prime_field()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf9() -> FieldSpec {
        FieldSpec::extension(3, &[1, 0, 1]).unwrap()
    }

    #[test]
    fn norm_examples_in_gf9() {
        let f = gf9();
        let i = f.element(&[0, 1]).unwrap();
        assert_eq!(i.norm_to_prime_field().coefficients(), &[1]);
        let one_plus_i = f.element(&[1, 1]).unwrap();
        assert_eq!(one_plus_i.norm_to_prime_field().coefficients(), &[2]);
        assert_eq!(f.from_u64(2).norm_to_prime_field().coefficients(), &[1]);
        assert!(f.zero().norm_to_prime_field().is_zero());
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x+2)(x+3) over GF(5)
        assert!(matches!(FieldSpec::extension(5, &[1, 0, 1]), Err(Error::InvalidField(_))));
        assert!(FieldSpec::extension(5, &[2, 0, 1]).is_ok());
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::extension(5, &[1, 0, 2]).is_err());
    }

    #[test]
    fn canonical_extension_is_stable() {
        let a = FieldSpec::canonical_extension(7, 2).unwrap();
        let b = FieldSpec::canonical_extension(7, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.order(), 49);
        // first monic irreducible quadratic over GF(7) is x^2 + 1
        assert_eq!(a.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn inverse_and_sqrt() {
        let f = FieldSpec::canonical_extension(5, 3).unwrap();
        for a in f.iter_elements().skip(1) {
            assert!((&a * &a.inv().unwrap()).is_one());
            let sq = &a * &a;
            let r = sq.sqrt().unwrap();
            assert_eq!(&r * &r, sq);
        }
        let g = FieldSpec::prime(7).unwrap();
        assert!(g.from_u64(3).sqrt().is_none());
    }

    #[test]
    fn mismatched_fields_are_errors() {
        let a = FieldSpec::prime(5).unwrap().one();
        let b = FieldSpec::prime(7).unwrap().one();
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn descend_preserves_relations() {
        let big = FieldSpec::canonical_extension(5, 4).unwrap();
        // an element of the quadratic subfield: g^{(5^4-1)/(5^2-1)}
        let g = big.primitive_element();
        let x = g.pow(26);
        assert_eq!(x.orbit_size(), 2);
        let y = &x * &x;
        let out = descend(&[x.clone(), y]);
        assert_eq!(out[0].field().degree(), 2);
        assert_eq!(&out[0] * &out[0], out[1]);
        assert_eq!(minimal_polynomial(&x), minimal_polynomial(&out[0]));
    }

    #[test]
    fn primitive_element_generates() {
        let f = FieldSpec::canonical_extension(3, 2).unwrap();
        let g = f.primitive_element();
        let mut seen = std::collections::BTreeSet::new();
        let mut x = f.one();
        for _ in 0..8 {
            seen.insert(x.clone());
            x = &x * &g;
        }
        assert_eq!(seen.len(), 8);
    }
}
