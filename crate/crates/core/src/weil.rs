//! Miller functions, the Weil pairing on rational l-torsion and the curve-level
//! Massey triple product.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::curve::{Curve, Divisor, Function, Place, Point};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::signs::as_decimal;

/// A formal product c · Π hᵢ^{eᵢ} of functions on an elliptic curve, together
/// with its divisor. The product is never expanded for evaluation.
#[derive(Clone, PartialEq, Eq)]
pub struct MillerFunction {
    curve: Curve,
    constant: FieldElement,
    factors: Vec<(Function, i64)>,
    divisor: Divisor,
}

impl fmt::Debug for MillerFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MillerFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (h, e) in &self.factors {
            if *e == 1 {
                write!(f, "·({h})")?;
            } else {
                write!(f, "·({h})^{e}")?;
            }
        }
        Ok(())
    }
}

impl MillerFunction {
    /// Checked constructor: Σ eᵢ·div(hᵢ) must equal `divisor`.
    pub fn new(curve: &Curve, constant: FieldElement, factors: Vec<(Function, i64)>, divisor: Divisor) -> Result<Self> {
        let out = Self::unchecked(curve, constant, factors, divisor)?;
        out.verify()?;
        Ok(out)
    }

    fn unchecked(
        curve: &Curve,
        constant: FieldElement,
        factors: Vec<(Function, i64)>,
        divisor: Divisor,
    ) -> Result<Self> {
        if constant.is_zero() || constant.field() != curve.field() {
            return Err(Error::InvalidInput("Miller constant must be a unit of the base field".into()));
        }
        if divisor.curve() != curve {
            return Err(Error::CurveMismatch("declared divisor lives on another curve".into()));
        }
        let mut out = MillerFunction { curve: curve.clone(), constant, factors: Vec::new(), divisor };
        for (h, e) in factors {
            out.push_factor(h, e)?;
        }
        Ok(out)
    }

    fn verify(&self) -> Result<()> {
        let mut total = Divisor::zero(&self.curve);
        for (h, e) in &self.factors {
            total = total.try_add(&h.principal_divisor()?.scale(*e))?;
        }
        if total != self.divisor {
            return Err(Error::DegenerateSymbol(format!(
                "factored divisor {total} differs from declared divisor {}",
                self.divisor
            )));
        }
        Ok(())
    }

    pub fn one(curve: &Curve) -> Self {
        MillerFunction {
            curve: curve.clone(),
            constant: curve.field().one(),
            factors: Vec::new(),
            divisor: Divisor::zero(curve),
        }
    }

    /// The function h itself, as a single factor.
    pub fn from_function(h: &Function) -> Result<Self> {
        let curve = h.curve().clone();
        let divisor = h.principal_divisor()?;
        Self::unchecked(&curve, curve.field().one(), vec![(h.clone(), 1)], divisor)
    }

    fn push_factor(&mut self, h: Function, e: i64) -> Result<()> {
        if h.curve() != &self.curve {
            return Err(Error::CurveMismatch("Miller factor on another curve".into()));
        }
        if h.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        if e == 0 {
            return Ok(());
        }
        if let Some(c) = h.constant_value() {
            self.constant = &self.constant * &c.powi(e)?;
            return Ok(());
        }
        if let Some(slot) = self.factors.iter_mut().find(|(g, _)| g == &h) {
            slot.1 += e;
        } else {
            self.factors.push((h, e));
        }
        self.factors.retain(|(_, e)| *e != 0);
        Ok(())
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn constant(&self) -> &FieldElement {
        &self.constant
    }

    pub fn factors(&self) -> &[(Function, i64)] {
        &self.factors
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn times(&self, other: &MillerFunction) -> Result<Self> {
        if other.curve != self.curve {
            return Err(Error::CurveMismatch("Miller functions on different curves".into()));
        }
        let mut out = self.clone();
        out.constant = &out.constant * &other.constant;
        for (h, e) in &other.factors {
            out.push_factor(h.clone(), *e)?;
        }
        out.divisor = out.divisor.try_add(&other.divisor)?;
        Ok(out)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let mut out = MillerFunction::one(&self.curve);
        out.constant = self.constant.powi(k)?;
        for (h, e) in &self.factors {
            out.push_factor(h.clone(), e * k)?;
        }
        out.divisor = self.divisor.scale(k);
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut out = self.clone();
        out.constant = &out.constant * &self.curve.field().lift(c);
        Ok(out)
    }

    /// The expanded product, for callers that need an honest function.
    pub fn expand(&self) -> Result<Function> {
        let mut acc = Function::constant(&self.curve, self.constant.clone());
        for (h, e) in &self.factors {
            acc = acc.try_mul(&h.powi(*e)?)?;
        }
        Ok(acc)
    }

    /// Value in k(v). Leading coefficients with respect to the fixed local
    /// uniformizer are multiplicative, so factors that vanish or have poles at v
    /// are fine as long as the total order is zero.
    pub fn value_at(&self, place: &Place) -> Result<FieldElement> {
        let k = self.curve.residue_field(place);
        let mut acc = k.lift(&self.constant);
        let mut order = 0;
        for (h, e) in &self.factors {
            let (v, lc) = h.leading_term(place)?;
            order += v * e;
            acc = &acc * &lc.powi(*e)?;
        }
        if order != 0 {
            return Err(Error::DegenerateSymbol(format!("order {order} at {place}")));
        }
        Ok(acc)
    }

    /// f(D) = Π N_{k(v)/k}(f(v))^{D(v)}.
    pub fn evaluate(&self, d: &Divisor) -> Result<FieldElement> {
        if d.curve() != &self.curve {
            return Err(Error::CurveMismatch("divisor on another curve".into()));
        }
        let mut acc = self.curve.field().one();
        for (place, m) in d.iter() {
            let v = self.value_at(place)?.norm_to_prime_field();
            acc = &acc * &self.curve.field().lift(&v).powi(*m)?;
        }
        Ok(acc)
    }
}

fn require_rational(curve: &Curve, pt: &Point) -> Result<()> {
    if !curve.contains(pt) {
        return Err(Error::OffCurve(format!("{pt}")));
    }
    match pt {
        Point::Affine(x, _) if x.field() != curve.field() => {
            Err(Error::InvalidInput(format!("{pt} is not a base-field point")))
        }
        _ => Ok(()),
    }
}

fn check_torsion(curve: &Curve, pt: &Point, l: i64) -> Result<()> {
    if !curve.is_elliptic() {
        return Err(Error::CurveMismatch("Weil pairing needs an elliptic curve".into()));
    }
    if l < 1 {
        return Err(Error::InvalidInput("l must be positive".into()));
    }
    if (l as u64).is_multiple_of(curve.field().characteristic()) {
        return Err(Error::TorsionCharacteristic);
    }
    require_rational(curve, pt)?;
    if !curve.scalar_multiple(l, pt)?.is_infinity() {
        return Err(Error::NotTorsion(format!("{l}·{pt} ≠ O")));
    }
    Ok(())
}

/// x − x(C), or nothing at O.
fn vertical(curve: &Curve, c: &Point) -> Option<Function> {
    c.x().map(|x| &Function::x(curve) - &Function::constant(curve, x.clone()))
}

/// The line through A and B (tangent when A = B); vertical when B = −A.
fn chord(curve: &Curve, a: &Point, b: &Point) -> Result<Option<Function>> {
    let (xa, ya, xb, yb) = match (a, b) {
        (Point::Infinity, Point::Infinity) => return Ok(None),
        (Point::Infinity, p) | (p, Point::Infinity) => return Ok(vertical(curve, p)),
        (Point::Affine(xa, ya), Point::Affine(xb, yb)) => (xa, ya, xb, yb),
    };
    if xa == xb && (ya + yb).is_zero() {
        return Ok(vertical(curve, a));
    }
    let k = curve.field();
    let lambda = if xa == xb {
        &(&(&k.from_u64(3) * &(xa * xa)) + &curve.a()) / &(&k.from_u64(2) * ya)
    } else {
        &(yb - ya) / &(xb - xa)
    };
    let x = Function::x(curve);
    let y = Function::y(curve)?;
    let shifted = &x - &Function::constant(curve, xa.clone());
    let line = &(&y - &Function::constant(curve, ya.clone())) - &shifted.scale(&lambda);
    Ok(Some(line))
}

fn push_opt(m: &mut MillerFunction, h: Option<Function>, e: i64) -> Result<()> {
    match h {
        Some(h) => m.push_factor(h, e),
        None => Ok(()),
    }
}

/// A function with divisor l·(P+R) − l·(R), kept as a product of lines.
pub fn miller_function(curve: &Curve, p: &Point, l: i64, r: &Point) -> Result<MillerFunction> {
    check_torsion(curve, p, l)?;
    require_rational(curve, r)?;
    if p.is_infinity() {
        return Ok(MillerFunction::one(curve));
    }
    let pr = curve.add_points(p, r)?;
    // h₁ has divisor (P+R) − (R) − (P) + (O)
    let mut h1 = MillerFunction::one(curve);
    push_opt(&mut h1, vertical(curve, &pr), 1)?;
    push_opt(&mut h1, chord(curve, p, r)?, -1)?;

    // hᵢ has divisor i(P+R) − i(R) − (iP) + (O)
    let mut h = h1.clone();
    let mut ip = p.clone();
    let bits = 63 - l.leading_zeros();
    for bit in (0..bits).rev() {
        let double = curve.add_points(&ip, &ip)?;
        h = h.pow(2)?;
        push_opt(&mut h, chord(curve, &ip, &ip)?, 1)?;
        push_opt(&mut h, vertical(curve, &double), -1)?;
        ip = double;
        if (l >> bit) & 1 == 1 {
            let next = curve.add_points(&ip, p)?;
            h = h.times(&h1)?;
            push_opt(&mut h, chord(curve, &ip, p)?, 1)?;
            push_opt(&mut h, vertical(curve, &next), -1)?;
            ip = next;
        }
    }
    let divisor = Divisor::from_terms(curve, [(curve.point_place(&pr)?, l), (curve.point_place(r)?, -l)])?;
    let factors = std::mem::take(&mut h.factors);
    MillerFunction::new(curve, h.constant, factors, divisor)
}

/// A pairing value together with its multiplicative order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingValue {
    #[serde(serialize_with = "as_decimal")]
    pub value: FieldElement,
    #[serde(serialize_with = "as_decimal")]
    pub order: u64,
}

impl PairingValue {
    fn new(value: FieldElement, l: i64) -> Result<Self> {
        let l = l as u64;
        if !value.pow(l).is_one() {
            return Err(Error::InvalidInput(format!("{value} is not an {l}-th root of unity")));
        }
        let order = (1..=l).find(|d| l.is_multiple_of(*d) && value.pow(*d).is_one()).unwrap_or(l);
        Ok(PairingValue { value, order })
    }

    pub fn pow(&self, e: i64, l: i64) -> Result<Self> {
        Self::new(self.value.powi(e)?, l)
    }
}

impl fmt::Display for PairingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn translate_list(curve: &Curve) -> Result<Vec<Point>> {
    curve.rational_points()
}

/// ψ_l(P, Q) = f(E′) · g(−D), with D = (P+S) − (S), E′ = (Q+R) − (R) and
/// div f = l·D, div g = l·E′.
pub fn weil_pairing_idelic(curve: &Curve, p: &Point, q: &Point, l: i64) -> Result<PairingValue> {
    check_torsion(curve, p, l)?;
    check_torsion(curve, q, l)?;
    if p.is_infinity() || q.is_infinity() {
        return PairingValue::new(curve.field().one(), l);
    }
    let offsets = translate_list(curve)?;
    for s in &offsets {
        let ps = curve.add_points(p, s)?;
        let d = Divisor::from_terms(curve, [(curve.point_place(&ps)?, 1), (curve.point_place(s)?, -1)])?;
        let f = miller_function(curve, p, l, s)?;
        for r in &offsets {
            let qr = curve.add_points(q, r)?;
            if [&qr, r].iter().any(|x| *x == &ps || *x == s) {
                continue;
            }
            let e = Divisor::from_terms(curve, [(curve.point_place(&qr)?, 1), (curve.point_place(r)?, -1)])?;
            let g = miller_function(curve, q, l, r)?;
            let fe = match f.evaluate(&e) {
                Ok(v) => v,
                Err(Error::DegenerateSymbol(_)) => continue,
                Err(err) => return Err(err),
            };
            let gd = match g.evaluate(&d) {
                Ok(v) => v,
                Err(Error::DegenerateSymbol(_)) => continue,
                Err(err) => return Err(err),
            };
            return PairingValue::new(&fe / &gd, l);
        }
    }
    Err(Error::NoAuxiliaryChoice(format!("no disjoint representatives for ψ_{l}({p}, {q})")))
}

/// Value at X of the Miller function f_P with divisor l(P) − l(O),
/// computed directly from the chord-and-tangent recursion. `None` when some
/// line vanishes at X.
fn miller_loop_at(curve: &Curve, p: &Point, l: i64, x: &Point) -> Result<Option<FieldElement>> {
    let (xx, yx) = match x {
        Point::Affine(a, b) => (a.clone(), b.clone()),
        Point::Infinity => return Ok(None),
    };
    let k = curve.field();
    let line_at = |a: &Point, b: &Point| -> FieldElement {
        let (xa, ya, xb, yb) = match (a, b) {
            (Point::Infinity, Point::Infinity) => return k.one(),
            (Point::Infinity, Point::Affine(xc, _)) | (Point::Affine(xc, _), Point::Infinity) => return &xx - xc,
            (Point::Affine(xa, ya), Point::Affine(xb, yb)) => (xa, ya, xb, yb),
        };
        if xa == xb && (ya + yb).is_zero() {
            return &xx - xa;
        }
        let lambda = if xa == xb {
            &(&(&k.from_u64(3) * &(xa * xa)) + &curve.a()) / &(&k.from_u64(2) * ya)
        } else {
            &(yb - ya) / &(xb - xa)
        };
        &(&yx - ya) - &(&lambda * &(&xx - xa))
    };
    let vert_at = |c: &Point| -> FieldElement {
        match c {
            Point::Infinity => k.one(),
            Point::Affine(xc, _) => &xx - xc,
        }
    };
    let mut num = k.one();
    let mut den = k.one();
    let mut t = p.clone();
    let bits = 63 - l.leading_zeros();
    for bit in (0..bits).rev() {
        let t2 = curve.add_points(&t, &t)?;
        num = &(&num * &num) * &line_at(&t, &t);
        den = &(&den * &den) * &vert_at(&t2);
        t = t2;
        if (l >> bit) & 1 == 1 {
            let t1 = curve.add_points(&t, p)?;
            num = &num * &line_at(&t, p);
            den = &den * &vert_at(&t1);
            t = t1;
        }
    }
    if num.is_zero() || den.is_zero() {
        return Ok(None);
    }
    Ok(Some(&num / &den))
}

/// Textbook Weil pairing: e(P, Q) = f_P(Q+S) f_Q(−S) / (f_P(S) f_Q(P−S)).
pub fn weil_pairing_miller(curve: &Curve, p: &Point, q: &Point, l: i64) -> Result<PairingValue> {
    check_torsion(curve, p, l)?;
    check_torsion(curve, q, l)?;
    if p.is_infinity() || q.is_infinity() {
        return PairingValue::new(curve.field().one(), l);
    }
    for s in curve.rational_points()? {
        let qs = curve.add_points(q, &s)?;
        let neg_s = curve.negate(&s)?;
        let ps = curve.sub_points(p, &s)?;
        let vals = (
            miller_loop_at(curve, p, l, &qs)?,
            miller_loop_at(curve, q, l, &neg_s)?,
            miller_loop_at(curve, p, l, &s)?,
            miller_loop_at(curve, q, l, &ps)?,
        );
        if let (Some(a), Some(b), Some(c), Some(d)) = vals {
            return PairingValue::new(&(&a * &b) / &(&c * &d), l);
        }
    }
    Err(Error::NoAuxiliaryChoice(format!("no auxiliary point for e_{l}({p}, {q})")))
}

/// An l-torsion divisor class: a degree-0 divisor Y with a chain f, div f = l·Y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionClass {
    divisor: Divisor,
    chain: MillerFunction,
    l: i64,
}

impl TorsionClass {
    pub fn new(divisor: Divisor, chain: MillerFunction, l: i64) -> Result<Self> {
        if l < 1 {
            return Err(Error::InvalidInput("l must be positive".into()));
        }
        if divisor.degree() != 0 {
            return Err(Error::InvalidInput(format!("{divisor} has nonzero degree")));
        }
        if chain.divisor() != &divisor.scale(l) {
            return Err(Error::InvalidInput(format!("chain divisor is not {l}·({divisor})")));
        }
        Ok(TorsionClass { divisor, chain, l })
    }

    /// (P+R) − (R) with its Miller chain.
    pub fn from_point(curve: &Curve, p: &Point, l: i64, r: &Point) -> Result<Self> {
        let chain = miller_function(curve, p, l, r)?;
        let pr = curve.add_points(p, r)?;
        let divisor = Divisor::from_terms(curve, [(curve.point_place(&pr)?, 1), (curve.point_place(r)?, -1)])?;
        Self::new(divisor, chain, l)
    }

    /// The trivial class div(h), with chain h^l.
    pub fn principal(h: &Function, l: i64) -> Result<Self> {
        let chain = MillerFunction::from_function(h)?.pow(l)?;
        Self::new(h.principal_divisor()?, chain, l)
    }

    /// Y + div(h), with chain f·h^l.
    pub fn add_principal(&self, h: &Function) -> Result<Self> {
        let extra = TorsionClass::principal(h, self.l)?;
        Self::new(self.divisor.try_add(&extra.divisor)?, self.chain.times(&extra.chain)?, self.l)
    }

    pub fn scale_chain(&self, c: &FieldElement) -> Result<Self> {
        Self::new(self.divisor.clone(), self.chain.scale(c)?, self.l)
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn chain(&self) -> &MillerFunction {
        &self.chain
    }

    pub fn l(&self) -> i64 {
        self.l
    }
}

/// The Gersten cocycle representing m₃(α, l, β) and its direct image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasseyOutput {
    pub cocycle: BTreeMap<Place, FieldElement>,
    pub direct_image: FieldElement,
}

/// Π over the support of N_{k(v)/k}(value).
pub fn direct_image(field: &FieldSpec, cocycle: &BTreeMap<Place, FieldElement>) -> FieldElement {
    cocycle.values().fold(field.one(), |acc, v| &acc * &field.lift(&v.norm_to_prime_field()))
}

/// −(Σ_z f(z)^{Z(z)}·z + Σ_y g(y)^{−Y(y)}·y), written multiplicatively.
pub fn massey_triple_curve(alpha: &TorsionClass, beta: &TorsionClass, l: i64) -> Result<MasseyOutput> {
    if alpha.l != l || beta.l != l {
        return Err(Error::InvalidInput(format!("classes are not {l}-torsion chains")));
    }
    let curve = alpha.divisor.curve();
    if beta.divisor.curve() != curve {
        return Err(Error::CurveMismatch("classes on different curves".into()));
    }
    if let Some(v) = alpha.divisor.support().find(|v| beta.divisor.get(v) != 0) {
        return Err(Error::OverlappingSupports(format!("both representatives contain {v}")));
    }
    // (−1)^{pq} with p = q = 1 inverts every entry
    let mut cocycle = BTreeMap::new();
    for (z, m) in beta.divisor.iter() {
        cocycle.insert(z.clone(), alpha.chain.value_at(z)?.powi(-m)?);
    }
    for (y, m) in alpha.divisor.iter() {
        cocycle.insert(y.clone(), beta.chain.value_at(y)?.powi(*m)?);
    }
    let direct_image = direct_image(curve.field(), &cocycle);
    Ok(MasseyOutput { cocycle, direct_image })
}

/// m̄₃ for the classes of (P) − (O) and (Q) − (O), translating representatives
/// through the rational points until supports are disjoint and both chains
/// are regular on the other support.
pub fn massey_for_points(curve: &Curve, p: &Point, q: &Point, l: i64) -> Result<MasseyOutput> {
    check_torsion(curve, p, l)?;
    check_torsion(curve, q, l)?;
    let offsets = translate_list(curve)?;
    for s in &offsets {
        let alpha = TorsionClass::from_point(curve, p, l, s)?;
        for r in &offsets {
            let beta = TorsionClass::from_point(curve, q, l, r)?;
            match massey_triple_curve(&alpha, &beta, l) {
                Ok(out) => return Ok(out),
                Err(Error::OverlappingSupports(_)) | Err(Error::DegenerateSymbol(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Err(Error::OverlappingSupports(format!("representative list exhausted for {p}, {q}")))
}
