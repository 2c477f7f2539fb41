//! Rational adelic cochains on a curve in finite presentation ("tail plus
//! exceptions"), the residue morphism to the Gersten complex, cochain products
//! and adelic cohomology of O(D).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::curve::{local, riemann_roch_space, Curve, Divisor, Function, Place};
use crate::error::{Error, Result};
use crate::field::linalg::Matrix;
use crate::field::FieldElement;
use crate::milnor::{tame_symbol, MilnorSymbol};
use crate::signs::SignConventions;

/// Coefficient system of a cochain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    /// The coherent sheaf O(D); components add.
    Coherent(Divisor),
    /// Milnor K-theory of weight 0, 1 or 2; components multiply.
    Milnor(u8),
}

/// One local or global component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    /// K₀ of a field: an integer.
    Integer(i64),
    /// A function: additive for coherent coefficients, a unit in K₁ otherwise.
    Function(Function),
    /// A K₂ element.
    Symbol(MilnorSymbol),
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Integer(n) => write!(f, "{n}"),
            Component::Function(g) => write!(f, "{g}"),
            Component::Symbol(s) => write!(f, "{s}"),
        }
    }
}

impl Component {
    fn as_function(&self) -> Result<&Function> {
        match self {
            Component::Function(f) => Ok(f),
            other => Err(Error::InvalidCochain(format!("expected a function component, got {other}"))),
        }
    }

    fn as_symbol(&self) -> Result<&MilnorSymbol> {
        match self {
            Component::Symbol(s) => Ok(s),
            other => Err(Error::InvalidCochain(format!("expected a K2 component, got {other}"))),
        }
    }
}

/// Cochain of degree 0 or 1 (degree 2 exists only as the zero group).
///
/// Degree 0 carries the generic component f_X, a local tail used at every
/// unlisted place, and exceptions. Degree 1 carries a tail and exceptions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdeleCochain {
    curve: Curve,
    degree: u8,
    coefficients: Coefficients,
    global: Option<Component>,
    tail: Component,
    exceptions: BTreeMap<Place, Component>,
}

impl fmt::Display for AdeleCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deg {} [", self.degree)?;
        if let Some(g) = &self.global {
            write!(f, "global {g}; ")?;
        }
        write!(f, "tail {}", self.tail)?;
        for (p, c) in &self.exceptions {
            write!(f, "; {p}: {c}")?;
        }
        write!(f, "]")
    }
}

fn identity(curve: &Curve, coeffs: &Coefficients) -> Component {
    match coeffs {
        Coefficients::Coherent(_) => Component::Function(Function::from_i64(curve, 0)),
        Coefficients::Milnor(0) => Component::Integer(0),
        Coefficients::Milnor(1) => Component::Function(Function::one(curve)),
        Coefficients::Milnor(_) => Component::Symbol(MilnorSymbol::one(curve)),
    }
}

fn check_component(curve: &Curve, coeffs: &Coefficients, c: &Component) -> Result<()> {
    let ok = match (coeffs, c) {
        (Coefficients::Milnor(0), Component::Integer(_)) => true,
        (Coefficients::Coherent(_), Component::Function(f)) => f.curve() == curve,
        (Coefficients::Milnor(1), Component::Function(f)) => f.curve() == curve && !f.is_zero(),
        (Coefficients::Milnor(2), Component::Symbol(s)) => s.curve() == curve,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidCochain(format!("component {c} does not fit {coeffs:?}")))
    }
}

/// The group law: addition for coherent data, multiplication for K-groups.
fn combine(coeffs: &Coefficients, a: &Component, b: &Component, invert_b: bool) -> Result<Component> {
    Ok(match (coeffs, a, b) {
        (_, Component::Integer(x), Component::Integer(y)) => Component::Integer(if invert_b { x - y } else { x + y }),
        (Coefficients::Coherent(_), Component::Function(f), Component::Function(g)) => {
            f.curve().ensure_same(g.curve())?;
            Component::Function(if invert_b { f - g } else { f.try_add(g)? })
        }
        (_, Component::Function(f), Component::Function(g)) => {
            Component::Function(if invert_b { f.div(g)? } else { f.try_mul(g)? })
        }
        (_, Component::Symbol(s), Component::Symbol(t)) => {
            Component::Symbol(if invert_b { s.times(&t.pow(-1))? } else { s.times(t)? })
        }
        _ => return Err(Error::InvalidCochain(format!("cannot combine {a} and {b}"))),
    })
}

fn is_identity(coeffs: &Coefficients, c: &Component) -> bool {
    match (coeffs, c) {
        (_, Component::Integer(n)) => *n == 0,
        (Coefficients::Coherent(_), Component::Function(f)) => f.is_zero(),
        (_, Component::Function(f)) => f.is_one(),
        (_, Component::Symbol(s)) => s.entries().is_empty(),
    }
}

fn coherent_integral(f: &Function, place: &Place, d: &Divisor) -> Result<bool> {
    Ok(f.is_zero() || f.valuation(place)? >= -d.get(place))
}

/// Places where the function fails to lie in O_v(D).
fn coherent_poles(f: &Function, d: &Divisor) -> Result<Vec<Place>> {
    if f.is_zero() {
        return Ok(Vec::new());
    }
    let mut candidates: BTreeSet<Place> = d.support().cloned().collect();
    if f.constant_value().is_none() {
        candidates.extend(f.support_places()?);
    }
    let mut out = Vec::new();
    for p in candidates {
        if !coherent_integral(f, &p, d)? {
            out.push(p);
        }
    }
    Ok(out)
}

impl AdeleCochain {
    /// Degree-0 cochain with generic component f_X, local tail and exceptions.
    pub fn degree0(
        curve: &Curve,
        coefficients: Coefficients,
        global: Component,
        local_tail: Component,
        exceptions: BTreeMap<Place, Component>,
    ) -> Result<Self> {
        let c = AdeleCochain {
            curve: curve.clone(),
            degree: 0,
            coefficients,
            global: Some(global),
            tail: local_tail,
            exceptions,
        };
        c.validate()?;
        Ok(c)
    }

    /// The diagonal degree-0 cochain: f_X at the generic point and at every place.
    pub fn diagonal(curve: &Curve, coefficients: Coefficients, global: Component) -> Result<Self> {
        Self::degree0(curve, coefficients, global.clone(), global, BTreeMap::new())
    }

    /// Degree-1 cochain from a tail and exceptions.
    pub fn degree1(
        curve: &Curve,
        coefficients: Coefficients,
        tail: Component,
        exceptions: BTreeMap<Place, Component>,
    ) -> Result<Self> {
        let c = AdeleCochain { curve: curve.clone(), degree: 1, coefficients, global: None, tail, exceptions };
        c.validate()?;
        Ok(c)
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    pub fn global(&self) -> Option<&Component> {
        self.global.as_ref()
    }

    pub fn tail(&self) -> &Component {
        &self.tail
    }

    pub fn exceptions(&self) -> &BTreeMap<Place, Component> {
        &self.exceptions
    }

    /// The component at a place.
    pub fn local(&self, place: &Place) -> &Component {
        self.exceptions.get(place).unwrap_or(&self.tail)
    }

    pub fn is_zero(&self) -> bool {
        let c = &self.coefficients;
        self.global.as_ref().is_none_or(|g| is_identity(c, g))
            && is_identity(c, &self.tail)
            && self.exceptions.values().all(|e| is_identity(c, e))
    }

    fn validate(&self) -> Result<()> {
        if let Coefficients::Coherent(d) = &self.coefficients {
            self.curve.ensure_same(d.curve())?;
        }
        if let Coefficients::Milnor(n) = self.coefficients {
            if n > 2 {
                return Err(Error::InvalidCochain(format!("K-weight {n} exceeds two")));
            }
        }
        let comps = self.global.iter().chain(std::iter::once(&self.tail)).chain(self.exceptions.values());
        for c in comps {
            check_component(&self.curve, &self.coefficients, c)?;
        }
        for p in self.exceptions.keys() {
            if !p.belongs_to(&self.curve) {
                return Err(Error::CurveMismatch(format!("{p} is not a place of {}", self.curve)));
            }
        }
        if let Coefficients::Coherent(d) = &self.coefficients {
            if self.degree == 1 {
                let tail = self.tail.as_function()?;
                if let Some(p) = coherent_poles(tail, d)?.into_iter().find(|p| !self.exceptions.contains_key(p)) {
                    return Err(Error::InvalidCochain(format!("tail {tail} has an unlisted pole at {p}")));
                }
            }
        }
        Ok(())
    }

    fn prune(&mut self) -> Result<()> {
        let keep_poles: BTreeSet<Place> = match (&self.coefficients, self.degree) {
            (Coefficients::Coherent(d), 1) => coherent_poles(self.tail.as_function()?, d)?.into_iter().collect(),
            _ => BTreeSet::new(),
        };
        let tail = self.tail.clone();
        self.exceptions.retain(|p, c| *c != tail || keep_poles.contains(p));
        for p in keep_poles {
            self.exceptions.entry(p).or_insert_with(|| tail.clone());
        }
        Ok(())
    }
}

/// (f_X, {f_x}) ↦ {f_x − f_X}; on degree one the next differential is zero.
pub fn adelic_differential(c: &AdeleCochain) -> Result<AdeleCochain> {
    let coeffs = c.coefficients.clone();
    match c.degree {
        0 => {
            let g = c.global.as_ref().expect("degree-0 cochains carry a global component");
            let tail = combine(&coeffs, &c.tail, g, true)?;
            let exceptions = c
                .exceptions
                .iter()
                .map(|(p, e)| Ok((p.clone(), combine(&coeffs, e, g, true)?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            let mut out = AdeleCochain {
                curve: c.curve.clone(),
                degree: 1,
                coefficients: coeffs,
                global: None,
                tail,
                exceptions,
            };
            out.prune()?;
            Ok(out)
        }
        _ => Ok(AdeleCochain {
            curve: c.curve.clone(),
            degree: 2,
            tail: identity(&c.curve, &coeffs),
            coefficients: coeffs,
            global: None,
            exceptions: BTreeMap::new(),
        }),
    }
}

/// Sum (or product) of two cochains of the same shape.
pub fn cochain_sum(a: &AdeleCochain, b: &AdeleCochain) -> Result<AdeleCochain> {
    a.curve.ensure_same(&b.curve)?;
    if a.degree != b.degree || a.coefficients != b.coefficients {
        return Err(Error::InvalidCochain("sum of cochains of different shape".into()));
    }
    let coeffs = &a.coefficients;
    let global = match (&a.global, &b.global) {
        (Some(x), Some(y)) => Some(combine(coeffs, x, y, false)?),
        _ => None,
    };
    let tail = combine(coeffs, &a.tail, &b.tail, false)?;
    let places: BTreeSet<&Place> = a.exceptions.keys().chain(b.exceptions.keys()).collect();
    let mut exceptions = BTreeMap::new();
    for p in places {
        exceptions.insert(p.clone(), combine(coeffs, a.local(p), b.local(p), false)?);
    }
    let mut out = AdeleCochain {
        curve: a.curve.clone(),
        degree: a.degree,
        coefficients: coeffs.clone(),
        global,
        tail,
        exceptions,
    };
    out.prune()?;
    Ok(out)
}

/// The 1-cocycle [D]: s_v^{−D(v)} at each v in the support, tail 1.
pub fn divisor_cocycle(d: &Divisor) -> Result<AdeleCochain> {
    let curve = d.curve();
    let mut exceptions = BTreeMap::new();
    for (p, &n) in d.iter() {
        let s = curve.local_equation(p)?;
        exceptions.insert(p.clone(), Component::Function(s.powi(-n)?));
    }
    AdeleCochain::degree1(curve, Coefficients::Milnor(1), Component::Function(Function::one(curve)), exceptions)
}

/// Level-1 Gersten data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GerstenImage {
    /// Image of a K₁ cochain: a divisor as a finite map.
    Cycle(BTreeMap<Place, i64>),
    /// Image of a K₂ cochain: residue-field units.
    Units(BTreeMap<Place, FieldElement>),
}

impl GerstenImage {
    pub fn is_trivial(&self) -> bool {
        match self {
            GerstenImage::Cycle(m) => m.is_empty(),
            GerstenImage::Units(m) => m.is_empty(),
        }
    }

    /// The divisor of a cycle image.
    pub fn to_divisor(&self, curve: &Curve) -> Result<Divisor> {
        match self {
            GerstenImage::Cycle(m) => Divisor::from_terms(curve, m.iter().map(|(p, n)| (p.clone(), *n))),
            GerstenImage::Units(_) => Err(Error::InvalidCochain("a K2 image is not a divisor".into())),
        }
    }
}

/// The residue morphism ν_X on degree-one K-cochains, with the resolved signs.
pub fn nu_curve(c: &AdeleCochain) -> Result<GerstenImage> {
    nu_curve_with(c, SignConventions::RESOLVED)
}

/// ν_X under an explicit sign assignment.
pub fn nu_curve_with(c: &AdeleCochain, signs: SignConventions) -> Result<GerstenImage> {
    if c.degree != 1 {
        return Err(Error::InvalidCochain("nu is defined on degree-one cochains".into()));
    }
    let weight = match c.coefficients {
        Coefficients::Milnor(n) if n >= 1 => n,
        _ => return Err(Error::InvalidCochain("nu needs K-coefficients of weight 1 or 2".into())),
    };
    // every place where some component can be non-trivial
    let mut places: BTreeSet<Place> = c.exceptions.keys().cloned().collect();
    match &c.tail {
        Component::Function(f) if f.constant_value().is_none() => places.extend(f.support_places()?),
        Component::Symbol(s) => places.extend(s.support()?),
        _ => {}
    }
    let places: Vec<Place> = places.into_iter().collect();
    if weight == 1 {
        let vals = places
            .par_iter()
            .map(|p| Ok((p.clone(), signs.curve_nu * c.local(p).as_function()?.valuation(p)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GerstenImage::Cycle(vals.into_iter().filter(|(_, n)| *n != 0).collect()))
    } else {
        let vals = places
            .par_iter()
            .map(|p| Ok((p.clone(), tame_symbol(c.local(p).as_symbol()?, p)?.powi(-signs.curve_nu)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GerstenImage::Units(vals.into_iter().filter(|(_, u)| !u.is_one()).collect()))
    }
}

fn component_product(a: &Component, b: &Component, curve: &Curve) -> Result<Component> {
    Ok(match (a, b) {
        (Component::Integer(m), Component::Integer(n)) => Component::Integer(m * n),
        (Component::Integer(k), Component::Function(f)) | (Component::Function(f), Component::Integer(k)) => {
            Component::Function(f.powi(*k)?)
        }
        (Component::Integer(k), Component::Symbol(s)) | (Component::Symbol(s), Component::Integer(k)) => {
            Component::Symbol(s.pow(*k))
        }
        (Component::Function(f), Component::Function(g)) => {
            f.curve().ensure_same(curve)?;
            Component::Symbol(MilnorSymbol::pair(f, g)?)
        }
        _ => return Err(Error::InvalidCochain(format!("product {a} · {b} leaves K2"))),
    })
}

/// Flag-wise product (f·g)_{η₀…η_{p+q}} = f_{η₀…η_p} · g_{η_p…η_{p+q}}.
pub fn cochain_product(f: &AdeleCochain, g: &AdeleCochain) -> Result<AdeleCochain> {
    f.curve.ensure_same(&g.curve)?;
    if f.degree + g.degree > 1 {
        return Err(Error::DegreeOverflow);
    }
    let (Coefficients::Milnor(m), Coefficients::Milnor(n)) = (&f.coefficients, &g.coefficients) else {
        return Err(Error::InvalidCochain("products need K-coefficients".into()));
    };
    let weight = m + n;
    if weight > 2 {
        return Err(Error::InvalidCochain(format!("weight {weight} exceeds two")));
    }
    let curve = &f.curve;
    let mul = |a: &Component, b: &Component| component_product(a, b, curve);
    let coefficients = Coefficients::Milnor(weight);
    let mut out = match (f.degree, g.degree) {
        (0, 1) => {
            // f_X times every component of g
            let fx = f.global.as_ref().expect("degree-0 global");
            let exceptions =
                g.exceptions.iter().map(|(p, c)| Ok((p.clone(), mul(fx, c)?))).collect::<Result<BTreeMap<_, _>>>()?;
            AdeleCochain {
                curve: curve.clone(),
                degree: 1,
                coefficients,
                global: None,
                tail: mul(fx, &g.tail)?,
                exceptions,
            }
        }
        (1, 0) => {
            // f_{xX} times the local component g_x
            let places: BTreeSet<&Place> = f.exceptions.keys().chain(g.exceptions.keys()).collect();
            let exceptions = places
                .into_iter()
                .map(|p| Ok((p.clone(), mul(f.local(p), g.local(p))?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            AdeleCochain {
                curve: curve.clone(),
                degree: 1,
                coefficients,
                global: None,
                tail: mul(&f.tail, &g.tail)?,
                exceptions,
            }
        }
        _ => {
            let global = mul(f.global.as_ref().expect("global"), g.global.as_ref().expect("global"))?;
            let places: BTreeSet<&Place> = f.exceptions.keys().chain(g.exceptions.keys()).collect();
            let exceptions = places
                .into_iter()
                .map(|p| Ok((p.clone(), mul(f.local(p), g.local(p))?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            AdeleCochain {
                curve: curve.clone(),
                degree: 0,
                coefficients,
                global: Some(global),
                tail: mul(&f.tail, &g.tail)?,
                exceptions,
            }
        }
    };
    out.prune()?;
    Ok(out)
}

/// Dimensions of H⁰ and H¹ of the adelic complex of O(D).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub h0: usize,
    pub h1: usize,
    /// Multiple m of the base place in the auxiliary divisor E = D + m·P₀.
    pub bound: i64,
    pub basis: Vec<Function>,
}

impl CohomologyReport {
    /// h0 − h1 = deg D + 1 − g.
    pub fn satisfies_riemann_roch(&self, d: &Divisor) -> bool {
        self.h0 as i64 - self.h1 as i64 == d.degree() + 1 - d.curve().genus()
    }
}

/// h¹ as the cokernel of L(E) → O(E)/O(D) at the base place, E = D + m·P₀.
fn h1_with_bound(d: &Divisor, m: i64) -> Result<usize> {
    let curve = d.curve();
    let p0 = curve.base_place();
    let e = d.try_add(&Divisor::single(curve, p0.clone(), m)?)?;
    let basis = riemann_roch_space(&e)?;
    let lo = -e.get(&p0);
    let hi = -d.get(&p0);
    let field = curve.field();
    let columns = basis
        .par_iter()
        .map(|f| {
            let s = local::expand_with_relative(f, &p0, m + 2)?;
            (lo..hi)
                .map(|k| {
                    let c = s.coeff(k).ok_or_else(|| Error::Precision(format!("principal part of {f}")))?;
                    Ok(field.from_u64(c.coefficients()[0]))
                })
                .collect::<Result<Vec<FieldElement>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<Vec<FieldElement>> =
        (0..m as usize).map(|r| columns.iter().map(|col| col[r].clone()).collect()).collect();
    let rank = if basis.is_empty() { 0 } else { Matrix::from_rows(field, rows, basis.len()).rank() };
    Ok(m as usize - rank)
}

/// (h⁰, h¹) of O(D), with the auxiliary bound doubled until h¹ stabilizes.
pub fn cohomology_dims(curve: &Curve, d: &Divisor) -> Result<CohomologyReport> {
    curve.ensure_same(d.curve())?;
    let basis = riemann_roch_space(d)?;
    let mut m = 2 * (curve.genus() + 1);
    let mut h1 = h1_with_bound(d, m)?;
    loop {
        let next = h1_with_bound(d, 2 * m)?;
        if next == h1 {
            break;
        }
        h1 = next;
        m *= 2;
    }
    log::debug!("cohomology of {d}: h0 = {}, h1 = {h1}, bound {m}", basis.len());
    Ok(CohomologyReport { h0: basis.len(), h1, bound: m, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, Polynomial};

    fn p1(p: u64) -> Curve {
        Curve::projective_line(&FieldSpec::prime(p).unwrap()).unwrap()
    }

    fn place(c: &Curve, a: i64) -> Place {
        Place::rational(&c.field().from_i64(a))
    }

    #[test]
    fn differential_examples() {
        let c = p1(5);
        let z = Divisor::zero(&c);
        let t = Function::t(&c);
        let diag =
            AdeleCochain::diagonal(&c, Coefficients::Coherent(z.clone()), Component::Function(t.clone())).unwrap();
        assert!(adelic_differential(&diag).unwrap().is_zero());

        let inv_t = t.inv().unwrap();
        let zero = Component::Function(Function::from_i64(&c, 0));
        let c0 = AdeleCochain::degree0(
            &c,
            Coefficients::Coherent(z.clone()),
            Component::Function(inv_t.clone()),
            zero.clone(),
            BTreeMap::new(),
        )
        .unwrap();
        let d = adelic_differential(&c0).unwrap();
        assert_eq!(d.tail(), &Component::Function(-&inv_t));

        let one = Component::Function(Function::one(&c));
        let exc = BTreeMap::from([(place(&c, 0), one.clone())]);
        let c1 = AdeleCochain::degree0(&c, Coefficients::Coherent(z), zero.clone(), zero.clone(), exc).unwrap();
        let d1 = adelic_differential(&c1).unwrap();
        assert_eq!(d1.tail(), &zero);
        assert_eq!(d1.exceptions().get(&place(&c, 0)), Some(&one));
        assert_eq!(d1.exceptions().len(), 1);
    }

    #[test]
    fn cocycle_and_nu() {
        let c = p1(5);
        let p0 = place(&c, 0);
        let p1_ = place(&c, 1);
        let d = Divisor::from_terms(&c, [(p0.clone(), 1), (p1_.clone(), -1)]).unwrap();
        let cc = divisor_cocycle(&d).unwrap();
        let t = Function::t(&c);
        assert_eq!(cc.exceptions()[&p0], Component::Function(t.inv().unwrap()));
        let tm1 = Function::polynomial(&c, Polynomial::from_i64(c.field(), &[-1, 1]));
        assert_eq!(cc.exceptions()[&p1_], Component::Function(tm1));
        assert_eq!(nu_curve(&cc).unwrap().to_divisor(&c).unwrap(), d);
        assert!(divisor_cocycle(&Divisor::zero(&c)).unwrap().exceptions().is_empty());

        let tail_t =
            AdeleCochain::degree1(&c, Coefficients::Milnor(1), Component::Function(t.clone()), BTreeMap::new())
                .unwrap();
        let img = nu_curve(&tail_t).unwrap();
        assert_eq!(img, GerstenImage::Cycle(BTreeMap::from([(p0, -1), (Place::Infinity, 1)])));
    }

    #[test]
    fn product_example() {
        let c = p1(7);
        let p = place(&c, 1);
        let two = AdeleCochain::diagonal(&c, Coefficients::Milnor(1), Component::Function(Function::from_i64(&c, 2)))
            .unwrap();
        let cc = divisor_cocycle(&Divisor::single(&c, p.clone(), 1).unwrap()).unwrap();
        let prod = cochain_product(&two, &cc).unwrap();
        assert_eq!(prod.coefficients(), &Coefficients::Milnor(2));
        let img = nu_curve(&prod).unwrap();
        assert_eq!(img, GerstenImage::Units(BTreeMap::from([(p, c.field().from_u64(4))])));
        assert_eq!(cochain_product(&cc, &cc).unwrap_err(), Error::DegreeOverflow);
    }

    #[test]
    fn cohomology_examples() {
        let c = p1(5);
        let d = Divisor::single(&c, Place::Infinity, 3).unwrap();
        let r = cohomology_dims(&c, &d).unwrap();
        assert_eq!((r.h0, r.h1), (4, 0));
        let d = Divisor::single(&c, place(&c, 0), -2).unwrap();
        let r = cohomology_dims(&c, &d).unwrap();
        assert_eq!((r.h0, r.h1), (0, 1));
        let e = Curve::elliptic_i64(5, 1, 1).unwrap();
        let r = cohomology_dims(&e, &Divisor::zero(&e)).unwrap();
        assert_eq!((r.h0, r.h1), (1, 1));
    }
}
