//! Milnor K₂ symbols on a curve: tame symbols, the Gersten boundary, Weil
//! reciprocity and the logarithmic differential of K₁.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::curve::{local, Curve, Divisor, Function, Place};
use crate::error::{Error, Result};
use crate::field::{FieldElement, RationalFunction};

/// Formal product Π {f_i, g_i}^{e_i}. Never reduced modulo Steinberg relations.
#[derive(Clone, PartialEq, Eq)]
pub struct MilnorSymbol {
    curve: Curve,
    entries: Vec<(Function, Function, i64)>,
}

impl fmt::Debug for MilnorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MilnorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(a, b, e)| if *e == 1 { format!("{{{a}, {b}}}") } else { format!("{{{a}, {b}}}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

impl MilnorSymbol {
    pub fn one(curve: &Curve) -> Self {
        MilnorSymbol { curve: curve.clone(), entries: Vec::new() }
    }

    /// The symbol {f, g}.
    pub fn pair(f: &Function, g: &Function) -> Result<Self> {
        Self::from_entries(f.curve(), vec![(f.clone(), g.clone(), 1)])
    }

    pub fn from_entries(curve: &Curve, entries: Vec<(Function, Function, i64)>) -> Result<Self> {
        let mut s = Self::one(curve);
        for (f, g, e) in entries {
            s.push(f, g, e)?;
        }
        Ok(s)
    }

    pub fn push(&mut self, f: Function, g: Function, e: i64) -> Result<()> {
        f.curve().ensure_same(&self.curve)?;
        g.curve().ensure_same(&self.curve)?;
        if f.is_zero() || g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // identical pairs merge, so s·s⁻¹ is formally trivial
        match self.entries.iter().position(|(a, b, _)| *a == f && *b == g) {
            Some(i) => {
                self.entries[i].2 += e;
                if self.entries[i].2 == 0 {
                    self.entries.remove(i);
                }
            }
            None if e != 0 => self.entries.push((f, g, e)),
            None => {}
        }
        Ok(())
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn entries(&self) -> &[(Function, Function, i64)] {
        &self.entries
    }

    /// Formal product of two symbols.
    pub fn times(&self, other: &MilnorSymbol) -> Result<MilnorSymbol> {
        self.curve.ensure_same(&other.curve)?;
        let mut out = self.clone();
        for (f, g, e) in &other.entries {
            out.push(f.clone(), g.clone(), *e)?;
        }
        Ok(out)
    }

    pub fn pow(&self, k: i64) -> MilnorSymbol {
        let entries = if k == 0 {
            Vec::new()
        } else {
            self.entries.iter().map(|(f, g, e)| (f.clone(), g.clone(), e * k)).collect()
        };
        MilnorSymbol { curve: self.curve.clone(), entries }
    }

    /// Places where some entry function has a zero or a pole.
    pub fn support(&self) -> Result<Vec<Place>> {
        let mut out = BTreeSet::new();
        for (f, g, _) in &self.entries {
            for h in [f, g] {
                if h.constant_value().is_none() {
                    out.extend(h.support_places()?);
                }
            }
        }
        Ok(out.into_iter().collect())
    }
}

/// (−1)^{v(f)v(g)} f^{v(g)} / g^{v(f)} reduced at the place, multiplied over entries.
pub fn tame_symbol(s: &MilnorSymbol, place: &Place) -> Result<FieldElement> {
    let k = s.curve.residue_field(place);
    let mut acc = k.one();
    for (f, g, e) in &s.entries {
        let a = f.valuation(place)?;
        let b = g.valuation(place)?;
        if a == 0 && b == 0 {
            continue;
        }
        let lf = f.leading_coefficient(place)?;
        let lg = g.leading_coefficient(place)?;
        let mut val = &lf.powi(b)? * &lg.powi(-a)?;
        if (a * b) % 2 != 0 {
            val = -&val;
        }
        acc = &acc * &val.powi(*e)?;
    }
    Ok(acc)
}

/// Level-1 component of the Gersten differential, trivial values pruned.
pub fn gersten_boundary(s: &MilnorSymbol) -> Result<BTreeMap<Place, FieldElement>> {
    let places = s.support()?;
    let values: Vec<Result<(Place, FieldElement)>> =
        places.into_par_iter().map(|p| tame_symbol(s, &p).map(|v| (p, v))).collect();
    let mut out = BTreeMap::new();
    for r in values {
        let (p, v) = r?;
        if !v.is_one() {
            out.insert(p, v);
        }
    }
    Ok(out)
}

/// Π_v N_{k(v)/k}(tame_v(s)); Weil reciprocity says this is 1.
pub fn weil_reciprocity_check(s: &MilnorSymbol) -> Result<FieldElement> {
    let mut acc = s.curve.field().one();
    for v in gersten_boundary(s)?.values() {
        acc = &acc * &v.norm_to_prime_field();
    }
    Ok(acc)
}

/// Terms of the curve Gersten complex in weights one and two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GerstenCochain {
    /// Level 0, weight 1: an element of k(X)*.
    Unit(Function),
    /// Level 0, weight 2: an element of K₂(k(X)).
    Symbol(MilnorSymbol),
    /// Level 1, weight 1: integers at closed points.
    Cycle(Divisor),
    /// Level 1, weight 2: residue-field units at closed points.
    Units(Curve, BTreeMap<Place, FieldElement>),
}

impl GerstenCochain {
    pub fn level(&self) -> u8 {
        match self {
            GerstenCochain::Unit(_) | GerstenCochain::Symbol(_) => 0,
            _ => 1,
        }
    }

    pub fn weight(&self) -> u8 {
        match self {
            GerstenCochain::Unit(_) | GerstenCochain::Cycle(_) => 1,
            _ => 2,
        }
    }

    /// The Gersten differential; level-1 terms map to zero.
    pub fn boundary(&self) -> Result<Option<GerstenCochain>> {
        Ok(match self {
            GerstenCochain::Unit(f) => Some(GerstenCochain::Cycle(f.principal_divisor()?)),
            GerstenCochain::Symbol(s) => Some(GerstenCochain::Units(s.curve.clone(), gersten_boundary(s)?)),
            _ => None,
        })
    }
}

/// ω·dt on P¹.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalOneForm {
    curve: Curve,
    coeff: RationalFunction,
}

impl fmt::Debug for RationalOneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) dt", self.coeff)
    }
}

impl RationalOneForm {
    pub fn new(curve: &Curve, coeff: RationalFunction) -> Result<Self> {
        if curve.is_elliptic() {
            return Err(Error::CurveMismatch("one-forms are written in dt on P1".into()));
        }
        Ok(RationalOneForm { curve: curve.clone(), coeff })
    }

    pub fn coeff(&self) -> &RationalFunction {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Places where the form may have a pole: poles of the coefficient and ∞.
    pub fn polar_places(&self) -> Result<Vec<Place>> {
        let mut out: Vec<Place> = if self.coeff.is_zero() {
            Vec::new()
        } else {
            crate::field::factor_polynomial(self.coeff.den())?
                .factors
                .into_iter()
                .map(|(p, _)| Place::Finite(p))
                .collect()
        };
        out.push(Place::Infinity);
        Ok(out)
    }
}

/// f′/f · dt.
pub fn dlog_k1(f: &Function) -> Result<RationalOneForm> {
    if f.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    if f.curve().is_elliptic() {
        return Err(Error::CurveMismatch("dlog forms are written in dt on P1".into()));
    }
    let coeff = &f.a().derivative() / f.a();
    RationalOneForm::new(f.curve(), coeff)
}

/// Trace to GF(p) of the coefficient of s⁻¹ in the expansion of ω at the place.
pub fn form_residue(w: &RationalOneForm, place: &Place) -> Result<FieldElement> {
    let f = w.curve.field();
    if w.coeff.is_zero() {
        return Ok(f.zero());
    }
    if matches!(place, Place::Point { .. } | Place::Origin) {
        return Err(Error::CurveMismatch(format!("{place} is not a place of P1")));
    }
    let h = Function::rational(&w.curve, w.coeff.clone());
    let v = h.valuation(place)?;
    // at infinity dt = −s⁻² ds, so the s⁻¹ coefficient of ω is −(s¹ coefficient of h)
    let (index, sign) = if *place == Place::Infinity { (1, -1) } else { (-1, 1) };
    let series = local::expand_with_relative(&h, place, (index - v + 1).max(1))?;
    let c = series.coeff(index).ok_or_else(|| Error::Precision(format!("residue of {w:?} at {place}")))?;
    let r = c.trace_to_prime_field();
    Ok(if sign < 0 { -&r } else { r })
}

/// Largest pole order of df/f over all places (0 for constants).
pub fn dlog_pole_order_check(f: &Function) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let mut worst = 0;
    for place in f.support_places()? {
        let h = local::expand_with_relative(f, &place, 2)?;
        let w = h.derivative().div(&h)?;
        if let Some(v) = w.valuation() {
            worst = worst.max(-v);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, Polynomial};

    fn p1(p: u64) -> Curve {
        Curve::projective_line(&FieldSpec::prime(p).unwrap()).unwrap()
    }

    fn lin(c: &Curve, root: i64) -> Function {
        Function::polynomial(c, Polynomial::from_i64(c.field(), &[-root, 1]))
    }

    #[test]
    fn tame_examples() {
        let c = p1(5);
        let t = Function::t(&c);
        let at0 = Place::rational(&c.field().zero());
        assert_eq!(tame_symbol(&MilnorSymbol::pair(&t, &t).unwrap(), &at0).unwrap().coefficients(), &[4]);
        let one_minus_t = &Function::one(&c) - &t;
        assert!(tame_symbol(&MilnorSymbol::pair(&t, &one_minus_t).unwrap(), &at0).unwrap().is_one());
        let c7 = p1(7);
        let s = MilnorSymbol::pair(&Function::t(&c7), &lin(&c7, 2)).unwrap();
        let v = tame_symbol(&s, &Place::rational(&c7.field().from_u64(2))).unwrap();
        assert_eq!(v.coefficients(), &[2]);
    }

    #[test]
    fn boundary_examples() {
        let c = p1(7);
        let f = c.field().clone();
        let s = MilnorSymbol::pair(&Function::t(&c), &lin(&c, 1)).unwrap();
        let b = gersten_boundary(&s).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[&Place::rational(&f.zero())].coefficients(), &[6]);
        assert_eq!(b[&Place::Infinity].coefficients(), &[6]);
        let s = MilnorSymbol::pair(&Function::from_i64(&c, 3), &Function::t(&c)).unwrap();
        let b = gersten_boundary(&s).unwrap();
        assert_eq!(b[&Place::rational(&f.zero())].coefficients(), &[3]);
        assert_eq!(b[&Place::Infinity].coefficients(), &[5]);
        let g = lin(&c, 3);
        let s = MilnorSymbol::pair(&g, &-&g).unwrap();
        assert!(gersten_boundary(&s).unwrap().is_empty());
    }

    #[test]
    fn residues_of_dlog() {
        let c = p1(7);
        let f = c.field().clone();
        let w = dlog_k1(&Function::t(&c)).unwrap();
        assert!(form_residue(&w, &Place::rational(&f.zero())).unwrap().is_one());
        assert_eq!(form_residue(&w, &Place::Infinity).unwrap().coefficients(), &[6]);
        let cube = lin(&c, 1).powi(3).unwrap();
        let w = dlog_k1(&cube).unwrap();
        assert_eq!(form_residue(&w, &Place::rational(&f.one())).unwrap().coefficients(), &[3]);
    }

    #[test]
    fn pole_orders() {
        let c = p1(7);
        assert_eq!(dlog_pole_order_check(&Function::t(&c).powi(5).unwrap()).unwrap(), 1);
        assert_eq!(dlog_pole_order_check(&(&lin(&c, 1) * &lin(&c, 2))).unwrap(), 1);
        assert_eq!(dlog_pole_order_check(&Function::from_i64(&c, 3)).unwrap(), 0);
    }
}
