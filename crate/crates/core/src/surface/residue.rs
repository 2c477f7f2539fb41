//! Two-step residues along flags, point reciprocity and the dlog 2-form.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{fulton_multiplicity, FactoredFunction, Flag2, MultiPoly, PlaneCurve, ProjectivePoint, SurfaceSymbol};
use crate::error::{Error, Result};

/// Order of vanishing at x of φ restricted to C.
pub fn valuation_on_curve(phi: &FactoredFunction, c: &PlaneCurve, x: &ProjectivePoint) -> Result<i64> {
    if !c.contains(x) {
        return Err(Error::InvalidFlag(format!("{x} does not lie on {c}")));
    }
    if !c.is_smooth_at(x) {
        return Err(Error::SingularFlag(format!("flag-curve {c} singular at point {x}")));
    }
    if phi.exponent(c) != 0 {
        return Err(Error::DegenerateSymbol(format!("{phi} is identically 0 or ∞ on {c}")));
    }
    let chart = x.chart();
    let a = x.affine(chart)?;
    let cc = c.form().dehomogenize(chart);
    let mut total = 0;
    for (h, e) in phi.factors() {
        if !h.contains(x) {
            continue;
        }
        let m = fulton_multiplicity(&h.form().dehomogenize(chart), &cc, &a)?
            .finite()
            .ok_or_else(|| Error::DegenerateSymbol(format!("{h} and {c} share a component")))?;
        total += e * m as i64;
    }
    Ok(total)
}

/// First-step residue K₂(k(P²)) → k(C)*: Π ((−1)^{ab} f^b g^{−a})^e with a = v_C(f), b = v_C(g).
pub fn curve_tame_symbol(s: &SurfaceSymbol, c: &PlaneCurve) -> Result<FactoredFunction> {
    let field = s.field();
    let mut acc = FactoredFunction::one(field);
    for (f, g, e) in s.entries() {
        let a = f.exponent(c);
        let b = g.exponent(c);
        if a == 0 && b == 0 {
            continue;
        }
        let mut term = f.powi(b)?.mul(&g.powi(-a)?)?;
        if (a * b) % 2 != 0 {
            term = term.mul(&FactoredFunction::constant_function(-&field.one())?)?;
        }
        acc = acc.mul(&term.powi(*e)?)?;
    }
    debug_assert_eq!(acc.exponent(c), 0);
    Ok(acc)
}

/// ν along the flag: the valuation at x of the tame symbol on C.
pub fn flag_residue(s: &SurfaceSymbol, flag: &Flag2) -> Result<i64> {
    let tame = curve_tame_symbol(s, flag.curve())?;
    valuation_on_curve(&tame, flag.curve(), flag.point())
}

/// Σ over the curves of the symbol's support through x of the flag residues.
pub fn parshin_point_reciprocity(s: &SurfaceSymbol, x: &ProjectivePoint) -> Result<i64> {
    let curves: Vec<PlaneCurve> = s.support().into_iter().filter(|c| c.contains(x)).collect();
    for c in &curves {
        if !c.is_smooth_at(x) {
            return Err(Error::SingularFlag(format!("flag-curve {c} singular at point {x}")));
        }
    }
    let parts = curves.par_iter().map(|c| flag_residue(s, &Flag2::new(c, x)?)).collect::<Result<Vec<i64>>>()?;
    Ok(parts.into_iter().sum())
}

/// Maximal pole order along the support curves of Σ e · df/f ∧ dg/g.
pub fn dlog2_pole_check(s: &SurfaceSymbol) -> Result<i64> {
    let mut worst = 0;
    for h in s.support() {
        let chart = if h.is_coordinate_line(2) { 0 } else { 2 };
        worst = worst.max(pole_order_along(s, &h, chart));
    }
    Ok(worst)
}

/// Pole order along `h` of the du∧dv coefficient in the chart X_chart = 1.
fn pole_order_along(s: &SurfaceSymbol, h: &PlaneCurve, chart: usize) -> i64 {
    let field = s.field();
    let affine = |c: &PlaneCurve| c.form().dehomogenize(chart);
    // terms c·J(F, G) / (F·G), with F, G the dehomogenized factors
    let mut terms: Vec<(i64, PlaneCurve, PlaneCurve)> = Vec::new();
    for (f, g, e) in s.entries() {
        for (fi, a) in f.factors() {
            if fi.is_coordinate_line(chart) {
                continue;
            }
            for (gj, b) in g.factors() {
                if gj.is_coordinate_line(chart) {
                    continue;
                }
                terms.push((e * a * b, fi.clone(), gj.clone()));
            }
        }
    }
    let mut den_exp: BTreeMap<PlaneCurve, u32> = BTreeMap::new();
    for (_, fi, gj) in &terms {
        for c in [fi, gj] {
            let count = u32::from(c == fi) + u32::from(c == gj);
            let slot = den_exp.entry(c.clone()).or_insert(0);
            *slot = (*slot).max(count);
        }
    }
    let m_h = den_exp.get(h).copied().unwrap_or(0) as i64;
    if m_h == 0 {
        return 0;
    }
    let mut numerator = MultiPoly::zero(field, 2);
    for (coef, fi, gj) in &terms {
        let (fa, ga) = (affine(fi), affine(gj));
        let jac = &(&fa.partial(0) * &ga.partial(1)) - &(&fa.partial(1) * &ga.partial(0));
        if jac.is_zero() {
            continue;
        }
        let mut cofactor = MultiPoly::one(field, 2);
        for (c, &m) in &den_exp {
            let used = u32::from(c == fi) + u32::from(c == gj);
            cofactor = &cofactor * &affine(c).pow(m - used);
        }
        numerator = &numerator + &(&jac * &cofactor).scale(&field.from_i64(*coef));
    }
    if numerator.is_zero() {
        return 0;
    }
    let ord = numerator.multiplicity_of(&affine(h)) as i64;
    (m_h - ord).max(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn valuations_and_flags() {
        let k = gf(7);
        let x0 = PlaneCurve::coordinate_line(&k, 0);
        let x1 = PlaneCurve::coordinate_line(&k, 1);
        let origin = ProjectivePoint::rational(&k, [0, 0, 1]).unwrap();
        let phi = FactoredFunction::coordinate(&k, 0, 2);
        assert_eq!(valuation_on_curve(&phi, &x1, &origin).unwrap(), 1);
        let conic = PlaneCurve::from_i64(&k, &[(1, [0, 1, 1]), (-1, [2, 0, 0])]).unwrap();
        let v = FactoredFunction::coordinate(&k, 1, 2);
        assert_eq!(valuation_on_curve(&v, &conic, &origin).unwrap(), 2);

        let u = FactoredFunction::coordinate(&k, 0, 2);
        let s = SurfaceSymbol::pair(&u, &v).unwrap();
        assert_eq!(flag_residue(&s, &Flag2::new(&x1, &origin).unwrap()).unwrap(), 1);
        assert_eq!(flag_residue(&s, &Flag2::new(&x0, &origin).unwrap()).unwrap(), -1);
        let p = ProjectivePoint::rational(&k, [1, 0, 1]).unwrap();
        assert_eq!(flag_residue(&s, &Flag2::new(&x1, &p).unwrap()).unwrap(), 0);
        assert!(Flag2::new(&x0, &p).is_err());
        assert_eq!(parshin_point_reciprocity(&s, &origin).unwrap(), 0);
    }

    #[test]
    fn tame_examples() {
        let k = gf(7);
        let x1 = PlaneCurve::coordinate_line(&k, 1);
        let u = FactoredFunction::coordinate(&k, 0, 2);
        let v = FactoredFunction::coordinate(&k, 1, 2);
        let t = curve_tame_symbol(&SurfaceSymbol::pair(&u, &v).unwrap(), &x1).unwrap();
        assert_eq!(t, u);
        let t = curve_tame_symbol(&SurfaceSymbol::pair(&v, &v).unwrap(), &x1).unwrap();
        assert_eq!(t, FactoredFunction::constant_function(k.from_i64(-1)).unwrap());
        let x2 = MultiPoly::var(&k, 3, 2);
        let um1 = FactoredFunction::from_forms(&k, &[(&MultiPoly::var(&k, 3, 0) - &x2, 1), (x2.clone(), -1)]).unwrap();
        let t = curve_tame_symbol(&SurfaceSymbol::pair(&um1, &v.powi(2).unwrap()).unwrap(), &x1).unwrap();
        assert_eq!(t, um1.powi(2).unwrap());
    }

    #[test]
    fn dlog2_examples() {
        let k = gf(7);
        let u = FactoredFunction::coordinate(&k, 0, 2);
        let v = FactoredFunction::coordinate(&k, 1, 2);
        assert_eq!(dlog2_pole_check(&SurfaceSymbol::pair(&u, &v).unwrap()).unwrap(), 1);
        let x2 = MultiPoly::var(&k, 3, 2);
        let one_minus_u =
            FactoredFunction::from_forms(&k, &[(&x2 - &MultiPoly::var(&k, 3, 0), 1), (x2.clone(), -1)]).unwrap();
        assert_eq!(dlog2_pole_check(&SurfaceSymbol::pair(&u, &one_minus_u).unwrap()).unwrap(), 0);
        assert_eq!(dlog2_pole_check(&SurfaceSymbol::pair(&u.powi(2).unwrap(), &v).unwrap()).unwrap(), 1);
    }
}
