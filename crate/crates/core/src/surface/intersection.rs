//! Intersection numbers of divisors on P² through flag residues, the surface
//! cochain product, and the classical oracles.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::{
    bezout_resultant, curve_tame_symbol, fulton_multiplicity, intersection_points, valuation_on_curve,
    FactoredFunction, Flag2, PlaneCurve, ProjectivePoint, SurfaceDivisor, SurfaceSymbol,
};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::signs::SignConventions;

pub const DEFAULT_EXT_BOUND: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceOptions {
    /// Largest [k(x):k] searched for intersection points.
    pub ext_bound: usize,
    pub signs: SignConventions,
}

impl Default for SurfaceOptions {
    fn default() -> Self {
        SurfaceOptions { ext_bound: DEFAULT_EXT_BOUND, signs: SignConventions::RESOLVED }
    }
}

fn candidate_lines(field: &FieldSpec) -> Vec<PlaneCurve> {
    let preferred: [[i64; 3]; 10] = [
        [0, 0, 1],
        [1, 0, 0],
        [0, 1, 0],
        [1, 1, 1],
        [1, 1, 0],
        [0, 1, 1],
        [1, 0, 1],
        [1, -1, 0],
        [0, 1, -1],
        [1, 0, -1],
    ];
    let mut out: Vec<PlaneCurve> = preferred.iter().filter_map(|c| PlaneCurve::line(field, *c).ok()).collect();
    let p = field.characteristic().min(13) as i64;
    for a in 0..p {
        for b in 0..p {
            if let Ok(l) = PlaneCurve::line(field, [a, b, 1]) {
                if !out.contains(&l) {
                    out.push(l);
                }
            }
        }
    }
    out
}

/// The first candidate line through none of the given points and not in `exclude`.
pub fn auxiliary_line(field: &FieldSpec, avoid: &[ProjectivePoint], exclude: &[&PlaneCurve]) -> Result<PlaneCurve> {
    candidate_lines(field)
        .into_iter()
        .find(|l| !exclude.contains(&l) && avoid.iter().all(|x| !l.contains(x)))
        .ok_or_else(|| {
            Error::NoAuxiliaryChoice(format!(
                "every candidate line meets one of {} points; enlarge the field or split the divisor",
                avoid.len()
            ))
        })
}

/// Π F^{a_F} / L^{deg D}: a global degree-zero equation of D away from L.
pub fn divisor_local_equation(d: &SurfaceDivisor, line: &PlaneCurve) -> Result<FactoredFunction> {
    let mut factors: Vec<(PlaneCurve, i64)> = d.iter().map(|(c, n)| (c.clone(), *n)).collect();
    factors.push((line.clone(), -d.degree()));
    FactoredFunction::new(d.field().one(), factors)
}

fn check_proper(d1: &SurfaceDivisor, d2: &SurfaceDivisor) -> Result<()> {
    if d1.field() != d2.field() {
        return Err(Error::FieldMismatch("surface divisors".into()));
    }
    if let Some(c) = d1.support().find(|c| d2.get(c) != 0) {
        return Err(Error::ImproperIntersection(format!("{c} is a common component")));
    }
    Ok(())
}

/// Points of C ∩ C′ for every pair (C ∈ D₁, C′ ∈ D₂), with Bézout completeness checked.
fn pair_points(
    d1: &SurfaceDivisor,
    d2: &SurfaceDivisor,
    bound: usize,
) -> Result<BTreeMap<(PlaneCurve, PlaneCurve), Vec<ProjectivePoint>>> {
    let pairs: Vec<(PlaneCurve, PlaneCurve)> =
        d1.support().flat_map(|c| d2.support().map(move |g| (c.clone(), g.clone()))).collect();
    let found = pairs
        .par_iter()
        .map(|(c, g)| {
            let pts = intersection_points(c, g, bound)?;
            let expected = bezout_resultant(c, g)?;
            let mut seen = 0u64;
            for x in &pts {
                seen += x.degree() as u64 * local_multiplicity(c, g, x)?;
            }
            if seen != expected {
                return Err(Error::RationalityBound(format!(
                    "{c} ∩ {g} has points beyond GF(p^{bound}); raise the extension bound"
                )));
            }
            Ok(((c.clone(), g.clone()), pts))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().collect())
}

fn local_multiplicity(c: &PlaneCurve, g: &PlaneCurve, x: &ProjectivePoint) -> Result<u64> {
    let chart = x.chart();
    fulton_multiplicity(&c.form().dehomogenize(chart), &g.form().dehomogenize(chart), &x.affine(chart)?)?
        .finite()
        .ok_or_else(|| Error::ImproperIntersection(format!("{c} and {g} share a component")))
}

/// (D₁·D₂) = sign · Σ_{(C,x)} [k(x):k] · ν_{C,x}{s₁⁻¹, s₂⁻¹}, default options.
pub fn intersection_number(d1: &SurfaceDivisor, d2: &SurfaceDivisor) -> Result<i64> {
    intersection_number_with(d1, d2, &SurfaceOptions::default())
}

/// The adelic intersection formula. Flags run over C ∈ supp D₁ and x ∈ C ∩ supp D₂; both
/// equations share one auxiliary line through none of those points.
pub fn intersection_number_with(d1: &SurfaceDivisor, d2: &SurfaceDivisor, opts: &SurfaceOptions) -> Result<i64> {
    check_proper(d1, d2)?;
    let pts = pair_points(d1, d2, opts.ext_bound)?;
    let all: Vec<ProjectivePoint> = pts.values().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let comps: Vec<&PlaneCurve> = d1.support().chain(d2.support()).collect();
    let line = auxiliary_line(d1.field(), &all, &comps)?;
    let s1 = divisor_local_equation(d1, &line)?;
    let s2 = divisor_local_equation(d2, &line)?;
    let symbol = SurfaceSymbol::pair(&s1.inv()?, &s2.inv()?)?;
    let mut flags: BTreeSet<Flag2> = BTreeSet::new();
    for ((c, _), xs) in &pts {
        for x in xs {
            flags.insert(Flag2::new(c, x)?);
        }
    }
    let flags: Vec<Flag2> = flags.into_iter().collect();
    let tames: BTreeMap<PlaneCurve, FactoredFunction> =
        d1.support().map(|c| Ok((c.clone(), curve_tame_symbol(&symbol, c)?))).collect::<Result<_>>()?;
    let parts = flags
        .par_iter()
        .map(|f| Ok(f.point().degree() as i64 * valuation_on_curve(&tames[f.curve()], f.curve(), f.point())?))
        .collect::<Result<Vec<i64>>>()?;
    Ok(opts.signs.surface_nu * parts.into_iter().sum::<i64>())
}

/// Σ a·b·Σ_x [k(x):k]·I_x(C, C′) by Fulton's recursion.
pub fn fulton_intersection_number(d1: &SurfaceDivisor, d2: &SurfaceDivisor, bound: usize) -> Result<i64> {
    check_proper(d1, d2)?;
    let pts = pair_points(d1, d2, bound)?;
    let mut total = 0i64;
    for ((c, g), xs) in &pts {
        let ab = d1.get(c) * d2.get(g);
        for x in xs {
            total += ab * x.degree() as i64 * local_multiplicity(c, g, x)? as i64;
        }
    }
    Ok(total)
}

/// Σ a·b·deg Res(C, C′): Bézout through elimination.
pub fn bezout_intersection_number(d1: &SurfaceDivisor, d2: &SurfaceDivisor) -> Result<i64> {
    check_proper(d1, d2)?;
    let mut total = 0i64;
    for (c, a) in d1.iter() {
        for (g, b) in d2.iter() {
            total += a * b * bezout_resultant(c, g)? as i64;
        }
    }
    Ok(total)
}

/// The 1-cocycle [D] on P² with per-flag local equations and tail 1.
///
/// Components: (X, C) ↦ s_C⁻¹, (X, x) ↦ s_x⁻¹, (C, x) ↦ s_C / s_x, where s_η = 1 when η is
/// off the support and otherwise Π F^a / L_η^{deg D} for the first candidate line L_η that
/// avoids η.
#[derive(Clone, Debug)]
pub struct SurfaceDivisorCocycle {
    divisor: SurfaceDivisor,
}

impl SurfaceDivisorCocycle {
    pub fn new(divisor: &SurfaceDivisor) -> Self {
        SurfaceDivisorCocycle { divisor: divisor.clone() }
    }

    pub fn divisor(&self) -> &SurfaceDivisor {
        &self.divisor
    }

    fn curve_equation(&self, c: &PlaneCurve) -> Result<FactoredFunction> {
        if self.divisor.get(c) == 0 {
            return Ok(FactoredFunction::one(self.divisor.field()));
        }
        let comps: Vec<&PlaneCurve> = self.divisor.support().collect();
        let line = auxiliary_line(self.divisor.field(), &[], &comps)?;
        divisor_local_equation(&self.divisor, &line)
    }

    fn point_equation(&self, x: &ProjectivePoint) -> Result<FactoredFunction> {
        if !self.divisor.contains(x) {
            return Ok(FactoredFunction::one(self.divisor.field()));
        }
        let line = auxiliary_line(self.divisor.field(), std::slice::from_ref(x), &[])?;
        divisor_local_equation(&self.divisor, &line)
    }

    /// The (X, C) component.
    pub fn curve_component(&self, c: &PlaneCurve) -> Result<FactoredFunction> {
        self.curve_equation(c)?.inv()
    }

    /// The (X, x) component.
    pub fn point_component(&self, x: &ProjectivePoint) -> Result<FactoredFunction> {
        self.point_equation(x)?.inv()
    }

    /// The (C, x) component.
    pub fn flag_component(&self, flag: &Flag2) -> Result<FactoredFunction> {
        self.curve_equation(flag.curve())?.mul(&self.point_equation(flag.point())?.inv()?)
    }
}

/// ν of the product [D₁]·[D₂], default options.
pub fn surface_product_cycle(d1: &SurfaceDivisor, d2: &SurfaceDivisor) -> Result<BTreeMap<ProjectivePoint, i64>> {
    surface_product_cycle_with(d1, d2, &SurfaceOptions::default())
}

/// Builds [D₁], [D₂], multiplies flag-wise ((X,C,x) ↦ {[D₁]_{XC}, [D₂]_{Cx}}) and applies ν.
/// Every flag on a component of D₁ ∪ D₂ through a pairwise intersection point is visited;
/// the ones where the product is trivial contribute nothing.
pub fn surface_product_cycle_with(
    d1: &SurfaceDivisor,
    d2: &SurfaceDivisor,
    opts: &SurfaceOptions,
) -> Result<BTreeMap<ProjectivePoint, i64>> {
    check_proper(d1, d2)?;
    let pts = pair_points(d1, d2, opts.ext_bound)?;
    let points: BTreeSet<ProjectivePoint> = pts.values().flatten().cloned().collect();
    let curves: BTreeSet<PlaneCurve> = d1.support().chain(d2.support()).cloned().collect();
    let a = SurfaceDivisorCocycle::new(d1);
    let b = SurfaceDivisorCocycle::new(d2);
    let mut flags = Vec::new();
    for c in &curves {
        for x in &points {
            if c.contains(x) {
                flags.push(Flag2::new(c, x)?);
            }
        }
    }
    let contributions = flags
        .par_iter()
        .map(|flag| {
            let f = a.curve_component(flag.curve())?;
            let g = b.flag_component(flag)?;
            let symbol = SurfaceSymbol::pair(&f, &g)?;
            let tame = curve_tame_symbol(&symbol, flag.curve())?;
            if tame.factors().keys().all(|h| !h.contains(flag.point())) {
                return Ok((flag.point().clone(), 0));
            }
            Ok((flag.point().clone(), valuation_on_curve(&tame, flag.curve(), flag.point())?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut cycle: BTreeMap<ProjectivePoint, i64> = BTreeMap::new();
    for (x, n) in contributions {
        *cycle.entry(x).or_insert(0) += opts.signs.surface_nu * n;
    }
    cycle.retain(|_, n| *n != 0);
    Ok(cycle)
}
