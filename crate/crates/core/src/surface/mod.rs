//! Flags, two-step residues and adelic intersection numbers on the projective
//! plane over GF(p), with Fulton's recursion and resultants as oracles.

mod fulton;
mod intersection;
mod multipoly;
mod points;
mod residue;

pub use fulton::{fulton_multiplicity, Multiplicity};
pub use intersection::{
    auxiliary_line, bezout_intersection_number, divisor_local_equation, fulton_intersection_number,
    intersection_number, intersection_number_with, surface_product_cycle, surface_product_cycle_with,
    SurfaceDivisorCocycle, SurfaceOptions, DEFAULT_EXT_BOUND,
};
pub use multipoly::MultiPoly;
pub use points::{bezout_resultant, intersection_points, ProjectivePoint};
pub use residue::{curve_tame_symbol, dlog2_pole_check, flag_residue, parshin_point_reciprocity, valuation_on_curve};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// An irreducible plane curve, stored by its monic homogeneous form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaneCurve {
    form: MultiPoly,
}

impl fmt::Debug for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{} = 0}}", self.form)
    }
}

/// All lines a·X0 + b·X1 + c·X2 over the field, normalized.
fn all_lines(field: &FieldSpec) -> Vec<[FieldElement; 3]> {
    let p = field.characteristic();
    let mut out = vec![[field.one(), field.zero(), field.zero()]];
    for a in 0..p {
        out.push([field.from_u64(a), field.one(), field.zero()]);
    }
    for a in 0..p {
        for b in 0..p {
            out.push([field.from_u64(a), field.from_u64(b), field.one()]);
        }
    }
    out
}

fn linear_form(field: &FieldSpec, c: &[FieldElement; 3]) -> MultiPoly {
    (0..3).fold(MultiPoly::zero(field, 3), |acc, i| &acc + &MultiPoly::var(field, 3, i).scale(&c[i]))
}

/// Exhaustive line search caps out here; larger fields are trusted.
const IRREDUCIBILITY_SEARCH_LIMIT: u64 = 101;

impl PlaneCurve {
    /// Validates the form and returns the curve with the scalar `c` such that form = c · monic.
    pub fn with_scalar(form: &MultiPoly) -> Result<(FieldElement, PlaneCurve)> {
        let field = form.field();
        if !field.is_prime_field() {
            return Err(Error::InvalidField("plane curves are defined over prime fields".into()));
        }
        if form.nvars() != 3 || form.is_zero() || !form.is_homogeneous() {
            return Err(Error::InvalidInput(format!("{form} is not a nonzero ternary form")));
        }
        let deg = form.total_degree().unwrap_or(0);
        if deg == 0 {
            return Err(Error::InvalidInput("a constant form defines no curve".into()));
        }
        let c = form.leading_term().map(|(_, c)| c.clone()).expect("nonzero");
        let monic = form.monic();
        if deg == 2 || deg == 3 {
            if field.characteristic() <= IRREDUCIBILITY_SEARCH_LIMIT {
                for l in all_lines(field) {
                    if monic.exact_div(&linear_form(field, &l)).is_some() {
                        return Err(Error::InvalidInput(format!("{form} has a linear factor")));
                    }
                }
            } else {
                log::warn!("irreducibility of {form} is assumed, not checked");
            }
        } else if deg > 3 {
            log::warn!("irreducibility of {form} is assumed, not checked");
        }
        Ok((c, PlaneCurve { form: monic }))
    }

    pub fn new(form: MultiPoly) -> Result<Self> {
        Ok(Self::with_scalar(&form)?.1)
    }

    /// Curve from (coefficient, [e0, e1, e2]) terms.
    pub fn from_i64(field: &FieldSpec, terms: &[(i64, [u32; 3])]) -> Result<Self> {
        let form = MultiPoly::from_terms(field, 3, terms.iter().map(|(c, e)| (e.to_vec(), field.from_i64(*c))))?;
        Self::new(form)
    }

    /// The line a·X0 + b·X1 + c·X2 = 0.
    pub fn line(field: &FieldSpec, coeffs: [i64; 3]) -> Result<Self> {
        Self::new(linear_form(field, &coeffs.map(|c| field.from_i64(c))))
    }

    /// The coordinate line X_i = 0.
    pub fn coordinate_line(field: &FieldSpec, i: usize) -> Self {
        PlaneCurve { form: MultiPoly::var(field, 3, i) }
    }

    pub fn form(&self) -> &MultiPoly {
        &self.form
    }

    pub fn field(&self) -> &FieldSpec {
        self.form.field()
    }

    pub fn degree(&self) -> u32 {
        self.form.total_degree().unwrap_or(0)
    }

    pub fn contains(&self, x: &ProjectivePoint) -> bool {
        x.lies_on(&self.form)
    }

    /// Whether the curve passes through x and is smooth there (affine gradient in x's chart).
    pub fn is_smooth_at(&self, x: &ProjectivePoint) -> bool {
        if !self.contains(x) {
            return false;
        }
        let chart = x.chart();
        let affine = self.form.dehomogenize(chart);
        let a = x.affine(chart).expect("valid chart");
        (0..2).any(|i| !affine.partial(i).eval(&a).is_zero())
    }

    /// Whether the curve is the coordinate line X_i = 0.
    pub(crate) fn is_coordinate_line(&self, i: usize) -> bool {
        self.form == MultiPoly::var(self.field(), 3, i)
    }
}

/// Finite ℤ-combination of plane curves.
#[derive(Clone, PartialEq, Eq)]
pub struct SurfaceDivisor {
    field: FieldSpec,
    terms: BTreeMap<PlaneCurve, i64>,
}

impl fmt::Debug for SurfaceDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SurfaceDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, n)| format!("{n}*{c}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl SurfaceDivisor {
    pub fn new(field: &FieldSpec, terms: impl IntoIterator<Item = (PlaneCurve, i64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (c, n) in terms {
            if c.field() != field {
                return Err(Error::FieldMismatch(format!("{c}")));
            }
            *map.entry(c).or_insert(0) += n;
        }
        map.retain(|_, n| *n != 0);
        Ok(SurfaceDivisor { field: field.clone(), terms: map })
    }

    pub fn curve(c: &PlaneCurve) -> Self {
        SurfaceDivisor { field: c.field().clone(), terms: BTreeMap::from([(c.clone(), 1)]) }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PlaneCurve, &i64)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &PlaneCurve> {
        self.terms.keys()
    }

    pub fn get(&self, c: &PlaneCurve) -> i64 {
        self.terms.get(c).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Σ mult · deg.
    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(c, n)| n * c.degree() as i64).sum()
    }

    pub fn try_add(&self, other: &SurfaceDivisor) -> Result<SurfaceDivisor> {
        Self::new(&self.field, self.terms.clone().into_iter().chain(other.terms.clone()))
    }

    pub fn scale(&self, k: i64) -> SurfaceDivisor {
        let terms = if k == 0 { BTreeMap::new() } else { self.terms.iter().map(|(c, n)| (c.clone(), n * k)).collect() };
        SurfaceDivisor { field: self.field.clone(), terms }
    }

    /// Whether some component passes through x.
    pub fn contains(&self, x: &ProjectivePoint) -> bool {
        self.terms.keys().any(|c| c.contains(x))
    }
}

/// A rational function on P² as c · Π F^e with Σ e·deg F = 0, never expanded.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FactoredFunction {
    constant: FieldElement,
    factors: BTreeMap<PlaneCurve, i64>,
}

impl fmt::Debug for FactoredFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FactoredFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (c, e) in &self.factors {
            write!(f, " * ({})^{e}", c.form())?;
        }
        Ok(())
    }
}

impl FactoredFunction {
    pub fn new(constant: FieldElement, factors: impl IntoIterator<Item = (PlaneCurve, i64)>) -> Result<Self> {
        if constant.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !constant.field().is_prime_field() {
            return Err(Error::InvalidField("constants of surface functions lie in the prime field".into()));
        }
        let mut map: BTreeMap<PlaneCurve, i64> = BTreeMap::new();
        for (c, e) in factors {
            if c.field() != constant.field() {
                return Err(Error::FieldMismatch(format!("{c}")));
            }
            *map.entry(c).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        let weight: i64 = map.iter().map(|(c, e)| e * c.degree() as i64).sum();
        if weight != 0 {
            return Err(Error::InvalidInput(format!("factored function has degree {weight}, not 0")));
        }
        Ok(FactoredFunction { constant, factors: map })
    }

    /// Π form^e with arbitrary (non-monic) forms; scalars move into the constant.
    pub fn from_forms(field: &FieldSpec, forms: &[(MultiPoly, i64)]) -> Result<Self> {
        let mut constant = field.one();
        let mut factors = Vec::with_capacity(forms.len());
        for (form, e) in forms {
            let (c, curve) = PlaneCurve::with_scalar(form)?;
            constant = &constant * &c.powi(*e)?;
            factors.push((curve, *e));
        }
        Self::new(constant, factors)
    }

    pub fn constant_function(c: FieldElement) -> Result<Self> {
        Self::new(c, Vec::new())
    }

    pub fn one(field: &FieldSpec) -> Self {
        FactoredFunction { constant: field.one(), factors: BTreeMap::new() }
    }

    /// The affine coordinate X_i / X_chart.
    pub fn coordinate(field: &FieldSpec, i: usize, chart: usize) -> Self {
        Self::new(
            field.one(),
            [(PlaneCurve::coordinate_line(field, i), 1), (PlaneCurve::coordinate_line(field, chart), -1)],
        )
        .expect("degree zero")
    }

    pub fn field(&self) -> &FieldSpec {
        self.constant.field()
    }

    pub fn constant(&self) -> &FieldElement {
        &self.constant
    }

    pub fn factors(&self) -> &BTreeMap<PlaneCurve, i64> {
        &self.factors
    }

    /// v_C: the exponent of C's form.
    pub fn exponent(&self, c: &PlaneCurve) -> i64 {
        self.factors.get(c).copied().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &FactoredFunction) -> Result<FactoredFunction> {
        Self::new(&self.constant * &other.constant, self.factors.clone().into_iter().chain(other.factors.clone()))
    }

    pub fn powi(&self, k: i64) -> Result<FactoredFunction> {
        Self::new(self.constant.powi(k)?, self.factors.iter().map(|(c, e)| (c.clone(), e * k)))
    }

    pub fn inv(&self) -> Result<FactoredFunction> {
        self.powi(-1)
    }

    /// Value at a point where every factor is a unit, or None.
    pub fn value_at(&self, x: &ProjectivePoint) -> Option<FieldElement> {
        let field = x.field().clone();
        let mut acc = field.lift(&self.constant);
        for (c, e) in &self.factors {
            let v = c.form().eval(x.coords());
            if v.is_zero() {
                return None;
            }
            acc = &acc * &v.powi(*e).ok()?;
        }
        Some(acc)
    }
}

/// Formal product Π {f_i, g_i}^{e_i} of factored functions.
#[derive(Clone, PartialEq, Eq)]
pub struct SurfaceSymbol {
    field: FieldSpec,
    entries: Vec<(FactoredFunction, FactoredFunction, i64)>,
}

impl fmt::Debug for SurfaceSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(a, b, e)| format!("{{{a}, {b}}}^{e}")).collect();
        write!(f, "{}", if parts.is_empty() { "1".to_string() } else { parts.join(" * ") })
    }
}

impl SurfaceSymbol {
    pub fn one(field: &FieldSpec) -> Self {
        SurfaceSymbol { field: field.clone(), entries: Vec::new() }
    }

    pub fn pair(f: &FactoredFunction, g: &FactoredFunction) -> Result<Self> {
        Self::from_entries(f.field(), vec![(f.clone(), g.clone(), 1)])
    }

    pub fn from_entries(field: &FieldSpec, entries: Vec<(FactoredFunction, FactoredFunction, i64)>) -> Result<Self> {
        let mut s = Self::one(field);
        for (f, g, e) in entries {
            if f.field() != field || g.field() != field {
                return Err(Error::FieldMismatch("symbol entries".into()));
            }
            if e != 0 {
                s.entries.push((f, g, e));
            }
        }
        Ok(s)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn entries(&self) -> &[(FactoredFunction, FactoredFunction, i64)] {
        &self.entries
    }

    pub fn times(&self, other: &SurfaceSymbol) -> Result<SurfaceSymbol> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("symbol product".into()));
        }
        let mut out = self.clone();
        out.entries.extend(other.entries.iter().cloned());
        Ok(out)
    }

    pub fn pow(&self, k: i64) -> SurfaceSymbol {
        let entries = if k == 0 {
            Vec::new()
        } else {
            self.entries.iter().map(|(f, g, e)| (f.clone(), g.clone(), e * k)).collect()
        };
        SurfaceSymbol { field: self.field.clone(), entries }
    }

    /// Curves appearing in some entry.
    pub fn support(&self) -> BTreeSet<PlaneCurve> {
        self.entries.iter().flat_map(|(f, g, _)| f.factors.keys().chain(g.factors.keys()).cloned()).collect()
    }
}

/// A flag (C ∋ x) on P², with the chart in which x is normalized.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flag2 {
    curve: PlaneCurve,
    point: ProjectivePoint,
    chart: usize,
}

impl fmt::Debug for Flag2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ∋ {})", self.curve, self.point)
    }
}

impl Flag2 {
    pub fn new(curve: &PlaneCurve, point: &ProjectivePoint) -> Result<Self> {
        if curve.field().characteristic() != point.field().characteristic() {
            return Err(Error::FieldMismatch("flag point".into()));
        }
        if !curve.contains(point) {
            return Err(Error::InvalidFlag(format!("{point} does not lie on {curve}")));
        }
        Ok(Flag2 { curve: curve.clone(), point: point.clone(), chart: point.chart() })
    }

    pub fn curve(&self) -> &PlaneCurve {
        &self.curve
    }

    pub fn point(&self) -> &ProjectivePoint {
        &self.point
    }

    pub fn chart(&self) -> usize {
        self.chart
    }
}
