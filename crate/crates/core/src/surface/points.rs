//! Projective points over finite extensions, resultants of plane forms and
//! enumeration of intersection points.

use std::collections::BTreeSet;
use std::fmt;

use super::{MultiPoly, PlaneCurve};
use crate::error::{Error, Result};
use crate::field::{descend, roots, FieldElement, FieldSpec, Polynomial};

/// A closed point of P², stored as the least Frobenius conjugate of a
/// normalized representative over the canonical GF(p^d), d = [k(x):k].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: [FieldElement; 3],
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coords;
        write!(f, "({a}:{b}:{c})")
    }
}

impl ProjectivePoint {
    pub fn new(coords: [FieldElement; 3]) -> Result<Self> {
        let field = coords[0].field().clone();
        if coords.iter().any(|c| c.field() != &field) {
            return Err(Error::FieldMismatch("projective coordinates".into()));
        }
        let Some(chart) = (0..3).rev().find(|&i| !coords[i].is_zero()) else {
            return Err(Error::InvalidInput("(0:0:0) is not a projective point".into()));
        };
        let inv = coords[chart].inv()?;
        let scaled: Vec<FieldElement> = coords.iter().map(|c| c * &inv).collect();
        let canon = descend(&scaled);
        let d = canon[0].field().degree();
        let mut best = canon.clone();
        let mut cur = canon;
        for _ in 1..d {
            cur = cur.iter().map(|c| c.frobenius()).collect();
            if cur < best {
                best = cur.clone();
            }
        }
        let coords: [FieldElement; 3] = best.try_into().expect("three coordinates");
        Ok(ProjectivePoint { coords })
    }

    /// A GF(p)-rational point from integer coordinates.
    pub fn rational(field: &FieldSpec, coords: [i64; 3]) -> Result<Self> {
        Self::new(coords.map(|c| field.from_i64(c)))
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn field(&self) -> &FieldSpec {
        self.coords[0].field()
    }

    /// [k(x):k].
    pub fn degree(&self) -> usize {
        self.field().degree()
    }

    /// Index of the coordinate normalized to one.
    pub fn chart(&self) -> usize {
        (0..3).rev().find(|&i| !self.coords[i].is_zero()).expect("nonzero point")
    }

    /// Affine coordinates in the chart X_c = 1.
    pub fn affine(&self, chart: usize) -> Result<[FieldElement; 2]> {
        let c = &self.coords[chart];
        if c.is_zero() {
            return Err(Error::InvalidFlag(format!("chart X{chart} is not valid at {self}")));
        }
        let inv = c.inv()?;
        let rest: Vec<FieldElement> = (0..3).filter(|&i| i != chart).map(|i| &self.coords[i] * &inv).collect();
        Ok([rest[0].clone(), rest[1].clone()])
    }

    pub fn lies_on(&self, form: &MultiPoly) -> bool {
        form.eval(&self.coords).is_zero()
    }
}

/// Fraction-free determinant over a polynomial ring (Bareiss); `m` is square and nonempty.
fn bareiss(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    let field = m[0][0].field().clone();
    let nvars = m[0][0].nvars();
    let mut negate = false;
    let mut prev = MultiPoly::one(&field, nvars);
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return MultiPoly::zero(&field, nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Res_{X_var}(F, G) by the Sylvester determinant.
pub(crate) fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> MultiPoly {
    let coeffs = |p: &MultiPoly| -> Vec<MultiPoly> {
        let deg = p.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(p.field(), p.nvars()); deg + 1];
        for (e, c) in p.terms() {
            let mut e2 = e.clone();
            e2[var] = 0;
            out[e[var] as usize] = &out[e[var] as usize] + &MultiPoly::monomial(c.clone(), e2);
        }
        out
    };
    let a = coeffs(f);
    let b = coeffs(g);
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return MultiPoly::one(f.field(), f.nvars());
    }
    let zero = MultiPoly::zero(f.field(), f.nvars());
    let mut rows = vec![vec![zero; size]; size];
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    bareiss(rows)
}

/// A projective change of coordinates X = A·X′ moving a center off both curves to (0:1:0),
/// together with the homogeneous resultant in the remaining coordinates.
pub(crate) struct Projection {
    /// columns of A
    columns: [[FieldElement; 3]; 3],
    f: MultiPoly,
    g: MultiPoly,
    resultant: MultiPoly,
}

fn candidate_centers(field: &FieldSpec) -> Vec<[FieldElement; 3]> {
    let p = field.characteristic() as i64;
    let mut out = vec![[0, 1, 0], [1, 0, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1], [1, 0, 1], [1, 1, 1]];
    for a in 0..p.min(12) {
        for b in 0..p.min(12) {
            out.push([a, 1, b]);
        }
    }
    out.into_iter().map(|c| c.map(|x| field.from_i64(x))).collect()
}

impl Projection {
    pub(crate) fn new(f: &MultiPoly, g: &MultiPoly) -> Result<Self> {
        let field = f.field().clone();
        for c in candidate_centers(&field) {
            if f.eval(&c).is_zero() || g.eval(&c).is_zero() {
                continue;
            }
            // complete c to a basis with two standard vectors
            let drop = (0..3).find(|&i| !c[i].is_zero()).expect("nonzero center");
            let others: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
            let unit = |i: usize| -> [FieldElement; 3] {
                let mut v = [field.zero(), field.zero(), field.zero()];
                v[i] = field.one();
                v
            };
            let columns = [unit(others[0]), c.clone(), unit(others[1])];
            let images: Vec<MultiPoly> = (0..3)
                .map(|row| {
                    (0..3).fold(MultiPoly::zero(&field, 3), |acc, col| {
                        &acc + &MultiPoly::var(&field, 3, col).scale(&columns[col][row])
                    })
                })
                .collect();
            let ft = f.linear_substitute(&images);
            let gt = g.linear_substitute(&images);
            let resultant = resultant(&ft, &gt, 1);
            return Ok(Projection { columns, f: ft, g: gt, resultant });
        }
        Err(Error::NoAuxiliaryChoice("no projection center off both curves among the candidates".into()))
    }

    /// The binary form Res_{X′₁}; its degree is deg F · deg G unless the curves share a component.
    pub(crate) fn resultant(&self) -> &MultiPoly {
        &self.resultant
    }

    fn to_original(&self, x: &[FieldElement; 3]) -> Result<ProjectivePoint> {
        let field = x[0].field().clone();
        let coords: [FieldElement; 3] = std::array::from_fn(|row| {
            (0..3).fold(field.zero(), |acc, col| {
                let a = field_coerce(&self.columns[col][row], &field);
                &acc + &(&a * &x[col])
            })
        });
        ProjectivePoint::new(coords)
    }

    /// Common points over GF(p^k), mapped back to the original coordinates.
    fn points_over(&self, k: usize) -> Result<Vec<ProjectivePoint>> {
        let p = self.f.field().characteristic();
        let ext = if k == 1 { self.f.field().clone() } else { FieldSpec::canonical_extension(p, k)? };
        // roots (x0 : x2) of the binary resultant
        let mut fibers: Vec<(FieldElement, FieldElement)> = Vec::new();
        let affine = binary_dehomogenize(&self.resultant, &ext);
        if !affine.is_zero() {
            for u in roots(&affine)? {
                fibers.push((u, ext.one()));
            }
        }
        let deg_total = self.resultant.total_degree().unwrap_or(0) as usize;
        if affine.degree().unwrap_or(0) < deg_total {
            fibers.push((ext.one(), ext.zero()));
        }
        let mut out = Vec::new();
        for (x0, x2) in fibers {
            let fx = fiber_poly(&self.f, &x0, &x2);
            let gx = fiber_poly(&self.g, &x0, &x2);
            if fx.is_zero() && gx.is_zero() {
                return Err(Error::ImproperIntersection("curves share a component".into()));
            }
            let h = fx.gcd(&gx);
            if h.degree().unwrap_or(0) == 0 {
                continue;
            }
            for t in roots(&h)? {
                out.push(self.to_original(&[x0.clone(), t, x2.clone()])?);
            }
        }
        Ok(out)
    }
}

fn field_coerce(a: &FieldElement, target: &FieldSpec) -> FieldElement {
    if a.field() == target {
        a.clone()
    } else {
        target.lift(a)
    }
}

/// R(u, 1) for a binary form R in (X₀, X₂) (X₁ absent), lifted to `ext`.
fn binary_dehomogenize(r: &MultiPoly, ext: &FieldSpec) -> Polynomial {
    let mut coeffs = Vec::new();
    for (e, c) in r.terms() {
        let k = e[0] as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, ext.zero());
        }
        coeffs[k] = &coeffs[k] + &field_coerce(c, ext);
    }
    Polynomial::new(ext, coeffs)
}

/// F(x0, t, x2) as a polynomial in t.
fn fiber_poly(f: &MultiPoly, x0: &FieldElement, x2: &FieldElement) -> Polynomial {
    let ext = x0.field().clone();
    let mut coeffs = Vec::new();
    for (e, c) in f.terms() {
        let k = e[1] as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, ext.zero());
        }
        let t = &(&field_coerce(c, &ext) * &x0.pow(e[0] as u64)) * &x2.pow(e[2] as u64);
        coeffs[k] = &coeffs[k] + &t;
    }
    Polynomial::new(&ext, coeffs)
}

/// Closed points of C ∩ C′ of degree at most `bound`, in canonical order.
pub fn intersection_points(c1: &PlaneCurve, c2: &PlaneCurve, bound: usize) -> Result<Vec<ProjectivePoint>> {
    if c1 == c2 {
        return Err(Error::ImproperIntersection(format!("{c1} is a common component")));
    }
    let proj = Projection::new(c1.form(), c2.form())?;
    if proj.resultant().is_zero() {
        return Err(Error::ImproperIntersection(format!("{c1} and {c2} share a component")));
    }
    let mut found = BTreeSet::new();
    for k in 1..=bound.max(1) {
        found.extend(proj.points_over(k)?);
    }
    Ok(found.into_iter().collect())
}

/// deg Res: the number of intersections counted with multiplicity (Bézout through elimination).
pub fn bezout_resultant(c1: &PlaneCurve, c2: &PlaneCurve) -> Result<u64> {
    if c1 == c2 {
        return Err(Error::ImproperIntersection(format!("{c1} is a common component")));
    }
    let proj = Projection::new(c1.form(), c2.form())?;
    match proj.resultant().total_degree() {
        Some(d) if !proj.resultant().is_zero() => Ok(d as u64),
        _ => Err(Error::ImproperIntersection(format!("{c1} and {c2} share a component"))),
    }
}
