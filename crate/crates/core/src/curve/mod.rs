//! Function fields of P¹ and of a Weierstrass elliptic curve over GF(p):
//! places, valuations, divisors and Riemann–Roch spaces.

mod elliptic;
mod function;
pub(crate) mod local;
mod place;
mod riemann_roch;

pub use elliptic::Point;
pub use function::Function;
pub use place::{Divisor, Place};
pub use riemann_roch::riemann_roch_space;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CurveKind {
    ProjectiveLine,
    /// y² = x³ + a·x + b
    Elliptic {
        a: FieldElement,
        b: FieldElement,
    },
}

#[derive(Debug)]
struct CurveModel {
    field: FieldSpec,
    kind: CurveKind,
}

/// Shared handle to a curve model. Cloning is cheap.
#[derive(Clone)]
pub struct Curve(Arc<CurveModel>);

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.field == other.0.field && self.0.kind == other.0.kind)
    }
}

impl Eq for Curve {}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            CurveKind::ProjectiveLine => write!(f, "P1/{:?}", self.0.field),
            CurveKind::Elliptic { a, b } => {
                let rhs =
                    Polynomial::new(&self.0.field, vec![b.clone(), a.clone(), self.0.field.zero(), self.0.field.one()]);
                write!(f, "y^2 = {} / {:?}", rhs.display_var("x"), self.0.field)
            }
        }
    }
}

impl Curve {
    pub fn projective_line(field: &FieldSpec) -> Result<Self> {
        if !field.is_prime_field() {
            return Err(Error::InvalidField("curves are defined over prime fields".into()));
        }
        Ok(Curve(Arc::new(CurveModel { field: field.clone(), kind: CurveKind::ProjectiveLine })))
    }

    /// The curve y² = x³ + a·x + b; rejects singular models.
    pub fn elliptic(field: &FieldSpec, a: FieldElement, b: FieldElement) -> Result<Self> {
        if !field.is_prime_field() {
            return Err(Error::InvalidField("curves are defined over prime fields".into()));
        }
        if a.field() != field || b.field() != field {
            return Err(Error::FieldMismatch("Weierstrass coefficients".into()));
        }
        let disc = &field.from_i64(-16) * &(&(&field.from_u64(4) * &a.pow(3)) + &(&field.from_u64(27) * &b.pow(2)));
        if disc.is_zero() {
            return Err(Error::InvalidCurve(format!("singular: a = {a}, b = {b}")));
        }
        Ok(Curve(Arc::new(CurveModel { field: field.clone(), kind: CurveKind::Elliptic { a, b } })))
    }

    /// Convenience constructor from integer coefficients.
    pub fn elliptic_i64(p: u64, a: i64, b: i64) -> Result<Self> {
        let f = FieldSpec::prime(p)?;
        Self::elliptic(&f, f.from_i64(a), f.from_i64(b))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.0.field
    }

    pub fn kind(&self) -> &CurveKind {
        &self.0.kind
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self.0.kind, CurveKind::Elliptic { .. })
    }

    pub fn genus(&self) -> i64 {
        if self.is_elliptic() {
            1
        } else {
            0
        }
    }

    /// x³ + a·x + b (elliptic), zero for P¹.
    pub fn rhs(&self) -> Polynomial {
        match &self.0.kind {
            CurveKind::ProjectiveLine => Polynomial::zero(&self.0.field),
            CurveKind::Elliptic { a, b } => {
                let f = &self.0.field;
                Polynomial::new(f, vec![b.clone(), a.clone(), f.zero(), f.one()])
            }
        }
    }

    /// A fixed rational place of degree one: ∞ on P¹, O on the elliptic curve.
    pub fn base_place(&self) -> Place {
        if self.is_elliptic() {
            Place::Origin
        } else {
            Place::Infinity
        }
    }

    /// Canonical divisor used for duality checks: −2·∞ on P¹, 0 on the elliptic curve.
    pub fn canonical_divisor(&self) -> Divisor {
        let d = Divisor::zero(self);
        if self.is_elliptic() {
            d
        } else {
            d.with(Place::Infinity, -2)
        }
    }

    pub(crate) fn ensure_same(&self, other: &Curve) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::CurveMismatch(format!("{self} vs {other}")))
        }
    }

    pub(crate) fn a(&self) -> FieldElement {
        match &self.0.kind {
            CurveKind::Elliptic { a, .. } => a.clone(),
            CurveKind::ProjectiveLine => self.0.field.zero(),
        }
    }

    pub(crate) fn b(&self) -> FieldElement {
        match &self.0.kind {
            CurveKind::Elliptic { b, .. } => b.clone(),
            CurveKind::ProjectiveLine => self.0.field.zero(),
        }
    }
}
