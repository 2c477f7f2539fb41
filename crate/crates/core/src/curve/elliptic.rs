use std::fmt;

use super::{Curve, Place};
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// A point of the elliptic curve with coordinates in some GF(p^k).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Infinity,
    Affine(FieldElement, FieldElement),
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine(x, y) => write!(f, "({x},{y})"),
        }
    }
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&FieldElement> {
        match self {
            Point::Affine(x, _) => Some(x),
            Point::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&FieldElement> {
        match self {
            Point::Affine(_, y) => Some(y),
            Point::Infinity => None,
        }
    }
}

impl Curve {
    fn require_elliptic(&self) -> Result<()> {
        if self.is_elliptic() {
            Ok(())
        } else {
            Err(Error::CurveMismatch("group law needs the elliptic model".into()))
        }
    }

    /// Checked affine point.
    pub fn point(&self, x: FieldElement, y: FieldElement) -> Result<Point> {
        self.require_elliptic()?;
        let pt = Point::Affine(x, y);
        if !self.contains(&pt) {
            return Err(Error::OffCurve(format!("{pt}")));
        }
        Ok(pt)
    }

    /// Rational point from integer coordinates.
    pub fn point_i64(&self, x: i64, y: i64) -> Result<Point> {
        let f = self.field();
        self.point(f.from_i64(x), f.from_i64(y))
    }

    pub fn contains(&self, pt: &Point) -> bool {
        match pt {
            Point::Infinity => self.is_elliptic(),
            Point::Affine(x, y) => {
                self.is_elliptic()
                    && x.field() == y.field()
                    && x.field().characteristic() == self.field().characteristic()
                    && (y * y) == self.rhs().eval(x)
            }
        }
    }

    fn check(&self, pt: &Point) -> Result<()> {
        self.require_elliptic()?;
        if self.contains(pt) {
            Ok(())
        } else {
            Err(Error::OffCurve(format!("{pt}")))
        }
    }

    pub fn negate(&self, pt: &Point) -> Result<Point> {
        self.check(pt)?;
        Ok(match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), -y),
        })
    }

    /// Chord–tangent addition.
    pub fn add_points(&self, p: &Point, q: &Point) -> Result<Point> {
        self.check(p)?;
        self.check(q)?;
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return Ok(q.clone()),
            (_, Point::Infinity) => return Ok(p.clone()),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        if x1.field() != x2.field() {
            return Err(Error::FieldMismatch("points over different fields".into()));
        }
        let k = x1.field();
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return Ok(Point::Infinity);
            }
            let a = k.lift(&self.a());
            let num = &(&k.from_u64(3) * &(x1 * x1)) + &a;
            &num / &(&k.from_u64(2) * y1)
        } else {
            &(y2 - y1) / &(x2 - x1)
        };
        let x3 = &(&(&lambda * &lambda) - x1) - x2;
        let y3 = &(&lambda * &(x1 - &x3)) - y1;
        Ok(Point::Affine(x3, y3))
    }

    pub fn sub_points(&self, p: &Point, q: &Point) -> Result<Point> {
        self.add_points(p, &self.negate(q)?)
    }

    /// n·P by double-and-add; negative n negates.
    pub fn scalar_multiple(&self, n: i64, p: &Point) -> Result<Point> {
        self.check(p)?;
        let base = if n < 0 { self.negate(p)? } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Infinity;
        let mut dbl = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_points(&acc, &dbl)?;
            }
            dbl = self.add_points(&dbl, &dbl)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// All points over the base field, O first, then affine points in order.
    pub fn rational_points(&self) -> Result<Vec<Point>> {
        self.require_elliptic()?;
        let mut out = vec![Point::Infinity];
        let rhs = self.rhs();
        for x in self.field().elements() {
            let v = rhs.eval(&x);
            if let Some(y) = v.sqrt() {
                if y.is_zero() {
                    out.push(Point::Affine(x, y));
                } else {
                    let (a, b) = if y < -&y { (y.clone(), -&y) } else { (-&y, y.clone()) };
                    out.push(Point::Affine(x.clone(), a));
                    out.push(Point::Affine(x, b));
                }
            }
        }
        Ok(out)
    }

    /// Rational points P with l·P = O.
    pub fn torsion_points(&self, l: i64) -> Result<Vec<Point>> {
        self.require_elliptic()?;
        if l < 1 {
            return Err(Error::InvalidInput("l must be positive".into()));
        }
        if (l as u64).is_multiple_of(self.field().characteristic()) {
            return Err(Error::TorsionCharacteristic);
        }
        let mut out = Vec::new();
        for pt in self.rational_points()? {
            if self.scalar_multiple(l, &pt)?.is_infinity() {
                out.push(pt);
            }
        }
        Ok(out)
    }

    /// The place of a point (its Galois orbit).
    pub fn point_place(&self, pt: &Point) -> Result<Place> {
        self.check(pt)?;
        match pt {
            Point::Infinity => Ok(Place::Origin),
            Point::Affine(x, y) => Place::elliptic_point(self, x, y),
        }
    }
}
