//! Local intersection multiplicity of affine plane curves by Fulton's recursion.

use std::fmt;

use serde::Serialize;

use super::MultiPoly;
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// I_x(F, G): finite, or infinite when F and G share a component through x.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(n) => Some(n),
            Multiplicity::Infinite => None,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => write!(f, "infinite"),
        }
    }
}

/// Intersection multiplicity of F(u, v) and G(u, v) at the affine point x.
pub fn fulton_multiplicity(f: &MultiPoly, g: &MultiPoly, x: &[FieldElement]) -> Result<Multiplicity> {
    if f.nvars() != 2 || g.nvars() != 2 || x.len() != 2 {
        return Err(Error::InvalidInput("Fulton multiplicity needs bivariate input and an affine point".into()));
    }
    if x[0].field() != x[1].field() {
        return Err(Error::FieldMismatch("point coordinates".into()));
    }
    let f = f.translate(x);
    let g = g.translate(x);
    Ok(at_origin(f, g))
}

fn lowest_order(p: &crate::field::Polynomial) -> u64 {
    p.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0) as u64
}

/// Iterative form of the recursion; `bound` caps the count for finite intersections.
fn at_origin(mut f: MultiPoly, mut g: MultiPoly) -> Multiplicity {
    let bound = match (f.total_degree(), g.total_degree()) {
        (Some(a), Some(b)) => a as u64 * b as u64,
        _ => return Multiplicity::Infinite,
    };
    let field = f.field().clone();
    let zero = field.zero();
    let origin = [zero.clone(), zero.clone()];
    let mut acc = 0u64;
    loop {
        if f.is_zero() || g.is_zero() {
            return Multiplicity::Infinite;
        }
        if !f.eval(&origin).is_zero() || !g.eval(&origin).is_zero() {
            return Multiplicity::Finite(acc);
        }
        let mut fr = f.restrict(0, &zero);
        let mut gr = g.restrict(0, &zero);
        match (fr.is_zero(), gr.is_zero()) {
            (true, true) => return Multiplicity::Infinite,
            (false, true) | (true, false) => {
                if !fr.is_zero() {
                    std::mem::swap(&mut f, &mut g);
                    std::mem::swap(&mut fr, &mut gr);
                }
                // F = v·H, so I(F, G) = I(v, G) + I(H, G)
                acc += lowest_order(&gr);
                let v = MultiPoly::var(&field, 2, 1);
                f = f.exact_div(&v).expect("F vanishes on v = 0");
            }
            (false, false) => {
                let (mut r, mut s) = (fr.degree().unwrap(), gr.degree().unwrap());
                if r > s {
                    std::mem::swap(&mut f, &mut g);
                    std::mem::swap(&mut fr, &mut gr);
                    std::mem::swap(&mut r, &mut s);
                }
                let mut e = vec![0; 2];
                e[0] = (s - r) as u32;
                let shift = MultiPoly::monomial(gr.leading(), e);
                g = &g.scale(&fr.leading()) - &(&shift * &f);
            }
        }
        if acc > bound {
            return Multiplicity::Infinite;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn classical_examples() {
        let k = FieldSpec::prime(7).unwrap();
        let u = MultiPoly::var(&k, 2, 0);
        let v = MultiPoly::var(&k, 2, 1);
        let o = [k.zero(), k.zero()];
        assert_eq!(fulton_multiplicity(&u, &v, &o).unwrap(), Multiplicity::Finite(1));
        let tangent = &v - &u.pow(2);
        assert_eq!(fulton_multiplicity(&v, &tangent, &o).unwrap(), Multiplicity::Finite(2));
        let pair = &v * &(&v - &u);
        assert_eq!(fulton_multiplicity(&u, &pair, &o).unwrap(), Multiplicity::Finite(2));
        assert_eq!(fulton_multiplicity(&pair, &v, &o).unwrap(), Multiplicity::Infinite);
        let shifted = [k.one(), k.zero()];
        assert_eq!(fulton_multiplicity(&u, &v, &shifted).unwrap(), Multiplicity::Finite(0));
    }
}
