//! Factorization over finite fields: squarefree decomposition, distinct-degree
//! splitting, then Cantor–Zassenhaus equal-degree splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FieldElement, FieldSpec, Polynomial};
use crate::error::{Error, Result};

/// Output is canonically ordered, so any seed gives the same result.
const DEFAULT_SEED: u64 = 0x5eed;

/// `leading · Π factor^mult`, factors monic irreducible, sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub leading: FieldElement,
    pub factors: Vec<(Polynomial, usize)>,
}

impl Factorization {
    pub fn reassemble(&self) -> Polynomial {
        let mut acc = Polynomial::constant(self.leading.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m as u64);
        }
        acc
    }
}

pub fn factor_polynomial(f: &Polynomial) -> Result<Factorization> {
    factor_polynomial_seeded(f, DEFAULT_SEED)
}

pub fn factor_polynomial_seeded(f: &Polynomial, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::FactorZero);
    }
    let (leading, monic) = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (sqf, mult) in squarefree(&monic) {
        for (g, d) in distinct_degree(&sqf) {
            for h in equal_degree(&g, d, &mut rng) {
                factors.push((h, mult));
            }
        }
    }
    // the same irreducible can surface from different squarefree layers only
    // if the decomposition was wrong; merge defensively anyway
    factors.sort();
    let mut merged: Vec<(Polynomial, usize)> = Vec::new();
    for (h, m) in factors {
        match merged.last_mut() {
            Some((last, lm)) if *last == h => *lm += m,
            _ => merged.push((h, m)),
        }
    }
    Ok(Factorization { leading, factors: merged })
}

/// Distinct roots of f in its coefficient field, sorted.
pub fn roots(f: &Polynomial) -> Result<Vec<FieldElement>> {
    let fac = factor_polynomial(f)?;
    let mut out: Vec<FieldElement> =
        fac.factors.iter().filter(|(g, _)| g.degree() == Some(1)).map(|(g, _)| -&g.coeff(0)).collect();
    out.sort();
    Ok(out)
}

/// p-th root of a polynomial whose derivative vanishes.
fn pth_root(f: &Polynomial) -> Polynomial {
    let field = f.field();
    let p = field.characteristic() as usize;
    let q_over_p = field.order() / p as u128;
    let coeffs = f.coeffs().iter().step_by(p).map(|c| c.pow_u128(q_over_p)).collect();
    Polynomial::new(field, coeffs)
}

/// Squarefree decomposition of a monic polynomial: list of (squarefree, multiplicity).
fn squarefree(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = f.field().characteristic() as usize;
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree(&pth_root(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).expect("gcd divides");
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w).expect("gcd divides");
    }
    if !c.is_one() {
        for (g, m) in squarefree(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Split a squarefree monic polynomial into products of equal-degree irreducibles.
fn distinct_degree(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let field = f.field();
    let q = field.order();
    let x = Polynomial::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(q, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_one() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
    }
    if let Some(n) = rest.degree() {
        if n > 0 {
            out.push((rest, n));
        }
    }
    out
}

fn random_poly(field: &FieldSpec, below: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    let p = field.characteristic();
    let k = field.degree();
    let coeffs = (0..below)
        .map(|_| {
            let raw: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            field.element(&raw).expect("k coefficients")
        })
        .collect();
    Polynomial::new(field, coeffs)
}

/// Cantor–Zassenhaus: split f (product of irreducibles of degree d) completely.
fn equal_degree(f: &Polynomial, d: usize, rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let q = field.order();
    loop {
        let a = random_poly(field, n, rng);
        if a.is_constant() {
            continue;
        }
        let b = if q % 2 == 1 {
            let e = (q.pow(d as u32) - 1) / 2;
            &a.pow_mod(e, f) - &Polynomial::one(field)
        } else {
            // absolute trace map a + a^2 + ... + a^{2^{kd-1}}
            let steps = field.degree() * d;
            let mut t = a.rem(f).expect("nonzero");
            let mut acc = t.clone();
            for _ in 1..steps {
                t = (&t * &t).rem(f).expect("nonzero");
                acc = &acc + &t;
            }
            acc
        };
        let g = b.gcd(f);
        if g.is_one() || g.degree() == f.degree() || g.is_zero() {
            continue;
        }
        let h = f.exact_div(&g).expect("gcd divides");
        let mut out = equal_degree(&g, d, rng);
        out.extend(equal_degree(&h, d, rng));
        return out;
    }
}
