//! Tame symbols, the Gersten boundary and Weil reciprocity on P¹/GF(7), with
//! the dlog comparison.

use adele_forge::curve::{Curve, Function};
use adele_forge::field::{FieldSpec, Polynomial};
use adele_forge::milnor::{
    dlog_k1, dlog_pole_order_check, form_residue, gersten_boundary, weil_reciprocity_check, MilnorSymbol,
};

pub fn run_example() -> adele_forge::Result<()> {
    let k = FieldSpec::prime(7)?;
    let p1 = Curve::projective_line(&k)?;
    let f = Function::polynomial(&p1, Polynomial::from_i64(&k, &[-1, 0, 1]));
    let g = Function::polynomial(&p1, Polynomial::from_i64(&k, &[3, 1]));
    let s = MilnorSymbol::pair(&f, &g)?;

    println!("boundary of {{{f}, {g}}}:");
    for (place, v) in gersten_boundary(&s)? {
        println!("  {place}: {v}");
    }
    println!("product of norms: {}", weil_reciprocity_check(&s)?);

    let w = dlog_k1(&f)?;
    println!("dlog f = {w:?}, worst pole order {}", dlog_pole_order_check(&f)?);
    let mut total = k.zero();
    for place in w.polar_places()? {
        let r = form_residue(&w, &place)?;
        println!("  res at {place}: {r}");
        total = &total + &r;
    }
    println!("sum of residues: {total}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> adele_forge::Result<()> {
    run_example()
}
