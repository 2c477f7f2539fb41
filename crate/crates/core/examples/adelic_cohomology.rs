//! Rational adele cochains on P¹/GF(5): the differential, the divisor cocycle
//! and its residue, and the cochain product.

use std::collections::BTreeMap;

use adele_forge::adelic::{
    adelic_differential, cochain_product, divisor_cocycle, nu_curve, AdeleCochain, Coefficients, Component,
};
use adele_forge::curve::{Curve, Divisor, Function, Place};
use adele_forge::field::{FieldSpec, Polynomial};

pub fn run_example() -> adele_forge::Result<()> {
    let k = FieldSpec::prime(5)?;
    let p1 = Curve::projective_line(&k)?;
    let t = Function::t(&p1);
    let t_minus_1 = Function::polynomial(&p1, Polynomial::from_i64(&k, &[-1, 1]));

    // global t, locally t everywhere except 1 at the place t = 0
    let c = AdeleCochain::degree0(
        &p1,
        Coefficients::Milnor(1),
        Component::Function(t.clone()),
        Component::Function(t.clone()),
        BTreeMap::from([(Place::rational(&k.zero()), Component::Function(Function::one(&p1)))]),
    )?;
    println!("d of the cochain: {:?}", adelic_differential(&c)?.exceptions());

    let d = Divisor::from_terms(&p1, [(Place::rational(&k.zero()), 2), (Place::Infinity, -1)])?;
    let z = divisor_cocycle(&d)?;
    println!("ν(divisor cocycle of {d}) = {}", nu_curve(&z)?.to_divisor(&p1)?);

    let unit = AdeleCochain::diagonal(&p1, Coefficients::Milnor(1), Component::Function(t_minus_1))?;
    let prod = cochain_product(&unit, &z)?;
    println!(
        "product degree {} with weight-2 exceptions at {:?}",
        prod.degree(),
        prod.exceptions().keys().collect::<Vec<_>>()
    );
    println!("its residue: {:?}", nu_curve(&prod)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> adele_forge::Result<()> {
    run_example()
}
