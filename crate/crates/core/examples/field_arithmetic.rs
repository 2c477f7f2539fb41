//! Arithmetic in GF(3^4), factoring over GF(5) and descending elements to their
//! smallest field.

use adele_forge::field::{descend, factor_polynomial, minimal_polynomial, FieldSpec, Polynomial};

pub fn run_example() -> adele_forge::Result<()> {
    let k = FieldSpec::canonical_extension(3, 4)?;
    let a = k.primitive_element();
    println!("GF(81) modulus (low degree first): {:?}", k.modulus());
    println!("a = {a}, a^80 = {}, a^-1 = {}", a.pow(80), a.inv()?);
    println!("minimal polynomial of a^10: {}", minimal_polynomial(&a.pow(10)));

    // a^10 has order 8, so it lives in GF(9)
    let down = descend(&[a.pow(10)]);
    println!("a^10 descends to {} in GF(3^{})", down[0], down[0].field().degree());

    let k5 = FieldSpec::prime(5)?;
    let f = Polynomial::from_i64(&k5, &[2, 0, 0, 0, 0, 0, 0, 0, 2]);
    let fac = factor_polynomial(&f)?;
    let parts: Vec<String> = fac.factors.iter().map(|(g, m)| format!("({g})^{m}")).collect();
    println!("{f} = {} · {}", fac.leading, parts.join(" · "));
    assert_eq!(fac.reassemble(), f);
    Ok(())
}

#[allow(dead_code)]
fn main() -> adele_forge::Result<()> {
    run_example()
}
