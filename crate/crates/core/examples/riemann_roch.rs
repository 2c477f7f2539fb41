//! Riemann–Roch spaces and adelic cohomology on P¹ and on an elliptic curve.

use adele_forge::adelic::cohomology_dims;
use adele_forge::curve::{riemann_roch_space, Curve, Divisor, Place};
use adele_forge::field::FieldSpec;

pub fn run_example() -> adele_forge::Result<()> {
    let k = FieldSpec::prime(5)?;
    for curve in [Curve::projective_line(&k)?, Curve::elliptic_i64(5, 1, 1)?] {
        println!("{curve} (genus {})", curve.genus());
        let base = curve.base_place();
        for n in -2..=4 {
            let d = Divisor::single(&curve, base.clone(), n)?;
            let r = cohomology_dims(&curve, &d)?;
            println!("  D = {d:<8} h0 = {} h1 = {}  (deg + 1 − g = {})", r.h0, r.h1, n + 1 - curve.genus());
            assert!(r.satisfies_riemann_roch(&d));
        }
    }

    let p1 = Curve::projective_line(&k)?;
    let d = Divisor::from_terms(&p1, [(Place::rational(&k.from_i64(2)), 2), (Place::Infinity, 1)])?;
    println!("basis of L({d}):");
    for f in riemann_roch_space(&d)? {
        println!("  {f}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> adele_forge::Result<()> {
    run_example()
}
