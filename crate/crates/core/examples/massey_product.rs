//! The Massey triple product of two 3-torsion classes on y² = x³ + 2 / GF(7):
//! its Gersten cocycle, its direct image, and invariance under changes of
//! chain and representative.

use adele_forge::curve::{Curve, Function};
use adele_forge::weil::{direct_image, massey_triple_curve, weil_pairing_miller, TorsionClass};

pub fn run_example() -> adele_forge::Result<()> {
    let e = Curve::elliptic_i64(7, 0, 2)?;
    let pts = e.torsion_points(3)?;
    let (p, q) = (&pts[1], &pts[3]);
    let offset = &pts[5];

    let alpha = TorsionClass::from_point(&e, p, 3, &pts[4])?;
    let beta = TorsionClass::from_point(&e, q, 3, offset)?;
    let m = massey_triple_curve(&alpha, &beta, 3)?;
    println!("cocycle:");
    for (place, v) in &m.cocycle {
        println!("  {place}: {v}");
    }
    println!("direct image {}, Miller pairing {}", m.direct_image, weil_pairing_miller(&e, p, q, 3)?);
    assert_eq!(direct_image(e.field(), &m.cocycle), m.direct_image);

    let scaled = alpha.scale_chain(&e.field().from_i64(3))?;
    println!("chain scaled by 3: {}", massey_triple_curve(&scaled, &beta, 3)?.direct_image);
    for c in 0..7 {
        let h = &Function::x(&e) - &Function::from_i64(&e, c);
        let moved = beta.add_principal(&h)?;
        if let Ok(m) = massey_triple_curve(&alpha, &moved, 3) {
            println!("β moved by div(x − {c}): {}", m.direct_image);
            break;
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> adele_forge::Result<()> {
    run_example()
}
