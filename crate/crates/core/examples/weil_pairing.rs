//! The Weil pairing on full rational 3-torsion of y² = x³ + 1 over GF(31),
//! computed from Miller chains and checked against the textbook Miller loop.

use adele_forge::curve::{Curve, Point};
use adele_forge::weil::{miller_function, weil_pairing_idelic, weil_pairing_miller};

pub fn run_example() -> adele_forge::Result<()> {
    let e5 = Curve::elliptic_i64(5, -1, 0)?;
    let f = miller_function(&e5, &e5.point_i64(0, 0)?, 2, &Point::Infinity)?;
    println!("Miller chain of (0,0), l = 2: {f}  with divisor {}", f.divisor());

    let e = Curve::elliptic_i64(31, 0, 1)?;
    let torsion: Vec<Point> = e.torsion_points(3)?;
    println!("{e}: {} points of order dividing 3", torsion.len());
    let p = &torsion[1];
    for q in &torsion {
        let idelic = weil_pairing_idelic(&e, p, q, 3)?;
        let miller = weil_pairing_miller(&e, p, q, 3)?;
        println!("  e3({p}, {q}) = {idelic} (order {}), Miller {miller}", idelic.order);
        assert_eq!(idelic, miller);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> adele_forge::Result<()> {
    run_example()
}
