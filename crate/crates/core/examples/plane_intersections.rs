//! Intersection numbers on P² from flag residues, checked against Bézout,
//! the resultant and Fulton's local multiplicities.

use adele_forge::fixtures::intersection_suite;
use adele_forge::surface::{
    bezout_intersection_number, fulton_intersection_number, intersection_number, surface_product_cycle,
    DEFAULT_EXT_BOUND,
};

pub fn run_example() -> adele_forge::Result<()> {
    for (name, d1, d2) in intersection_suite()?.into_iter().take(5) {
        let n = intersection_number(&d1, &d2)?;
        println!(
            "{name}: adelic {n}, deg·deg {}, resultant {}, Fulton {}",
            d1.degree() * d2.degree(),
            bezout_intersection_number(&d1, &d2)?,
            fulton_intersection_number(&d1, &d2, DEFAULT_EXT_BOUND)?
        );
        for (x, m) in surface_product_cycle(&d1, &d2)? {
            println!("    {m} × {x} (degree {})", x.degree());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> adele_forge::Result<()> {
    run_example()
}
