//! The sign audit: every assignment of the three global signs is tried
//! against the fixtures, and exactly one survives.

use adele_forge::signs::{sign_audit, sign_audit_against, SignConventions};

pub fn run_example() -> adele_forge::Result<()> {
    let report = sign_audit()?;
    for f in &report.fixtures {
        println!("{} (expect {}): {} of 8 assignments pass", f.name, f.expected, f.passing.len());
    }
    println!("resolved: {:?}", report.resolved);

    let flipped = SignConventions { surface_nu: -report.resolved.surface_nu, ..report.resolved };
    match sign_audit_against(flipped) {
        Err(e) => println!("flipping surface_nu: {e}"),
        Ok(_) => unreachable!("a flipped sign cannot pass"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> adele_forge::Result<()> {
    run_example()
}
