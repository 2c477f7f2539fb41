//! Every runnable example doubles as a smoke test.

#[path = "../examples/adelic_cohomology.rs"]
mod adelic_cohomology;

#[test]
fn adelic_cohomology_runs() {
    adelic_cohomology::run_example().unwrap();
}

#[path = "../examples/field_arithmetic.rs"]
mod field_arithmetic;

#[test]
fn field_arithmetic_runs() {
    field_arithmetic::run_example().unwrap();
}

#[path = "../examples/massey_product.rs"]
mod massey_product;

#[test]
fn massey_product_runs() {
    massey_product::run_example().unwrap();
}

#[path = "../examples/plane_intersections.rs"]
mod plane_intersections;

#[test]
fn plane_intersections_runs() {
    plane_intersections::run_example().unwrap();
}

#[path = "../examples/riemann_roch.rs"]
mod riemann_roch;

#[test]
fn riemann_roch_runs() {
    riemann_roch::run_example().unwrap();
}

#[path = "../examples/sign_audit.rs"]
mod sign_audit;

#[test]
fn sign_audit_runs() {
    sign_audit::run_example().unwrap();
}

#[path = "../examples/tame_symbols.rs"]
mod tame_symbols;

#[test]
fn tame_symbols_runs() {
    tame_symbols::run_example().unwrap();
}

#[path = "../examples/weil_pairing.rs"]
mod weil_pairing;

#[test]
fn weil_pairing_runs() {
    weil_pairing::run_example().unwrap();
}
