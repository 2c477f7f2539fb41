//! The full invariant suite behind `adele-forge selfcheck`.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::adelic::{
    adelic_differential, cohomology_dims, divisor_cocycle, nu_curve_with, AdeleCochain, Coefficients, Component,
};
use crate::curve::{riemann_roch_space, Curve, Function};
use crate::error::{Error, Result};
use crate::field::{factor_polynomial_seeded, FieldSpec, Polynomial};
use crate::fixtures;
use crate::milnor::{
    dlog_k1, dlog_pole_order_check, form_residue, gersten_boundary, weil_reciprocity_check, MilnorSymbol,
};
use crate::signs::{as_decimal, sign_audit_against, SignAuditReport, SignConventions};
use crate::surface::{
    bezout_intersection_number, dlog2_pole_check, fulton_intersection_number, intersection_number_with,
    parshin_point_reciprocity, surface_product_cycle_with, SurfaceOptions, DEFAULT_EXT_BOUND,
};
use crate::weil::{massey_for_points, massey_triple_curve, weil_pairing_idelic, weil_pairing_miller, TorsionClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelfcheckOptions {
    pub seed: u64,
    pub ext_bound: usize,
    pub signs: SignConventions,
}

impl Default for SelfcheckOptions {
    fn default() -> Self {
        SelfcheckOptions { seed: 0, ext_bound: DEFAULT_EXT_BOUND, signs: SignConventions::RESOLVED }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub module: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfcheckReport {
    pub seed: String,
    pub ext_bound: String,
    pub signs: SignConventions,
    pub checks: Vec<CheckOutcome>,
    #[serde(serialize_with = "as_decimal")]
    pub passed: usize,
    #[serde(serialize_with = "as_decimal")]
    pub failed: usize,
    pub audit: Option<SignAuditReport>,
    pub audit_error: Option<String>,
}

impl SelfcheckReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.audit.is_some()
    }
}

type CheckFn = Box<dyn Fn(&SelfcheckOptions) -> Result<(bool, String)> + Send + Sync>;

struct Check {
    module: &'static str,
    name: &'static str,
    run: CheckFn,
}

fn check(
    module: &'static str,
    name: &'static str,
    run: impl Fn(&SelfcheckOptions) -> Result<(bool, String)> + Send + Sync + 'static,
) -> Check {
    Check { module, name, run: Box::new(run) }
}

fn count(ok: usize, total: usize, what: &str) -> (bool, String) {
    (total > 0 && ok == total, format!("{ok}/{total} {what}"))
}

fn field_axioms(o: &SelfcheckOptions) -> Result<(bool, String)> {
    let k = FieldSpec::canonical_extension(3, 4)?;
    let elems = k.elements();
    let mut rng = fixtures::rng(o.seed);
    let mut ok = 0;
    let trials = 200;
    for _ in 0..trials {
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| elems[rng.gen_range(0..elems.len())].clone();
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let distributive = &a * &(&b + &c) == &(&a * &b) + &(&a * &c);
        let inverse = a.is_zero() || (&a * &a.inv()?).is_one();
        let frobenius = a.frobenius().frobenius().frobenius().frobenius() == a;
        if distributive && inverse && frobenius {
            ok += 1;
        }
    }
    Ok(count(ok, trials, "samples satisfy the field axioms in GF(81)"))
}

fn factor_roundtrip(o: &SelfcheckOptions) -> Result<(bool, String)> {
    let k = FieldSpec::prime(5)?;
    let mut rng = fixtures::rng(o.seed ^ 0xfac7);
    let mut ok = 0;
    let trials = 20;
    for _ in 0..trials {
        let deg = rng.gen_range(1..=8);
        let mut coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..5)).collect();
        coeffs.push(rng.gen_range(1..5));
        let f = Polynomial::from_u64(&k, &coeffs);
        let fac = factor_polynomial_seeded(&f, o.seed)?;
        let irreducible = fac.factors.iter().all(|(g, _)| g.is_monic() && g.is_irreducible());
        if fac.reassemble() == f && irreducible {
            ok += 1;
        }
    }
    Ok(count(ok, trials, "polynomials over GF(5) reassemble from irreducible factors"))
}

fn rr_space_p1(o: &SelfcheckOptions) -> Result<(bool, String)> {
    let curve = Curve::projective_line(&FieldSpec::prime(5)?)?;
    let ds = fixtures::rr_divisors(&curve, 20, o.seed)?;
    let ok = ds
        .iter()
        .map(|d| Ok(riemann_roch_space(d)?.len() as i64 == (d.degree() + 1).max(0)))
        .collect::<Result<Vec<bool>>>()?;
    Ok(count(ok.iter().filter(|b| **b).count(), ds.len(), "divisors with dim L(D) = max(0, deg D + 1)"))
}

fn group_law(_: &SelfcheckOptions) -> Result<(bool, String)> {
    let e = Curve::elliptic_i64(31, 0, 1)?;
    let pts = e.rational_points()?;
    let mut ok = 0;
    let mut total = 0;
    for a in pts.iter().step_by(5) {
        for b in pts.iter().step_by(7) {
            for c in pts.iter().step_by(11) {
                total += 1;
                let left = e.add_points(&e.add_points(a, b)?, c)?;
                let right = e.add_points(a, &e.add_points(b, c)?)?;
                if left == right && e.add_points(a, b)? == e.add_points(b, a)? {
                    ok += 1;
                }
            }
        }
    }
    Ok(count(ok, total, "triples associate and commute on y² = x³ + 1 / GF(31)"))
}

fn reciprocity(o: &SelfcheckOptions) -> Result<(bool, String)> {
    let curve = Curve::projective_line(&FieldSpec::prime(7)?)?;
    let mut rng = fixtures::rng(o.seed ^ 0x7ec1);
    let symbols = (0..20).map(|_| fixtures::random_p1_symbol(&curve, &mut rng)).collect::<Result<Vec<_>>>()?;
    let ok = symbols.par_iter().map(|s| Ok(weil_reciprocity_check(s)?.is_one())).collect::<Result<Vec<bool>>>()?;
    Ok(count(ok.iter().filter(|b| **b).count(), ok.len(), "symbols on P¹/GF(7) with trivial norm product"))
}

fn steinberg(o: &SelfcheckOptions) -> Result<(bool, String)> {
    let curve = Curve::projective_line(&FieldSpec::prime(7)?)?;
    let mut rng = fixtures::rng(o.seed ^ 0x57e1);
    let mut ok = 0;
    let mut total = 0;
    while total < 10 {
        let f = fixtures::random_p1_function(&curve, &mut rng, 3)?;
        let g = &Function::one(&curve) - &f;
        if f.constant_value().is_some() || g.is_zero() {
            continue;
        }
        total += 1;
        if gersten_boundary(&MilnorSymbol::pair(&f, &g)?)?.values().all(|v| v.is_one()) {
            ok += 1;
        }
    }
    Ok(count(ok, total, "symbols {f, 1 − f} with trivial boundary"))
}

fn dlog_curve(o: &SelfcheckOptions) -> Result<(bool, String)> {
    let curve = Curve::projective_line(&FieldSpec::prime(7)?)?;
    let mut rng = fixtures::rng(o.seed ^ 0xd109);
    let mut ok = 0;
    let total = 20;
    for _ in 0..total {
        let f = fixtures::random_p1_function(&curve, &mut rng, 3)?;
        let bounded = dlog_pole_order_check(&f)? <= 1;
        let w = dlog_k1(&f)?;
        let mut sum = curve.field().zero();
        for place in w.polar_places()? {
            sum = &sum + &form_residue(&w, &place)?;
        }
        if bounded && sum.is_zero() {
            ok += 1;
        }
    }
    Ok(count(ok, total, "dlog forms with simple poles and residue sum 0"))
}

fn cohomology(o: &SelfcheckOptions) -> Result<(bool, String)> {
    let mut ok = 0;
    let mut total = 0;
    for curve in [Curve::projective_line(&FieldSpec::prime(5)?)?, Curve::elliptic_i64(5, 1, 1)?] {
        let ds = fixtures::rr_divisors(&curve, 8, o.seed)?;
        let k = curve.canonical_divisor();
        let rows = ds
            .par_iter()
            .map(|d| {
                let r = cohomology_dims(&curve, d)?;
                let serre = riemann_roch_space(&k.try_sub(d)?)?.len();
                Ok(r.satisfies_riemann_roch(d) && r.h1 == serre)
            })
            .collect::<Result<Vec<bool>>>()?;
        total += rows.len();
        ok += rows.iter().filter(|b| **b).count();
    }
    Ok(count(ok, total, "divisors with h⁰ − h¹ = deg + 1 − g and h¹(D) = h⁰(K − D)"))
}

fn nu_of_cocycle(o: &SelfcheckOptions) -> Result<(bool, String)> {
    let curve = Curve::elliptic_i64(5, 1, 1)?;
    let ds = fixtures::rr_divisors(&curve, 10, o.seed ^ 0x0c0c)?;
    let mut ok = 0;
    for d in &ds {
        if nu_curve_with(&divisor_cocycle(d)?, o.signs)?.to_divisor(&curve)? == *d {
            ok += 1;
        }
    }
    Ok(count(ok, ds.len(), "divisors recovered from their adelic cocycle"))
}

fn differential_squares(o: &SelfcheckOptions) -> Result<(bool, String)> {
    let curve = Curve::projective_line(&FieldSpec::prime(5)?)?;
    let mut rng = fixtures::rng(o.seed ^ 0xdd);
    let mut ok = 0;
    let total = 10;
    for _ in 0..total {
        let f = fixtures::random_p1_function(&curve, &mut rng, 2)?;
        let c = AdeleCochain::diagonal(&curve, Coefficients::Milnor(1), Component::Function(f))?;
        let dd = adelic_differential(&adelic_differential(&c)?)?;
        if adelic_differential(&c)?.is_zero() && dd.is_zero() {
            ok += 1;
        }
    }
    Ok(count(ok, total, "diagonal cochains are cocycles with d∘d = 0"))
}

fn intersections(o: &SelfcheckOptions) -> Result<(bool, String)> {
    let opts = SurfaceOptions { ext_bound: o.ext_bound, signs: o.signs };
    let suite = fixtures::intersection_suite()?;
    let rows = suite
        .par_iter()
        .map(|(_, d1, d2)| {
            let n = intersection_number_with(d1, d2, &opts)?;
            let cycle: i64 =
                surface_product_cycle_with(d1, d2, &opts)?.iter().map(|(x, m)| x.degree() as i64 * m).sum();
            let expected = d1.degree() * d2.degree();
            Ok(n == expected
                && cycle == expected
                && bezout_intersection_number(d1, d2)? == expected
                && fulton_intersection_number(d1, d2, o.ext_bound)? == expected)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(count(
        rows.iter().filter(|b| **b).count(),
        rows.len(),
        "divisor pairs agreeing with Bézout, the resultant and Fulton",
    ))
}

fn parshin(o: &SelfcheckOptions) -> Result<(bool, String)> {
    let cases = fixtures::parshin_symbols(20, o.seed)?;
    let rows =
        cases.par_iter().map(|(s, x)| Ok(parshin_point_reciprocity(s, x)? == 0)).collect::<Result<Vec<bool>>>()?;
    Ok(count(rows.iter().filter(|b| **b).count(), rows.len(), "symbols with vanishing point reciprocity sum"))
}

fn dlog_surface(o: &SelfcheckOptions) -> Result<(bool, String)> {
    let symbols = fixtures::dlog2_symbols(20, o.seed)?;
    let rows = symbols.par_iter().map(|s| Ok(dlog2_pole_check(s)? <= 1)).collect::<Result<Vec<bool>>>()?;
    Ok(count(rows.iter().filter(|b| **b).count(), rows.len(), "dlog 2-forms with at most simple poles"))
}

fn pairings(_: &SelfcheckOptions) -> Result<(bool, String)> {
    let mut ok = 0;
    let mut total = 0;
    for curve in fixtures::pairing_curves()? {
        for l in [2, 3] {
            let pts = curve.torsion_points(l)?;
            let pairs: Vec<_> = pts.iter().flat_map(|p| pts.iter().map(move |q| (p, q))).collect();
            let rows = pairs
                .par_iter()
                .map(|(p, q)| Ok(weil_pairing_idelic(&curve, p, q, l)? == weil_pairing_miller(&curve, p, q, l)?))
                .collect::<Result<Vec<bool>>>()?;
            total += rows.len();
            ok += rows.iter().filter(|b| **b).count();
        }
    }
    Ok(count(ok, total, "torsion pairs where the idelic pairing matches Miller"))
}

fn massey(o: &SelfcheckOptions) -> Result<(bool, String)> {
    let configs =
        [(Curve::elliptic_i64(5, -1, 0)?, 2), (Curve::elliptic_i64(7, 0, 2)?, 3), (Curve::elliptic_i64(31, 0, 1)?, 3)];
    let mut ok = 0;
    let mut total = 0;
    for (curve, l) in &configs {
        let pts: Vec<_> = curve.torsion_points(*l)?.into_iter().filter(|p| !p.is_infinity()).take(3).collect();
        for p in &pts {
            for q in &pts {
                total += 1;
                let m = massey_for_points(curve, p, q, *l)?.direct_image;
                let w = weil_pairing_miller(curve, p, q, *l)?;
                if w.value.powi(o.signs.massey_exponent)? == m {
                    ok += 1;
                }
            }
        }
    }
    Ok(count(ok, total, "Massey direct images equal to the audited pairing power"))
}

fn massey_kernel(_: &SelfcheckOptions) -> Result<(bool, String)> {
    let curve = Curve::elliptic_i64(7, 0, 2)?;
    let p = curve
        .torsion_points(3)?
        .into_iter()
        .find(|p| !p.is_infinity())
        .ok_or_else(|| Error::NotTorsion("no 3-torsion".into()))?;
    let x = Function::x(&curve);
    let mut ok = 0;
    let mut total = 0;
    for c in 0..7 {
        let h = &x - &Function::from_i64(&curve, c);
        let beta = TorsionClass::principal(&h, 3)?;
        for r in curve.rational_points()? {
            let alpha = TorsionClass::from_point(&curve, &p, 3, &r)?;
            match massey_triple_curve(&alpha, &beta, 3) {
                Ok(m) => {
                    total += 1;
                    if m.direct_image.is_one() {
                        ok += 1;
                    }
                    break;
                }
                Err(Error::OverlappingSupports(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(count(ok, total, "trivial classes with direct image 1"))
}

fn checks() -> Vec<Check> {
    vec![
        check("field-core", "field axioms", field_axioms),
        check("field-core", "factorization round trip", factor_roundtrip),
        check("curve-core", "Riemann–Roch spaces on P¹", rr_space_p1),
        check("curve-core", "elliptic group law", group_law),
        check("milnor-symbols", "Weil reciprocity", reciprocity),
        check("milnor-symbols", "Steinberg relation", steinberg),
        check("milnor-symbols", "dlog bounds and residue theorem", dlog_curve),
        check("adelic-complex", "cohomology against Riemann–Roch and Serre duality", cohomology),
        check("adelic-complex", "ν of the divisor cocycle", nu_of_cocycle),
        check("adelic-complex", "d∘d = 0", differential_squares),
        check("surface-intersection", "intersection numbers against oracles", intersections),
        check("surface-intersection", "Parshin point reciprocity", parshin),
        check("surface-intersection", "dlog 2-form bounds", dlog_surface),
        check("weil-pairing", "idelic pairing against Miller", pairings),
        check("weil-pairing", "Massey product against the pairing", massey),
        check("weil-pairing", "direct image kernel", massey_kernel),
    ]
}

/// Runs every check plus the sign audit. Output is deterministic for fixed options.
pub fn selfcheck(opts: &SelfcheckOptions) -> SelfcheckReport {
    let checks: Vec<CheckOutcome> = checks()
        .par_iter()
        .map(|c| {
            let (passed, detail) = match (c.run)(opts) {
                Ok(r) => r,
                Err(e) => (false, format!("error [{}]: {e}", e.code())),
            };
            log::debug!("{} / {}: {}", c.module, c.name, detail);
            CheckOutcome { module: c.module, name: c.name.to_string(), passed, detail }
        })
        .collect();
    let (audit, audit_error) = match sign_audit_against(opts.signs) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let passed = checks.iter().filter(|c| c.passed).count();
    SelfcheckReport {
        seed: opts.seed.to_string(),
        ext_bound: opts.ext_bound.to_string(),
        signs: opts.signs,
        failed: checks.len() - passed,
        passed,
        checks,
        audit,
        audit_error,
    }
}
