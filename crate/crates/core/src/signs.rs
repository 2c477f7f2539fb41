//! Global sign conventions and the audit that pins them against oracles.

use serde::Serialize;

use crate::adelic::{divisor_cocycle, nu_curve_with};
use crate::curve::{Curve, Divisor, Place};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Polynomial};
use crate::surface::{intersection_number_with, PlaneCurve, SurfaceDivisor, SurfaceOptions};
use crate::weil::{massey_for_points, weil_pairing_miller};

/// The three global signs that the constructions depend on.
///
/// * `curve_nu`: sign of the residue morphism on degree-one curve cochains.
///   Weight one components map to `curve_nu · v(f)`; weight two components map
///   to the tame symbol raised to `−curve_nu`.
/// * `surface_nu`: the leading sign of the flag-residue intersection formula,
///   also applied to the surface cochain product.
/// * `massey_exponent`: the exponent relating the Massey direct image to the
///   Weil pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignConventions {
    #[serde(serialize_with = "as_decimal")]
    pub curve_nu: i64,
    #[serde(serialize_with = "as_decimal")]
    pub surface_nu: i64,
    #[serde(serialize_with = "as_decimal")]
    pub massey_exponent: i64,
}

/// Reports carry integers as decimal strings.
pub(crate) fn as_decimal<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl SignConventions {
    pub const RESOLVED: SignConventions = SignConventions { curve_nu: -1, surface_nu: -1, massey_exponent: -1 };

    /// All eight assignments from {±1}³, in a fixed order.
    pub fn all() -> Vec<SignConventions> {
        let mut out = Vec::with_capacity(8);
        for curve_nu in [-1, 1] {
            for surface_nu in [-1, 1] {
                for massey_exponent in [-1, 1] {
                    out.push(SignConventions { curve_nu, surface_nu, massey_exponent });
                }
            }
        }
        out
    }
}

impl Default for SignConventions {
    fn default() -> Self {
        Self::RESOLVED
    }
}

/// One audit fixture and the assignments under which it holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub expected: String,
    pub passing: Vec<SignConventions>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignAuditReport {
    pub resolved: SignConventions,
    pub fixtures: Vec<FixtureOutcome>,
    pub consistent: Vec<SignConventions>,
}

type Check = Box<dyn Fn(SignConventions) -> Result<bool>>;

fn fixtures() -> Result<Vec<(String, String, Check)>> {
    let mut out: Vec<(String, String, Check)> = Vec::new();

    let k7 = FieldSpec::prime(7)?;
    let x0 = SurfaceDivisor::curve(&PlaneCurve::coordinate_line(&k7, 0));
    let x1 = SurfaceDivisor::curve(&PlaneCurve::coordinate_line(&k7, 1));
    out.push((
        "line·line on P²/GF(7)".into(),
        "+1".into(),
        Box::new(move |signs| {
            let opts = SurfaceOptions { signs, ..SurfaceOptions::default() };
            Ok(intersection_number_with(&x0, &x1, &opts)? == 1)
        }),
    ));

    let k5 = FieldSpec::prime(5)?;
    let p1 = Curve::projective_line(&k5)?;
    let d = Divisor::from_terms(
        &p1,
        [
            (Place::rational(&k5.zero()), 2),
            (Place::finite(Polynomial::from_i64(&k5, &[2, 0, 1]))?, -1),
            (Place::Infinity, 1),
        ],
    )?;
    let cocycle = divisor_cocycle(&d)?;
    out.push((
        "ν(divisor_cocycle(D)) on P¹/GF(5)".into(),
        format!("{d}"),
        Box::new(move |signs| Ok(nu_curve_with(&cocycle, signs)?.to_divisor(&p1)? == d)),
    ));

    let e = Curve::elliptic_i64(7, 0, 2)?;
    let torsion = e.torsion_points(3)?;
    let mut pair = None;
    'search: for p in &torsion {
        for q in &torsion {
            let w = weil_pairing_miller(&e, p, q, 3)?;
            if !w.value.is_one() {
                pair = Some((p.clone(), q.clone(), w));
                break 'search;
            }
        }
    }
    let (p, q, w) = pair.ok_or_else(|| Error::AuditFailure("no nondegenerate 3-torsion pair".into()))?;
    let massey = massey_for_points(&e, &p, &q, 3)?.direct_image;
    out.push((
        format!("m̄₃ vs Miller e₃({p}, {q}) on y² = x³ + 2 / GF(7)"),
        format!("{massey}"),
        Box::new(move |signs| Ok(w.value.powi(signs.massey_exponent)? == massey)),
    ));
    Ok(out)
}

/// Runs every fixture under all eight assignments; succeeds only when exactly
/// one assignment passes everything and it equals `constants`.
pub fn sign_audit_against(constants: SignConventions) -> Result<SignAuditReport> {
    let mut outcomes = Vec::new();
    let mut consistent = SignConventions::all();
    for (name, expected, check) in fixtures()? {
        let mut passing = Vec::new();
        for signs in SignConventions::all() {
            if check(signs)? {
                passing.push(signs);
            }
        }
        consistent.retain(|s| passing.contains(s));
        outcomes.push(FixtureOutcome { name, expected, passing });
    }
    match consistent.as_slice() {
        [] => Err(Error::AuditFailure("no consistent sign assignment".into())),
        [only] if *only == constants => Ok(SignAuditReport { resolved: *only, fixtures: outcomes, consistent }),
        [only] => Err(Error::AuditFailure(format!("fixtures force {only:?}, constants are {constants:?}"))),
        many => Err(Error::AuditFailure(format!("{} assignments pass every fixture", many.len()))),
    }
}

pub fn sign_audit() -> Result<SignAuditReport> {
    sign_audit_against(SignConventions::RESOLVED)
}
