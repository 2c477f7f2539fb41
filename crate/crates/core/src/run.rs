//! Task dispatch and deterministic JSON reports.

use serde_json::{json, Map, Value};

use crate::adelic::cohomology_dims;
use crate::config::{
    ConfigDocument, CurveConfig, CurveModel, FieldConfig, FunctionSpec, Int, IntersectPayload, PairingPayload,
    PlaceSpec, PointSpec, RrTablePayload, SchemaError, SurfaceTerm, SymbolEntry, TamePayload, Task,
};
use crate::curve::{riemann_roch_space, Curve, Divisor, Function, Place, Point};
use crate::error::Error;
use crate::field::{FieldElement, FieldSpec, Polynomial, RationalFunction};
use crate::milnor::{gersten_boundary, tame_symbol, weil_reciprocity_check, MilnorSymbol};
use crate::selfcheck::{selfcheck, SelfcheckOptions};
use crate::signs::SignConventions;
use crate::surface::{
    bezout_intersection_number, fulton_intersection_number, intersection_number_with, surface_product_cycle_with,
    PlaneCurve, ProjectivePoint, SurfaceDivisor, SurfaceOptions, DEFAULT_EXT_BOUND,
};
use crate::weil::{massey_for_points, weil_pairing_idelic, weil_pairing_miller};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_AUDIT: i32 = 3;

pub fn version_stamp() -> String {
    format!("adele-forge {}", env!("CARGO_PKG_VERSION"))
}

/// Command line overrides.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub ext_bound: Option<usize>,
    pub signs: SignConventions,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    pub report: Value,
    pub exit_code: i32,
}

impl RunOutcome {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports are plain JSON");
        s.push('\n');
        s
    }
}

enum Failure {
    Schema(SchemaError),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<SchemaError> for Failure {
    fn from(e: SchemaError) -> Self {
        Failure::Schema(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn error_outcome(task: Option<String>, input: Value, failure: Failure) -> RunOutcome {
    let (code, message, exit_code) = match failure {
        Failure::Schema(e) => ("schema".to_string(), e.0, EXIT_SCHEMA),
        Failure::Domain(e) => {
            let exit = if matches!(e, Error::AuditFailure(_)) { EXIT_AUDIT } else { EXIT_DOMAIN };
            (e.code().to_string(), e.to_string(), exit)
        }
    };
    RunOutcome {
        report: json!({
            "version": version_stamp(),
            "task": task,
            "input": input,
            "status": "error",
            "error": { "code": code, "message": message },
        }),
        exit_code,
    }
}

/// Parses and runs a configuration document given as text.
pub fn run_text(text: &str, opts: &RunOptions) -> RunOutcome {
    match ConfigDocument::parse(text) {
        Ok(doc) => run(&doc, opts),
        Err(e) => error_outcome(None, Value::Null, Failure::Schema(e)),
    }
}

pub fn run(doc: &ConfigDocument, opts: &RunOptions) -> RunOutcome {
    let task = doc.task_name().to_string();
    let seed = match opts.seed {
        Some(s) => s,
        None => match doc.seed {
            Some(s) if s >= 0 => s as u64,
            Some(_) => {
                let e = SchemaError("seed must be non-negative".into());
                return error_outcome(Some(task), doc.normalized.clone(), Failure::Schema(e));
            }
            None => 0,
        },
    };
    match dispatch(doc, opts, seed) {
        Ok((result, oracles)) => {
            let all_match = oracles.iter().all(|o| o["status"] == "match");
            RunOutcome {
                report: json!({
                    "version": version_stamp(),
                    "task": task,
                    "input": doc.normalized,
                    "seed": seed.to_string(),
                    "signs": opts.signs,
                    "status": if all_match { "ok" } else { "mismatch" },
                    "result": result,
                    "oracle": oracles,
                }),
                exit_code: if all_match { EXIT_OK } else { EXIT_AUDIT },
            }
        }
        Err(f) => error_outcome(Some(task), doc.normalized.clone(), f),
    }
}

/// The self-check report, with exit status 0 only when everything passes.
pub fn selfcheck_outcome(opts: &RunOptions) -> RunOutcome {
    let sc = SelfcheckOptions {
        seed: opts.seed.unwrap_or(0),
        ext_bound: opts.ext_bound.unwrap_or(DEFAULT_EXT_BOUND),
        signs: opts.signs,
    };
    let report = selfcheck(&sc);
    let ok = report.all_passed();
    RunOutcome {
        report: json!({
            "version": version_stamp(),
            "task": "selfcheck",
            "status": if ok { "ok" } else { "failed" },
            "result": report,
        }),
        exit_code: if ok { EXIT_OK } else { EXIT_AUDIT },
    }
}

fn oracle(name: &str, expected: Value, actual: Value) -> Value {
    let status = if expected == actual { "match" } else { "mismatch" };
    json!({ "name": name, "expected": expected, "actual": actual, "status": status })
}

pub fn element_json(e: &FieldElement) -> Value {
    Value::Array(e.coefficients().iter().map(|c| Value::String(c.to_string())).collect())
}

fn int(i: &Int) -> i64 {
    i.0
}

fn build_field(cfg: &FieldConfig) -> Res<FieldSpec> {
    let p = u64::try_from(cfg.p.0).map_err(|_| SchemaError("p must be positive".into()))?;
    let k = cfg.k.map(|k| k.0).unwrap_or(1);
    if k < 1 {
        return Err(SchemaError("k must be at least 1".into()).into());
    }
    if k == 1 {
        if cfg.modulus.is_some() {
            return Err(SchemaError("a modulus only makes sense for k > 1".into()).into());
        }
        return Ok(FieldSpec::prime(p)?);
    }
    match &cfg.modulus {
        Some(m) => {
            let coeffs: Vec<u64> = m.iter().map(|c| c.0.rem_euclid(p as i64) as u64).collect();
            if coeffs.len() != k as usize + 1 {
                return Err(SchemaError(format!("modulus needs {} coefficients", k + 1)).into());
            }
            Ok(FieldSpec::extension(p, &coeffs)?)
        }
        None => Ok(FieldSpec::canonical_extension(p, k as usize)?),
    }
}

fn build_curve(field: &FieldSpec, cfg: &CurveConfig) -> Res<Curve> {
    match cfg.model {
        CurveModel::ProjectiveLine => {
            if cfg.a.is_some() || cfg.b.is_some() {
                return Err(SchemaError("the projective line takes no coefficients".into()).into());
            }
            Ok(Curve::projective_line(field)?)
        }
        CurveModel::Elliptic => {
            let (a, b) = match (cfg.a, cfg.b) {
                (Some(a), Some(b)) => (a.0, b.0),
                _ => return Err(SchemaError("elliptic curves need a and b".into()).into()),
            };
            Ok(Curve::elliptic(field, field.from_i64(a), field.from_i64(b))?)
        }
    }
}

fn poly(field: &FieldSpec, coeffs: &[Int]) -> Polynomial {
    Polynomial::from_i64(field, &coeffs.iter().map(int).collect::<Vec<_>>())
}

fn rational(field: &FieldSpec, num: &[Int], den: Option<&Vec<Int>>) -> Res<RationalFunction> {
    let den = match den {
        Some(d) => poly(field, d),
        None => Polynomial::one(field),
    };
    Ok(RationalFunction::new(poly(field, num), den)?)
}

fn build_function(curve: &Curve, spec: &FunctionSpec) -> Res<Function> {
    let k = curve.field();
    let a = rational(k, &spec.num, spec.den.as_ref())?;
    match (&spec.y_num, curve.is_elliptic()) {
        (None, _) => {
            if spec.y_den.is_some() {
                return Err(SchemaError("y-den without y-num".into()).into());
            }
            Ok(Function::rational(curve, a))
        }
        (Some(_), false) => Err(Error::InvalidInput("y-coefficients need an elliptic curve".into()).into()),
        (Some(yn), true) => Ok(Function::new(curve, a, rational(k, yn, spec.y_den.as_ref())?)?),
    }
}

fn build_symbol(curve: &Curve, entries: &[SymbolEntry]) -> Res<MilnorSymbol> {
    let mut out = Vec::with_capacity(entries.len());
    for SymbolEntry(f, g, e) in entries {
        out.push((build_function(curve, f)?, build_function(curve, g)?, e.0));
    }
    Ok(MilnorSymbol::from_entries(curve, out)?)
}

fn build_point(curve: &Curve, spec: &PointSpec) -> Res<Point> {
    match spec {
        PointSpec::Infinity(s) if s == "O" => Ok(Point::Infinity),
        PointSpec::Infinity(s) => Err(SchemaError(format!("unknown point {s:?}")).into()),
        PointSpec::Affine([x, y]) => Ok(curve.point_i64(x.0, y.0)?),
    }
}

fn build_place(curve: &Curve, spec: &PlaceSpec) -> Res<Place> {
    match spec {
        PlaceSpec::Named(s) if s == "inf" && !curve.is_elliptic() => Ok(Place::Infinity),
        PlaceSpec::Named(s) if s == "O" && curve.is_elliptic() => Ok(Place::Origin),
        PlaceSpec::Named(s) => Err(Error::InvalidInput(format!("no place {s:?} on {curve}")).into()),
        PlaceSpec::Poly { poly: coeffs } => {
            let pi = poly(curve.field(), coeffs);
            if !curve.is_elliptic() {
                return Ok(Place::finite(pi)?);
            }
            let places = curve.places_over(&pi);
            match places.as_slice() {
                [one] => Ok(one.clone()),
                _ => Err(Error::InvalidInput(format!("{} places lie over the polynomial", places.len())).into()),
            }
        }
        PlaceSpec::Point { point: [x, y] } => Ok(curve.point_place(&curve.point_i64(x.0, y.0)?)?),
    }
}

fn build_surface_divisor(field: &FieldSpec, terms: &[SurfaceTerm]) -> Res<SurfaceDivisor> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let form: Vec<(i64, [u32; 3])> = t.form.iter().map(|(c, e)| (c.0, *e)).collect();
        let c = PlaneCurve::from_i64(field, &form)?;
        if let Some(d) = t.degree {
            if d.0 != c.degree() as i64 {
                return Err(
                    SchemaError(format!("declared degree {} but the form has degree {}", d.0, c.degree())).into()
                );
            }
        }
        out.push((c, t.multiplicity.0));
    }
    Ok(SurfaceDivisor::new(field, out)?)
}

fn point_json(x: &ProjectivePoint) -> Value {
    json!({
        "coordinates": x.coords().iter().map(element_json).collect::<Vec<_>>(),
        "degree": x.degree().to_string(),
    })
}

fn place_map_json(m: &std::collections::BTreeMap<Place, FieldElement>) -> Value {
    Value::Object(m.iter().map(|(p, v)| (p.to_string(), element_json(v))).collect::<Map<_, _>>())
}

type Dispatched = (Value, Vec<Value>);

fn dispatch(doc: &ConfigDocument, opts: &RunOptions, seed: u64) -> Res<Dispatched> {
    let field = build_field(&doc.field)?;
    let curve = match &doc.curve {
        Some(c) => Some(build_curve(&field, c)?),
        None => None,
    };
    let need = || curve.clone().ok_or_else(|| Failure::Schema(SchemaError("task needs a curve".into())));
    match &doc.task {
        Task::RrTable(p) => rr_table(&need()?, p),
        Task::Reciprocity(p) => {
            let curve = need()?;
            let mut rows = Vec::new();
            let mut products = Vec::new();
            for entries in &p.symbols {
                let s = build_symbol(&curve, entries)?;
                let product = weil_reciprocity_check(&s)?;
                products.push(element_json(&product));
                rows.push(json!({
                    "boundary": place_map_json(&gersten_boundary(&s)?),
                    "product": element_json(&product),
                }));
            }
            let ones = vec![element_json(&field.one()); products.len()];
            Ok((Value::Array(rows), vec![oracle("weil reciprocity", Value::Array(ones), Value::Array(products))]))
        }
        Task::Tame(p) => tame(&need()?, p),
        Task::Intersect(p) => intersect(&field, p, opts),
        Task::Weil(p) => weil(&need()?, p),
        Task::Massey(p) => massey(&need()?, p, opts),
        Task::Selfcheck => {
            let out = selfcheck_outcome(&RunOptions { seed: Some(seed), ..*opts });
            let ok = out.exit_code == EXIT_OK;
            Ok((out.report["result"].clone(), vec![oracle("selfcheck", json!(true), json!(ok))]))
        }
    }
}

fn rr_table(curve: &Curve, p: &RrTablePayload) -> Res<Dispatched> {
    let place = match &p.place {
        Some(s) => build_place(curve, s)?,
        None => curve.base_place(),
    };
    let (lo, hi) = (p.min_degree.0, p.max_degree.0);
    let deg = place.degree() as i64;
    if lo > hi || lo.abs().max(hi.abs()) * deg > 64 {
        return Err(Error::InvalidInput("degree range must be ordered and within ±64".into()).into());
    }
    let g = curve.genus();
    let k = curve.canonical_divisor();
    let mut rows = Vec::new();
    let mut expected = Vec::new();
    let mut actual = Vec::new();
    for n in lo..=hi {
        let d = Divisor::single(curve, place.clone(), n)?;
        let r = cohomology_dims(curve, &d)?;
        let serre = riemann_roch_space(&k.try_sub(&d)?)?.len();
        let chi = r.h0 as i64 - r.h1 as i64;
        rows.push(json!({
            "divisor": d.to_string(),
            "degree": d.degree().to_string(),
            "h0": r.h0.to_string(),
            "h1": r.h1.to_string(),
        }));
        expected.push(json!([(d.degree() + 1 - g).to_string(), serre.to_string()]));
        actual.push(json!([chi.to_string(), r.h1.to_string()]));
    }
    Ok((
        Value::Array(rows),
        vec![oracle(
            "riemann-roch closed form and serre duality [h0 - h1, h1]",
            Value::Array(expected),
            Value::Array(actual),
        )],
    ))
}

fn tame(curve: &Curve, p: &TamePayload) -> Res<Dispatched> {
    let s = build_symbol(curve, &p.symbol)?;
    let mut rows = Map::new();
    for spec in &p.places {
        let place = build_place(curve, spec)?;
        rows.insert(place.to_string(), element_json(&tame_symbol(&s, &place)?));
    }
    let product = weil_reciprocity_check(&s)?;
    Ok((
        Value::Object(rows),
        vec![oracle("weil reciprocity", element_json(&curve.field().one()), element_json(&product))],
    ))
}

fn intersect(field: &FieldSpec, p: &IntersectPayload, opts: &RunOptions) -> Res<Dispatched> {
    let ext_bound = match p.ext_bound {
        Some(b) if b.0 >= 1 => b.0 as usize,
        Some(_) => return Err(SchemaError("ext-bound must be positive".into()).into()),
        None => opts.ext_bound.unwrap_or(DEFAULT_EXT_BOUND),
    };
    let d1 = build_surface_divisor(field, &p.d1)?;
    let d2 = build_surface_divisor(field, &p.d2)?;
    let sopts = SurfaceOptions { ext_bound, signs: opts.signs };
    let n = intersection_number_with(&d1, &d2, &sopts)?;
    let cycle = surface_product_cycle_with(&d1, &d2, &sopts)?;
    let cycle_degree: i64 = cycle.iter().map(|(x, m)| x.degree() as i64 * m).sum();
    let cycle_json: Vec<Value> =
        cycle.iter().map(|(x, m)| json!({ "point": point_json(x), "multiplicity": m.to_string() })).collect();
    let n_json = json!(n.to_string());
    Ok((
        json!({ "intersection-number": n_json, "product-cycle": cycle_json, "ext-bound": ext_bound.to_string() }),
        vec![
            oracle("bezout deg D1 * deg D2", json!((d1.degree() * d2.degree()).to_string()), n_json.clone()),
            oracle("resultant degree", json!(bezout_intersection_number(&d1, &d2)?.to_string()), n_json.clone()),
            oracle(
                "fulton multiplicities",
                json!(fulton_intersection_number(&d1, &d2, ext_bound)?.to_string()),
                n_json.clone(),
            ),
            oracle("product cycle degree", json!(cycle_degree.to_string()), n_json),
        ],
    ))
}

fn weil(curve: &Curve, p: &PairingPayload) -> Res<Dispatched> {
    let (pp, qq) = (build_point(curve, &p.p)?, build_point(curve, &p.q)?);
    let idelic = weil_pairing_idelic(curve, &pp, &qq, p.l.0)?;
    let miller = weil_pairing_miller(curve, &pp, &qq, p.l.0)?;
    Ok((
        json!({ "pairing": element_json(&idelic.value), "order": idelic.order.to_string() }),
        vec![oracle("miller", element_json(&miller.value), element_json(&idelic.value))],
    ))
}

fn massey(curve: &Curve, p: &PairingPayload, opts: &RunOptions) -> Res<Dispatched> {
    let (pp, qq) = (build_point(curve, &p.p)?, build_point(curve, &p.q)?);
    let m = massey_for_points(curve, &pp, &qq, p.l.0)?;
    let miller = weil_pairing_miller(curve, &pp, &qq, p.l.0)?;
    let expected = miller.value.powi(opts.signs.massey_exponent)?;
    Ok((
        json!({ "cocycle": place_map_json(&m.cocycle), "direct-image": element_json(&m.direct_image) }),
        vec![oracle(
            &format!("miller pairing ^ {}", opts.signs.massey_exponent),
            element_json(&expected),
            element_json(&m.direct_image),
        )],
    ))
}
