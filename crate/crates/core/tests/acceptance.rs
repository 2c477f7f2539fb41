//! Acceptance suite: one line per criterion, each with a pinned wall-clock bound.
//!
//! Runs without the libtest harness so the report is always printed.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use adele_forge::adelic::cohomology_dims;
use adele_forge::curve::{riemann_roch_space, Curve, Function, Place, Point};
use adele_forge::field::{FieldElement, FieldSpec};
use adele_forge::fixtures;
use adele_forge::milnor::{dlog_k1, dlog_pole_order_check, form_residue, weil_reciprocity_check};
use adele_forge::run::{selfcheck_outcome, RunOptions};
use adele_forge::signs::{sign_audit, SignConventions};
use adele_forge::surface::{
    bezout_intersection_number, dlog2_pole_check, fulton_multiplicity, intersection_number, intersection_points,
    parshin_point_reciprocity, surface_product_cycle, Multiplicity, ProjectivePoint, DEFAULT_EXT_BOUND,
};
use adele_forge::weil::{
    massey_for_points, massey_triple_curve, weil_pairing_idelic, weil_pairing_miller, MasseyOutput, TorsionClass,
};

const SEED: u64 = 20_240_611;

type Outcome = Result<String, String>;

/// Name, wall-clock bound in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn lib<T>(r: adele_forge::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("[{}] {e}", e.code()))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn residue(e: &FieldElement) -> i64 {
    e.coefficients()[0] as i64
}

/// Plain modular arithmetic on y² = x³ + ax + b, shared by nothing in the library.
mod oracle {
    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub enum Pt {
        O,
        A(i64, i64),
    }

    pub struct Ec {
        pub p: i64,
        pub a: i64,
        pub b: i64,
    }

    impl Ec {
        pub fn m(&self, x: i64) -> i64 {
            x.rem_euclid(self.p)
        }

        fn pow(&self, mut b: i64, mut e: i64) -> i64 {
            let mut r = 1;
            b = self.m(b);
            while e > 0 {
                if e & 1 == 1 {
                    r = r * b % self.p;
                }
                b = b * b % self.p;
                e >>= 1;
            }
            r
        }

        pub fn inv(&self, x: i64) -> i64 {
            self.pow(x, self.p - 2)
        }

        pub fn neg(&self, p: Pt) -> Pt {
            match p {
                Pt::O => Pt::O,
                Pt::A(x, y) => Pt::A(x, self.m(-y)),
            }
        }

        fn slope(&self, x1: i64, y1: i64, x2: i64, y2: i64) -> i64 {
            if x1 == x2 {
                self.m((3 * x1 * x1 + self.a) * self.inv(2 * y1))
            } else {
                self.m((y2 - y1) * self.inv(x2 - x1))
            }
        }

        pub fn add(&self, p: Pt, q: Pt) -> Pt {
            match (p, q) {
                (Pt::O, _) => q,
                (_, Pt::O) => p,
                (Pt::A(x1, y1), Pt::A(x2, y2)) => {
                    if x1 == x2 && self.m(y1 + y2) == 0 {
                        return Pt::O;
                    }
                    let l = self.slope(x1, y1, x2, y2);
                    let x3 = self.m(l * l - x1 - x2);
                    Pt::A(x3, self.m(l * (x1 - x3) - y1))
                }
            }
        }

        /// (ℓ_{T,U}, v_{T+U}) evaluated at the affine point (x, y).
        fn step(&self, t: Pt, u: Pt, (x, y): (i64, i64)) -> (i64, i64) {
            match (t, u) {
                (Pt::A(x1, y1), Pt::A(x2, y2)) => {
                    if x1 == x2 && self.m(y1 + y2) == 0 {
                        return (self.m(x - x1), 1);
                    }
                    let l = self.slope(x1, y1, x2, y2);
                    let Pt::A(x3, _) = self.add(t, u) else { unreachable!() };
                    (self.m(y - y1 - l * (x - x1)), self.m(x - x3))
                }
                _ => (1, 1),
            }
        }

        /// f with div f = l(P) − l(O), at an affine point; None on a zero or pole of any step.
        pub fn miller(&self, p: Pt, l: i64, at: Pt) -> Option<i64> {
            let Pt::A(x, y) = at else { return None };
            let bits: Vec<bool> = (0..63 - l.leading_zeros()).rev().map(|i| (l >> i) & 1 == 1).collect();
            let (mut num, mut den, mut t) = (1i64, 1i64, p);
            for bit in bits {
                let (a, b) = self.step(t, t, (x, y));
                num = self.m(num * num % self.p * a);
                den = self.m(den * den % self.p * b);
                t = self.add(t, t);
                if bit {
                    let (a, b) = self.step(t, p, (x, y));
                    num = self.m(num * a);
                    den = self.m(den * b);
                    t = self.add(t, p);
                }
            }
            (num != 0 && den != 0).then(|| self.m(num * self.inv(den)))
        }

        pub fn points(&self) -> Vec<Pt> {
            let mut out = vec![];
            for x in 0..self.p {
                for y in 0..self.p {
                    if self.m(y * y - x * x * x - self.a * x - self.b) == 0 {
                        out.push(Pt::A(x, y));
                    }
                }
            }
            out
        }

        /// e(P, Q) = f_P(Q+S) f_Q(−S) / (f_P(S) f_Q(P−S)) for the first S that works.
        pub fn weil(&self, p: Pt, q: Pt, l: i64) -> Option<i64> {
            if p == Pt::O || q == Pt::O {
                return Some(1);
            }
            for s in self.points() {
                let vals = (
                    self.miller(p, l, self.add(q, s)),
                    self.miller(q, l, self.neg(s)),
                    self.miller(p, l, s),
                    self.miller(q, l, self.add(p, self.neg(s))),
                );
                if let (Some(a), Some(b), Some(c), Some(d)) = vals {
                    return Some(self.m(a * b % self.p * self.inv(c * d % self.p)));
                }
            }
            None
        }
    }
}

fn to_oracle(pt: &Point) -> oracle::Pt {
    match (pt.x(), pt.y()) {
        (Some(x), Some(y)) => oracle::Pt::A(residue(x), residue(y)),
        _ => oracle::Pt::O,
    }
}

fn riemann_roch() -> Outcome {
    let mut rows = 0;
    for curve in [lib(Curve::projective_line(&lib(FieldSpec::prime(5))?))?, lib(Curve::elliptic_i64(5, 1, 1))?] {
        let g = curve.genus();
        let k = curve.canonical_divisor();
        for d in lib(fixtures::rr_divisors(&curve, 20, SEED))? {
            let deg = d.degree();
            ensure(deg.abs() <= 6, || format!("fixture divisor {d} has degree {deg}"))?;
            let r = lib(cohomology_dims(&curve, &d))?;
            let (h0, h1) = (r.h0 as i64, r.h1 as i64);
            ensure(h0 - h1 == deg + 1 - g, || format!("{curve}: h0 − h1 = {} for {d}", h0 - h1))?;
            let serre = lib(riemann_roch_space(&lib(k.try_sub(&d))?))?.len() as i64;
            ensure(h1 == serre, || format!("{curve}: h1 = {h1} but h0(K − D) = {serre} for {d}"))?;
            let closed = match (g, deg) {
                (0, n) => Some((n + 1).max(0)),
                (_, n) if n > 0 => Some(n),
                (_, n) if n < 0 => Some(0),
                _ => None,
            };
            if let Some(c) = closed {
                ensure(h0 == c, || format!("{curve}: h0 = {h0}, closed form {c} for {d}"))?;
            }
            rows += 1;
        }
    }
    Ok(format!("{rows} divisors"))
}

fn reciprocity() -> Outcome {
    let p1 = lib(Curve::projective_line(&lib(FieldSpec::prime(7))?))?;
    let mut rng = fixtures::rng(SEED);
    for i in 0..100 {
        let s = lib(fixtures::random_p1_symbol(&p1, &mut rng))?;
        let v = lib(weil_reciprocity_check(&s))?;
        ensure(v.is_one(), || format!("P¹ symbol {i}: product {v}"))?;
    }
    let e = lib(Curve::elliptic_i64(31, 0, 1))?;
    let symbols = lib(fixtures::miller_symbols(&e, 3, 20))?;
    ensure(symbols.len() == 20, || "fewer than 20 Miller symbols".into())?;
    for (i, s) in symbols.iter().enumerate() {
        let v = lib(weil_reciprocity_check(s))?;
        ensure(v.is_one(), || format!("Miller symbol {i}: product {v}"))?;
    }
    Ok("100 + 20 symbols".into())
}

fn local_oracle(
    d1: &adele_forge::surface::SurfaceDivisor,
    d2: &adele_forge::surface::SurfaceDivisor,
) -> Result<BTreeMap<ProjectivePoint, i64>, String> {
    let mut out = BTreeMap::new();
    for (c, a) in d1.iter() {
        for (g, b) in d2.iter() {
            for x in lib(intersection_points(c, g, DEFAULT_EXT_BOUND))? {
                let chart = x.chart();
                let m = lib(fulton_multiplicity(
                    &c.form().dehomogenize(chart),
                    &g.form().dehomogenize(chart),
                    &lib(x.affine(chart))?,
                ))?;
                let Multiplicity::Finite(m) = m else { return Err(format!("infinite multiplicity at {x}")) };
                *out.entry(x).or_insert(0) += a * b * m as i64;
            }
        }
    }
    out.retain(|_, m| *m != 0);
    Ok(out)
}

fn intersections() -> Outcome {
    let suite = lib(fixtures::intersection_suite())?;
    ensure(suite.len() >= 10, || "suite has fewer than 10 pairs".into())?;
    let (mut tangency, mut quadratic) = (false, false);
    for (name, d1, d2) in &suite {
        let expected = d1.degree() * d2.degree();
        let n = lib(intersection_number(d1, d2))?;
        ensure(n == expected, || format!("{name}: adelic {n}, deg·deg {expected}"))?;
        let res = lib(bezout_intersection_number(d1, d2))?;
        ensure(res == expected, || format!("{name}: resultant {res}, deg·deg {expected}"))?;
        let mut cycle = lib(surface_product_cycle(d1, d2))?;
        cycle.retain(|_, m| *m != 0);
        let local = local_oracle(d1, d2)?;
        ensure(cycle == local, || format!("{name}: cycle {cycle:?} differs from Fulton {local:?}"))?;
        let weighted: i64 = cycle.iter().map(|(x, m)| x.degree() as i64 * m).sum();
        ensure(weighted == expected, || format!("{name}: cycle degree {weighted}, deg·deg {expected}"))?;
        tangency |= cycle.iter().any(|(x, m)| x.degree() == 1 && *m == 2);
        quadratic |= cycle.keys().any(|x| x.field().order() == 49);
    }
    ensure(tangency, || "no fixture with a rational point of multiplicity 2".into())?;
    ensure(quadratic, || "no fixture with an intersection point over GF(49)".into())?;
    Ok(format!("{} pairs", suite.len()))
}

fn parshin() -> Outcome {
    let cases = lib(fixtures::parshin_symbols(24, SEED))?;
    for (i, (s, x)) in cases.iter().enumerate() {
        let v = lib(parshin_point_reciprocity(s, x))?;
        ensure(v == 0, || format!("symbol {i} at {x}: sum {v}"))?;
    }
    Ok(format!("{} symbols", cases.len()))
}

fn pairings() -> Outcome {
    let exponent = SignConventions::RESOLVED.massey_exponent;
    let mut pairs = 0;
    let mut massey_configs = 0;
    for curve in lib(fixtures::pairing_curves())? {
        let k = curve.field().characteristic() as i64;
        let rhs = curve.rhs();
        let ec = oracle::Ec { p: k, a: residue(&rhs.coeff(1)), b: residue(&rhs.coeff(0)) };
        for l in [2i64, 3] {
            let pts = lib(curve.torsion_points(l))?;
            ensure(pts.len() as i64 == l * l, || format!("{curve}: E[{l}] is not rational"))?;
            let mut table: Vec<Vec<FieldElement>> = Vec::new();
            for p in &pts {
                let mut row = Vec::new();
                for q in &pts {
                    let idelic = lib(weil_pairing_idelic(&curve, p, q, l))?;
                    let miller = lib(weil_pairing_miller(&curve, p, q, l))?;
                    ensure(idelic == miller, || format!("{curve}: e_{l}({p}, {q}) idelic {idelic}, Miller {miller}"))?;
                    let independent =
                        ec.weil(to_oracle(p), to_oracle(q), l).ok_or("oracle found no auxiliary point")?;
                    ensure(residue(&idelic.value) == independent, || {
                        format!("{curve}: e_{l}({p}, {q}) = {idelic}, modular oracle {independent}")
                    })?;
                    ensure(idelic.value.pow(l as u64).is_one(), || format!("{idelic} is not in μ_{l}"))?;
                    row.push(idelic.value);
                    pairs += 1;
                }
                table.push(row);
            }
            let index = |pt: &Point| pts.iter().position(|x| x == pt).expect("E[l] is a group");
            let mut nontrivial = false;
            for (i, p) in pts.iter().enumerate() {
                ensure(table[i][i].is_one(), || format!("e_{l}({p}, {p}) ≠ 1"))?;
                for (j, q) in pts.iter().enumerate() {
                    nontrivial |= !table[i][j].is_one();
                    ensure((&table[i][j] * &table[j][i]).is_one(), || format!("e_{l} not antisymmetric at {p}, {q}"))?;
                    let s = index(&lib(curve.add_points(p, q))?);
                    for (r, row) in table.iter().enumerate() {
                        ensure(row[s] == &row[i] * &row[j], || format!("e_{l}({}, ·) not additive", pts[r]))?;
                        ensure(table[s][r] == &table[i][r] * &table[j][r], || {
                            format!("e_{l}(·, {}) not additive", pts[r])
                        })?;
                    }
                }
            }
            ensure(nontrivial, || format!("{curve}: e_{l} is degenerate"))?;
            let nonzero: Vec<&Point> = pts.iter().filter(|p| !p.is_infinity()).collect();
            for (p, q) in [(nonzero[0], nonzero[1]), (nonzero[1], nonzero[0])] {
                let MasseyOutput { direct_image, .. } = lib(massey_for_points(&curve, p, q, l))?;
                let w = &table[index(p)][index(q)];
                ensure(direct_image == lib(w.powi(exponent))?, || {
                    format!("{curve}: Massey image {direct_image} vs e_{l}({p}, {q}) = {w}")
                })?;
                massey_configs += 1;
            }
        }
    }
    ensure(massey_configs >= 3, || "fewer than 3 Massey configurations".into())?;
    Ok(format!("{pairs} pairs, {massey_configs} Massey configurations"))
}

/// The first offsets giving disjoint supports and regular values, with O outside supp α.
fn massey_with(
    curve: &Curve,
    p: &Point,
    q: &Point,
    l: i64,
    skip_a: usize,
    skip_b: usize,
) -> Result<(TorsionClass, TorsionClass, FieldElement), String> {
    let offsets = lib(curve.rational_points())?;
    for s in offsets.iter().skip(skip_a) {
        let alpha = lib(TorsionClass::from_point(curve, p, l, s))?;
        // keep O free so principal moves of β, which all pass through O, stay admissible
        if alpha.divisor().get(&Place::Origin) != 0 {
            continue;
        }
        for r in offsets.iter().skip(skip_b) {
            let beta = lib(TorsionClass::from_point(curve, q, l, r))?;
            if let Ok(m) = massey_triple_curve(&alpha, &beta, l) {
                return Ok((alpha, beta, m.direct_image));
            }
        }
    }
    Err(format!("no admissible representatives for {p}, {q}"))
}

fn first_admissible(
    alpha: &TorsionClass,
    curve: &Curve,
    l: i64,
    make: impl Fn(&Function) -> adele_forge::Result<TorsionClass>,
) -> Result<FieldElement, String> {
    let x = Function::x(curve);
    for c in 0..curve.field().characteristic() as i64 {
        let h = &x - &Function::from_i64(curve, c);
        if let Ok(m) = make(&h).and_then(|beta| massey_triple_curve(alpha, &beta, l)) {
            return Ok(m.direct_image);
        }
    }
    Err("no admissible principal move".into())
}

fn chain_invariance() -> Outcome {
    let fixtures = [
        (lib(Curve::elliptic_i64(7, 0, 2))?, 3i64),
        (lib(Curve::elliptic_i64(31, 0, 1))?, 3),
        (lib(Curve::elliptic_i64(5, -1, 0))?, 2),
    ];
    let mut moves = 0;
    for (curve, l) in &fixtures {
        let (curve, l) = (curve, *l);
        let pts: Vec<Point> = lib(curve.torsion_points(l))?.into_iter().filter(|p| !p.is_infinity()).collect();
        let p = &pts[0];
        let q = pts
            .iter()
            .find(|q| lib(weil_pairing_miller(curve, p, q, l)).map(|w| !w.value.is_one()).unwrap_or(false))
            .ok_or_else(|| format!("{curve}: no pair with nontrivial pairing"))?;
        let (alpha, beta, base) = massey_with(curve, p, q, l, 0, 0)?;
        ensure(!base.is_one(), || format!("{curve}: base image is trivial"))?;
        let k = curve.field();
        let images = [
            (
                "α chain scaled",
                lib(massey_triple_curve(&lib(alpha.scale_chain(&k.from_i64(3)))?, &beta, l))?.direct_image,
            ),
            (
                "β chain scaled",
                lib(massey_triple_curve(&alpha, &lib(beta.scale_chain(&k.from_i64(2)))?, l))?.direct_image,
            ),
            ("α translated", massey_with(curve, p, q, l, 3, 0)?.2),
            ("β translated", massey_with(curve, p, q, l, 0, 5)?.2),
            ("β + div(x − c)", first_admissible(&alpha, curve, l, |h| beta.add_principal(h))?),
        ];
        for (what, v) in images {
            ensure(v == base, || format!("{curve}: {what} gives {v}, base {base}"))?;
            moves += 1;
        }
        let trivial = first_admissible(&alpha, curve, l, |h| TorsionClass::principal(h, l))?;
        ensure(trivial.is_one(), || format!("{curve}: trivial β gives {trivial}"))?;
    }
    Ok(format!("{} fixtures, {moves} perturbations", fixtures.len()))
}

fn dlog_bounds() -> Outcome {
    let p1 = lib(Curve::projective_line(&lib(FieldSpec::prime(7))?))?;
    let mut rng = fixtures::rng(SEED);
    for i in 0..50 {
        let f = lib(fixtures::random_p1_function(&p1, &mut rng, 4))?;
        let order = lib(dlog_pole_order_check(&f))?;
        ensure(order <= 1, || format!("function {i}: pole order {order}"))?;
        let w = lib(dlog_k1(&f))?;
        let mut sum = p1.field().zero();
        for place in lib(w.polar_places())? {
            sum = &sum + &lib(form_residue(&w, &place))?;
        }
        ensure(sum.is_zero(), || format!("function {i}: residue sum {sum}"))?;
    }
    for (i, s) in lib(fixtures::dlog2_symbols(50, SEED))?.iter().enumerate() {
        let order = lib(dlog2_pole_check(s))?;
        ensure(order <= 1, || format!("2-form {i}: pole order {order}"))?;
    }
    Ok("50 + 50 inputs".into())
}

fn audit_and_determinism() -> Outcome {
    let audit = lib(sign_audit())?;
    ensure(audit.resolved == SignConventions::RESOLVED, || format!("audit resolved {:?}", audit.resolved))?;
    let opts = RunOptions::default();
    let first = selfcheck_outcome(&opts);
    let second = selfcheck_outcome(&opts);
    ensure(first.exit_code == 0, || format!("selfcheck exit code {}", first.exit_code))?;
    ensure(first.to_json() == second.to_json(), || "selfcheck reports differ between runs".into())?;
    Ok(format!("{} byte report, identical twice", first.to_json().len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("Riemann–Roch through the adelic complex", 5, riemann_roch),
        ("Weil reciprocity", 10, reciprocity),
        ("intersection formula vs Bézout and Fulton", 30, intersections),
        ("Parshin point reciprocity", 10, parshin),
        ("Weil pairing identity", 10, pairings),
        ("chain invariance and kernel", 5, chain_invariance),
        ("dlog bounds", 5, dlog_bounds),
        ("sign audit and deterministic selfcheck", 60, audit_and_determinism),
    ];
    let mut failed = 0;
    for (i, (name, bound, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*bound) => Err(format!("{detail}, over the time bound")),
            other => other,
        };
        let (mark, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("[{mark}] {}. {name}: {detail} ({:.2}s, bound {bound}s)", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
