use std::fmt::Display;
use std::time::Instant;

use curve_ideal::border::{border_basis_approx, border_basis_exact, ApproxOptions, BorderRun};
use curve_ideal::bounds::{degree_bound, predicted_ranks, required_points};
use curve_ideal::io::{
    generators_to_json, parametrization_from_json, points_from_json, points_to_json, profile_from_json, AnyPointSet,
    JsonScalar,
};
use curve_ideal::minimize::{minimal_basis, minimal_basis_approx};
use curve_ideal::recovery::{
    rationalize_generators, to_approx_generators, verify_by_substitution, verify_on_points, RationalizationPolicy,
};
use curve_ideal::sampler::{integer_params, sample_exact_rational, sample_roots_of_unity};
use curve_ideal::{
    BigRational, Complex64, CurveProfile, GeneratorSet, MinimizationReport, Parametrization, PointSet, Scalar,
};
use serde_json::{json, Map, Value};

use crate::{read_input, write_output, BoundSource, BoundsArgs, Failure, Format, IdealArgs, SampleArgs, Verify};

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn millis(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Degree bound from `--degree-bound` or `--profile`, if either was given.
fn resolve_bound(src: &BoundSource) -> Result<Option<usize>, Failure> {
    if let Some(m) = src.degree_bound {
        if m == 0 {
            return Err(input("--degree-bound must be at least 1"));
        }
        return Ok(Some(m));
    }
    match &src.profile {
        Some(path) => {
            let profile = profile_from_json(&read_input(path)?)?;
            Ok(Some(degree_bound(&profile)?.max_degree))
        }
        None => Ok(None),
    }
}

fn points_text<T: Scalar + Display>(points: &PointSet<T>) -> String {
    points
        .points()
        .iter()
        .map(|p| p.coords().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

pub fn sample(a: &SampleArgs) -> Result<(), Failure> {
    let param = parametrization_from_json(&read_input(&a.param)?)?;
    let h = match a.count {
        Some(0) => return Err(input("--count must be at least 1")),
        Some(h) => h,
        None => {
            let m = match resolve_bound(&a.bound)? {
                Some(m) => m,
                None => degree_bound(&CurveProfile::generic(param.n(), param.degree()))?.max_degree,
            };
            required_points(m, param.degree())?
        }
    };
    let text = if a.backend.exact {
        let pts = sample_exact_rational(&param, &integer_params(a.start, h))?;
        match a.output.format {
            Format::Json => points_to_json(&pts),
            Format::Text => points_text(&pts),
        }
    } else {
        let pts = sample_roots_of_unity(&param, h)?;
        match a.output.format {
            Format::Json => points_to_json(&pts),
            Format::Text => points_text(&pts),
        }
    };
    write_output(&a.output, &text)
}

pub fn bounds(a: &BoundsArgs) -> Result<(), Failure> {
    let profile = if let Some(path) = &a.profile {
        profile_from_json(&read_input(path)?)?
    } else if let (Some(class), Some(g)) = (a.class, a.genus) {
        CurveProfile::for_genus(class, g)?
    } else if let (Some(n), Some(d)) = (a.n, a.d) {
        let p = CurveProfile::generic(n, d);
        p.validate()?;
        p
    } else {
        return Err(input("give --profile, --n and --d, or --class and --genus"));
    };
    let bound = degree_bound(&profile)?;
    let h = required_points(bound.max_degree, profile.d)?;
    let ranks = predicted_ranks(&profile, bound.max_degree).unwrap_or_default();
    let text = match a.output.format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "profile": profile,
            "max_degree": bound.max_degree,
            "degrees": bound.degrees,
            "rule": bound.rule,
            "points_required": h,
            "predicted_complement_sizes": ranks.iter().map(|&(k, r)| (k.to_string(), json!(r))).collect::<Map<_, _>>(),
        }))
        .expect("bounds serialize"),
        Format::Text => {
            let mut s = format!("degree bound {} ({})\n", bound.max_degree, bound.rule);
            if let Some(d) = &bound.degrees {
                s += &format!("generator degrees {d:?}\n");
            }
            s += &format!("points required {h}\n");
            for (k, r) in &ranks {
                s += &format!("|N_{k}| = {r}\n");
            }
            s
        }
    };
    write_output(&a.output, &text)
}

/// Issues found while running `ideal`.
#[derive(Default)]
struct Doubts {
    /// Escalated to exit status 2 only under `--strict`.
    warnings: Vec<String>,
    /// Always exit status 2.
    failures: Vec<String>,
}

fn minimization_json<T: Scalar>(r: &MinimizationReport<T>, s: usize) -> Value {
    json!({
        "counts": r.counts(s),
        "kept": r.kept,
        "removed": r.removed,
        "kernel_dims": r.kernel_dims,
        "warnings": r.warnings,
    })
}

fn run_json<T: Scalar>(run: &BorderRun<T>, s: usize) -> Value {
    json!({
        "complement_sizes": run.complement.sizes(),
        "border_counts": run.generators.counts(s),
        "degrees": run.diagnostics,
    })
}

/// Rendered generators together with what `--format text` needs.
struct Rendered {
    json: String,
    text: String,
}

fn render<T: JsonScalar + Display>(g: &GeneratorSet<T>, s: usize, diagnostics: &Value) -> Rendered {
    let mut text = format!("{} generators, counts by degree {:?}\n", g.kind(), g.counts(s));
    for (k, f) in g.iter() {
        text += &format!("  [{k}] {f}\n");
    }
    Rendered {
        json: generators_to_json(g, s, diagnostics.clone()),
        text,
    }
}

pub fn ideal(a: &IdealArgs) -> Result<(), Failure> {
    let total = Instant::now();
    let points = points_from_json(&read_input(&a.points)?)?;
    let s = resolve_bound(&a.bound)?.ok_or_else(|| input("one of --degree-bound or --profile is required"))?;
    let exact = match (&points, a.backend.exact, a.backend.approx) {
        (AnyPointSet::Complex(_), true, _) => return Err(input("--exact needs a rational points file")),
        (_, true, _) => true,
        (_, _, true) => false,
        (AnyPointSet::Rational(_), ..) => true,
        (AnyPointSet::Complex(_), ..) => false,
    };
    if !(a.tol > 0.0 && a.tol < 1.0) {
        return Err(input(format!("--tol {} must lie in (0, 1)", a.tol)));
    }
    if exact && a.ranks.is_some() {
        return Err(input("--ranks applies to the approximate backend"));
    }
    if exact && a.rationalize {
        return Err(input("--rationalize applies to the approximate backend"));
    }
    let param = match (a.verify, &a.param) {
        (Some(Verify::Substitution), None) => return Err(input("--verify substitution needs --param FILE")),
        (Some(Verify::Substitution), Some(_)) if !exact && !a.rationalize => {
            return Err(input("--verify substitution needs exact coefficients: use --exact or --rationalize"))
        }
        (_, Some(path)) => Some(parametrization_from_json(&read_input(path)?)?),
        (_, None) => None,
    };
    if let Some(p) = &param {
        if p.n() != points.n() {
            return Err(input(format!("parametrization lives in P^{}, points in P^{}", p.n(), points.n())));
        }
    }

    let mut doubts = Doubts::default();
    let mut diag = Map::new();
    let mut timings = Map::new();
    diag.insert("backend".into(), json!(if exact { "exact" } else { "approx" }));
    diag.insert("points".into(), json!(points.len()));

    let rendered = if exact {
        let AnyPointSet::Rational(pts) = points else { unreachable!() };
        ideal_exact(a, s, &pts, param.as_ref(), &mut diag, &mut timings, &mut doubts)?
    } else {
        let pts = match points {
            AnyPointSet::Rational(p) => p.to_approx()?,
            AnyPointSet::Complex(p) => p,
        };
        diag.insert("tol".into(), json!(a.tol));
        ideal_approx(a, s, &pts, param.as_ref(), &mut diag, &mut timings, &mut doubts)?
    };
    timings.insert("total".into(), json!(millis(total)));
    diag.insert("timings_ms".into(), Value::Object(timings));
    let diag = Value::Object(diag);
    let rendered = rendered(&diag);
    write_output(
        &a.output,
        match a.output.format {
            Format::Json => &rendered.json,
            Format::Text => &rendered.text,
        },
    )?;

    for w in &doubts.warnings {
        eprintln!("warning: {w}");
    }
    if !doubts.failures.is_empty() {
        return Err(Failure::Confidence(doubts.failures));
    }
    if a.strict && !doubts.warnings.is_empty() {
        return Err(Failure::Confidence(doubts.warnings));
    }
    Ok(())
}

type Renderer = Box<dyn FnOnce(&Value) -> Rendered>;

fn ideal_exact(
    a: &IdealArgs,
    s: usize,
    pts: &PointSet<BigRational>,
    param: Option<&Parametrization>,
    diag: &mut Map<String, Value>,
    timings: &mut Map<String, Value>,
    doubts: &mut Doubts,
) -> Result<Renderer, Failure> {
    let t = Instant::now();
    let run = border_basis_exact(pts, s)?;
    timings.insert("border".into(), json!(millis(t)));
    diag.insert("run".into(), run_json(&run, s));
    doubts.warnings.extend(run.diagnostics.all_warnings().cloned());

    let gens = if a.minimize {
        let t = Instant::now();
        let report = minimal_basis(&run.complement, &run.generators)?;
        timings.insert("minimize".into(), json!(millis(t)));
        diag.insert("minimization".into(), minimization_json(&report, s));
        doubts.warnings.extend(report.warnings.iter().cloned());
        report.minimal
    } else {
        run.generators
    };

    let t = Instant::now();
    match a.verify {
        Some(Verify::Substitution) => {
            let p = param.expect("checked by caller");
            substitution_check(&gens, p, diag, doubts)?;
        }
        Some(Verify::Points) => {
            let report = verify_on_points(&gens, pts)?;
            if report.max() != 0.0 {
                doubts.failures.push("a generator does not vanish exactly on the points".into());
            }
            diag.insert("verification".into(), json!({ "method": "points", "residuals": report }));
        }
        None => {}
    }
    if a.verify.is_some() {
        timings.insert("verify".into(), json!(millis(t)));
    }
    Ok(Box::new(move |d| render(&gens, s, d)))
}

fn substitution_check(
    gens: &GeneratorSet<BigRational>,
    p: &Parametrization,
    diag: &mut Map<String, Value>,
    doubts: &mut Doubts,
) -> Result<(), Failure> {
    let report = verify_by_substitution(gens, p)?;
    let failed: Vec<Value> = report
        .failures()
        .map(|e| json!({ "degree": e.degree, "index": e.index }))
        .collect();
    for e in report.failures() {
        doubts
            .failures
            .push(format!("generator {} of degree {} does not vanish on the parametrization", e.index, e.degree));
    }
    diag.insert(
        "verification".into(),
        json!({ "method": "substitution", "checked": report.entries.len(), "failed": failed }),
    );
    Ok(())
}

fn ideal_approx(
    a: &IdealArgs,
    s: usize,
    pts: &PointSet<Complex64>,
    param: Option<&Parametrization>,
    diag: &mut Map<String, Value>,
    timings: &mut Map<String, Value>,
    doubts: &mut Doubts,
) -> Result<Renderer, Failure> {
    let options = ApproxOptions {
        tol: a.tol,
        ranks: a.ranks.clone().unwrap_or_default(),
        ..ApproxOptions::default()
    };
    let t = Instant::now();
    let run = border_basis_approx(pts, s, &options)?;
    timings.insert("border".into(), json!(millis(t)));
    diag.insert("run".into(), run_json(&run, s));
    doubts.warnings.extend(run.diagnostics.all_warnings().cloned());

    let gens = if a.minimize {
        let t = Instant::now();
        let report = minimal_basis_approx(&run.complement, &run.generators, a.tol)?;
        timings.insert("minimize".into(), json!(millis(t)));
        diag.insert("minimization".into(), minimization_json(&report, s));
        doubts.warnings.extend(report.warnings.iter().cloned());
        report.minimal
    } else {
        run.generators
    };

    let exact = if a.rationalize {
        let t = Instant::now();
        let policy = RationalizationPolicy::new(a.max_den, RationalizationPolicy::default().accept_tol)?;
        let rec = rationalize_generators(&gens, &policy)?;
        timings.insert("rationalize".into(), json!(millis(t)));
        diag.insert(
            "rationalization".into(),
            json!({ "policy": policy, "complete": rec.is_complete(), "flagged": rec.flagged }),
        );
        for f in &rec.flagged {
            doubts.warnings.push(format!(
                "generator {} of degree {} has {} coefficient(s) without a rational match",
                f.index,
                f.degree,
                f.failures.len()
            ));
        }
        rec.is_complete().then_some(rec.exact)
    } else {
        None
    };

    let t = Instant::now();
    match (a.verify, &exact) {
        (Some(Verify::Substitution), Some(g)) => {
            substitution_check(g, param.expect("checked by caller"), diag, doubts)?;
        }
        (Some(Verify::Substitution), None) => {
            doubts
                .failures
                .push("substitution check skipped: not every generator could be rationalized".into());
        }
        (Some(Verify::Points), _) => {
            let embedded;
            let checked = match &exact {
                Some(g) => {
                    embedded = to_approx_generators(g)?;
                    &embedded
                }
                None => &gens,
            };
            let report = verify_on_points(checked, pts)?;
            if !report.within(a.tol) {
                doubts
                    .failures
                    .push(format!("largest residual {:e} exceeds --tol {:e}", report.max(), a.tol));
            }
            diag.insert("verification".into(), json!({ "method": "points", "residuals": report }));
        }
        (None, _) => {}
    }
    if a.verify.is_some() {
        timings.insert("verify".into(), json!(millis(t)));
    }
    Ok(match exact {
        Some(g) => Box::new(move |d| render(&g, s, d)),
        None => Box::new(move |d| render(&gens, s, d)),
    })
}
