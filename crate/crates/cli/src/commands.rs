use lacunaria::frame::{self, Verdict};
use lacunaria::obstructions::{self, RationalMeasure};
use lacunaria::rational::{self, Rational};
use lacunaria::sturm::IsolatedRoot;
use lacunaria::uniqueness::{self, UniquenessFailure};
use lacunaria::vandermonde::{self, GeneralizedVandermonde};
use lacunaria::{Config, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{Outcome, Table};
use crate::{Command, Source, Which};

type Result<T> = std::result::Result<T, Error>;

pub fn run(cmd: &Command, cfg: &Config) -> Result<Outcome> {
    match cmd {
        Command::RGamma(a) => r_gamma(a),
        Command::Descartes(a) => descartes(a, cfg),
        Command::Vandermonde(a) => vandermonde(a),
        Command::ScanDetRoots(a) => scan_det_roots(a, cfg),
        Command::UniquenessCheck(a) => uniqueness_check(a),
        Command::UniquenessSearch(a) => uniqueness_search(a),
        Command::Obstruction(a) => obstruction(a, cfg),
        Command::GridMeasure(a) => grid_measure(a, cfg),
        Command::FrameBounds(a) => frame_bounds(a, cfg),
        Command::Radius(a) => radius(a, cfg),
        Command::Witness(a) => witness(a, cfg),
        Command::MollifiedRatio(a) => mollified_ratio(a, cfg),
    }
}

fn q(x: &Rational) -> Value {
    Value::String(rational::format(x))
}

fn root_json(r: &IsolatedRoot) -> Value {
    json!({ "lo": q(&r.lo), "hi": q(&r.hi), "approx": r.approx() })
}

fn failure_json(f: &UniquenessFailure) -> Value {
    json!({
        "points": f.points.iter().map(q).collect::<Vec<_>>(),
        "exponents": f.exponents.to_string(),
        "polynomial": f.polynomial.to_string(),
    })
}

fn measure_table(m: &RationalMeasure) -> Table {
    let mut t = Table::new(&["location", "re", "im"]);
    for a in &m.atoms {
        t.rows.push(vec![a.location.to_string(), a.re.to_string(), a.im.to_string()]);
    }
    t
}

fn measure_json(m: &RationalMeasure) -> Value {
    Value::Array(
        m.atoms
            .iter()
            .map(|a| json!({ "location": q(&a.location), "re": q(&a.re), "im": q(&a.im) }))
            .collect(),
    )
}

fn r_gamma(a: &crate::GammaArg) -> Result<Outcome> {
    let split = a.gamma.parity_split();
    Ok(Outcome::new(
        json!({ "gamma": a.gamma.to_string() }),
        json!({
            "r": q(&a.gamma.r_gamma()),
            "even": split.even.len(),
            "odd": split.odd.len(),
            "half_cardinality": q(&a.gamma.half_cardinality()),
        }),
    ))
}

fn descartes(a: &crate::DescartesArgs, cfg: &Config) -> Result<Outcome> {
    let cap = a.degree_cap.unwrap_or(cfg.sturm_degree_cap);
    let bound = a.poly.descartes_bound()?;
    let width = vandermonde::isolation_width(cfg.root_width_log2);
    let (roots, intervals, note) = match a.poly.positive_root_intervals(cap, &width) {
        Ok(iv) => (Some(iv.len()), iv.iter().map(root_json).collect(), Value::Null),
        Err(e @ Error::DegreeCap { .. }) => (None, Vec::new(), Value::String(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(Outcome::new(
        json!({ "poly": a.poly.to_string(), "degree-cap": cap.to_string() }),
        json!({
            "descartes_bound": bound,
            "positive_roots": roots,
            "sharp": roots.map(|r| r == bound),
            "root_intervals": intervals,
            "note": note,
        }),
    ))
}

fn vandermonde(a: &crate::VandermondeArgs) -> Result<Outcome> {
    let v = GeneralizedVandermonde::new(a.nodes.0.clone(), a.gamma.clone())?;
    let mut res = serde_json::Map::new();
    res.insert("size".into(), json!(v.size()));
    if a.det || !a.tp_check {
        res.insert("det".into(), q(&v.det_exact()));
        res.insert("invertible".into(), json!(v.is_invertible()));
        res.insert(
            "witness_polynomial".into(),
            v.witness_polynomial().map_or(Value::Null, |p| Value::String(p.to_string())),
        );
    }
    if a.tp_check {
        res.insert("totally_positive".into(), json!(v.verify_total_positivity(v.size())?));
    }
    Ok(Outcome::new(
        json!({
            "nodes": a.nodes.to_string(),
            "gamma": a.gamma.to_string(),
            "det": a.det,
            "tp-check": a.tp_check,
        }),
        Value::Object(res),
    ))
}

fn scan_det_roots(a: &crate::ScanDetRootsArgs, cfg: &Config) -> Result<Outcome> {
    let bits = a.bits.unwrap_or(cfg.root_width_log2);
    let det = vandermonde::det_in_s(&a.gamma, cfg.det_in_s_cap)?;
    let roots = vandermonde::exceptional_set(
        &a.gamma,
        &a.range.a,
        &a.range.b,
        cfg.det_in_s_cap,
        &vandermonde::isolation_width(bits),
    )?;
    let mut t = Table::new(&["lo", "hi", "approx"]);
    for r in &roots {
        t.rows.push(vec![r.lo.to_string(), r.hi.to_string(), r.approx().to_string()]);
    }
    Ok(Outcome::new(
        json!({ "gamma": a.gamma.to_string(), "range": a.range.to_string(), "bits": bits.to_string() }),
        json!({
            "det_in_s": det.to_string(),
            "degree": det.degree(),
            "roots": roots.iter().map(root_json).collect::<Vec<_>>(),
        }),
    )
    .with_table(t))
}

fn uniqueness_check(a: &crate::UniquenessCheckArgs) -> Result<Outcome> {
    let v = uniqueness::is_uniqueness_set(&a.points.0, a.cap)?;
    Ok(Outcome::new(
        json!({ "points": a.points.to_string(), "cap": a.cap.to_string() }),
        json!({
            "unique": v.unique,
            "checked": v.checked,
            "witness": v.witness.as_ref().map(failure_json),
        }),
    ))
}

fn uniqueness_search(a: &crate::UniquenessSearchArgs) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let failures = uniqueness::search_counterexample(a.n, a.cap, a.trials, &mut rng)?;
    let mut t = Table::new(&["points", "exponents", "polynomial"]);
    for f in &failures {
        let pts: Vec<String> = f.points.iter().map(|p| p.to_string()).collect();
        t.rows.push(vec![pts.join(" "), f.exponents.to_string(), f.polynomial.to_string()]);
    }
    let mut o = Outcome::new(
        json!({
            "n": a.n.to_string(),
            "cap": a.cap.to_string(),
            "trials": a.trials.to_string(),
            "seed": a.seed.to_string(),
        }),
        json!({
            "failures": failures.len(),
            "examples": failures.iter().take(10).map(failure_json).collect::<Vec<_>>(),
        }),
    )
    .with_table(t);
    o.seed = Some(a.seed);
    Ok(o)
}

fn obstruction(a: &crate::ObstructionArgs, cfg: &Config) -> Result<Outcome> {
    let n_range = a.n_range.unwrap_or(cfg.residual_n_range);
    let f = obstructions::solve_obstruction(&a.gamma)?;
    let m = f.rational_measure();
    let residual = obstructions::residual_interpolation(&f, n_range);
    Ok(Outcome::new(
        json!({ "gamma": a.gamma.to_string(), "n-range": n_range.to_string() }),
        json!({
            "case": f.parity_case.to_string(),
            "alphas": f.alphas.iter().map(q).collect::<Vec<_>>(),
            "support_radius": q(&m.support_radius()),
            "r_gamma": q(&a.gamma.r_gamma()),
            "residual": residual,
            "measure": measure_json(&m),
        }),
    )
    .with_table(measure_table(&m)))
}

fn grid_measure(a: &crate::GridMeasureArgs, cfg: &Config) -> Result<Outcome> {
    let n_range = a.n_range.unwrap_or(cfg.residual_n_range);
    let m = obstructions::grid_null_measure(&a.gamma, &a.alpha);
    let resid = obstructions::orthogonality_residual(&m.to_discrete(), &a.gamma, n_range);
    Ok(Outcome::new(
        json!({ "gamma": a.gamma.to_string(), "alpha": q(&a.alpha), "n-range": n_range.to_string() }),
        json!({
            "measure": measure_json(&m),
            "exact_residual_zero": m.exact_residual_is_zero(&a.gamma),
            "orthogonality_residual": resid,
        }),
    )
    .with_table(measure_table(&m)))
}

fn frame_bounds(a: &crate::FrameBoundsArgs, cfg: &Config) -> Result<Outcome> {
    let step = a.step.unwrap_or(cfg.grid_step);
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::Precondition("step must lie in (0, 1]".into()));
    }
    let est = frame::frame_bounds(&a.gamma, &a.interval, step, cfg);
    if let Some(path) = &a.plot {
        let curves = frame::sigma_min_profile(&a.gamma, &a.interval, step);
        let roots: Vec<f64> = est.certificates.iter().flatten().map(|c| c.root.approx()).collect();
        let title = format!("sigma_min(t), gamma = {{{}}}, interval ({})", a.gamma, a.interval);
        crate::plot::sigma_plot(path, &title, &curves, &roots)
            .map_err(|e| Error::Precondition(format!("cannot write plot: {e}")))?;
    }
    let mut t = Table::new(&["lo", "hi", "columns", "lower", "upper", "min_location"]);
    for r in &est.regimes {
        t.rows.push(vec![
            r.lo.to_string(),
            r.hi.to_string(),
            r.columns.to_string(),
            r.lower.to_string(),
            r.upper.to_string(),
            r.min_location.to_string(),
        ]);
    }
    let mut results = serde_json::to_value(&est).expect("serializable");
    results["complete_l2"] = json!(frame::complete_l2(&a.gamma, &a.interval));
    let mut inputs = json!({
        "gamma": a.gamma.to_string(),
        "interval": a.interval.to_string(),
        "step": step.to_string(),
    });
    if let Some(p) = &a.plot {
        inputs["plot"] = json!(p.display().to_string());
    }
    let mut o = Outcome::new(inputs, results).with_table(t);
    o.inconclusive = est.verdict == Verdict::Inconclusive;
    Ok(o)
}

fn radius(a: &crate::RadiusArgs, cfg: &Config) -> Result<Outcome> {
    let which = match a.which {
        Which::Fr => "fr",
        Which::Cr => "cr",
        Which::Crc => "crc",
    };
    let inputs = json!({
        "gamma": a.gamma.to_string(),
        "which": which,
        "resolution": a.resolution.to_string(),
    });
    let mut inconclusive = false;
    let results = match a.which {
        Which::Cr => json!({ "cr": q(&frame::cr_scan(&a.gamma)) }),
        Which::Crc => json!({ "crc": q(&frame::crc_scan(&a.gamma)?) }),
        Which::Fr => {
            let scan = frame::frame_radius_scan(&a.gamma, a.resolution, cfg)?;
            inconclusive = scan.inconclusive > 0;
            json!({
                "fr": rational::to_f64(&scan.radius),
                "fr_exact": q(&scan.radius),
                "bracket": [q(&scan.radius), q(&scan.upper)],
                "steps": scan.steps,
                "inconclusive_steps": scan.inconclusive,
                "r_gamma": q(&a.gamma.r_gamma()),
            })
        }
    };
    let mut o = Outcome::new(inputs, results);
    o.inconclusive = inconclusive;
    Ok(o)
}

fn witness(a: &crate::WitnessArgs, cfg: &Config) -> Result<Outcome> {
    let w = frame::noncompleteness_witness(&a.gamma, &a.interval, cfg)?;
    let n = a.gamma.len();
    let mut headers = vec!["t".to_string()];
    headers.extend((0..=n).map(|j| format!("F_{j}")));
    let mut t = Table { headers, rows: Vec::new() };
    for s in &w.samples {
        let mut row = vec![s.t.to_string()];
        row.extend(s.components.iter().map(|c| c.to_string()));
        t.rows.push(row);
    }
    Ok(Outcome::new(
        json!({ "gamma": a.gamma.to_string(), "interval": a.interval.to_string() }),
        json!({
            "support": [w.support.0, w.support.1],
            "delta": w.delta,
            "det_max": w.det_max,
            "max_pairing": w.max_pairing,
            "pairings_checked": w.pairings.len(),
            "norm": w.norm,
            "norm_last": w.norm_last,
            "samples": w.samples.len(),
        }),
    )
    .with_table(t))
}

fn mollified_ratio(a: &crate::MollifiedRatioArgs, cfg: &Config) -> Result<Outcome> {
    let (m, source) = match a.source {
        Source::Obstruction => (obstructions::to_measure(&obstructions::solve_obstruction(&a.gamma)?), "obstruction"),
        Source::Grid => (obstructions::grid_null_measure(&a.gamma, &a.alpha).to_discrete(), "grid"),
    };
    let res = obstructions::mollified_frame_ratio(&m, &a.gamma, a.r, a.n_range, cfg.orthogonality_tolerance)?;
    Ok(Outcome::new(
        json!({
            "gamma": a.gamma.to_string(),
            "r": a.r.to_string(),
            "n-range": a.n_range.to_string(),
            "source": source,
            "alpha": q(&a.alpha),
        }),
        serde_json::to_value(&res).expect("serializable"),
    ))
}
