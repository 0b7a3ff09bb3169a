use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use super::{
    BodyArgs, BoundArgs, Command, Format, GrunbaumArgs, MinCArgs, ReportArgs, Status, SweepArgs,
    TrialArgs, VcdimArgs,
};
use crate::epsnet::{
    epsilon_lower_bound, failure_probability_bound, lemma_constant_check, linear_regime_check,
    min_valid_c, net_size, theorem_constant_check, vc_dimension_halfspaces, is_shattered,
};
use crate::experiments::plot::success_curves_svg;
use crate::experiments::records::{read_jsonl, summarize, write_csv, write_jsonl, ExperimentRecord};
use crate::experiments::{
    grunbaum_audit, in_pool, run_sweep, run_trial_with_sample, AuditMode, SweepConfig, TSpec,
};
use crate::geometry::{BodyKind, BodySpec, ConvexBody};
use crate::rng::Stream;
use crate::{Error, Result};

pub(super) fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<Status> {
    match cmd {
        Command::Bound(a) => cmd_bound(a, out),
        Command::MinC(a) => cmd_min_c(a, out),
        Command::Trial(a) => cmd_trial(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Grunbaum(a) => cmd_grunbaum(a, out),
        Command::Vcdim(a) => cmd_vcdim(a, out),
        Command::Report(a) => cmd_report(a, out),
    }
}

fn check_unit_interval(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::invalid(format!("--{name} must lie in (0,1), got {v}")));
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct BoundReport {
    d: usize,
    theta: f64,
    delta: Option<f64>,
    c: f64,
    c_ceil: u64,
    c_is_minimal: bool,
    vc_dim: usize,
    epsilon: f64,
    t: u64,
    condition_holds: Option<bool>,
    lemma_condition_holds: Option<bool>,
    tail_bound: f64,
    tail_target: Option<f64>,
    within_500d: Option<bool>,
}

fn cmd_bound(a: &BoundArgs, out: &mut dyn Write) -> Result<Status> {
    check_unit_interval("theta", a.theta)?;
    if a.d == 0 {
        return Err(Error::invalid("-d must be positive"));
    }
    if let Some(delta) = a.delta {
        check_unit_interval("delta", delta)?;
    }
    let (c, minimal) = match (a.c, a.delta) {
        (Some(c), _) => (c, false),
        (None, Some(delta)) => (min_valid_c(a.d, a.theta, delta)?, true),
        (None, None) => return Err(Error::invalid("give -C or --delta")),
    };
    let eps = epsilon_lower_bound(a.d, a.theta)?;
    let dd = a.d as u32 + 1;
    let t = net_size(a.d, a.theta, c)?;
    let condition = a.delta.map(|delta| theorem_constant_check(a.d, a.theta, delta, c)).transpose()?;
    let lemma = a.delta.map(|delta| lemma_constant_check(c, eps, dd, delta)).transpose()?;
    let linear = if a.d >= 2 && (a.theta - 1.0 / a.d as f64).abs() < 1e-12 {
        Some(linear_regime_check(a.d)?)
    } else {
        None
    };
    let report = BoundReport {
        d: a.d,
        theta: a.theta,
        delta: a.delta,
        c,
        c_ceil: c.ceil() as u64,
        c_is_minimal: minimal,
        vc_dim: a.d + 1,
        epsilon: eps,
        t,
        condition_holds: condition,
        lemma_condition_holds: lemma,
        tail_bound: failure_probability_bound(t, eps, dd)?,
        tail_target: a.delta.map(|delta| (delta / 4.0).powf(1.0 / dd as f64)),
        within_500d: linear.map(|_| t <= 500 * a.d as u64),
    };
    if a.format == Some(Format::Json) {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        return Ok(Status::Ok);
    }
    writeln!(out, "# config: {}", json!({"command": "bound", "d": a.d, "theta": a.theta, "delta": a.delta, "C": a.c}))?;
    writeln!(out, "d: {}", report.d)?;
    writeln!(out, "theta: {}", report.theta)?;
    if let Some(delta) = report.delta {
        writeln!(out, "delta: {delta}")?;
    }
    writeln!(out, "C: {:.6}{}", report.c, if minimal { " (minimal)" } else { "" })?;
    writeln!(out, "C (ceil): {}", report.c_ceil)?;
    writeln!(out, "D: {}", report.vc_dim)?;
    writeln!(out, "epsilon: {:.9e}", report.epsilon)?;
    writeln!(out, "t: {}", report.t)?;
    match condition {
        Some(ok) => writeln!(out, "constant condition (e^3): {ok}")?,
        None => writeln!(out, "constant condition (e^3): n/a (no --delta)")?,
    }
    if let Some(ok) = lemma {
        writeln!(out, "lemma condition (e^2): {ok}")?;
    }
    match report.tail_target {
        Some(target) => writeln!(
            out,
            "tail term: {:.6e} < (delta/4)^(1/D) = {:.6e}: {}",
            report.tail_bound,
            target,
            report.tail_bound < target
        )?,
        None => writeln!(out, "tail term: {:.6e}", report.tail_bound)?,
    }
    if let Some(lin) = linear {
        writeln!(out, "t ≤ 500d: {}", t <= 500 * a.d as u64)?;
        writeln!(
            out,
            "linear regime (C=7, delta=e^-(d+1)): t = {}, condition {}, success probability ≥ {:.6}",
            lin.t, lin.condition_holds, lin.success_probability
        )?;
    }
    Ok(Status::Ok)
}

fn cmd_min_c(a: &MinCArgs, out: &mut dyn Write) -> Result<Status> {
    check_unit_interval("theta", a.theta)?;
    check_unit_interval("delta", a.delta)?;
    let c = min_valid_c(a.d, a.theta, a.delta)?;
    if a.format == Some(Format::Json) {
        writeln!(out, "{}", json!({"d": a.d, "theta": a.theta, "delta": a.delta, "c": c, "c_ceil": c.ceil()}))?;
    } else {
        writeln!(out, "# config: {}", json!({"command": "min-c", "d": a.d, "theta": a.theta, "delta": a.delta}))?;
        writeln!(out, "C: {c:.6}")?;
        writeln!(out, "C (ceil): {}", c.ceil())?;
    }
    Ok(Status::Ok)
}

fn read_body_file(path: &Path) -> Result<BodySpec> {
    let f = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_reader(BufReader::new(f))
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn is_body_file(arg: &str) -> bool {
    arg.ends_with(".json") || Path::new(arg).is_file()
}

/// Body spec from `--body`/`-d`/`--scale`; `dim` is 0 when it is still open.
fn resolve_spec(body: &str, d: Option<usize>, scale: Option<f64>) -> Result<BodySpec> {
    if is_body_file(body) {
        let mut spec = read_body_file(Path::new(body))?;
        if let Some(d) = d {
            if d != spec.dim {
                return Err(Error::invalid(format!(
                    "-d {d} conflicts with dim {} in {body}",
                    spec.dim
                )));
            }
        }
        if let Some(s) = scale {
            spec.scale = s;
        }
        return Ok(spec);
    }
    let kind: BodyKind = body.parse()?;
    if kind == BodyKind::Polygon2d {
        return Err(Error::invalid("polygons are given as a JSON body file"));
    }
    let dim = if body.eq_ignore_ascii_case("triangle") {
        match d {
            None | Some(2) => 2,
            Some(other) => return Err(Error::invalid(format!("a triangle has d = 2, got {other}"))),
        }
    } else {
        d.unwrap_or(0)
    };
    let scale = scale.unwrap_or(if kind == BodyKind::Cube { 2.0 } else { 1.0 });
    Ok(BodySpec {
        kind,
        dim,
        scale,
        vertices: None,
    })
}

fn resolve_body(b: &BodyArgs) -> Result<ConvexBody> {
    let spec = resolve_spec(&b.body, b.d, b.scale)?;
    if spec.dim == 0 {
        return Err(Error::invalid("-d is required for catalog bodies"));
    }
    ConvexBody::from_spec(&spec)
}

fn resolve_t(d: usize, theta: f64, t: Option<u64>, auto: bool, delta: Option<f64>, c: Option<f64>) -> Result<(u64, Option<f64>)> {
    match (t, auto) {
        (Some(_), true) => Err(Error::invalid("-t and --auto-t are exclusive")),
        (Some(t), false) => Ok((t, c)),
        (None, true) => {
            let delta = delta.ok_or_else(|| Error::invalid("--auto-t needs --delta"))?;
            check_unit_interval("delta", delta)?;
            let c = match c {
                Some(c) => c,
                None => min_valid_c(d, theta, delta)?,
            };
            Ok((net_size(d, theta, c)?, Some(c)))
        }
        (None, false) => Err(Error::invalid("give -t or --auto-t")),
    }
}

fn write_output(path: Option<&Path>, out: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(bytes)?),
    }
}

fn write_records(path: &Path, records: &[ExperimentRecord]) -> Result<()> {
    let f = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut w = BufWriter::new(f);
    write_jsonl(&mut w, records)?;
    w.flush()?;
    Ok(())
}

fn cmd_trial(a: &TrialArgs, out: &mut dyn Write) -> Result<Status> {
    check_unit_interval("theta", a.theta)?;
    let body = resolve_body(&a.body)?;
    let (t, c) = resolve_t(body.dim(), a.theta, a.t, a.auto_t, a.delta, a.c)?;
    if t == 0 {
        return Err(Error::invalid("-t must be positive"));
    }
    let seed = a.seed.seed;
    let config = json!({
        "command": "trial",
        "body": body.to_spec(),
        "theta": a.theta,
        "t": t,
        "delta": a.delta,
        "C": c,
        "seed": seed,
        "index": a.index,
    });
    let (sample, outcome) = run_trial_with_sample(&body, a.theta, t as usize, &mut Stream::new(seed, a.index))?;

    if let Some(path) = &a.out {
        write_records(
            path,
            &[
                ExperimentRecord::Config {
                    command: "trial".into(),
                    config: config.clone(),
                },
                ExperimentRecord::Trial {
                    index: a.index,
                    success: outcome.success,
                    violated_vertex: outcome.violated_vertex.clone(),
                },
            ],
        )?;
    }
    if a.format == Some(Format::Json) {
        writeln!(out, "{}", json!({"config": config, "outcome": outcome, "sample_size": sample.points.len()}))?;
        return Ok(Status::Ok);
    }
    writeln!(out, "# config: {config}")?;
    writeln!(out, "{}", if outcome.success { "SUCCESS" } else { "FAILURE" })?;
    writeln!(out, "t: {t}")?;
    if let (Some(v), Some(cap)) = (&outcome.violated_vertex, &outcome.witness_cap) {
        writeln!(out, "violated vertex of theta*K: {v:?}")?;
        writeln!(
            out,
            "witness cap: <{:?}, x> >= {} (supports theta*K, holds no sample point)",
            cap.normal(),
            cap.offset()
        )?;
    } else {
        writeln!(out, "every vertex of theta*K has a convex certificate")?;
    }
    let body_arg = if is_body_file(&a.body.body) {
        a.body.body.clone()
    } else {
        format!("{} -d {} --scale {}", a.body.body, body.dim(), body.scale())
    };
    writeln!(
        out,
        "replay: hullprobe trial --body {body_arg} --theta {} -t {t} --seed {seed} --index {}",
        a.theta, a.index
    )?;
    Ok(Status::Ok)
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<Status> {
    let spec = resolve_spec(&a.body, None, a.scale)?;
    let dims = if a.d.is_empty() && spec.dim > 0 {
        vec![spec.dim]
    } else {
        a.d.clone()
    };
    for &theta in &a.theta {
        check_unit_interval("theta", theta)?;
    }
    let ts = match (a.t.is_empty(), a.auto_t) {
        (false, true) => return Err(Error::invalid("-t and --auto-t are exclusive")),
        (_, false) => TSpec::Fixed(a.t.clone()),
        (true, true) => {
            let delta = a.delta.ok_or_else(|| Error::invalid("--auto-t needs --delta"))?;
            check_unit_interval("delta", delta)?;
            TSpec::Auto { delta, c: a.c }
        }
    };
    let cfg = SweepConfig {
        body: BodySpec {
            dim: dims.first().copied().unwrap_or(0),
            ..spec
        },
        dims,
        thetas: a.theta.clone(),
        ts,
        trials: a.trials,
        seed: a.seed.seed,
    };
    cfg.validate()?;
    let threads = a.threads.unwrap_or_else(default_threads).max(1);
    let rows = in_pool(threads, || run_sweep(&cfg))??;

    let config = json!({"command": "sweep", "config": cfg});
    let mut table = Vec::new();
    match a.format {
        Format::Csv => write_csv(&mut table, Some(&format!("config: {config}")), &rows)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut table, &json!({"config": cfg, "rows": rows}))?;
            table.push(b'\n');
        }
    }
    write_output(a.out.as_deref(), out, &table)?;
    if let Some(svg) = &a.svg {
        std::fs::write(svg, success_curves_svg(&rows))?;
    }
    if let Some(path) = &a.records {
        let mut recs = vec![ExperimentRecord::Config {
            command: "sweep".into(),
            config: serde_json::to_value(&cfg)?,
        }];
        recs.extend(rows.iter().map(ExperimentRecord::from));
        write_records(path, &recs)?;
    }
    Ok(Status::Ok)
}

#[derive(Debug, Serialize)]
struct AuditRow {
    body: String,
    d: usize,
    theta: f64,
    mode: String,
    directions: usize,
    floor: f64,
    min_fraction: f64,
    violations: usize,
}

fn cmd_grunbaum(a: &GrunbaumArgs, out: &mut dyn Write) -> Result<Status> {
    let body = resolve_body(&a.body)?;
    if a.theta.is_empty() {
        return Err(Error::invalid("no theta values given"));
    }
    let seed = a.seed.seed;
    let mut audits = Vec::new();
    for (k, &theta) in a.theta.iter().enumerate() {
        audits.push(grunbaum_audit(&body, theta, a.directions, a.mc, &mut Stream::new(seed, k as u64))?);
    }
    let rows: Vec<AuditRow> = audits
        .iter()
        .map(|au| AuditRow {
            body: body.kind().name().into(),
            d: au.dim,
            theta: au.theta,
            mode: match au.mode {
                AuditMode::Exact => "exact".into(),
                AuditMode::MonteCarlo => "monte_carlo".into(),
            },
            directions: au.n_directions,
            floor: au.floor,
            min_fraction: au.min_fraction,
            violations: au.violations,
        })
        .collect();
    let config = json!({
        "command": "grunbaum",
        "body": body.to_spec(),
        "theta": a.theta,
        "directions": a.directions,
        "mc": a.mc,
        "seed": seed,
    });
    let mut table = Vec::new();
    match a.format {
        Format::Csv => write_csv(&mut table, Some(&format!("config: {config}")), &rows)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut table, &json!({"config": config, "audits": audits}))?;
            table.push(b'\n');
        }
    }
    write_output(a.out.as_deref(), out, &table)?;
    if let Some(path) = &a.records {
        let mut recs = vec![ExperimentRecord::Config {
            command: "grunbaum".into(),
            config,
        }];
        recs.extend(audits.iter().cloned().map(ExperimentRecord::Audit));
        write_records(path, &recs)?;
    }
    let exact_violation = audits
        .iter()
        .any(|au| au.mode == AuditMode::Exact && au.violations > 0);
    Ok(if exact_violation { Status::Violation } else { Status::Ok })
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum PointFile {
    Bare(Vec<Vec<f64>>),
    Wrapped { points: Vec<Vec<f64>> },
}

fn cmd_vcdim(a: &VcdimArgs, out: &mut dyn Write) -> Result<Status> {
    let f = File::open(&a.points).map_err(|e| Error::Io(format!("{}: {e}", a.points.display())))?;
    let points = match serde_json::from_reader(BufReader::new(f))
        .map_err(|e| Error::Parse(format!("{}: {e}", a.points.display())))?
    {
        PointFile::Bare(p) | PointFile::Wrapped { points: p } => p,
    };
    if points.is_empty() {
        return Err(Error::Parse("point list is empty".into()));
    }
    let d = points[0].len();
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::Parse("points have different dimensions".into()));
    }
    let vc = vc_dimension_halfspaces(&points)?;
    let full = is_shattered(&points)?;
    if a.format == Some(Format::Json) {
        writeln!(out, "{}", json!({"n": points.len(), "d": d, "vc_dimension": vc, "shattered": full}))?;
    } else {
        writeln!(out, "vc_dimension: {vc}")?;
        writeln!(out, "points: {}, d: {d}, d+1: {}", points.len(), d + 1)?;
        writeln!(out, "whole set shattered: {full}")?;
    }
    Ok(Status::Ok)
}

fn cmd_report(a: &ReportArgs, out: &mut dyn Write) -> Result<Status> {
    let f = File::open(&a.input).map_err(|e| Error::Io(format!("{}: {e}", a.input.display())))?;
    let records = read_jsonl(BufReader::new(f))?;
    if records.is_empty() {
        return Err(Error::Parse(format!("{} holds no records", a.input.display())));
    }
    let rows = summarize(&records);
    let mut table = Vec::new();
    match a.format {
        Format::Csv => write_csv(&mut table, None, &rows)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut table, &rows)?;
            table.push(b'\n');
        }
    }
    write_output(a.out.as_deref(), out, &table)?;
    Ok(Status::Ok)
}
