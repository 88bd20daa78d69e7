use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use unsharp::classical::{self, ClassicalState, IcObservable};
use unsharp::jm::jm_closed_form;
use unsharp::json::{region_from_json, region_to_json};
use unsharp::operator::{bloch_coordinates, DensityOperator, Effect, QubitEffect, Vec3};
use unsharp::oracle::{self, OracleResult, DEFAULT_TOL};
use unsharp::sequential::disturbance_tradeoff_scan;
use unsharp::sphere::{self, SphereMesh, SphereRegion, DEFAULT_MC_SAMPLES, DEFAULT_MESH_LEVEL};
use unsharp::{JmReport, Verdict};

use crate::error::CliError;
use crate::format::{self, float, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::Subcommand)]
pub enum Command {
    /// Closed-form coexistence test with an oracle cross-check
    JmCheck,
    /// Margin and verdict over a grid of |a|, |b| and the angle between them
    JmScan,
    /// Constructive joint-observable search for two qubit effects
    Oracle,
    /// Covariant spin effect of a sphere region (closed form, mesh, Monte Carlo)
    SpinPom,
    /// Accuracy/disturbance scan of a sequential Lüders scheme
    SeqScan,
    /// Tetrahedral embedding, reconstruction, quantization and witnesses
    Tomo,
    /// Barycenter representation of classical states and effects
    Classical,
}

impl Command {
    fn default_format(self) -> Format {
        match self {
            Command::JmScan | Command::SeqScan => Format::Csv,
            _ => Format::Json,
        }
    }

    fn has_table(self) -> bool {
        matches!(self, Command::JmScan | Command::SeqScan)
    }
}

/// Runs a subcommand on the JSON input text and returns the rendered output.
pub fn run(cmd: Command, input: &str, seed: u64, fmt: Option<Format>) -> Result<String, CliError> {
    let fmt = fmt.unwrap_or(cmd.default_format());
    if fmt == Format::Csv && !cmd.has_table() {
        return Err(CliError::Input(format!("{cmd:?} has no CSV form")));
    }
    let value: Value = serde_json::from_str(input)?;
    match cmd {
        Command::JmCheck => format::json(&jm_check(value)?),
        Command::Oracle => format::json(&oracle_cmd(value)?),
        Command::SpinPom => format::json(&spin_pom(value, seed)?),
        Command::Tomo => format::json(&tomo(value)?),
        Command::Classical => format::json(&classical_cmd(value)?),
        Command::JmScan => render(jm_scan(value)?, fmt),
        Command::SeqScan => render(seq_scan(value)?, fmt),
    }
}

fn render(table: Table, fmt: Format) -> Result<String, CliError> {
    match fmt {
        Format::Csv => Ok(table.to_csv()),
        Format::Json => {
            let rows: Vec<Value> = table
                .rows()
                .map(|row| {
                    let obj = table
                        .header()
                        .iter()
                        .zip(row)
                        .map(|(k, v)| {
                            let parsed = v.parse::<f64>().ok().filter(|x| x.is_finite());
                            let cell = parsed.map(Value::from).unwrap_or_else(|| Value::from(v.clone()));
                            (k.to_string(), cell)
                        })
                        .collect::<serde_json::Map<_, _>>();
                    Value::Object(obj)
                })
                .collect();
            format::json(&rows)
        }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(value: Value) -> Result<T, CliError> {
    Ok(serde_json::from_value(value)?)
}

fn axis(v: [f64; 3]) -> Result<Vec3, CliError> {
    let v = Vec3::from(v);
    let norm = v.norm();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(CliError::Input(format!("axis {:?} has no direction", [v.x, v.y, v.z])));
    }
    Ok(v / norm)
}

fn vec3(v: &Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairInput {
    a: QubitEffect,
    b: QubitEffect,
    #[serde(default)]
    tol: Option<f64>,
}

#[derive(Serialize)]
struct JmCheckOutput {
    a: QubitEffect,
    b: QubitEffect,
    report: JmReport,
    oracle: OracleResult,
    /// Closed form, with the oracle deciding pairs inside the boundary band.
    decided: Verdict,
    /// False only when both methods reach definite, opposite verdicts.
    agreement: bool,
}

fn oracle_tol(tol: Option<f64>) -> Result<f64, CliError> {
    match tol {
        None => Ok(DEFAULT_TOL),
        Some(t) if t > 0.0 && t.is_finite() => Ok(t),
        Some(t) => Err(CliError::Input(format!("oracle tolerance {t} must be positive"))),
    }
}

fn jm_check(value: Value) -> Result<JmCheckOutput, CliError> {
    let p: PairInput = parse(value)?;
    let tol = oracle_tol(p.tol)?;
    let report = jm_closed_form(&p.a, &p.b)?;
    let oracle = oracle::jm_oracle(&p.a, &p.b, tol)?;
    let decided = if report.verdict == Verdict::Boundary && oracle.verdict != Verdict::Boundary {
        oracle.verdict
    } else {
        report.verdict
    };
    let agreement =
        report.verdict == oracle.verdict || report.verdict == Verdict::Boundary || oracle.verdict == Verdict::Boundary;
    Ok(JmCheckOutput {
        a: p.a,
        b: p.b,
        report,
        oracle,
        decided,
        agreement,
    })
}

fn oracle_cmd(value: Value) -> Result<Value, CliError> {
    let p: PairInput = parse(value)?;
    let tol = oracle_tol(p.tol)?;
    let result = oracle::jm_oracle(&p.a, &p.b, tol)?;
    let joint = match result.verdict {
        Verdict::NotJointlyMeasurable => Value::Null,
        _ => {
            let coords = result.candidate.grid_coordinates(&p.a, &p.b);
            let labels = unsharp::jm::GRID_LABELS;
            Value::Array(
                labels
                    .iter()
                    .zip(coords.iter())
                    .map(|(l, (c0, c))| json!({"label": l, "c0": c0, "c": vec3(c)}))
                    .collect(),
            )
        }
    };
    Ok(json!({
        "tol": tol,
        "result": serde_json::to_value(result)?,
        "joint": joint,
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Range {
    start: f64,
    stop: f64,
    count: usize,
}

impl Range {
    fn values(&self, name: &str) -> Result<Vec<f64>, CliError> {
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(CliError::Input(format!("{name}: non-finite bounds")));
        }
        match self.count {
            0 => Err(CliError::Input(format!("{name}: empty range"))),
            1 => Ok(vec![self.start]),
            n if self.stop > self.start => {
                let step = (self.stop - self.start) / (n - 1) as f64;
                Ok((0..n)
                    .map(|i| {
                        if i + 1 == n {
                            self.stop
                        } else {
                            self.start + step * i as f64
                        }
                    })
                    .collect())
            }
            _ => Err(CliError::Input(format!(
                "{name}: stop must exceed start when count > 1"
            ))),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScanInput {
    a_norm: Range,
    b_norm: Range,
    angle_deg: Range,
    #[serde(default = "half")]
    a0: f64,
    #[serde(default = "half")]
    b0: f64,
}

fn half() -> f64 {
    0.5
}

/// `a` lies along z and `b` in the xz-plane at the given angle from `a`.
fn jm_scan(value: Value) -> Result<Table, CliError> {
    let s: ScanInput = parse(value)?;
    let (na, nb, angles) = (
        s.a_norm.values("a_norm")?,
        s.b_norm.values("b_norm")?,
        s.angle_deg.values("angle_deg")?,
    );
    let mut table = Table::new(vec!["a_norm", "b_norm", "angle_deg", "margin", "verdict"]);
    for &ra in &na {
        let qa = QubitEffect::new(s.a0, Vec3::z() * ra)?;
        for &rb in &nb {
            for &deg in &angles {
                let (sin, cos) = deg.to_radians().sin_cos();
                let qb = QubitEffect::new(s.b0, Vec3::new(sin, 0.0, cos) * rb)?;
                let r = jm_closed_form(&qa, &qb)?;
                table.push(vec![
                    float(ra),
                    float(rb),
                    float(deg),
                    float(r.margin),
                    verdict_name(r.verdict),
                ]);
            }
        }
    }
    Ok(table)
}

fn verdict_name(v: Verdict) -> String {
    match v {
        Verdict::JointlyMeasurable => "JointlyMeasurable",
        Verdict::NotJointlyMeasurable => "NotJointlyMeasurable",
        Verdict::Boundary => "Boundary",
    }
    .to_string()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeqInput {
    n: [f64; 3],
    m: [f64; 3],
    lambdas: Vec<f64>,
}

fn seq_scan(value: Value) -> Result<Table, CliError> {
    let s: SeqInput = parse(value)?;
    let rows = disturbance_tradeoff_scan(&axis(s.n)?, &axis(s.m)?, &s.lambdas)?;
    let mut table = Table::new(vec!["lambda", "first_acc", "second_acc", "jm_sum"]);
    for r in rows {
        table.push(vec![
            float(r.lambda),
            float(r.first_acc),
            float(r.second_acc),
            float(r.jm_sum),
        ]);
    }
    Ok(table)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpinInput {
    region: Value,
    #[serde(default)]
    mc_samples: Option<usize>,
    #[serde(default)]
    mesh_level: Option<u32>,
}

fn effect_json(e: &Effect) -> Result<Value, CliError> {
    let (c0, c) = bloch_coordinates(e.matrix())?;
    Ok(json!({"c0": c0, "c": vec3(&c), "matrix": serde_json::to_value(e)?}))
}

fn spin_pom(value: Value, seed: u64) -> Result<Value, CliError> {
    let s: SpinInput = parse(value)?;
    let region = region_from_json(s.region)?;
    let samples = s.mc_samples.unwrap_or(DEFAULT_MC_SAMPLES);
    let exact = sphere::covariant_effect(&region)?;
    let (exact_c0, exact_c) = bloch_coordinates(exact.matrix())?;

    let mesh_json = match &region {
        SphereRegion::MeshCells { mesh, cells } => json!({"level": mesh_level_of(mesh), "cells": cells.len()}),
        _ => {
            let level = s.mesh_level.unwrap_or(DEFAULT_MESH_LEVEL);
            if level > unsharp::json::MAX_JSON_MESH_LEVEL {
                return Err(CliError::Input(format!("mesh level {level} too large")));
            }
            let mesh = Arc::new(SphereMesh::icosahedral(level));
            let mut cells = Vec::new();
            for (i, cell) in mesh.cells().iter().enumerate() {
                if region.contains(&cell.center)? {
                    cells.push(i);
                }
            }
            let approx = mesh.covariant_effect(&cells)?;
            let (c0, c) = bloch_coordinates(approx.matrix())?;
            json!({
                "level": level,
                "cells": cells.len(),
                "c0": c0,
                "c": vec3(&c),
                "max_abs_diff": approx.matrix().max_abs_diff(exact.matrix()),
            })
        }
    };

    let mc = sphere::monte_carlo_effect(&region, samples, seed)?;
    Ok(json!({
        "region": region_to_json(&region),
        "effect": effect_json(&exact)?,
        "mesh": mesh_json,
        "monte_carlo": {
            "seed": seed,
            "samples": mc.samples,
            "c0": mc.c0,
            "c": vec3(&mc.c),
            "stderr_c0": mc.stderr_c0,
            "stderr_c": vec3(&mc.stderr_c),
            "max_sigma": mc.max_sigma_deviation(exact_c0, &exact_c),
        },
    }))
}

fn mesh_level_of(mesh: &SphereMesh) -> u32 {
    ((mesh.len() / 20) as f64).log(4.0).round() as u32
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TomoInput {
    #[serde(default)]
    frame: Option<Vec<QubitEffect>>,
    #[serde(default)]
    rho: Option<DensityOperator>,
    #[serde(default)]
    p: Option<Vec<f64>>,
    #[serde(default)]
    f: Option<Vec<f64>>,
    #[serde(default)]
    witness: Option<Effect>,
}

fn tomo(value: Value) -> Result<Value, CliError> {
    let t: TomoInput = parse(value)?;
    let ic = match &t.frame {
        Some(effects) => IcObservable::from_qubit_effects(effects)?,
        None => IcObservable::tetrahedral(),
    };
    let given = [t.rho.is_some(), t.p.is_some(), t.f.is_some(), t.witness.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(CliError::Input("give exactly one of rho, p, f, witness".into()));
    }
    if let Some(rho) = t.rho {
        let p = classical::embed(&rho, &ic)?;
        return Ok(json!({"p": p}));
    }
    if let Some(p) = t.p {
        let rho = classical::reconstruct(&p, &ic)?;
        return Ok(json!({"rho": serde_json::to_value(&rho)?, "bloch": vec3(&rho.bloch_vector()?)}));
    }
    if let Some(f) = t.f {
        let q = classical::quantize(&f, &ic)?;
        return Ok(json!({
            "operator": serde_json::to_value(&q.operator)?,
            "is_effect": q.effect.is_some(),
            "f_proper": q.f_proper,
            "below_zero": q.violation.below_zero,
            "above_one": q.violation.above_one,
        }));
    }
    let target = t.witness.expect("exactly one input present");
    let w = classical::surjectivity_witness(&target, &ic)?;
    Ok(json!({
        "f": w.f,
        "proper": w.proper,
        "below_zero": w.violation.below_zero,
        "above_one": w.violation.above_one,
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassicalInput {
    #[serde(default)]
    state: Option<ClassicalState>,
    #[serde(default)]
    rho: Option<DensityOperator>,
    #[serde(default)]
    effect: Option<Effect>,
}

fn classical_cmd(value: Value) -> Result<Value, CliError> {
    let c: ClassicalInput = parse(value)?;
    let mu = match (c.state, c.rho) {
        (Some(mu), None) => mu,
        (None, Some(rho)) => classical::misra_decomposition(&rho)?,
        _ => return Err(CliError::Input("give exactly one of state, rho".into())),
    };
    let rho = classical::misra_reduce(&mu);
    let mut out = json!({
        "state": serde_json::to_value(&mu)?,
        "barycenter": vec3(&mu.barycenter()),
        "rho": serde_json::to_value(&rho)?,
    });
    if let Some(e) = c.effect {
        let f = classical::misra_dual(&e)?;
        let (lhs, rhs) = classical::duality_check(&mu, &e)?;
        let (lo, hi) = f.range();
        out["effect"] = json!({
            "offset": f.offset,
            "slope": vec3(&f.slope),
            "range": [lo, hi],
            "proper": f.is_proper(),
            "quantum_probability": lhs,
            "classical_probability": rhs,
        });
    }
    Ok(out)
}
