//! One-parameter grids of verdicts, evaluated in parallel and emitted in
//! grid order.

use anyhow::{bail, Context, Result};
use hyposhift::exact_linalg::fraction_string;
use hyposhift::Rational;
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::eval::{evaluate, family_from, TestSpec};
use crate::settings::Settings;

/// Grids larger than this are refused.
pub const MAX_ROWS: usize = 100_000;

const SWEEPABLE: [&str; 6] = ["a2", "kappa2", "x2", "y2", "p", "q"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub base: Settings,
    pub vary: String,
    pub start: Rational,
    pub stop: Rational,
    pub step: Rational,
    pub tests: Vec<TestSpec>,
    pub format: Format,
}

impl SweepSpec {
    pub fn from_settings(settings: &Settings) -> Result<Self> {
        let vary = settings.require("vary")?.to_string();
        if !SWEEPABLE.contains(&vary.as_str()) {
            bail!("--vary must be one of {}, got {vary:?}", SWEEPABLE.join(", "));
        }
        let start = settings.require_rational("start")?;
        let stop = settings.require_rational("stop")?;
        let step = settings.require_rational("step")?;
        if step <= Rational::from_integer(0.into()) {
            bail!("--step must be positive, got {step}");
        }
        if start > stop {
            bail!("--start {start} exceeds --stop {stop}");
        }
        let tests = TestSpec::parse_list(settings.require("tests")?)?;
        let format = match settings.get("format").unwrap_or("csv") {
            "csv" => Format::Csv,
            "json" => Format::Json,
            other => bail!("--format must be csv or json, got {other:?}"),
        };
        let spec = SweepSpec { base: settings.clone(), vary, start, stop, step, tests, format };
        let rows = spec.point_count();
        if rows > MAX_ROWS {
            bail!("grid has {rows} points, more than {MAX_ROWS}");
        }
        Ok(spec)
    }

    /// Number of points `start, start + step, ...` not past `stop`.
    pub fn point_count(&self) -> usize {
        let n = ((&self.stop - &self.start) / &self.step).floor().to_integer();
        usize::try_from(n).map_or(usize::MAX, |n| n.saturating_add(1))
    }

    pub fn points(&self) -> Vec<Rational> {
        (0..self.point_count()).map(|i| &self.start + &self.step * Rational::from_integer(i.into())).collect()
    }
}

/// Header and cells of one row; `None` marks an absent threshold.
type Row = Vec<(String, Option<String>, bool)>;

fn row_at(spec: &SweepSpec, value: &Rational) -> Result<Row> {
    let mut settings = spec.base.clone();
    settings.set(&spec.vary, fraction_string(value));
    let family = family_from(&settings).with_context(|| format!("at {} = {value}", spec.vary))?;
    let mut row: Row = family.to_record().into_iter().map(|(k, v)| (k, Some(v), false)).collect();
    for test in &spec.tests {
        let v = evaluate(&family, test).with_context(|| format!("test {test} at {} = {value}", spec.vary))?;
        let label = test.to_string();
        row.push((label.clone(), Some(v.holds.to_string()), true));
        row.push((format!("{label}_threshold2"), v.threshold_sq.as_ref().map(fraction_string), false));
    }
    Ok(row)
}

/// Worker count from `HYPOSHIFT_THREADS`, or the machine default.
pub fn thread_count() -> Result<Option<usize>> {
    match std::env::var("HYPOSHIFT_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => bail!("HYPOSHIFT_THREADS must be a positive integer, got {v:?}"),
        },
    }
}

pub fn run(spec: &SweepSpec) -> Result<String> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count()? {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().context("starting sweep workers")?;
    let points = spec.points();
    let rows: Vec<Row> = pool.install(|| points.par_iter().map(|v| row_at(spec, v)).collect::<Result<_>>())?;
    Ok(match spec.format {
        Format::Csv => to_csv(&rows)?,
        Format::Json => to_json(&rows)?,
    })
}

fn to_csv(rows: &[Row]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    if let Some(first) = rows.first() {
        w.write_record(first.iter().map(|(k, _, _)| k.as_str()))?;
    }
    for row in rows {
        w.write_record(row.iter().map(|(_, v, _)| v.as_deref().unwrap_or("")))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn to_json(rows: &[Row]) -> Result<String> {
    let array: Vec<Value> = rows
        .iter()
        .map(|row| {
            let obj: Map<String, Value> = row
                .iter()
                .map(|(k, v, is_bool)| {
                    let value = match (v, is_bool) {
                        (None, _) => Value::Null,
                        (Some(s), true) => Value::Bool(s == "true"),
                        (Some(s), false) => Value::String(s.clone()),
                    };
                    (k.clone(), value)
                })
                .collect();
            Value::Object(obj)
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&Value::Array(array))?;
    out.push('\n');
    Ok(out)
}
