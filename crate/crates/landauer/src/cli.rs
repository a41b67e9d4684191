//! Batch front end: flat key-value config documents, sweep execution with
//! per-step CSV and a machine-readable JSON summary, and a violation report.
//!
//! Config schema (one `key = value` per line, `#` starts a comment):
//!
//! ```text
//! mode            = single          # single | multi
//! T_system        = 3.0             # system temperature, units of omega
//! T_reservoirs    = 1.0             # comma list, one entry per reservoir
//! J               = 0.1             # system-ancilla strength, [0, pi/2]
//! Omega           = 1.3             # intracollision strength, [0, pi/2]
//! n_collisions    = 60              # optional, default 60
//! omega           = 1.0             # optional, default 1
//! sweep_parameter = Omega           # optional: Omega | J | T_system
//! sweep_values    = 1.2, 1.3, 1.4   # required iff sweep_parameter is set
//! output_dir      = out             # optional
//! ```
//!
//! Without sweep keys the document describes a one-point sweep over Omega.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::collision::{self, Mode, RunConfig, Trajectory, DEFAULT_COLLISIONS};
use crate::Error;

/// A run may not leave a residual above this; the ledger identity is exact,
/// so anything larger indicates a bug, not noise.
const RESIDUAL_ABORT: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepParameter {
    Omega,
    J,
    TSystem,
}

impl SweepParameter {
    pub fn key(&self) -> &'static str {
        match self {
            SweepParameter::Omega => "Omega",
            SweepParameter::J => "J",
            SweepParameter::TSystem => "T_system",
        }
    }
}

impl std::fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.key())
    }
}

/// A base configuration plus one swept parameter.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSpec {
    pub base: RunConfig,
    pub sweep_parameter: SweepParameter,
    pub values: Vec<f64>,
    pub output_dir: Option<PathBuf>,
}

impl SweepSpec {
    /// The run configuration for one sweep value.
    pub fn config_for(&self, value: f64) -> RunConfig {
        let mut config = self.base.clone();
        match self.sweep_parameter {
            SweepParameter::Omega => config.omega_strength = value,
            SweepParameter::J => config.j = value,
            SweepParameter::TSystem => config.t_system = value,
        }
        config
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.values.is_empty() {
            return Err(Error::Config("sweep value list is empty".into()));
        }
        for &v in &self.values {
            self.config_for(v).validate()?;
        }
        Ok(())
    }
}

/// Parses a config document into a validated sweep spec.
pub fn parse_config(text: &str) -> Result<SweepSpec, Error> {
    let mut mode: Option<String> = None;
    let mut t_system: Option<f64> = None;
    let mut t_reservoirs: Option<Vec<f64>> = None;
    let mut j: Option<f64> = None;
    let mut omega_strength: Option<f64> = None;
    let mut n_collisions: Option<usize> = None;
    let mut omega: Option<f64> = None;
    let mut sweep_parameter: Option<SweepParameter> = None;
    let mut sweep_values: Option<Vec<f64>> = None;
    let mut output_dir: Option<PathBuf> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("line {lineno}: expected key = value, got {line:?}"))
        })?;
        let key = key.trim();
        let value = value.trim();
        let real = |v: &str| -> Result<f64, Error> {
            v.parse::<f64>()
                .map_err(|_| Error::Config(format!("line {lineno}: {key}: bad number {v:?}")))
        };
        let real_list = |v: &str| -> Result<Vec<f64>, Error> {
            v.split(',').map(|s| real(s.trim())).collect()
        };
        match key {
            "mode" => mode = Some(value.to_string()),
            "T_system" => t_system = Some(real(value)?),
            "T_reservoirs" => t_reservoirs = Some(real_list(value)?),
            "J" => j = Some(real(value)?),
            "Omega" => omega_strength = Some(real(value)?),
            "n_collisions" => {
                n_collisions = Some(value.parse::<usize>().map_err(|_| {
                    Error::Config(format!("line {lineno}: n_collisions: bad integer {value:?}"))
                })?)
            }
            "omega" => omega = Some(real(value)?),
            "sweep_parameter" => {
                sweep_parameter = Some(match value {
                    "Omega" => SweepParameter::Omega,
                    "J" => SweepParameter::J,
                    "T_system" => SweepParameter::TSystem,
                    other => {
                        return Err(Error::Config(format!(
                            "line {lineno}: sweep_parameter must be Omega, J or T_system, got {other:?}"
                        )))
                    }
                })
            }
            "sweep_values" => sweep_values = Some(real_list(value)?),
            "output_dir" => output_dir = Some(PathBuf::from(value)),
            other => {
                return Err(Error::Config(format!("line {lineno}: unknown key {other:?}")));
            }
        }
    }

    let mode = match mode.as_deref() {
        None | Some("single") => Mode::Single,
        Some("multi") => {
            let count = t_reservoirs.as_ref().map(Vec::len).unwrap_or(0);
            Mode::Multi { reservoirs: count }
        }
        Some(other) => {
            return Err(Error::Config(format!("mode must be single or multi, got {other:?}")))
        }
    };
    let require = |name: &str, v: Option<f64>| {
        v.ok_or_else(|| Error::Config(format!("missing required field {name}")))
    };
    let t_system = require("T_system", t_system)?;
    let t_reservoirs =
        t_reservoirs.ok_or_else(|| Error::Config("missing required field T_reservoirs".into()))?;
    let j = require("J", j)?;
    let omega_strength = match (omega_strength, sweep_parameter) {
        (Some(x), _) => x,
        // base value is irrelevant when Omega itself is swept
        (None, Some(SweepParameter::Omega)) => 0.0,
        (None, _) => return Err(Error::Config("missing required field Omega".into())),
    };

    let base = RunConfig {
        mode,
        t_system,
        t_reservoirs,
        j,
        omega_strength,
        n_collisions: n_collisions.unwrap_or(DEFAULT_COLLISIONS),
        omega: omega.unwrap_or(1.0),
    };

    let (sweep_parameter, values) = match (sweep_parameter, sweep_values) {
        (Some(p), Some(v)) => (p, v),
        (Some(_), None) => {
            return Err(Error::Config("sweep_parameter set but sweep_values missing".into()))
        }
        (None, Some(_)) => {
            return Err(Error::Config("sweep_values set but sweep_parameter missing".into()))
        }
        (None, None) => (SweepParameter::Omega, vec![base.omega_strength]),
    };

    let spec = SweepSpec { base, sweep_parameter, values, output_dir };
    spec.validate()?;
    Ok(spec)
}

/// Renders a spec back to the config-document schema; `parse_config` of the
/// result reproduces the spec.
pub fn serialize_spec(spec: &SweepSpec) -> String {
    let mut out = String::new();
    let mode = match spec.base.mode {
        Mode::Single => "single",
        Mode::Multi { .. } => "multi",
    };
    let list = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    writeln!(out, "mode = {mode}").unwrap();
    writeln!(out, "T_system = {}", spec.base.t_system).unwrap();
    writeln!(out, "T_reservoirs = {}", list(&spec.base.t_reservoirs)).unwrap();
    writeln!(out, "J = {}", spec.base.j).unwrap();
    writeln!(out, "Omega = {}", spec.base.omega_strength).unwrap();
    writeln!(out, "n_collisions = {}", spec.base.n_collisions).unwrap();
    writeln!(out, "omega = {}", spec.base.omega).unwrap();
    if !(spec.sweep_parameter == SweepParameter::Omega
        && spec.values == [spec.base.omega_strength])
    {
        writeln!(out, "sweep_parameter = {}", spec.sweep_parameter).unwrap();
        writeln!(out, "sweep_values = {}", list(&spec.values)).unwrap();
    }
    if let Some(dir) = &spec.output_dir {
        writeln!(out, "output_dir = {}", dir.display()).unwrap();
    }
    out
}

/// Per-run section of the JSON summary.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunSummary {
    pub value: f64,
    pub csv: String,
    pub max_abs_residual: f64,
    pub violation_intervals: Vec<(usize, usize)>,
    pub heat_sign_change_indices: Vec<usize>,
    pub first_negative_heat: Option<usize>,
}

/// Contents of summary.json: a full config echo plus per-run results.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub config: ConfigEcho,
    pub sweep_parameter: String,
    pub runs: Vec<RunSummary>,
}

/// Self-describing echo of the base configuration, including the gate-order
/// convention the engines follow.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub mode: String,
    pub reservoirs: usize,
    pub t_system: f64,
    pub t_reservoirs: Vec<f64>,
    pub j: f64,
    pub omega_strength: f64,
    pub n_collisions: usize,
    pub omega: f64,
    pub gate_order: String,
}

impl ConfigEcho {
    fn from_config(config: &RunConfig) -> Self {
        ConfigEcho {
            mode: match config.mode {
                Mode::Single => "single".into(),
                Mode::Multi { .. } => "multi".into(),
            },
            reservoirs: config.reservoir_count(),
            t_system: config.t_system,
            t_reservoirs: config.t_reservoirs.clone(),
            j: config.j,
            omega_strength: config.omega_strength,
            n_collisions: config.n_collisions,
            omega: config.omega,
            gate_order:
                "system collisions in ascending reservoir order, then all intracollisions"
                    .into(),
        }
    }
}

fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV for one trajectory: one row per collision, 17-significant-digit
/// floats so downstream identity checks are lossless.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let m = traj.config.reservoir_count();
    let mut out = String::new();
    out.push_str("n,delta_S,delta_S_tilde,mutual_info,entropy_production");
    for i in 1..=m {
        write!(out, ",beta_{i},heat_{i}").unwrap();
    }
    out.push_str(",heat_total,lhs,rhs,residual,heat_dia,heat_coh,violated\n");
    for rec in &traj.records {
        write!(
            out,
            "{},{},{},{},{}",
            rec.n,
            format_float(rec.delta_s),
            format_float(rec.delta_s_tilde()),
            format_float(rec.mutual_info_pre),
            format_float(rec.entropy_production)
        )
        .unwrap();
        for term in &rec.beta_heat_terms {
            write!(out, ",{},{}", format_float(term.beta), format_float(term.heat)).unwrap();
        }
        writeln!(
            out,
            ",{},{},{},{},{},{},{}",
            format_float(rec.heat_total()),
            format_float(rec.lhs),
            format_float(rec.rhs),
            format_float(rec.residual()),
            format_float(rec.heat_dia),
            format_float(rec.heat_coh),
            rec.violated
        )
        .unwrap();
    }
    out
}

/// Runs every sweep value, writing one CSV per run and a summary.json into
/// `out_dir`. Output is byte-identical across repeated executions.
pub fn execute(spec: &SweepSpec, out_dir: &Path) -> Result<Summary, Error> {
    spec.validate()?;
    fs::create_dir_all(out_dir)?;

    let mut runs = Vec::with_capacity(spec.values.len());
    for &value in &spec.values {
        let config = spec.config_for(value);
        let traj = collision::run(&config)?;
        if let Some(bad) =
            traj.records.iter().find(|r| r.residual().abs() > RESIDUAL_ABORT)
        {
            return Err(Error::LedgerIdentity { n: bad.n, residual: bad.residual().abs() });
        }
        let csv_name = format!("run_{}={}.csv", spec.sweep_parameter, value);
        fs::write(out_dir.join(&csv_name), trajectory_csv(&traj))?;
        let first_negative_heat =
            traj.records.iter().find(|r| r.heat_total() < 0.0).map(|r| r.n);
        runs.push(RunSummary {
            value,
            csv: csv_name,
            max_abs_residual: traj.max_abs_residual(),
            violation_intervals: traj.violation_intervals.clone(),
            heat_sign_change_indices: traj.heat_sign_change_indices(),
            first_negative_heat,
        });
    }

    let summary = Summary {
        config: ConfigEcho::from_config(&spec.base),
        sweep_parameter: spec.sweep_parameter.to_string(),
        runs,
    };
    let mut json = serde_json::to_string_pretty(&summary)
        .map_err(|e| Error::MalformedSummary(e.to_string()))?;
    json.push('\n');
    fs::write(out_dir.join("summary.json"), json)?;
    Ok(summary)
}

/// Renders a summary file as a human-readable table: one line per run with
/// the swept value, max residual, violation intervals, and the first
/// heat-negative index.
pub fn report(summary_path: &Path) -> Result<String, Error> {
    let text = fs::read_to_string(summary_path)?;
    let summary: Summary =
        serde_json::from_str(&text).map_err(|e| Error::MalformedSummary(e.to_string()))?;
    let mut out = String::new();
    writeln!(
        out,
        "{} runs, mode {}, T_system={}, J={}, N={}",
        summary.runs.len(),
        summary.config.mode,
        summary.config.t_system,
        summary.config.j,
        summary.config.n_collisions
    )
    .unwrap();
    for run in &summary.runs {
        let violations = if run.violation_intervals.is_empty() {
            "none".to_string()
        } else {
            run.violation_intervals
                .iter()
                .map(|(a, b)| format!("n∈[{a},{b}]"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let first_neg = match run.first_negative_heat {
            Some(n) => format!("n={n}"),
            None => "none".to_string(),
        };
        writeln!(
            out,
            "{}={:<8} max|residual|={:.2e}  violations: {}  first negative heat: {}",
            summary.sweep_parameter, run.value, run.max_abs_residual, violations, first_neg
        )
        .unwrap();
    }
    Ok(out)
}
