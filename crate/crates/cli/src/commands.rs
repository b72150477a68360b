use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use driven_jc::concurrence::{c_atoms_closed, c_cavities_closed, partition_concurrence, wootters, xstate_concurrence};
use driven_jc::events::{
    esb_time_closed, esb_time_numeric, esd_time_closed, esd_time_numeric, event_report, sweep, CellOutcome,
    EventReport, SweepGrid,
};
use driven_jc::linalg::CMatrix;
use driven_jc::model::{amplitudes, derive_params, rho_partition, Partition, SystemParams};
use driven_jc::oracle::{
    evolve_joint_bruteforce, frame_transform_check, integrate_amplitudes, rwa_report, OracleConfig,
};
use serde_json::{json, Value};

use crate::config::{Format, RunConfig, RunSettings};
use crate::output::{emit, ensure_dir, fmt_num, fmt_opt, write_atomic};
use crate::CliError;

pub fn column_name(p: Partition) -> String {
    format!("C_{}", p.label())
}

/// Concurrence of each requested partition at every grid time.
pub fn simulate_rows(cfg: &RunConfig) -> Result<Vec<(f64, Vec<f64>)>, CliError> {
    let d = derive_params(&cfg.params)?;
    cfg.time_grid()
        .into_iter()
        .map(|t| {
            let row = cfg
                .partitions
                .iter()
                .map(|&part| partition_concurrence(&cfg.params, &d, t, part).map(|c| c.0))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((t, row))
        })
        .collect()
}

pub fn simulate_text(cfg: &RunConfig) -> Result<String, CliError> {
    let rows = simulate_rows(cfg)?;
    let names: Vec<String> = cfg.partitions.iter().map(|&p| column_name(p)).collect();
    match cfg.format {
        Format::Csv => {
            let mut s = format!("t,{}\n", names.join(","));
            for (t, row) in rows {
                let cells: Vec<String> = std::iter::once(t).chain(row).map(fmt_num).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            Ok(s)
        }
        Format::Json => {
            let records: Vec<Value> = rows
                .into_iter()
                .map(|(t, row)| {
                    let mut m = serde_json::Map::new();
                    m.insert("t".into(), json!(t));
                    for (name, c) in names.iter().zip(row) {
                        m.insert(name.clone(), json!(c));
                    }
                    Value::Object(m)
                })
                .collect();
            Ok(serde_json::to_string_pretty(&records).expect("finite values serialize") + "\n")
        }
    }
}

pub fn cmd_simulate(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    emit(cfg.out.as_deref(), &simulate_text(cfg)?, stdout)
}

const EVENT_HEADER: &str = "t_esd,t_esb,period,c_atoms_peak,c_cavities_peak";

pub fn events_text(report: &EventReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Csv => format!(
            "{EVENT_HEADER}\n{},{},{},{},{}\n",
            fmt_opt(report.t_esd),
            fmt_opt(report.t_esb),
            fmt_num(report.period),
            fmt_num(report.c_atoms_peak),
            fmt_num(report.c_cavities_peak)
        ),
    }
}

pub fn cmd_events(
    params: &SystemParams,
    out: Option<&Path>,
    format: Format,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let report = event_report(params)?;
    emit(out, &events_text(&report, format), stdout)
}

pub const SWEEP_HEADER: &str = "lambda,omega_c,t_esd,t_esb,period,c_cav_peak,degenerate";

pub fn sweep_text(grid: &SweepGrid, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(grid).expect("grid serializes") + "\n",
        Format::Csv => {
            let mut s = format!("{SWEEP_HEADER}\n");
            for c in &grid.cells {
                let (lambda, omega_c) = (fmt_num(c.lambda), fmt_num(c.omega_c));
                match &c.outcome {
                    CellOutcome::Report(r) => writeln!(
                        s,
                        "{lambda},{omega_c},{},{},{},{},false",
                        fmt_opt(r.t_esd),
                        fmt_opt(r.t_esb),
                        fmt_num(r.period),
                        fmt_num(r.c_cavities_peak)
                    ),
                    CellOutcome::Degenerate => writeln!(s, "{lambda},{omega_c},,,,,true"),
                }
                .expect("writing to a String");
            }
            s
        }
    }
}

pub fn cmd_sweep(
    base: &SystemParams,
    lambda_axis: &[f64],
    omega_c_axis: &[f64],
    out: Option<&Path>,
    format: Format,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let grid = sweep(base, lambda_axis, omega_c_axis)?;
    emit(out, &sweep_text(&grid, format), stdout)
}

/// One line of the verification report; `tolerance: None` marks an
/// informational figure.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub deviation: f64,
    pub tolerance: Option<f64>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.tolerance.is_none_or(|tol| self.deviation <= tol)
    }
}

fn moduli_gap(a: &CMatrix<f64>, b: &CMatrix<f64>) -> f64 {
    a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x.norm() - y.norm()).abs()).fold(0.0, f64::max)
}

fn event_gap(closed: Option<f64>, numeric: Option<f64>) -> f64 {
    match (closed, numeric) {
        (Some(a), Some(b)) => (a - b).abs(),
        (None, None) => 0.0,
        _ => f64::INFINITY,
    }
}

/// Runs every oracle against the closed forms over `[0, t_max]`.
pub fn verify_checks(p: &SystemParams, t_max: f64, oracle: &OracleConfig) -> Result<Vec<Check>, CliError> {
    let d = derive_params(p)?;
    let grid = |n: usize| -> Vec<f64> { (0..n).map(|k| t_max * k as f64 / (n - 1) as f64).collect() };

    let mut amp = 0.0_f64;
    for a in integrate_amplitudes(&d, &grid(201), oracle)? {
        let exact = amplitudes(&d, a.t);
        amp = amp.max((a.f1 - exact.f1).norm()).max((a.f2 - exact.f2).norm());
    }

    let (mut states, mut conc, mut xstate) = (0.0_f64, 0.0_f64, 0.0_f64);
    for t in grid(51) {
        let bf = evolve_joint_bruteforce(p, &d, t, oracle)?;
        let pairs = [
            (Partition::A1A2, &bf.atoms),
            (Partition::C1C2, &bf.cavities),
            (Partition::A1C2, &bf.a1c2),
            (Partition::C1A2, &bf.c1a2),
        ];
        for (part, brute) in pairs {
            let model = rho_partition(p, &d, t, part);
            states = states.max(moduli_gap(brute.matrix(), model.matrix()));
            let expected = match part {
                Partition::A1A2 => c_atoms_closed(p, &d, t).0,
                Partition::C1C2 => c_cavities_closed(p, &d, t).0,
                _ => wootters(&model)?.0,
            };
            conc = conc.max((wootters(brute)?.0 - expected).abs());
            xstate = xstate.max((xstate_concurrence(&model)?.0 - wootters(&model)?.0).abs());
        }
    }

    let frame_times: Vec<f64> = (0..10).map(|k| t_max * (k as f64 + 0.5) / 10.0).collect();
    let frame = frame_transform_check(p, &frame_times, 1e-6, oracle.fock_cutoff);

    let events = event_gap(esd_time_closed(p, &d), esd_time_numeric(p, &d)?)
        .max(event_gap(esb_time_closed(p, &d), esb_time_numeric(p, &d)?));

    let rwa_cfg = OracleConfig { rwa_horizon: t_max, rwa_samples: 101, ..*oracle };
    let rwa = rwa_report(p, &rwa_cfg)?.max_deviation();

    Ok(vec![
        Check { name: "amplitudes", deviation: amp, tolerance: Some(1e-8) },
        Check { name: "states", deviation: states, tolerance: Some(1e-9) },
        Check { name: "concurrences", deviation: conc, tolerance: Some(1e-9) },
        Check { name: "xstate", deviation: xstate, tolerance: Some(1e-10) },
        Check { name: "frame", deviation: frame, tolerance: Some(1e-5) },
        Check { name: "events", deviation: events, tolerance: Some(1e-9) },
        Check { name: "rwa", deviation: rwa, tolerance: None },
    ])
}

/// Prints the report and fails with the names of any breached checks.
/// `tolerance_scale` multiplies every tolerance.
pub fn cmd_verify(p: &SystemParams, t_max: f64, tolerance_scale: f64, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut checks = verify_checks(p, t_max, &OracleConfig::default())?;
    for c in &mut checks {
        c.tolerance = c.tolerance.map(|t| t * tolerance_scale);
    }
    let mut text = String::new();
    for c in &checks {
        let verdict = match (c.tolerance, c.passed()) {
            (None, _) => "info".to_string(),
            (Some(tol), true) => format!("ok (tol {tol:.1e})"),
            (Some(tol), false) => format!("FAIL (tol {tol:.1e})"),
        };
        writeln!(text, "{:<14}max deviation {:.3e}  {verdict}", c.name, c.deviation).expect("writing to a String");
    }
    stdout.write_all(text.as_bytes()).map_err(|e| CliError::Invalid(format!("stdout: {e}")))?;
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join(", ")))
    }
}

/// Panel configurations for one figure: `(file stem, config)`, undriven first.
pub fn figure_panels(which: u8) -> Result<Vec<(String, RunConfig)>, CliError> {
    let (alpha_sq, partitions) = match which {
        1 => (0.1, vec![Partition::A1A2, Partition::C1C2]),
        2 => (0.3, vec![Partition::A1A2, Partition::C1C2]),
        3 => (0.3, Partition::ALL.to_vec()),
        other => return Err(CliError::Invalid(format!("no figure {other}; expected 1, 2 or 3"))),
    };
    [("undriven", 0.0), ("driven", 1.0)]
        .into_iter()
        .map(|(tag, drive)| {
            let settings = RunSettings {
                omega_c: drive,
                lambda: drive,
                alpha_sq,
                t_max: 20.0,
                steps: 2001,
                partitions: partitions.clone(),
                ..RunSettings::default()
            };
            Ok((format!("fig{which}_{tag}"), settings.run_config(None, Format::Csv)?))
        })
        .collect()
}

/// Writes `figN_undriven.csv` and `figN_driven.csv` into `dir` and returns
/// their paths.
pub fn cmd_figures(which: u8, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let panels = figure_panels(which)?;
    ensure_dir(dir)?;
    panels
        .into_iter()
        .map(|(stem, cfg)| {
            let path = dir.join(format!("{stem}.csv"));
            write_atomic(&path, simulate_text(&cfg)?.as_bytes())?;
            Ok(path)
        })
        .collect()
}
