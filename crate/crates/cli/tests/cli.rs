use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use driven_jc::concurrence::partition_concurrence;
use driven_jc::model::{derive_params, Partition, SystemParams};
use driven_jc_cli::commands::{cmd_figures, figure_panels, simulate_text};

fn djc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_djc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<Option<f64>>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows =
        lines.map(|l| l.split(',').map(|c| if c.is_empty() { None } else { c.parse().ok() }).collect()).collect();
    (header, rows)
}

#[test]
fn csv_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.csv");
    let o = djc(&[
        "simulate",
        "--lambda",
        "1",
        "--omega-c",
        "1",
        "--alpha-sq",
        "0.3",
        "--steps",
        "101",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let (header, rows) = parse_csv(&fs::read_to_string(&out).unwrap());
    assert_eq!(header, ["t", "C_a1a2", "C_c1c2", "C_a1c2", "C_c1a2"]);
    assert_eq!(rows.len(), 101);

    let p = SystemParams::with_populations(3.0, 2.0, 1.0, 1.0, 1.0, 0.3, 0.0).unwrap();
    let d = derive_params(&p).unwrap();
    for row in rows {
        let t = row[0].unwrap();
        for (k, part) in Partition::ALL.into_iter().enumerate() {
            let c = partition_concurrence(&p, &d, t, part).unwrap().0;
            assert!((row[k + 1].unwrap() - c).abs() < 1e-9);
        }
    }
}

#[test]
fn requested_columns_only() {
    let o = djc(&["simulate", "--partitions", "c1a2,a1a2", "--steps", "3"]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "t,C_a1a2,C_c1a2");
}

#[test]
fn figure_one_starts_at_point_six_and_dies_on_time() {
    let o = djc(&["simulate", "--t-max", "2", "--steps", "20001", "--partitions", "a1a2"]);
    let (_, rows) = parse_csv(&stdout(&o));
    assert_eq!(rows[0][1], Some(0.6));
    let first_zero = rows.iter().find(|r| r[1] == Some(0.0)).unwrap()[0].unwrap();
    assert!((first_zero - 0.6275964155).abs() < 1e-4);
}

#[test]
fn tiny_window_is_continuous() {
    let o = djc(&["simulate", "--t-max", "1e-9", "--steps", "2"]);
    let (_, rows) = parse_csv(&stdout(&o));
    assert_eq!(rows.len(), 2);
    for (a, b) in rows[0][1..].iter().zip(&rows[1][1..]) {
        assert!((a.unwrap() - b.unwrap()).abs() < 1e-6);
    }
}

#[test]
fn no_entanglement_without_beta() {
    let o = djc(&["simulate", "--alpha-sq", "1", "--steps", "50"]);
    let (_, rows) = parse_csv(&stdout(&o));
    assert!(rows.iter().all(|r| r[1..].iter().all(|c| *c == Some(0.0))));
}

#[test]
fn json_simulation() {
    let o = djc(&["simulate", "--steps", "3", "--format", "json", "--partitions", "c1c2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[0]["C_c1c2"], 0.0);
}

fn events_json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["events"];
    all.extend_from_slice(args);
    let o = djc(&all);
    assert!(o.status.success());
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn event_orderings() {
    let fig1 = events_json(&[]);
    assert!(fig1["t_esd"].as_f64().unwrap() < fig1["t_esb"].as_f64().unwrap());
    let fig2 = events_json(&["--alpha-sq", "0.3"]);
    assert!(fig2["t_esb"].as_f64().unwrap() < fig2["t_esd"].as_f64().unwrap());
}

#[test]
fn missing_death_is_null() {
    // |α/β| = 3 exceeds the largest transfer
    let v = events_json(&["--alpha-sq", "0.9"]);
    assert!(v["t_esd"].is_null());
    assert_eq!(v["t_esb"], 0.0);
}

#[test]
fn params_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("fig2.params");
    fs::write(&file, "alpha_sq = 0.3\nlambda = 1\nomega_c = 1\n").unwrap();
    let from_file = events_json(&["--params", file.to_str().unwrap()]);
    let explicit = events_json(&["--alpha-sq", "0.3", "--lambda", "1", "--omega-c", "1"]);
    assert_eq!(from_file, explicit);
    let overridden = events_json(&["--params", file.to_str().unwrap(), "--lambda", "0", "--omega-c", "0"]);
    assert_eq!(overridden, events_json(&["--alpha-sq", "0.3"]));
}

#[test]
fn single_cell_sweep_matches_events() {
    let o = djc(&["sweep", "--lambda-range", "1:1:1", "--omega-c-range", "1:1:1", "--alpha-sq", "0.3"]);
    let (header, rows) = parse_csv(&stdout(&o));
    assert_eq!(header.join(","), "lambda,omega_c,t_esd,t_esb,period,c_cav_peak,degenerate");
    assert_eq!(rows.len(), 1);
    let ev = events_json(&["--alpha-sq", "0.3", "--lambda", "1", "--omega-c", "1"]);
    for (col, key) in [(2, "t_esd"), (3, "t_esb"), (4, "period"), (5, "c_cavities_peak")] {
        assert!((rows[0][col].unwrap() - ev[key].as_f64().unwrap()).abs() < 1e-11, "{key}");
    }
}

#[test]
fn sweep_peak_changes_with_drive() {
    let o = djc(&["sweep", "--lambda-range", "0:1:1", "--omega-c-range", "0:1:1"]);
    let (_, rows) = parse_csv(&stdout(&o));
    let undriven = rows.iter().find(|r| r[0] == Some(0.0) && r[1] == Some(0.0)).unwrap();
    let driven = rows.iter().find(|r| r[0] == Some(1.0) && r[1] == Some(1.0)).unwrap();
    assert_ne!(undriven[5], driven[5]);
}

#[test]
fn degenerate_cells_are_flagged() {
    let o = djc(&["sweep", "--lambda-range", "0", "--omega-c-range", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",,,,,true"));
}

#[test]
fn exit_codes() {
    assert_eq!(djc(&["simulate", "--alpha-sq", "2"]).status.code(), Some(2));
    assert_eq!(djc(&["simulate", "--steps", "1"]).status.code(), Some(2));
    assert_eq!(djc(&["simulate", "--partitions", "xx"]).status.code(), Some(2));
    assert_eq!(djc(&["sweep", "--lambda-range", "0:1:0"]).status.code(), Some(2));
    assert_eq!(djc(&["bogus"]).status.code(), Some(2));
    assert_eq!(djc(&["figures", "--which", "4"]).status.code(), Some(2));
    assert_eq!(djc(&["events", "--params", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(djc(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_passes_and_can_be_forced_to_fail() {
    let ok = djc(&["verify"]);
    assert_eq!(ok.status.code(), Some(0));
    let report = stdout(&ok);
    let rwa = report.lines().find(|l| l.starts_with("rwa")).unwrap();
    let dev: f64 = rwa.split_whitespace().nth(3).unwrap().parse().unwrap();
    assert!(dev <= 1e-8);

    let bad = djc(&["verify", "--tolerance-scale", "0"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("amplitudes"));
}

#[test]
fn figures_are_written_and_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for which in ["1", "2", "3"] {
        for dir in [a.path(), b.path()] {
            let o = djc(&["figures", "--which", which, "--out-dir", dir.to_str().unwrap()]);
            assert!(o.status.success());
        }
    }
    for name in ["fig1_undriven", "fig1_driven", "fig2_undriven", "fig2_driven", "fig3_undriven", "fig3_driven"] {
        let file = format!("{name}.csv");
        let (x, y) = (fs::read(a.path().join(&file)).unwrap(), fs::read(b.path().join(&file)).unwrap());
        assert_eq!(x, y, "{name}");
        let text = String::from_utf8(x).unwrap();
        assert_eq!(text.lines().count(), 2002);
        let columns = text.lines().next().unwrap().split(',').count();
        assert_eq!(columns, if name.starts_with("fig3") { 5 } else { 3 });
    }
    // no temporary files left behind
    assert_eq!(fs::read_dir(a.path()).unwrap().count(), 6);
}

#[test]
fn figure_captions() {
    let alpha_sq = |which| figure_panels(which).unwrap()[0].1.params.alpha.norm_sqr();
    assert!((alpha_sq(1) - 0.1).abs() < 1e-15);
    assert!((alpha_sq(2) - 0.3).abs() < 1e-15);
    assert!((alpha_sq(3) - 0.3).abs() < 1e-15);
    let panels = figure_panels(1).unwrap();
    assert_eq!((panels[0].1.params.lambda, panels[0].1.params.omega_c), (0.0, 0.0));
    assert_eq!((panels[1].1.params.lambda, panels[1].1.params.omega_c), (1.0, 1.0));
}

#[test]
fn unwritable_figure_directory() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let err = cmd_figures(1, &blocker.join("sub")).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(!Path::new(&blocker.join("sub")).exists());
}

#[test]
fn library_and_binary_agree() {
    let (_, cfg) = figure_panels(2).unwrap().remove(1);
    let lib = simulate_text(&cfg).unwrap();
    let bin = djc(&["simulate", "--alpha-sq", "0.3", "--lambda", "1", "--omega-c", "1", "--partitions", "a1a2,c1c2"]);
    assert_eq!(lib, stdout(&bin));
}
