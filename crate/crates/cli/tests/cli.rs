use std::process::{Command, Output};

use fluxbound_cli::{parse_args, parse_csv_table, parse_grid, CliError, Value};

fn fluxbound(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fluxbound"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("FLUXBOUND_THREADS", t),
        None => cmd.env_remove("FLUXBOUND_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn column(out: &Output, name: &str) -> Vec<Value> {
    let table = parse_csv_table(&out.stdout).unwrap();
    table.column(name).unwrap().into_iter().cloned().collect()
}

const SWEEP: &[&str] = &["ab-sweep", "--l", "0", "--s", "-1", "--mu-grid", "0.05:0.95:19", "--xi-grid", "-3:-0.3:4"];

#[test]
fn repeated_runs_are_byte_identical() {
    let a = fluxbound(SWEEP, None);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    for threads in [None, Some("1"), Some("3")] {
        let b = fluxbound(SWEEP, threads);
        assert_eq!(a.stdout, b.stdout, "threads {threads:?}");
    }
    let mut json = SWEEP.to_vec();
    json.extend(["--format", "json"]);
    assert_eq!(fluxbound(&json, Some("2")).stdout, fluxbound(&json, Some("5")).stdout);
}

#[test]
fn sweep_crosses_zero_at_half_flux() {
    let out = fluxbound(&["ab-sweep", "--l", "0", "--s", "-1", "--mu-grid", "0.1:0.9:17", "--xi", "-1"], None);
    assert!(out.status.success());
    let beta: Vec<f64> = column(&out, "beta").iter().map(|v| v.as_f64().unwrap()).collect();
    let e: Vec<f64> = column(&out, "E_over_m").iter().map(|v| v.as_f64().unwrap()).collect();
    assert_eq!(beta.len(), 17);
    let mid = beta.iter().position(|b| (b - 0.5).abs() < 1e-12).unwrap();
    assert_eq!(e[mid], 0.0);
    assert!(e[..mid].iter().all(|&v| v < 0.0) && e[mid + 1..].iter().all(|&v| v > 0.0));
    assert!(e.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(column(&out, "tau")[mid], Value::Null);
    for r in column(&out, "residual") {
        assert!(r.as_f64().unwrap().abs() <= 1e-8);
    }
}

#[test]
fn ac_solve_closed_form() {
    let out = fluxbound(&["ac-solve", "--gamma", "0.5", "--xi", "-1"], None);
    assert!(out.status.success());
    let e = column(&out, "E_over_m")[0].as_f64().unwrap();
    assert!((e + 0.5).abs() < 1e-12, "{e}");
}

#[test]
fn domain_errors_exit_two_with_json_reason() {
    for (args, reason) in [
        (&["ab-solve", "--l", "3", "--s", "-1", "--mu", "0.25", "--xi", "-1"][..], "regime"),
        (&["ab-solve", "--l", "0", "--s", "-1", "--mu", "0.25", "--xi", "2"][..], "no-level"),
        (&["ab-density", "--l", "3", "--s", "1", "--mu", "0.2", "--xi", "-1", "--energy-grid", "1.5:3:4"][..], "regime"),
        (&["ac-solve", "--gamma", "1.5", "--xi", "-1"][..], "regime"),
    ] {
        let out = fluxbound(args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_eq!(err["reason"], reason, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["ab-solve", "--l", "0", "--s", "-1", "--mu", "0.5", "--xi", "-1", "--theta", "3.14"][..],
        &["ab-solve", "--l", "0", "--s", "-1", "--mu", "0.5"][..],
        &["ab-solve", "--l", "0", "--s", "-1", "--mu", "0.5", "--xi", "-1", "--frobnicate"][..],
        &["ac-sweep", "--gamma-grid", "0.1:0.9:1", "--xi", "-1"][..],
        &["ac-solve", "--gamma", "0.5", "--xi", "-1", "--r-grid", "1:2:3"][..],
        &["no-such-command"][..],
    ] {
        assert_eq!(fluxbound(args, None).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(fluxbound(&["ab-solve", "--l", "0", "--s", "-1", "--mu", "0.3", "--xi", "-1"], Some("zero")).status.code(), Some(2));
}

#[test]
fn csv_round_trip_is_exact() {
    let out = fluxbound(&["ac-sweep", "--gamma-grid", "0.05:0.95:13", "--xi-grid", "-4:-0.2:5"], None);
    assert!(out.status.success());
    let table = parse_csv_table(&out.stdout).unwrap();
    assert_eq!(table.rows.len(), 65);
    let again = fluxbound_cli::emit_table(&table, fluxbound_cli::Format::Csv).unwrap();
    assert_eq!(again, out.stdout);

    let json = fluxbound(&["ac-sweep", "--gamma-grid", "0.05:0.95:13", "--xi-grid", "-4:-0.2:5", "--format", "json"], None);
    let rows: Vec<serde_json::Map<String, serde_json::Value>> = serde_json::from_slice(&json.stdout).unwrap();
    let energies = table.column("E_over_m").unwrap();
    for (row, e) in rows.iter().zip(energies) {
        assert_eq!(row["E_over_m"].as_f64(), e.as_f64());
        assert_eq!(row.keys().map(String::as_str).collect::<Vec<_>>(), table.columns);
    }
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# golden level\nl = 0\ns = -1\nmu = 0.25\nxi = -1\nformat = json\nenergy_grid = 1:2:3\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let out_path = dir.path().join("out.csv");

    let a = fluxbound(&["ab-solve", "--config", cfg], None);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let rows: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!((rows[0]["E_over_m"].as_f64().unwrap() + 0.566_001_999_692).abs() < 1e-9);

    let b = fluxbound(&["ab-solve", "--config", cfg, "--theta", "-1", "--format", "csv", "--output", out_path.to_str().unwrap()], None);
    assert!(b.status.success(), "{}", String::from_utf8_lossy(&b.stderr));
    assert!(b.stdout.is_empty());
    let table = parse_csv_table(&std::fs::read(&out_path).unwrap()).unwrap();
    let xi = table.column("xi").unwrap()[0].as_f64().unwrap();
    assert_eq!(xi, fluxbound::Extension::from_theta(-1.0).unwrap().xi());

    std::fs::write(dir.path().join("bad.conf"), "l = 0\nwavelength = 3\n").unwrap();
    let c = fluxbound(&["ab-solve", "--config", dir.path().join("bad.conf").to_str().unwrap()], None);
    assert_eq!(c.status.code(), Some(2));
}

#[test]
fn wavefunction_is_mass_independent() {
    let base = ["ab-wavefunction", "--l", "0", "--s", "-1", "--mu", "0.25", "--xi", "-1", "--r-grid", "0.1:6:12"];
    let a = fluxbound(&base, None);
    let mut heavy = base.to_vec();
    heavy.extend(["--mass", "3.5"]);
    let b = fluxbound(&heavy, None);
    assert!(a.status.success() && b.status.success());
    let (fa, fb) = (column(&a, "f1"), column(&b, "f1"));
    for (x, y) in fa.iter().zip(&fb) {
        let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
        assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
    }
}

#[test]
fn oracle_check_agrees() {
    let out = fluxbound(&["oracle-check", "--sector", "ab", "--l", "0", "--s", "-1", "--mu-grid", "0.1:0.9:5", "--xi", "-1"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let diffs = column(&out, "abs_diff");
    assert_eq!(diffs.len(), 4);
    assert!(diffs.iter().all(|d| d.as_f64().unwrap() < 1e-6));
    let out = fluxbound(&["oracle-check", "--sector", "ac", "--gamma", "0.5", "--xi", "-1", "--refine", "1"], None);
    assert!(out.status.success());
    assert!(column(&out, "abs_diff")[0].as_f64().unwrap() < 1e-6);
}

#[test]
fn library_parsers() {
    let spec = parse_args(["fluxbound", "ac-sweep", "--gamma-grid", "0.1:0.9:17", "--xi", "-1"]).unwrap();
    assert_eq!(spec.command.name(), "ac-sweep");
    assert!(matches!(parse_args(["fluxbound", "ab-solve", "--xi", "-1", "--theta", "3.14"]), Err(CliError::Clap(_))));
    assert_eq!(parse_grid("0:1:3").unwrap().points(), vec![0.0, 0.5, 1.0]);
}
