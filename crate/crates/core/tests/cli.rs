use std::path::Path;
use std::process::{Command, Output};

use bohmian_earth::io::csv::Table;
use bohmian_earth::io::svg::polyline_points;

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bohmian-earth"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn read_table(path: &Path) -> Table {
    Table::parse(&std::fs::read_to_string(path).unwrap(), &path.display().to_string()).unwrap()
}

const FIG1: [&str; 13] = [
    "trajectory", "--source", "closed-form", "--xi", "1.414", "--zh", "1.496e11", "--t-end", "2e7", "--dt", "1e4",
    "--out", "fig1.csv",
];

#[test]
fn no_arguments_prints_synopsis() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(run(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn closed_form_trajectory_decays_toward_equilibrium() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&FIG1, dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("skipped"));
    let table = read_table(&dir.path().join("fig1.csv"));
    assert_eq!(
        table.header,
        ["t_s", "r_m", "theta_rad", "phi_rad", "x_m", "y_m", "z_m", "speed_mps"]
    );
    let r = table.column("r_m").unwrap();
    assert!(r.len() > 1000);
    assert!(r.windows(2).all(|w| w[1] < w[0]));
    let last = *r.last().unwrap();
    assert!(last > 2.116e11 * 0.999 && last < 2.116e11 * 1.02, "{last:e}");

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("fig1.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["subcommand"], "trajectory");
    assert_eq!(manifest["schema_version"], 1);
    assert_eq!(manifest["config"]["geometry"]["xi"], 1.414);
    assert!(manifest["timestamp"].as_str().unwrap().ends_with('Z'));
}

#[test]
fn strict_closed_form_from_zero_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["trajectory", "--t-end", "1e6", "--dt", "1e4", "--strict"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("complex"));
}

#[test]
fn plot_reproduces_trajectory_polyline() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = FIG1.to_vec();
    args.extend(["--svg", "direct.svg"]);
    assert!(run(&args, dir.path()).status.success());
    let out = run(
        &["plot", "--input", "fig1.csv", "--kind", "radius-vs-time", "--out", "replot.svg"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let direct = std::fs::read_to_string(dir.path().join("direct.svg")).unwrap();
    let replot = std::fs::read_to_string(dir.path().join("replot.svg")).unwrap();
    assert_eq!(polyline_points(&direct), polyline_points(&replot));
    assert_eq!(direct, replot);
}

#[test]
fn replay_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scenario.cfg");
    std::fs::write(&cfg, "Z_h = 1.3e11\nxi = 1.45\nmagnetic = table\n").unwrap();
    let out = run(
        &["trajectory", "--config", "scenario.cfg", "--source", "numeric", "--t-end", "5e6", "--dt", "5e4", "--out", "a.csv"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    // later edits to the config must not leak into the replay
    std::fs::write(&cfg, "Z_h = 1.0e11\n").unwrap();
    let out = run(&["replay", "--manifest", "a.csv.manifest.json", "--out", "b.csv"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn config_file_and_flags_agree() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c.cfg"), "Z_h = 1.2e11\nxi = 1.5\n").unwrap();
    let base = ["trajectory", "--source", "riccati", "--t-end", "2e6", "--dt", "1e5"];
    let mut a = base.to_vec();
    a.extend(["--config", "c.cfg"]);
    let mut b = base.to_vec();
    b.extend(["--zh", "1.2e11", "--xi", "1.5"]);
    let (oa, ob) = (run(&a, dir.path()), run(&b, dir.path()));
    assert!(oa.status.success() && ob.status.success());
    assert_eq!(oa.stdout, ob.stdout);
    std::fs::write(dir.path().join("bad.cfg"), "speed_of_light = 3e8\n").unwrap();
    let mut bad = base.to_vec();
    bad.extend(["--config", "bad.cfg"]);
    let out = run(&bad, dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown key"));
}

#[test]
fn field_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["field", "--grid", "21", "--out", "grid.csv"], dir.path());
    assert!(out.status.success());
    let grid = read_table(&dir.path().join("grid.csv"));
    assert_eq!(grid.header, ["x", "y", "vx", "vy"]);
    assert!(!grid.rows.is_empty());

    for name in ["s1", "s2"] {
        let out = run(
            &["field", "--seed", "1.0,0.5", "--seed", "-0.8,1.2", "--out", &format!("{name}.csv"), "--svg", &format!("{name}.svg")],
            dir.path(),
        );
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let s1 = std::fs::read(dir.path().join("s1.svg")).unwrap();
    assert_eq!(s1, std::fs::read(dir.path().join("s2.svg")).unwrap());
    assert_eq!(String::from_utf8_lossy(&s1).matches("<circle").count(), 2);
    let lines = read_table(&dir.path().join("s1.csv"));
    assert_eq!(lines.header, ["streamline_id", "step", "x", "y"]);
    assert_eq!(lines.rows[0], vec![0.0, 0.0, 1.0, 0.5]);

    let out = run(&["plot", "--input", "s1.csv", "--kind", "field-stream", "--out", "p.svg"], dir.path());
    assert!(out.status.success());
    let p = std::fs::read_to_string(dir.path().join("p.svg")).unwrap();
    assert_eq!(polyline_points(&p), polyline_points(&String::from_utf8_lossy(&s1)));
}

#[test]
fn wavefunction_writes_one_csv_per_n() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["wavefunction", "--n", "1,2,3", "--b", "1e-7", "--out", "fig4.csv", "--svg", "fig4.svg"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for n in 1..=3 {
        let t = read_table(&dir.path().join(format!("fig4.n{n}.csv")));
        assert_eq!(t.header, ["r_m", "log_density", "density_normalized"]);
        let d = t.column("density_normalized").unwrap();
        let r = t.column("r_m").unwrap();
        let (i, _) = d.iter().enumerate().fold((0, f64::MIN), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        let expected = n as f64 * (n as f64 + 1.0) * 1e-7 / 2.0;
        assert!((r[i] - expected).abs() <= r[1] - r[0]);
        assert!(dir.path().join(format!("fig4.n{n}.csv.manifest.json")).exists());
    }
    let svg = std::fs::read_to_string(dir.path().join("fig4.svg")).unwrap();
    assert_eq!(polyline_points(&svg).len(), 3);
    assert_eq!(run(&["wavefunction", "--n", "1,2"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["wavefunction", "--n", "0.5"], dir.path()).status.code(), Some(1));
}

#[test]
fn audit_and_quantum_numbers_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["audit", "--out", "audit.json"], dir.path());
    assert!(out.status.success());
    let audit: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("audit.json")).unwrap()).unwrap();
    assert_eq!(audit["schema_version"], 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("flag: A"));

    let out = run(&["quantum-numbers", "--json"], dir.path());
    assert!(out.status.success());
    let q: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(q["schema_version"], 1);
    let n = q["n"].as_f64().unwrap();
    assert!((n / 2.524e74 - 1.0).abs() < 5e-3);
    let text = run(&["quantum-numbers", "--magnetic", "table"], dir.path());
    assert!(String::from_utf8_lossy(&text.stdout).contains("m (table)"));
}

#[test]
fn plot_rejects_mismatched_input() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(&["field", "--grid", "5", "--out", "g.csv"], dir.path()).status.success());
    let out = run(&["plot", "--input", "g.csv", "--kind", "orbit-xy", "--out", "x.svg"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["plot", "--input", "missing.csv", "--kind", "orbit-xy", "--out", "x.svg"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}
