use std::process::{Command, Output};

use anticheckers::continuum::{continuum_density, ContinuumPoint};
use anticheckers::numerics::{gauss_constant, inverse_lemniscate};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anticheckers"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anticheckers"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn csv(out: &Output) -> Vec<Vec<String>> {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap_or_else(|_| panic!("not a number: {s}"))
}

#[test]
fn propagate_reproduces_the_time_zero_row() {
    let rows = csv(&run(&[
        "propagate",
        "--m",
        "1",
        "--eps",
        "1",
        "--t",
        "0",
        "--x",
        "-3..3",
    ]));
    let (g, l) = (gauss_constant(), inverse_lemniscate());
    // (x, Im Ã₁, Re Ã₂, Im Ã₂)
    let want = [
        (-3.0, 0.0, 0.0, (4.0 * g - 9.0 * l) / 3.0),
        (-2.0, g - 2.0 * l, 0.0, 0.0),
        (-1.0, 0.0, 0.0, -l),
        (0.0, g, 1.0, 0.0),
        (1.0, 0.0, 0.0, l),
        (2.0, g - 2.0 * l, 0.0, 0.0),
        (3.0, 0.0, 0.0, (-4.0 * g + 9.0 * l) / 3.0),
    ];
    assert_eq!(rows.len(), 7);
    for (row, (x, im1, re2, im2)) in rows.iter().zip(want) {
        assert_eq!(num(&row[0]), x);
        assert_eq!(num(&row[1]), 0.0);
        assert!(num(&row[2]).abs() < 1e-10);
        assert!((num(&row[3]) - im1).abs() < 1e-10, "{row:?}");
        assert!((num(&row[4]) - re2).abs() < 1e-10, "{row:?}");
        assert!((num(&row[5]) - im2).abs() < 1e-10, "{row:?}");
        assert_eq!(row[7], "quadrature");
    }
}

#[test]
fn dp_and_quadrature_rows_agree() {
    let base = [
        "propagate",
        "--m",
        "1.5",
        "--eps",
        "0.5",
        "--t",
        "-2..3",
        "--x",
        "-4..4",
    ];
    let q = csv(&run(&base));
    let d = csv(&run(&[&base[..], &["--method", "dp"]].concat()));
    assert_eq!(q.len(), 11 * 17);
    for (a, b) in q.iter().zip(&d) {
        assert_eq!(a[..2], b[..2]);
        for k in 2..7 {
            assert!((num(&a[k]) - num(&b[k])).abs() <= 1e-8, "{a:?} vs {b:?}");
        }
        assert_eq!(b[7], "dp");
    }
    // t-major, x-minor
    assert_eq!(num(&q[0][1]), -2.0);
    assert_eq!(num(&q[1][0]), -3.5);
}

#[test]
fn empty_range_is_a_usage_error() {
    let out = run(&["propagate", "--t", "0", "--x", "3..-3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("range"));
    assert_eq!(run(&["propagate", "--t", "0"]).status.code(), Some(2));
    assert_eq!(
        run(&["propagate", "--m", "-1", "--t", "0", "--x", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let args = [
        "propagate",
        "--m",
        "0.7",
        "--eps",
        "0.25",
        "--t",
        "0..1",
        "--x",
        "-2..2",
        "--format",
        "json",
    ];
    let one = run(&args);
    let two = run(&[&args[..], &["--threads", "1"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, two.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    assert!(text.ends_with("]\n") && !text.contains('\r'));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5 * 17);
    assert_eq!(v[0]["method"], "quadrature");
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("anticheckers-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("row.csv");
    let out = run(&[
        "propagate",
        "--t",
        "1",
        "--x",
        "-1..1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success() && out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("x,t,re_A1,im_A1,re_A2,im_A2,Q,method\n"));
    assert_eq!(text.lines().count(), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn figure_four_samples_component_one_on_the_even_grid() {
    let rows = csv(&run(&["figure", "fig4", "--x-max", "0.6"]));
    assert_eq!(rows.len(), 21);
    for r in &rows {
        let steps = num(&r[0]) / 0.06;
        assert!((steps - steps.round()).abs() < 1e-9, "{r:?}");
        assert!((num(&r[1]) - num(&r[2])).abs() < 0.02, "{r:?}");
    }
}

#[test]
fn figure_one_columns_and_massless_continuum() {
    let out = run(&["figure", "fig1", "--x-max", "0.3"]);
    let header = String::from_utf8_lossy(&out.stdout)
        .lines()
        .next()
        .unwrap()
        .to_string();
    assert_eq!(header, "x,lattice_value,continuum_value,asymptotic_value");
    let rows = csv(&out);
    assert!(rows.iter().all(|r| r[3].is_empty()));
    let rows = csv(&run(&[
        "figure", "fig1", "--m", "0", "--eps", "0.05", "--t", "1", "--x-max", "0.5",
    ]));
    for r in rows {
        let want = continuum_density(&ContinuumPoint::new(num(&r[0]), 1.0, 0.0)).unwrap();
        assert_eq!(num(&r[2]), want);
    }
}

#[test]
fn smallest_torus_enumeration() {
    let rows = csv(&run(&[
        "torus",
        "--T",
        "1",
        "--m",
        "1",
        "--eps",
        "1",
        "--delta",
        "0.5",
        "--enumerate",
    ]));
    assert_eq!(rows.len(), 9);
    let n = (1.0f64 - 0.25).sqrt() * 2f64.sqrt();
    assert_eq!(rows[0][0], "{}");
    assert_eq!(rows[3][0], "{aca}");
    assert!((num(&rows[3][4]) + 1.0 / n).abs() < 1e-12);
    assert!((num(&rows[1][5]) + 0.5 / n).abs() < 1e-12);
    // names containing commas are quoted, which shifts the naive split
    assert!(rows[8][0].starts_with("\"{aca"));
    assert_eq!(
        run(&["torus", "--T", "3", "--enumerate"]).status.code(),
        Some(2)
    );
}

#[test]
fn torus_arrows_and_partition_function() {
    let rows = csv(&run(&["torus", "--T", "2", "--m", "1.2", "--delta", "0.4"]));
    assert_eq!(rows[0][0], "Z");
    assert_eq!(rows.len(), 1 + 16);
    let a0 = rows
        .iter()
        .find(|r| r[0] == "arrow" && r[2] == "0" && r[3] == "0" && r[4] == "2")
        .unwrap();
    assert!((num(&a0[5]) - 0.5).abs() < 1e-12 && num(&a0[6]).abs() < 1e-12);
    let large = csv(&run(&["torus", "--T", "9", "--delta", "0.2"]));
    assert_eq!(large.len(), 1 + 4 * 81);
    assert_eq!(large[1][1], "b2");
}

#[test]
fn torus_limit_converges_to_the_unit_values() {
    let rows = csv(&run(&["torus", "--limit", "--x", "0", "--t", "0"]));
    let last = rows.last().unwrap();
    assert_eq!(num(&last[0]), 0.0);
    assert!((num(&last[3]) - gauss_constant()).abs() < 1e-5);
    assert!((num(&last[4]) - 1.0).abs() < 1e-5);
    assert_eq!(rows.len(), 7);
}

#[test]
fn order_of_limits_is_refused() {
    let out = run(&["torus", "--T", "4", "--limit"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("order of limits"));
    let out = run(&[
        "torus", "--limit", "--sizes", "101,201", "--deltas", "0.001",
    ]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn default_verification_passes() {
    let out = run(&["verify"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    for name in [
        "dirac-1",
        "charge-conservation",
        "table-2",
        "torus-huygens",
        "pass-or-loop",
        "perturbation-slope",
    ] {
        assert!(names.contains(&name), "{name} missing from {names:?}");
    }
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["value"].is_number()));
}

#[test]
fn only_filters_the_suite() {
    let out = run(&["verify", "--only", "charge-conservation"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
    assert_eq!(v["checks"][0]["name"], "charge-conservation");
    assert_eq!(
        run(&["verify", "--only", "no-such-check"]).status.code(),
        Some(2)
    );
}

#[test]
fn injected_sign_flip_is_detected() {
    let out = run(&[
        "verify",
        "--inject-fault",
        "odd-turn-sign",
        "--only",
        "table-2",
        "--only",
        "two-electron-conservation",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks[0]["name"], "table-2");
    assert_eq!(checks[0]["pass"], false);
    // the fault only touches the torus
    assert_eq!(checks[1]["pass"], true);
}

#[test]
fn tolerance_from_the_environment() {
    let out = run_env(
        &["verify", "--only", "three-term-1"],
        "ANTICHECKERS_TOL",
        "1e-30",
    );
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tolerance"], 1e-30);
    assert_eq!(
        run_env(&["verify", "--only", "table-2"], "ANTICHECKERS_TOL", "lots")
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_as_csv() {
    let out = run(&["verify", "--only", "table-2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "name,kind,value,limit,pass,note"
    );
    assert!(text.lines().nth(1).unwrap().starts_with("table-2,max,"));
}
