use std::process::{Command, Output};

use coherent_lab::fock::FockDim;
use coherent_lab::weyl::{number_coherent_state, WeylParameter};
use coherent_lab::Complex64;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coherent-lab"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows after the column header, split on commas.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn without_timestamp(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with("# timestamp:"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn state_round_trips_bit_for_bit() {
    let text = stdout(&run(&[
        "state", "--family", "h4", "--n", "1", "--alpha", "0.5", "--dim", "64",
    ]));
    let p = WeylParameter::new(Complex64::new(0.5, 0.0)).unwrap();
    let lib = number_coherent_state(1, &p, FockDim::new(64).unwrap())
        .unwrap()
        .coeffs;
    let table = rows(&text);
    assert!(table.len() > 10);
    for row in &table {
        let q: usize = row[0].parse().unwrap();
        let re: f64 = row[1].parse().unwrap();
        let im: f64 = row[2].parse().unwrap();
        assert_eq!(re.to_bits(), lib.get(q).re.to_bits(), "row {q}");
        assert_eq!(im.to_bits(), lib.get(q).im.to_bits(), "row {q}");
    }
    let last: f64 = table.last().unwrap()[3].parse().unwrap();
    assert!((last - 1.0).abs() < 1e-12);
}

#[test]
fn state_output_is_reproducible() {
    let args = [
        "state", "--family", "su11", "--k", "1.5", "--n", "2", "--tau", "0.7", "--phi", "1.1",
    ];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(without_timestamp(&a), without_timestamp(&b));
    assert!(a.contains("# timestamp:"));
}

#[test]
fn trivial_parameters_give_basis_state() {
    for args in [
        &["state", "--family", "h4", "--n", "0", "--alpha", "0"][..],
        &[
            "state", "--family", "su11", "--k", "1", "--n", "0", "--tau", "0",
        ][..],
    ] {
        let table = rows(&stdout(&run(args)));
        assert_eq!(table, vec![vec!["0", "1.0", "0.0", "1.0"]]);
    }
}

#[test]
fn landau_sample_is_symmetric_and_normalized() {
    let text = stdout(&run(&[
        "sample",
        "--family",
        "landau",
        "--n",
        "2",
        "--grid",
        "-8:8:1601",
    ]));
    let table = rows(&text);
    let values: Vec<f64> = table.iter().map(|r| r[1].parse().unwrap()).collect();
    let n = values.len();
    for i in 0..n / 2 {
        assert!((values[i] - values[n - 1 - i]).abs() < 1e-12);
    }
    let step = 16.0 / (n - 1) as f64;
    let mass: f64 = table
        .iter()
        .map(|r| r[3].parse::<f64>().unwrap())
        .sum::<f64>()
        * step;
    assert!((mass - 1.0).abs() < 1e-3, "{mass}");
}

#[test]
fn symmetric_sample_vanishes_at_origin_for_nonzero_m() {
    let text = stdout(&run(&[
        "sample",
        "--family",
        "symmetric",
        "--n",
        "1",
        "--m",
        "1",
        "--tau",
        "0.5",
        "--grid",
        "0:2:5",
    ]));
    let first = &rows(&text)[0];
    assert_eq!(first[0].parse::<f64>().unwrap(), 0.0);
    assert_eq!(first[4].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn contract_sweep_deficit_decreases() {
    let text = stdout(&run(&[
        "contract-sweep",
        "--grid",
        "0.05:0.2:4",
        "--dim",
        "96",
    ]));
    let deficits: Vec<f64> = rows(&text).iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(deficits.len(), 4);
    assert!(deficits.windows(2).all(|w| w[1] < w[0]));
    assert!(text.contains("# deficit_order:"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.csv");
    let out = run(&[
        "state",
        "--family",
        "h4",
        "--n",
        "0",
        "--alpha",
        "0.3,0.1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# generator: coherent-lab"));
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(names.len(), 1, "no temporary files left behind");
}

#[test]
fn verify_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "verify",
        "--only",
        "su11.closure",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["checks"][0]["name"], "su11.closure");
    assert!(!report["errata"].as_array().unwrap().is_empty());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["state", "--family", "nope"]).status.code(), Some(1));
    assert_eq!(
        run(&["state", "--family", "su11", "--k", "-1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["state", "--family", "h4", "--alpha", "9", "--dim", "32"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["verify", "--tolerance-scale", "10"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["verify", "--inject-fault", "no.such.check"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let fault = run(&[
        "verify",
        "--only",
        "su11.casimir",
        "--inject-fault",
        "su11.casimir",
    ]);
    assert_eq!(fault.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&fault.stderr).contains("su11/casimir"));
}
