use std::fs;
use std::process::{Command, Output};

use vqe_de::bench::{read_records, TrialRecord};
use vqe_de::cli::RunConfig;

fn vqe_de(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vqe-de"))
        .args(args)
        .env_remove("VQE_DE_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn run_prints_a_record() {
    let o = vqe_de(&[
        "run",
        "--n",
        "3",
        "--layers",
        "1",
        "--optimizer",
        "de",
        "--crossover",
        "exp",
        "--seed",
        "7",
    ]);
    let record: TrialRecord = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!((record.n, record.layers, record.seed), (3, 1, 7));
    assert!(record.delta <= 1e-2);
    assert!((record.delta - (1.0 - (record.final_energy / -2.0).abs())).abs() < 1e-12);
    let expected = if record.converged { 0 } else { 1 };
    assert_eq!(o.status.code(), Some(expected));
}

#[test]
fn run_exit_zero_on_converged_success() {
    let o = vqe_de(&["run", "--n", "3", "--optimizer", "lbfgs", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn invalid_input_exits_two() {
    let o = vqe_de(&["run", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("n must be ≥ 2"), "{}", stderr(&o));

    let o = vqe_de(&["run", "--optimizer", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bogus"));

    let o = vqe_de(&["spectrum", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"layers": 1, "populaton_multiplier": 2}"#).unwrap();
    let o = vqe_de(&["run", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("populaton_multiplier"),
        "{}",
        stderr(&o)
    );

    fs::write(&path, r#"{"n": []}"#).unwrap();
    let o = vqe_de(&["sweep", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("records.jsonl");
    let o = vqe_de(&[
        "sweep",
        "--n",
        "3",
        "--optimizer",
        "lbfgs",
        "--n-opt",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn print_config_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let first = vqe_de(&[
        "sweep",
        "--print-config",
        "--n",
        "3-5",
        "--optimizer",
        "hybrid",
        "--crossover",
        "exp",
        "--pop-mult",
        "2",
        "--maxiter",
        "500",
        "--threshold",
        "0.001",
        "--jobs",
        "3",
    ]);
    assert_eq!(first.status.code(), Some(0));
    let config = RunConfig::from_json(&stdout(&first)).unwrap();
    assert_eq!(config.n, vec![3, 4, 5]);
    assert_eq!(config.de.max_iterations, 500);
    assert_eq!(config.jobs, 3);

    let path = dir.path().join("c.json");
    fs::write(&path, stdout(&first)).unwrap();
    let second = vqe_de(&[
        "sweep",
        "--print-config",
        "--config",
        path.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&second), stdout(&first));
    assert_eq!(RunConfig::from_json(&stdout(&second)).unwrap(), config);
}

#[test]
fn jobs_default_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_vqe-de"))
        .args(["run", "--print-config"])
        .env("VQE_DE_JOBS", "5")
        .output()
        .unwrap();
    assert_eq!(RunConfig::from_json(&stdout(&o)).unwrap().jobs, 5);
}

#[test]
fn spectrum_subcommand() {
    let o = vqe_de(&["spectrum", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "energy,degeneracy\n-1,2\n1,2\n");
}

#[test]
fn landscape_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grid.csv");
    let o = vqe_de(&[
        "landscape",
        "--n",
        "4",
        "--free",
        "0,1",
        "--seed",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta_i,theta_j,energy"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 101 * 101);
    assert!(rows
        .iter()
        .all(|r| r[2] >= -3.0 - 1e-9 && r[2] <= 3.0 + 1e-9));

    let o = vqe_de(&["landscape", "--n", "4", "--free", "3,3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_resumes_missing_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let records = dir.path().join("r.jsonl");
    let summary = dir.path().join("s.csv");
    let args = |n_opt: &'static str| {
        vec![
            "sweep".to_string(),
            "--n".into(),
            "3,4".into(),
            "--optimizer".into(),
            "lbfgs".into(),
            "--n-opt".into(),
            n_opt.into(),
            "--out".into(),
            records.to_str().unwrap().into(),
            "--summary".into(),
            summary.to_str().unwrap().into(),
        ]
    };
    let run = |a: Vec<String>| {
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        vqe_de(&refs)
    };

    let full = run(args("4"));
    assert_eq!(full.status.code(), Some(0));
    let reference = read_records(&records).unwrap();
    assert_eq!(reference.len(), 8);
    assert!(stdout(&full).starts_with("n,layers,optimizer,n_opt,success_count,success_rate,ci95\n"));
    assert_eq!(fs::read_to_string(&summary).unwrap(), stdout(&full));

    // Simulate an interrupted run: three complete lines and a torn fourth.
    let text = fs::read_to_string(&records).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let kept = [lines[0], lines[5], lines[2]];
    let partial = format!("{}\n{}", kept.join("\n"), &lines[3][..20]);
    fs::write(&records, partial).unwrap();

    let resumed = run(args("4"));
    assert_eq!(resumed.status.code(), Some(0));
    let after = read_records(&records).unwrap();
    assert_eq!(after.len(), 8);
    // The surviving records were kept verbatim rather than rerun.
    for line in kept {
        let r: TrialRecord = serde_json::from_str(line).unwrap();
        assert!(after.iter().any(|a| a == &r));
    }
    let mut sorted = after.clone();
    sorted.sort_by_key(|r| (r.n, r.seed));
    for (a, b) in sorted.iter().zip(&reference) {
        assert!(a.same_outcome(b));
    }
}

#[test]
fn records_round_trip_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let o = vqe_de(&[
        "sweep",
        "--n",
        "4",
        "--optimizer",
        "spsa",
        "--n-opt",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    for (line, record) in text.lines().zip(read_records(&out).unwrap()) {
        assert_eq!(serde_json::to_string(&record).unwrap(), line);
    }
}
