//! Determinism and schema checks of the benchmark harness and its CLI.

mod support;

use std::path::Path;
use std::process::Command;

use framerecon::bench::{emit, run_benchmark, BenchConfig, MRuleConfig, OutputFormat, CSV_HEADER};
use framerecon::solvers::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use framerecon::Method;

fn tiny_config() -> BenchConfig {
    BenchConfig {
        function: "gaussian".into(),
        n_list: vec![8, 12],
        m_rule: MRuleConfig::Factor { factor: 1.4 },
        methods: vec![Method::New, Method::Fourier],
        seeds: vec![1, 2, 3],
        jitter: framerecon::KADEC_BOUND,
        quadrature: None,
        cg_tol: DEFAULT_TOL,
        max_iter: DEFAULT_MAX_ITER,
        grid_size: 128,
    }
}

/// Drops the wall-time column; it is the only nondeterministic field.
fn strip_timing(csv: &str) -> String {
    csv.lines()
        .map(|line| {
            let cols: Vec<&str> = line.split(',').collect();
            cols[..cols.len().saturating_sub(1)].join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn repeated_runs_are_numerically_identical() {
    let config = tiny_config();
    let dir = std::env::temp_dir().join("framerecon-bench-det");
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    emit(&run_benchmark(&config).unwrap(), OutputFormat::Csv, &a).unwrap();
    emit(&run_benchmark(&config).unwrap(), OutputFormat::Csv, &b).unwrap();
    assert_eq!(strip_timing(&read(&a)), strip_timing(&read(&b)));
    assert_eq!(
        strip_timing(&read(&dir.join("a.agg.csv"))),
        strip_timing(&read(&dir.join("b.agg.csv")))
    );
    // Pointwise dumps have no timing column at all.
    assert_eq!(
        read(&dir.join("a.pointwise.new.n8.csv")),
        read(&dir.join("b.pointwise.new.n8.csv"))
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn csv_schema_and_row_counts() {
    let config = tiny_config();
    let table = run_benchmark(&config).unwrap();
    let dir = std::env::temp_dir().join("framerecon-bench-schema");
    let path = dir.join("t.csv");
    emit(&table, OutputFormat::Csv, &path).unwrap();

    let body = read(&path);
    let mut lines = body.lines();
    assert_eq!(lines.next().unwrap(), CSV_HEADER);
    assert_eq!(body.lines().count(), 1 + 2 * 2 * 3);

    let agg = read(&dir.join("t.agg.csv"));
    assert_eq!(agg.lines().count(), 1 + 4);
    for a in &table.aggregates {
        assert!(dir
            .join(format!("t.pointwise.{}.n{}.csv", a.method, a.n))
            .exists());
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn json_document_carries_config_provenance_rows_and_aggregates() {
    let config = tiny_config();
    let table = run_benchmark(&config).unwrap();
    let dir = std::env::temp_dir().join("framerecon-bench-json");
    let path = dir.join("t.json");
    emit(&table, OutputFormat::Json, &path).unwrap();

    let doc: serde_json::Value = serde_json::from_str(&read(&path)).unwrap();
    assert_eq!(doc["config"]["function"], "gaussian");
    assert_eq!(
        doc["provenance"]["config_hash"].as_str().unwrap(),
        config.semantic_hash()
    );
    assert_eq!(doc["rows"].as_array().unwrap().len(), 12);
    assert_eq!(doc["aggregates"].as_array().unwrap().len(), 4);
    assert!(doc["rows"][0]["l2_error"].is_number());
    std::fs::remove_dir_all(&dir).ok();
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_framerecon"))
}

#[test]
fn cli_reconstruct_prints_a_result_row() {
    let out = cli()
        .args([
            "reconstruct",
            "--method",
            "fourier",
            "--function",
            "gaussian",
            "--n",
            "8",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.starts_with(CSV_HEADER));
    assert!(stdout.lines().nth(1).unwrap().starts_with("fourier,8,8,"));
}

#[test]
fn cli_bench_runs_a_config_file_and_writes_tables() {
    let dir = std::env::temp_dir().join("framerecon-cli-bench");
    std::fs::create_dir_all(&dir).unwrap();
    let config_path = dir.join("config.json");
    std::fs::write(
        &config_path,
        serde_json::to_string(&tiny_config()).unwrap(),
    )
    .unwrap();

    let out = cli()
        .args([
            "bench",
            "--config",
            config_path.to_str().unwrap(),
            "--name",
            "t",
            "--out",
            dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.join("t.csv").exists());
    assert!(dir.join("t.agg.csv").exists());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn cli_output_is_independent_of_the_worker_count() {
    let dir = std::env::temp_dir().join("framerecon-cli-workers");
    std::fs::create_dir_all(&dir).unwrap();
    let config_path = dir.join("config.json");
    std::fs::write(
        &config_path,
        serde_json::to_string(&tiny_config()).unwrap(),
    )
    .unwrap();

    for (threads, name) in [("1", "w1"), ("2", "w2")] {
        let out = cli()
            .env("RAYON_NUM_THREADS", threads)
            .args([
                "bench",
                "--config",
                config_path.to_str().unwrap(),
                "--name",
                name,
                "--out",
                dir.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(
        strip_timing(&read(&dir.join("w1.csv"))),
        strip_timing(&read(&dir.join("w2.csv")))
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn cli_rejects_bad_configuration_with_exit_code_two() {
    let out = cli()
        .args(["bench", "--example", "9"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = cli()
        .args(["reconstruct", "--function", "not-a-function"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = cli()
        .args(["reconstruct", "--method", "not-a-method"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cli_reports_partial_row_failures_with_exit_code_three() {
    // A fixed quadrature that resolves n = 8 but not n = 80: the sweep
    // completes, failed rows are recorded, exit code is 3.
    let dir = std::env::temp_dir().join("framerecon-cli-partial");
    std::fs::create_dir_all(&dir).unwrap();
    let mut config = tiny_config();
    config.n_list = vec![8, 80];
    config.methods = vec![Method::New];
    config.seeds = vec![1];
    config.quadrature = Some(framerecon::bench::QuadSpec {
        panels: 10,
        order: 24,
    });
    let config_path = dir.join("config.json");
    std::fs::write(&config_path, serde_json::to_string(&config).unwrap()).unwrap();

    let out = cli()
        .args([
            "bench",
            "--config",
            config_path.to_str().unwrap(),
            "--name",
            "partial",
            "--out",
            dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let body = read(&dir.join("partial.csv"));
    assert!(body.lines().any(|l| l.starts_with("new,8,") && !l.contains("NaN")));
    assert!(body.lines().any(|l| l.starts_with("new,80,") && l.contains("NaN")));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn cli_localization_and_bounds_report_diagnostics() {
    let out = cli()
        .args(["localization", "--half-width", "32", "--seed", "7"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("s=") && stdout.contains("saturated=false"));

    let out = cli()
        .args(["bounds", "--probe", "32", "--seed", "7"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("A=") && stdout.contains("B="));
}

#[test]
fn config_hash_ignores_non_semantic_knobs_only() {
    let a = tiny_config();
    let mut b = tiny_config();
    b.grid_size = 256;
    assert_ne!(a.semantic_hash(), b.semantic_hash());
    let mut c = tiny_config();
    c.methods = vec![Method::Fourier, Method::New];
    assert_ne!(a.semantic_hash(), c.semantic_hash());
    assert_eq!(a.semantic_hash(), tiny_config().semantic_hash());
}
