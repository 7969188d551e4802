//! CLI behavior: exit codes, config errors, custom input files, and
//! round-trips of emitted artifacts.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use floodcity::genome::parse_component_grid;

fn floodcity_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_floodcity"))
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = tempfile::Builder::new()
        .prefix(&format!("floodcity-cli-{tag}-"))
        .tempdir()
        .unwrap()
        .keep();
    dir
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn missing_config_file_exits_1() {
    let output = floodcity_bin()
        .args(["run", "--config", "/nonexistent/config.json"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 1);
    assert!(String::from_utf8_lossy(&output.stderr).contains("cannot read config"));
}

#[test]
fn missing_grid_file_exits_1() {
    let dir = temp_dir("missing-grid");
    let config = dir.join("config.json");
    fs::write(&config, r#"{"grid": {"file": "/nonexistent/grid.txt"}}"#).unwrap();
    let output = floodcity_bin()
        .args(["run", "--config", config.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 1);
    assert!(String::from_utf8_lossy(&output.stderr).contains("cannot read grid"));
}

#[test]
fn unknown_scheme_exits_1() {
    let output = floodcity_bin()
        .args(["run", "--scheme", "bogus"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 1);
    assert!(String::from_utf8_lossy(&output.stderr).contains("unknown built-in scheme"));
}

#[test]
fn malformed_config_json_exits_1() {
    let dir = temp_dir("bad-json");
    let config = dir.join("config.json");
    fs::write(&config, r#"{"ga": {"population_size": "many"}}"#).unwrap();
    let output = floodcity_bin()
        .args(["run", "--config", config.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 1);
}

#[test]
fn unknown_flag_exits_1() {
    let output = floodcity_bin().args(["run", "--bogus-flag"]).output().unwrap();
    assert_eq!(exit_code(&output), 1);
}

#[test]
fn help_exits_0() {
    let output = floodcity_bin().arg("--help").output().unwrap();
    assert_eq!(exit_code(&output), 0);
    assert!(String::from_utf8_lossy(&output.stdout).contains("run"));
}

#[test]
fn oracle_flat_too_large_exits_2() {
    let output = floodcity_bin().args(["oracle", "--mode", "flat"]).output().unwrap();
    assert_eq!(exit_code(&output), 2);
    assert!(String::from_utf8_lossy(&output.stderr).contains("too large"));
}

#[test]
fn oracle_reduced_flat_with_ga_check() {
    let dir = temp_dir("oracle-ga");
    let grid_path = dir.join("grid.txt");
    fs::write(&grid_path, "1/2 1\n1 2\n").unwrap();
    let config = dir.join("config.json");
    fs::write(
        &config,
        format!(
            r#"{{
                "grid": {{"file": {grid:?}}},
                "oracle": {{"active": ["urbanization", "mortality"], "mode": "flat"}},
                "ga": {{"population_size": 40, "generations": 60}},
                "seeds": [4]
            }}"#,
            grid = grid_path
        ),
    )
    .unwrap();
    let output = floodcity_bin()
        .args(["oracle", "--config", config.to_str().unwrap(), "--check-ga"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("oracle (flat)"));
    assert!(stdout.contains("ga check: seed 4"));
    assert!(stdout.contains("gap"));
}

#[test]
fn oracle_separable_matches_flat_on_reduced_problem() {
    let dir = temp_dir("oracle-modes");
    let grid_path = dir.join("grid.txt");
    fs::write(&grid_path, "1/2 1\n1 2\n").unwrap();
    let config = dir.join("config.json");
    fs::write(
        &config,
        format!(
            r#"{{"grid": {{"file": {grid:?}}}, "oracle": {{"active": ["poverty", "structural"]}}}}"#,
            grid = grid_path
        ),
    )
    .unwrap();
    let fitness_of = |mode: &str| {
        let output = floodcity_bin()
            .args(["oracle", "--config", config.to_str().unwrap(), "--mode", mode])
            .output()
            .unwrap();
        assert_eq!(exit_code(&output), 0);
        let stdout = String::from_utf8(output.stdout).unwrap();
        stdout
            .lines()
            .find(|l| l.starts_with("optimum fitness:"))
            .unwrap()
            .to_string()
    };
    assert_eq!(fitness_of("separable"), fitness_of("flat"));
}

#[test]
fn run_grid_files_round_trip() {
    let dir = temp_dir("roundtrip");
    let config = dir.join("config.json");
    fs::write(&config, r#"{"ga": {"population_size": 30, "generations": 40}}"#).unwrap();
    let out = dir.join("out");
    let output = floodcity_bin()
        .args(["run", "--config", config.to_str().unwrap()])
        .args(["--seed", "2", "--out", out.to_str().unwrap(), "--no-timestamp"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    let grids = out.join("aspect-seed2/grids");
    let mut count = 0;
    for entry in fs::read_dir(&grids).unwrap() {
        let text = fs::read_to_string(entry.unwrap().path()).unwrap();
        parse_component_grid(&text, 6, 6).expect("emitted grid parses back");
        count += 1;
    }
    assert_eq!(count, 7);
}

#[test]
fn custom_grid_scheme_and_lambda_zero() {
    let dir = temp_dir("custom");
    let grid_path = dir.join("grid.txt");
    fs::write(&grid_path, "1/2 1\n1 2\n").unwrap();
    let scheme_path = dir.join("scheme.json");
    // unnormalized weights are normalized on load
    fs::write(
        &scheme_path,
        r#"{"name": "custom", "weights": [2, 2, 2, 2, 2, 2, 2]}"#,
    )
    .unwrap();
    let config = dir.join("config.json");
    fs::write(
        &config,
        format!(
            r#"{{
                "grid": {{"file": {grid:?}}},
                "scheme": {{"file": {scheme:?}}},
                "cost": {{"lambda": 0.0}},
                "ga": {{"population_size": 60, "generations": 150}},
                "seeds": [1],
                "out_dir": {out:?}
            }}"#,
            grid = grid_path,
            scheme = scheme_path,
            out = dir.join("out")
        ),
    )
    .unwrap();
    let output = floodcity_bin()
        .args(["run", "--config", config.to_str().unwrap(), "--no-timestamp"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    let report: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(dir.join("out/custom-seed1/report.json")).unwrap(),
    )
    .unwrap();
    // lambda 0 reduces the objective to pure vulnerability, whose optimum
    // is the all-zero city
    assert_eq!(report["best_fitness"], report["vulnerability_term"]);
    assert_eq!(report["best_fitness"].as_f64().unwrap(), 0.0);
    assert_eq!(report["grid"]["rows"], 2);
    assert_eq!(report["scheme"], "custom");
    let w = report["scheme_weights"][0].as_f64().unwrap();
    assert!((w - 1.0 / 7.0).abs() < 1e-12);
}

#[test]
fn scheme_from_rating_table_file() {
    let dir = temp_dir("table-scheme");
    let table_path = dir.join("table.json");
    fs::write(
        &table_path,
        r#"{
            "name": "tabled",
            "aspect_weights": [0.2, 0.2, 0.2, 0.2, 0.1, 0.1],
            "ratings": [
                [9, 7, 5, 4, 4, 5],
                [5, 4, 3, 6, 4, 9],
                [4, 9, 7, 5, 6, 5],
                [5, 6, 6, 4, 3, 5],
                [5, 4, 3, 5, 3, 10],
                [5, 4, 3, 3, 2, 6],
                [2, 3, 2, 4, 3, 5]
            ]
        }"#,
    )
    .unwrap();
    let config = dir.join("config.json");
    fs::write(
        &config,
        format!(
            r#"{{"scheme": {{"rating_table": {table:?}}}, "ga": {{"population_size": 20, "generations": 20}}, "out_dir": {out:?}}}"#,
            table = table_path,
            out = dir.join("out")
        ),
    )
    .unwrap();
    let output = floodcity_bin()
        .args(["run", "--config", config.to_str().unwrap(), "--seed", "0", "--no-timestamp"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    let report: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(dir.join("out/tabled-seed0/report.json")).unwrap(),
    )
    .unwrap();
    // derived totals sum to 33.4; literacy weight = 4.9/33.4
    let w = report["scheme_weights"][1].as_f64().unwrap();
    assert!((w - 4.9 / 33.4).abs() < 1e-9);
}

#[test]
fn derive_weights_rejects_out_of_range_rating() {
    let dir = temp_dir("bad-rating");
    let table_path = dir.join("table.json");
    fs::write(
        &table_path,
        r#"{"ratings": [
            [11, 7, 5, 4, 4, 5],
            [5, 4, 3, 6, 4, 9],
            [4, 9, 7, 5, 6, 5],
            [5, 6, 6, 4, 3, 5],
            [5, 4, 3, 5, 3, 10],
            [5, 4, 3, 3, 2, 6],
            [2, 3, 2, 4, 3, 5]
        ]}"#,
    )
    .unwrap();
    let output = floodcity_bin()
        .args(["derive-weights", "--table", table_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 1);
    assert!(String::from_utf8_lossy(&output.stderr).contains("out of range"));
}

#[test]
fn derive_weights_uniform_table_gives_sevenths() {
    let dir = temp_dir("uniform-table");
    let table_path = dir.join("table.json");
    fs::write(
        &table_path,
        r#"{"ratings": [
            [5, 5, 5, 5, 5, 5],
            [5, 5, 5, 5, 5, 5],
            [5, 5, 5, 5, 5, 5],
            [5, 5, 5, 5, 5, 5],
            [5, 5, 5, 5, 5, 5],
            [5, 5, 5, 5, 5, 5],
            [5, 5, 5, 5, 5, 5]
        ]}"#,
    )
    .unwrap();
    let output = floodcity_bin()
        .args(["derive-weights", "--table", table_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0);
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert_eq!(stdout.matches("0.142857").count(), 7);
    assert!(!stdout.contains("MISMATCH"));
}

#[test]
fn compare_rejects_different_grids() {
    let dir = temp_dir("grid-clash");
    let grid_path = dir.join("grid.txt");
    fs::write(&grid_path, "1 1\n1 1\n").unwrap();
    let config_b = dir.join("b.json");
    fs::write(
        &config_b,
        format!(r#"{{"grid": {{"file": {grid:?}}}}}"#, grid = grid_path),
    )
    .unwrap();
    let output = floodcity_bin()
        .args(["compare", "--config-b", config_b.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 1);
    assert!(String::from_utf8_lossy(&output.stderr).contains("same hazard grid"));
}

#[test]
fn compare_saved_mode_requires_both_dirs() {
    let output = floodcity_bin()
        .args(["compare", "--result-a", "/tmp/whatever"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 1);
}

#[test]
fn run_two_seeds_differ_only_by_seed() {
    let dir = temp_dir("two-seeds");
    let out = dir.join("out");
    let output = floodcity_bin()
        .args(["run", "--seed", "1", "--seed", "2"])
        .args(["--out", out.to_str().unwrap(), "--no-timestamp"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    let a: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("aspect-seed1/report.json")).unwrap())
            .unwrap();
    let b: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("aspect-seed2/report.json")).unwrap())
            .unwrap();
    assert_eq!(a["seed"], 1);
    assert_eq!(b["seed"], 2);
    assert_eq!(a["ga"]["population_size"], b["ga"]["population_size"]);
    assert_eq!(a["grid"], b["grid"]);
    assert_ne!(a["history"], b["history"]);
}
