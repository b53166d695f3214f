//! End-to-end tests of the `radinfo` binary and the run configuration API:
//! output schema, determinism, and exit codes.

use radinfo::cli::{self, Experiment, ExperimentConfig, OutputFormat};
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_radinfo"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("radinfo-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn lipschitz_csv_reports_exact_first_moments() {
    // d=1, q=1: the exact_value column must be 1/(2(n+1)) and the estimate
    // must sit within 3 standard errors of it
    let path = tmp("lip_exact.csv");
    let config = ExperimentConfig {
        experiment: Experiment::Lipschitz {
            d: 1,
            q: 1.0,
            n_grid: (1..=50).collect(),
        },
        master_seed: 7,
        trials: 20_000,
        output_path: path.clone(),
        output_format: OutputFormat::Csv,
        fit: None,
    };
    cli::run(&config).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "experiment,n,d,p,q,s,alpha,beta,m,trials,seed,estimate,std_error,\
         exact_value,theory_rate,ratio"
    );
    let mut checked = 0;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        if cells[0] != "lipschitz" {
            continue;
        }
        let n: f64 = cells[1].parse().unwrap();
        let estimate: f64 = cells[11].parse().unwrap();
        let se: f64 = cells[12].parse().unwrap();
        let exact: f64 = cells[13].parse().unwrap();
        assert!(
            (exact - 1.0 / (2.0 * (n + 1.0))).abs() < 1e-15,
            "bad exact value at n={n}"
        );
        assert!(
            (estimate - exact).abs() <= 3.0 * se,
            "estimate off at n={n}: {estimate} vs {exact}"
        );
        checked += 1;
    }
    assert_eq!(checked, 50);
}

#[test]
fn binary_reruns_are_byte_identical() {
    let a = tmp("bin_a.csv");
    let b = tmp("bin_b.csv");
    for path in [&a, &b] {
        let status = bin()
            .args([
                "coupon",
                "--ell",
                "2..6",
                "--trials",
                "5000",
                "--seed",
                "42",
                "--output",
            ])
            .arg(path)
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn json_output_mirrors_the_schema() {
    let path = tmp("spacings.json");
    let status = bin()
        .args([
            "spacings", "--n", "1..4", "--s", "1,2", "--trials", "500", "--seed", "1",
            "--format", "json", "--output",
        ])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let rows = value.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    for row in rows {
        let obj = row.as_object().unwrap();
        for key in [
            "experiment",
            "n",
            "seed",
            "estimate",
            "std_error",
            "exact_value",
            "theory_rate",
            "ratio",
        ] {
            assert!(obj.contains_key(key), "missing {key}");
        }
        assert!(obj["estimate"].is_number());
        assert_eq!(obj["seed"].as_u64(), Some(1));
    }
}

#[test]
fn empty_grid_is_a_usage_error_without_output() {
    let path = tmp("never_written.csv");
    let _ = std::fs::remove_file(&path);
    let out = bin()
        .args(["spacings", "--n", "", "--output"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!path.exists(), "usage errors must not create output files");
}

#[test]
fn bad_exponent_is_a_usage_error() {
    let out = bin()
        .args(["sobolev1d", "--p", "0.5", "--q", "1", "--n", "1..4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // the degenerate surrogate pair is refused up front as well
    let out = bin()
        .args(["sobolev1d", "--p", "1", "--q", "inf", "--n", "1..4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn resource_guard_exits_3_with_partial_output() {
    let path = tmp("guarded.csv");
    let out = bin()
        .args([
            "lipschitz",
            "--d",
            "3",
            "--q",
            "2",
            "--n",
            "10,100000",
            "--trials",
            "100",
            "--seed",
            "3",
            "--output",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    // the small-n rows made it to disk before the guard tripped
    assert!(text.lines().count() > 1, "partial output missing:\n{text}");
}

#[test]
fn help_exits_zero() {
    let out = bin().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for sub in ["spacings", "coupon", "sobolev1d", "lipschitz", "sobolev-md", "l1", "ellipsoid"] {
        assert!(text.contains(sub), "help misses {sub}");
    }
}

#[test]
fn out_dir_env_sets_default_location() {
    let dir = tmp("outdir");
    std::fs::create_dir_all(&dir).unwrap();
    let out = bin()
        .env("RADINFO_OUT_DIR", &dir)
        .args(["spacings", "--n", "1..3", "--trials", "200", "--seed", "9"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.join("spacings.csv").exists());
}
