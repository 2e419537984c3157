use std::process::{Command, Output};

use ialab_cli::config::{validate_config_str, ConfigError};
use ialab_cli::{run_experiment, RunError, EXPERIMENTS};

fn ialab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ialab")).args(args).output().unwrap()
}

fn temp_path(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("ialab-cli-{}-{name}", std::process::id()))
}

#[test]
fn list_names_every_experiment() {
    let out = ialab(&["list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for e in EXPERIMENTS {
        assert!(text.contains(e.name), "{}", e.name);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(ialab(&["no-such-experiment"]).status.code(), Some(1));
    assert_eq!(ialab(&["ngjv-delay"]).status.code(), Some(1));
    assert_eq!(ialab(&["ngjv-delay", "--seed", "x"]).status.code(), Some(1));
    assert_eq!(ialab(&[]).status.code(), Some(1));

    let cfg = temp_path("bad.cfg");
    std::fs::write(&cfg, "[ngjv-delay]\nseed = 1\nq = 2\ntrials = 10\n").unwrap();
    // q = 2 admits no usable NGJV start: a runtime failure
    assert_eq!(ialab(&["ngjv-delay", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&cfg, "[pareto]\nn = 6\n").unwrap();
    assert_eq!(ialab(&["ngjv-delay", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
    std::fs::remove_file(&cfg).unwrap();
}

#[test]
fn config_file_and_flags() {
    let cfg = temp_path("sweep.cfg");
    let out = temp_path("sweep.json");
    std::fs::write(&cfg, "# grid\n[outage-sweep]\nseed = 4\ntrials = 500\nrates = [0.5, 2]\nalpha = 4\n").unwrap();
    let status = ialab(&["outage-sweep", "--config", cfg.to_str().unwrap(), "--format", "json", "--seed", "9", "--out", out.to_str().unwrap()]);
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    assert!(status.stdout.is_empty());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["metadata"]["seed"], "9");
    assert_eq!(json["metadata"]["param.alpha"], "4");
    assert_eq!(json["rows"].as_array().unwrap().len(), 2);
    for row in json["rows"].as_array().unwrap() {
        assert_eq!(row["inside"], true);
    }
    std::fs::remove_file(&cfg).unwrap();
    std::fs::remove_file(&out).unwrap();
}

#[test]
fn csv_shape() {
    let out = ialab(&["scheme-table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body[0], "n,k,scheme,exponent,optimal_count,lower_bound,upper_bound");
    assert_eq!(body.len(), 28);
    assert!(text.contains("# experiment = scheme-table"));
}

#[test]
fn every_error_returned_at_once() {
    let errs = validate_config_str("[discovery]\nn = eight\nslots = 12\nslots = 13\nfoo = 1\n", None, false).unwrap_err();
    assert!(errs.iter().any(|e| matches!(e, ConfigError::TypeMismatch { key, .. } if key == "n")));
    assert!(errs.contains(&ConfigError::DuplicateKey("slots".into())));
    assert!(errs.contains(&ConfigError::UnknownKey("foo".into())));
    assert!(errs.contains(&ConfigError::MissingSeed));
}

#[test]
fn trials_key_rejected_for_exact_experiments() {
    let errs = validate_config_str("[gt-bounds]\ntrials = 5\n", None, false).unwrap_err();
    assert_eq!(errs, vec![ConfigError::UnknownKey("trials".into())]);
}

#[test]
fn param_errors_map_to_exit_one() {
    let cfg = validate_config_str("[matching-bound]\nseed = 1\nks = [6]\ndeltas = [0.8, 0.9]\n", None, false).unwrap();
    let err = run_experiment(&cfg).unwrap_err();
    assert!(matches!(err, RunError::Param(_)));
    assert_eq!(err.exit_code(), 1);
}

#[test]
fn exact_experiments_run_with_defaults() {
    for e in EXPERIMENTS.iter().filter(|e| !e.stochastic && e.exclusive.is_empty()) {
        let cfg = validate_config_str(&format!("[{}]\n", e.name), None, false).unwrap();
        let t = run_experiment(&cfg).unwrap();
        assert!(!t.rows().is_empty(), "{}", e.name);
    }
}
