use std::path::Path;
use std::process::Command;

use curveflow::experiment::{self, read_snapshots};
use curveflow::diagnostics;

fn curveflow() -> Command {
    Command::new(env!("CARGO_BIN_EXE_curveflow"))
}

#[test]
fn list_presets_names_every_clause() {
    let out = curveflow().arg("list-presets").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for p in experiment::list_presets() {
        assert!(text.contains(p.name), "{}", p.name);
    }
}

#[test]
fn preset_run_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let status = curveflow()
        .args(["preset", "circle-m3", "--N", "64", "--t-end", "0.05", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    for a in ["0.5", "1", "2"] {
        let sub = dir.path().join(format!("alpha-{a}"));
        for f in ["timeseries.csv", "snapshots.jsonl", "report.txt"] {
            assert!(sub.join(f).exists(), "{}", sub.join(f).display());
        }
    }
}

#[test]
fn unknown_preset_and_bad_config_exit_one() {
    let status = curveflow().args(["preset", "no-such"]).status().unwrap();
    assert_eq!(status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "preset = ap-h25\nflow.kind = XP\n").unwrap();
    let out = curveflow().args(["run", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":2:"));
}

fn write_cfg(dir: &Path, expected: &str) -> std::path::PathBuf {
    let cfg = dir.join("s.cfg");
    std::fs::write(
        &cfg,
        format!(
            "preset = ap-h25\ngrid.N = 128\nctl.t_end = 0.2\nexpected = {expected}\nout_dir = {}\n",
            dir.join("out").display()
        ),
    )
    .unwrap();
    cfg
}

#[test]
fn config_run_is_deterministic_and_snapshots_reproduce() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "TimeLimit");
    let run = || {
        let status = curveflow().args(["run", "--config"]).arg(&cfg).status().unwrap();
        assert_eq!(status.code(), Some(0));
        std::fs::read(dir.path().join("out/timeseries.csv")).unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(first, second);

    let recs = read_snapshots(dir.path().join("out/snapshots.jsonl")).unwrap();
    let csv = String::from_utf8(first).unwrap();
    let rows: Vec<Vec<f64>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), recs.len());
    for (rec, row) in recs.iter().zip(&rows) {
        let d = diagnostics::snapshot(&rec.to_state().unwrap(), &rec.params().unwrap()).unwrap();
        assert_eq!(rec.t, row[0]);
        for (x, y) in [(d.length, row[2]), (d.area, row[3]), (d.kappa_max, row[6]), (d.energy, row[7])] {
            assert!((x - y).abs() <= 1e-12 * y.abs().max(1.0), "{x} vs {y}");
        }
    }
}

#[test]
fn verdict_mismatch_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "BlowUp");
    let status = curveflow().args(["run", "--config"]).arg(&cfg).status().unwrap();
    assert_eq!(status.code(), Some(2));
}
