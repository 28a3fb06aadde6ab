use std::path::{Path, PathBuf};
use std::process::Command;

use qmux_cli::{run, EXIT_LIMIT, EXIT_OK, EXIT_PARSE, EXIT_VERIFY_FAILED};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn qmux(args: &[&str]) -> qmux_cli::Outcome {
    run(std::iter::once("qmux").chain(args.iter().copied()))
}

fn json(out: &qmux_cli::Outcome) -> serde_json::Value {
    serde_json::from_str(&out.stdout).unwrap()
}

fn tmp(dir: &tempfile::TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qmux");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();

    let ok = status(&["optimize", &fixture("ivvx.qmux")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("best polarity: 11"));

    let bad = status(&["optimize", &fixture("malformed.qmux")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("3:14"));

    assert_eq!(status(&["optimize", "--bogus"]).status.code(), Some(2));
    assert_eq!(status(&["optimize", &fixture("9sym.pla"), "--family", "kqf"]).status.code(), Some(0));
}

#[test]
fn ivvx_both_families() {
    let f = fixture("ivvx.qmux");
    let v = json(&qmux(&["optimize", &f, "--format", "json"]));
    assert_eq!(v["search"]["best"]["polarity"], "11");
    assert_eq!(v["search"]["best"]["cost"], 2);
    assert_eq!(v["cost"]["total"], 2);
    assert_eq!(v["manifest"]["command"], "optimize");
    let k = json(&qmux(&["optimize", &f, "--family", "kqf", "--format", "json"]));
    assert!(k["search"]["best"]["cost"].as_u64().unwrap() <= 15);
    assert_eq!(k["search"]["polarities_evaluated"], 9);
}

#[test]
fn json_schema_is_stable() {
    let v = json(&qmux(&["optimize", &fixture("ivvx.qmux"), "--format", "json"]));
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["best", "cost", "manifest", "search"]);
    let search: Vec<&String> = v["search"].as_object().unwrap().keys().collect();
    for k in ["controls", "family", "mode", "original_cost", "best", "worst", "average_cost", "polarities_evaluated", "elapsed_secs"] {
        assert!(search.iter().any(|s| *s == k), "{k}");
    }
    let manifest: Vec<&String> = v["manifest"].as_object().unwrap().keys().collect();
    for k in ["command", "inputs", "config", "version", "seeds", "wall_time_secs"] {
        assert!(manifest.iter().any(|s| *s == k), "{k}");
    }
}

#[test]
fn malformed_input_reports_position() {
    let out = qmux(&["optimize", &fixture("malformed.qmux")]);
    assert_eq!(out.code, EXIT_PARSE);
    assert!(out.stderr.contains("3:14: unknown gate `W`"), "{}", out.stderr);
    assert_eq!(qmux(&["cost", "/no/such/file.qmux"]).code, EXIT_PARSE);
}

#[test]
fn size_limits_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = tmp(&dir, "m10.qmux");
    let gen = qmux(&["generate", "--controls", "10", "--pool", "nvv", "--out", path.to_str().unwrap()]);
    assert_eq!(gen.code, EXIT_OK);
    let out = qmux(&["optimize", path.to_str().unwrap(), "--family", "kqf"]);
    assert_eq!(out.code, EXIT_LIMIT, "{}", out.stderr);
    assert_eq!(qmux(&["generate", "--controls", "21"]).code, EXIT_LIMIT);
}

#[test]
fn verify_passes_and_fails() {
    let f = fixture("ivvx.qmux");
    let out = qmux(&["verify", &f, "--polarity", "11", "--format", "json"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(json(&out)["max_deviation"].as_f64().unwrap() < 1e-9);

    let mixed = qmux(&["verify", &f, "--polarity", "22", "--format", "json"]);
    assert_eq!(mixed.code, EXIT_OK);
    assert_eq!(json(&mixed)["max_deviation"].as_f64().unwrap(), 0.0);

    let dir = tempfile::tempdir().unwrap();
    let good = tmp(&dir, "good.qmux");
    std::fs::write(&good, "controls: 2\nform: fpqf:11\ntargets: I V V I\n").unwrap();
    assert_eq!(qmux(&["verify", &f, "--against", good.to_str().unwrap()]).code, EXIT_OK);
    let corrupted = tmp(&dir, "corrupted.qmux");
    std::fs::write(&corrupted, "controls: 2\nform: fpqf:11\ntargets: I V VD I\n").unwrap();
    let out = qmux(&["verify", &f, "--against", corrupted.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_VERIFY_FAILED);
    assert!(out.stdout.contains("fail"));

    assert_eq!(qmux(&["verify", &f]).code, EXIT_PARSE);
    assert_eq!(qmux(&["verify", &f, "--polarity", "1"]).code, EXIT_PARSE);
}

#[test]
fn optimize_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (seed, family) in [(1, "fpqf"), (2, "kqf"), (3, "fpqf")] {
        let path = tmp(&dir, &format!("g{seed}.qmux"));
        let seed = seed.to_string();
        qmux(&["generate", "--controls", "4", "--seed", &seed, "--out", path.to_str().unwrap()]);
        let best = json(&qmux(&["optimize", path.to_str().unwrap(), "--family", family, "--format", "json"]));
        let polarity = best["search"]["best"]["polarity"].as_str().unwrap();
        let v = qmux(&["verify", path.to_str().unwrap(), "--polarity", polarity]);
        assert_eq!(v.code, EXIT_OK, "{}", v.stdout);

        let polarized = tmp(&dir, "best.json");
        std::fs::write(&polarized, serde_json::to_string(&best["best"]).unwrap()).unwrap();
        let v = qmux(&["verify", path.to_str().unwrap(), "--against", polarized.to_str().unwrap()]);
        assert_eq!(v.code, EXIT_OK, "{}", v.stdout);
    }
}

#[test]
fn generate_is_deterministic_and_parses() {
    let a = qmux(&["generate", "--controls", "2", "--pool", "custom:I,V,V,X", "--seed", "9"]);
    let b = qmux(&["generate", "--controls", "2", "--pool", "custom:I,V,V,X", "--seed", "9"]);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.starts_with("# qmux"));
    let m = qmux::parse_qmux(&a.stdout).unwrap();
    assert_eq!(m.controls(), 2);
    assert_eq!(qmux::render_qmux(&m), a.stdout.lines().skip(1).map(|l| format!("{l}\n")).collect::<String>());

    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (tmp(&dir, "a.qmux"), tmp(&dir, "b.qmux"));
    qmux(&["generate", "--controls", "6", "--seed", "4", "--out", p1.to_str().unwrap()]);
    qmux(&["generate", "--controls", "6", "--seed", "4", "--out", p2.to_str().unwrap()]);
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());

    let j = qmux(&["generate", "--controls", "3", "--format", "json"]);
    assert_eq!(qmux::parse_any(&j.stdout).unwrap().controls(), 3);
}

#[test]
fn random_mode_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let path = tmp(&dir, "m8.qmux");
    qmux(&["generate", "--controls", "8", "--seed", "8", "--out", path.to_str().unwrap()]);
    let run_once = |seed: &str| {
        let v = json(&qmux(&[
            "optimize", path.to_str().unwrap(), "--mode", "random", "--samples", "16", "--seed", seed, "--format", "json",
        ]));
        (v["search"]["best"].clone(), v["search"]["average_cost"].clone(), v["manifest"]["seeds"].clone())
    };
    assert_eq!(run_once("3"), run_once("3"));
    assert_eq!(run_once("3").2, serde_json::json!([3]));
}

#[test]
fn classical_tables() {
    let out = qmux(&["classical", "00000000", "--format", "csv"]);
    let rows: Vec<&str> = out.stdout.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.ends_with(",0")));

    let out = qmux(&["classical", &fixture("xor5.pla"), "--format", "json"]);
    let v = json(&out);
    let row = v["rows"].as_array().unwrap().iter().find(|r| r["polarity"] == "11111").unwrap();
    assert_eq!(row["cost"], 5);

    let top = qmux(&["classical", "01101111", "--top", "2", "--sort", "cost", "--format", "csv"]);
    let rows: Vec<&str> = top.stdout.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows, ["001,4", "010,4"]);

    let krm = qmux(&["classical", "01101111", "--family", "krm", "--expressions"]);
    assert!(krm.stdout.lines().any(|l| l.starts_with("021") && l.contains(" 10 ")), "{}", krm.stdout);

    let hex = qmux(&["classical", "0x6F", "--format", "csv"]);
    assert_eq!(hex.stdout.lines().filter(|l| !l.starts_with('#')).nth(1), Some("000,5"));
    assert_eq!(qmux(&["classical", "012"]).code, EXIT_PARSE);
}

#[test]
fn cost_command_formats() {
    let f = fixture("ivvx.qmux");
    let text = qmux(&["cost", &f]);
    assert!(text.stdout.contains("total"));
    let csv = qmux(&["cost", &f, "--format", "csv"]);
    assert!(csv.stdout.ends_with("total,,15\n"));
    assert_eq!(json(&qmux(&["cost", &f, "--format", "json"]))["cost"]["total"], 15);
    let pla = json(&qmux(&["cost", &fixture("rd53.pla"), "--output-index", "2", "--format", "json"]));
    assert_eq!(pla["form"], "standard");
    assert_eq!(qmux(&["cost", &fixture("rd53.pla"), "--output-index", "3"]).code, EXIT_PARSE);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = tmp(&dir, "report.csv");
    let r = qmux(&["optimize", &fixture("ivvx.qmux"), "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.is_empty());
    let body = std::fs::read_to_string(&out).unwrap();
    assert!(body.contains("controls,original,best,worst,average,reduction_pct"));
    assert!(body.contains("\n2,15,2,3,2.75,81.7,11,00,4\n"));
}
