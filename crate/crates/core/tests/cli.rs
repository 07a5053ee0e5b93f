mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::fixture;
use cumulant_calculus::cli::ReportFile;

fn cumulant<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_cumulant")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn characterize(name: &str, extra: &[&str]) -> Output {
    let path = fixture(name);
    let mut args = vec!["characterize", "--scenario", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    cumulant(args)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn characterize_exit_codes() {
    assert_eq!(code(&characterize("gaussian.json", &[])), 0);
    for name in ["skewed.json", "correlated.json", "unequal_variance.json"] {
        assert_eq!(code(&characterize(name, &[])), 2, "{name}");
    }
    let out = characterize("degenerate.json", &[]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("nondegeneracy violated"));
    assert_eq!(code(&characterize("missing.json", &[])), 1);

    assert_eq!(code(&characterize("prop2_gaussian.json", &["--prop2"])), 0);
    for name in ["prop2_xxy.json", "prop2_xyy.json", "prop2_gap.json"] {
        assert_eq!(code(&characterize(name, &["--prop2"])), 2, "{name}");
    }
    assert_eq!(code(&characterize("vector.json", &["--vector", "2"])), 0);
    assert_eq!(code(&characterize("vector_correlated.json", &["--vector", "2"])), 2);
    assert_eq!(code(&characterize("vector.json", &["--vector", "2", "--prop2"])), 1);
}

#[test]
fn characterize_report_contents() {
    let out = characterize("skewed.json", &[]);
    let report = ReportFile::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.command, "characterize");
    let text = serde_json::to_string(&report.report).unwrap();
    assert!(text.contains("a^3"), "{text}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("a^3"));
}

#[test]
fn report_file_round_trip_and_digest() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.json");
    let out = cumulant(["characterize", "--scenario", fixture("gaussian.json").to_str().unwrap(), "-o", first.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(!stdout(&out).is_empty());
    let text = std::fs::read_to_string(&first).unwrap();
    let report = ReportFile::from_json(&text).unwrap();
    assert_eq!(ReportFile::from_json(&report.to_json()).unwrap(), report);
    assert_eq!(report.input_digest.len(), 64);

    // reformatting the file keeps the digest; changing a value does not
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(fixture("gaussian.json")).unwrap()).unwrap();
    let pretty = write(dir.path(), "pretty.json", &serde_json::to_string_pretty(&value).unwrap());
    let again = ReportFile::from_json(&stdout(&cumulant(["characterize", "--scenario", &pretty]))).unwrap();
    assert_eq!(again.input_digest, report.input_digest);
    let changed = write(dir.path(), "changed.json", &serde_json::to_string(&value).unwrap().replacen("\"1\"", "\"2\"", 1));
    let other = ReportFile::from_json(&stdout(&cumulant(["characterize", "--scenario", &changed]))).unwrap();
    assert_ne!(other.input_digest, report.input_digest);
}

#[test]
fn convert_sequences() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.txt", "0,1,0,3\n");
    let out = cumulant(["convert", "--from", "moments", &m]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "0,1,0,0\n"));
    let c = write(dir.path(), "c.txt", "1\n1\n1\n1\n");
    let out = cumulant(["convert", "--from", "cumulants", &c]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "1,2,5,15\n"));
    let out = cumulant(["convert", "--from", "cumulants", "--order", "3", &c]);
    assert_eq!(stdout(&out), "1,2,5\n");
    assert_eq!(code(&cumulant(["convert", "--from", "cumulants", "--order", "6", &c])), 1);
    let frac = write(dir.path(), "f.txt", "1/2, 1/4");
    assert_eq!(stdout(&cumulant(["convert", "--from", "moments", &frac])), "1/2,0\n");

    let empty = write(dir.path(), "e.txt", "");
    let out = cumulant(["convert", "--from", "moments", &empty]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
    assert_eq!(code(&cumulant(["convert", "--from", "moments", "--order", "13", &m])), 1);
    let bad = write(dir.path(), "b.txt", "1,,2");
    assert_eq!(code(&cumulant(["convert", "--from", "moments", &bad])), 1);
}

#[test]
fn reduce_rows() {
    let samples = fixture("samples.csv");
    let samples = samples.to_str().unwrap();
    let out = cumulant(["reduce", "--coeffs", "1,-2,0.5,3,-1", "--samples", samples]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&cumulant(["reduce", "--coeffs", "1,2", "--samples", samples])), 1);
}

#[test]
fn simulate_outcomes() {
    let run = |side: &str, seed: &str, extra: &[&str]| {
        let s = fixture(side);
        let s = s.to_str().unwrap();
        let mut args = vec!["simulate", "--left", s, "--right", s, "--seed", seed, "--n", "20000"];
        args.extend_from_slice(extra);
        cumulant(args)
    };
    let a = run("normal_side.json", "42", &[]);
    let b = run("normal_side.json", "42", &[]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(code(&run("exponential_side.json", "42", &[])), 2);
    assert_eq!(code(&run("normal_side.json", "42", &["--angles", "0,45"])), 1);
    assert_eq!(code(&run("normal_side.json", "42", &["--n", "10"])), 1);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(code(&cumulant(["frobnicate"])), 1);
    assert_eq!(code(&cumulant(Vec::<&str>::new())), 1);
    assert_eq!(code(&cumulant(["--help"])), 0);
    assert_eq!(code(&cumulant(["--version"])), 0);
    assert_eq!(code(&cumulant(["simulate", "--left", "x", "--right", "y"])), 1);
}
