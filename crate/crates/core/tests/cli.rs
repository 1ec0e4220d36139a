//! The `hg` front end: output formats, exit codes and `HG_GRID_M`.

use std::process::Command;

use homotopy_gaps::cli::{main_with, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use homotopy_gaps::io::read_circle_map;
use homotopy_gaps::io::Format;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with(std::iter::once("hg").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn degree_of_a_gallery_map() {
    let (code, out, _) = run(&["degree", "--map", "power:d=3"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("method,raw,rounded,flag"));
    assert!(lines.all(|l| l.split(',').nth(2) == Some("3")));
}

#[test]
fn degree_of_a_sphere_map_uses_kronecker() {
    let (code, out, _) = run(&["degree", "--map", "stereo:d=2", "--format", "tsv"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().nth(1).unwrap().starts_with("kronecker\t"));
}

#[test]
fn experiment_pass_fail_and_usage_codes() {
    let (code, out, err) = run(&["experiment", "w11-zigzag", "--d1", "1", "--d2", "0"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.starts_with("experiment,case,value,expected,tolerance,rule,status\n"));
    assert!(err.contains("PASS w11-zigzag"));

    let (code, _, err) = run(&["experiment", "capacity-decay"]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert!(err.starts_with("FAIL capacity-decay"));
    assert!(err.contains("final / initial"));

    assert_eq!(run(&["experiment", "no-such-thing"]).0, EXIT_USAGE);
    assert_eq!(run(&["experiment", "w11-zigzag", "--bogus", "1"]).0, EXIT_USAGE);
    assert_eq!(run(&["experiment", "w11-zigzag", "--d1", "x"]).0, EXIT_USAGE);
    assert_eq!(run(&["experiment", "eps-bump-critical", "--p", "3"]).0, EXIT_USAGE);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(run(&[]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["degree"]).0, EXIT_USAGE);
    assert_eq!(run(&["seminorm", "--map", "power:d=1", "--s", "1.5", "--p", "2"]).0, EXIT_USAGE);
    assert_eq!(run(&["pair", "zigzag:d1=1,d2=0", "--format", "json"]).0, EXIT_USAGE);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    for sub in ["degree", "experiment", "sweep", "optimize", "seminorm", "pair"] {
        assert!(out.contains(sub), "{sub} missing from help");
    }
}

#[test]
fn pair_dumps_round_trip_and_output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let f_path = dir.path().join("f.csv");
    let table = dir.path().join("pair.csv");
    let args = [
        "pair",
        "zigzag:d1=2,d2=-1",
        "--p",
        "1,2",
        "--dump-f",
        f_path.to_str().unwrap(),
        "--output",
        table.to_str().unwrap(),
    ];
    assert_eq!(run(&args).0, EXIT_OK);
    let first = std::fs::read(&table).unwrap();
    assert_eq!(run(&args).0, EXIT_OK);
    assert_eq!(std::fs::read(&table).unwrap(), first);
    let text = String::from_utf8(first).unwrap();
    assert!(!text.contains('\r'));
    assert!(text.lines().count() > 2);

    let f = read_circle_map(std::fs::File::open(&f_path).unwrap(), Format::Csv).unwrap();
    assert_eq!(f.len(), 4096);
    let (code, out, _) = run(&["degree", "--input", f_path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().nth(1).unwrap().starts_with("winding,2.0"));
}

#[test]
fn sweep_lists_one_row_per_value() {
    let (code, out, err) = run(&["sweep", "product-shift", "--d", "1,2,4", "--s", "1", "--p", "1"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out.lines().count(), 4);
    assert_eq!(run(&["sweep", "product-shift", "--d", "1,2", "--p", "1,2"]).0, EXIT_USAGE);
}

#[test]
fn seminorm_and_optimize_report_values() {
    let (code, out, _) = run(&["seminorm", "--map", "power:d=2", "--s", "0.5", "--p", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("seminorm"));
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let (code, out, err) = run(&[
        "optimize",
        "--from",
        "power:d=1",
        "--to-class",
        "0",
        "--p",
        "1",
        "--k",
        "4",
        "--restarts",
        "2",
        "--budget",
        "50",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.starts_with("quantity,value\n"));
    let t = std::fs::read_to_string(&trace).unwrap();
    assert!(t.starts_with("iteration,value\n"));
    assert!(t.lines().last().unwrap().starts_with("best,"));
}

#[test]
fn grid_size_comes_from_the_environment() {
    let hg = env!("CARGO_BIN_EXE_hg");
    let dump = |m: &str| {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        let status = Command::new(hg)
            .env("HG_GRID_M", m)
            .args(["pair", "zigzag:d1=1,d2=0", "--dump-f", path.to_str().unwrap()])
            .output()
            .unwrap();
        let rows = std::fs::read_to_string(&path).map(|s| s.lines().count() - 1).ok();
        (status.status.code(), rows)
    };
    assert_eq!(dump("256"), (Some(EXIT_OK), Some(256)));
    assert_eq!(dump("7").0, Some(EXIT_USAGE));
    assert_eq!(dump("lots").0, Some(EXIT_USAGE));
}
