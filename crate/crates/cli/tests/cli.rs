use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run_in(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lenskit"))
        .args(args)
        .env("LENSKIT_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn cf_eval_prints_the_value() {
    let o = run(&["cf", "eval", "--", "-1,2,2,2,2,-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-16/9\n");
    assert_eq!(stdout(&run(&["cf", "expand", "16/9"])), "2,5,2\n");
}

#[test]
fn s1s2_verdicts_and_exit_codes() {
    let o = run(&["homology", "s1s2", "--", "-2,-2,-2", "--eps", "-1,0,1", "--framing", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PASS snf=1,1,1,0\n");

    let o = run(&["homology", "s1s2", "--json", "--", "-2,-2,-2", "--eps", "1,0,1", "--framing", "-1"]);
    assert_eq!(o.status.code(), Some(1));
    let rec = &json_lines(&o)[0];
    assert_eq!(rec["verdict"], "fail");
    assert_eq!(rec["witness"]["diagonal"], serde_json::json!([1, 1, 1, 4]));
    assert!(rec["repro"].as_str().unwrap().contains("s1s2"));
}

#[test]
fn lattice_embed_reports_the_keystones() {
    let o = run(&["lattice", "embed", "--", "-2,-3,-2,-3,-3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = json_lines(&o);
    assert_eq!(recs.len(), 1);
    let classes = recs[0]["witness"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0]["keystones"], serde_json::json!([1, 2, 3, 5]));
}

#[test]
fn parse_errors_name_the_token() {
    let o = run(&["cf", "eval", "--", "1,x,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("\"x\""), "{}", stderr(&o));

    let o = run(&["lattice", "embed", "--", "-2,y"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("'y'"), "{}", stderr(&o));

    let o = run(&["lens", "mirror", "16/q"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("16/q"));

    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "golden", "no-such-golden"]).status.code(), Some(2));
    assert_eq!(run(&["homology", "theorem16", "BGI", "--s", "0", "--t", "1"]).status.code(), Some(2));
}

#[test]
fn simple_knot_toggle() {
    let args = ["homology", "simple-eq", "K(25,7,10)", "K(25,7,5)"];
    assert_eq!(run(&args).status.code(), Some(1));
    let mut on = args.to_vec();
    on.push("--reversing-square-root");
    assert_eq!(run(&on).status.code(), Some(0));
    assert_eq!(run(&["homology", "simple-eq", "K(16,9,4)", "K(16,9,12)"]).status.code(), Some(0));
}

#[test]
fn keystone_suggest_rejects_non_keystones() {
    let o = run(&["keystone", "suggest", "--", "-2,-3,-2,-3,-3", "-e", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["keystone", "suggest", "--json", "--", "-2,-2,-2", "-e", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["witness"]["epsilon"], serde_json::json!([-1, 0, 1]));
}

#[test]
fn cache_hits_are_identical_and_tampering_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["-v", "lattice", "embed", "--", "-2,-5,-2,-3,-3,-2,-2"];
    let first = run_in(dir.path(), &args);
    assert!(stderr(&first).contains("cache miss"));
    let second = run_in(dir.path(), &args);
    assert!(stderr(&second).contains("cache hit"));
    assert_eq!(first.stdout, second.stdout);

    let records: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(records.len(), 1);
    let text = fs::read_to_string(&records[0]).unwrap();
    fs::write(&records[0], text.replacen("[[", "[[7,", 1)).unwrap();
    let third = run_in(dir.path(), &args);
    assert!(stderr(&third).contains("warning: discarding corrupt cache record"));
    assert_eq!(first.stdout, third.stdout);
    assert!(stderr(&run_in(dir.path(), &args)).contains("cache hit"));

    let off = run_in(dir.path(), &["-v", "--no-cache", "lattice", "embed", "--", "-2,-2,-2"]);
    assert!(stderr(&off).contains("cache disabled"));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn verify_all_is_deterministic_across_thread_counts() {
    let base =
        ["verify", "all", "--json", "--max-order", "40", "--max-rank", "6", "--cf-cases", "200", "--family-bound", "2"];
    let one = run(&[&["--jobs", "1"], &base[..]].concat());
    let four = run(&[&["--jobs", "4"], &base[..]].concat());
    assert_eq!(one.status.code(), Some(0), "{}", stdout(&one));
    assert_eq!(one.stdout, four.stdout);
    let recs = json_lines(&one);
    assert!(recs.iter().all(|r| r["verdict"] == "pass"));
    let criteria = recs.iter().filter(|r| r["subject"].as_str().unwrap().starts_with("criterion")).count();
    assert_eq!(criteria, 7);
    assert!(recs.iter().any(|r| r["subject"] == "golden cli-lattice-embed-json"));
}

#[test]
fn named_goldens() {
    let o = run(&["verify", "golden", "orbits-25-7", "cli-cf-eval"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PASS golden orbits-25-7\nPASS golden cli-cf-eval\n");
}
