use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bdmlab(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bdmlab"))
        .args(args)
        .env_remove("BDMLAB_JOBS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn help_lists_claims_and_exit_codes() {
    let o = bdmlab(&["--help"], "");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for id in [
        "L5.1",
        "L5.2",
        "L5.3",
        "T1-strong-resolving",
        "T7-diam2",
        "T10-irrelevant",
        "PTOL-boundary",
        "INT-boundary",
        "C12-interval-evidence",
    ] {
        assert!(text.contains(id), "{id}");
    }
    assert!(text.contains("64 usage"));
}

#[test]
fn usage_errors_exit_64() {
    for args in [&["frobnicate"][..], &["hunt", "--n", "7", "--jobs", "0"], &["verify", "--claim", "T99", "--n-max", "3"]] {
        let o = bdmlab(args, "");
        assert_eq!(o.status.code(), Some(64), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn bad_input_exits_1_with_the_line_number() {
    let o = bdmlab(&["boundary"], "Bw\nxx\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn boundary_of_the_wheel() {
    let o = bdmlab(&["boundary"], "Dr{\n");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["boundary"], serde_json::json!([1, 2, 3, 4]));
    assert_eq!(v["kappa"], 4);
    assert_eq!(v["bdm"], "n=5; boundary=1,2,3,4; rows=0,1,1,2;1,0,2,1;1,2,0,1;2,1,1,0");

    let dot = stdout(&bdmlab(&["boundary", "--dot"], "Dr{\n"));
    assert!(dot.starts_with("graph"));
    assert_eq!(dot.matches("boundary=true").count(), 4);
}

#[test]
fn records_feed_back_into_reconstruction() {
    let graphs = stdout(&bdmlab(&["gen", "--ptolemaic", "--n", "15", "--count", "5", "--seed", "3"], ""));
    assert_eq!(graphs.lines().count(), 5);
    let records = stdout(&bdmlab(&["bdm"], &graphs));
    let rebuilt = bdmlab(&["reconstruct", "--ptolemaic"], &records);
    assert_eq!(rebuilt.status.code(), Some(0));
    let again = stdout(&bdmlab(&["bdm"], &stdout(&rebuilt)));
    assert_eq!(again, records);
}

#[test]
fn verdict_exit_code_follows_status() {
    assert_eq!(bdmlab(&["verdict"], "Dr{\n").status.code(), Some(0));
    let hunt = stdout(&bdmlab(&["hunt", "--n", "7"], ""));
    let first: serde_json::Value = serde_json::from_str(hunt.lines().next().unwrap()).unwrap();
    let member = first["members"][0].as_str().unwrap().to_string();
    let o = bdmlab(&["verdict"], &format!("{member}\n"));
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("NotBDM"));
}

#[test]
fn hunt_output_is_deterministic() {
    let one = bdmlab(&["--jobs", "1", "hunt", "--n", "7"], "");
    let eight = bdmlab(&["--jobs", "8", "hunt", "--n", "7"], "");
    assert_eq!(one.status.code(), Some(2));
    assert_eq!(one.stdout, eight.stdout);
    assert_eq!(one.stdout, bdmlab(&["--jobs", "1", "hunt", "--n", "7"], "").stdout);

    let text = stdout(&one);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    let summary: serde_json::Value = serde_json::from_str(lines[2]).unwrap();
    assert_eq!(summary["summary"], true);
    assert_eq!(summary["classes"], 2);
    assert_eq!(summary["scanned"], 853);
    assert!(summary.get("wall_clock_ms").is_none());

    let timed = stdout(&bdmlab(&["hunt", "--n", "5", "--timing"], ""));
    assert!(timed.contains("wall_clock_ms"));
}

#[test]
fn hunt_reads_files_stdin_and_shards_alike() {
    let corpus = stdout(&bdmlab(&["gen", "--enumerate", "--n", "7"], ""));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g7.g6");
    std::fs::write(&path, &corpus).unwrap();
    let shards = dir.path().join("shards");
    let from_file = bdmlab(&["hunt", "--in", path.to_str().unwrap()], "");
    let from_stdin = bdmlab(&["hunt", "--in", "-"], &corpus);
    let sharded = bdmlab(&["hunt", "--in", path.to_str().unwrap(), "--shard-dir", shards.to_str().unwrap()], "");
    let classes = |o: &Output| stdout(o).lines().filter(|l| !l.contains("\"summary\"")).map(String::from).collect::<Vec<_>>();
    assert_eq!(classes(&from_file).len(), 2);
    assert_eq!(classes(&from_file), classes(&from_stdin));
    assert_eq!(classes(&from_file), classes(&sharded));

    let out = dir.path().join("report.jsonl");
    let o = bdmlab(&["hunt", "--in", "-", "--out", out.to_str().unwrap()], &corpus);
    assert_eq!(o.status.code(), Some(2));
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(written.lines().count(), 3);
}

#[test]
fn hunt_filters_and_bad_records() {
    let o = bdmlab(&["hunt", "--in", "-"], "Bw\nC~\n??\n");
    assert_eq!(o.status.code(), Some(1));
    let o = bdmlab(&["hunt", "--in", "-", "--skip-bad"], "Bw\nC~\n??\n");
    assert_eq!(o.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!((summary["scanned"].as_u64(), summary["skipped"].as_u64()), (Some(3), Some(1)));

    let o = bdmlab(&["hunt", "--n", "7", "--family", "tree"], "");
    assert_eq!(o.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(summary["matched"], 11);
    assert_eq!(summary["filters"], serde_json::json!(["tree"]));
    assert_eq!(bdmlab(&["hunt", "--n", "7", "--family", "nonsense"], "").status.code(), Some(64));
}

#[test]
fn verify_reports_counterexamples() {
    let ok = bdmlab(&["verify", "--claim", "T7-diam2", "--n-max", "6"], "");
    assert_eq!(ok.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(stdout(&ok).trim()).unwrap();
    assert_eq!(r["violations"], serde_json::json!([]));
    assert!(r["applicable"].as_u64().unwrap() > 0);

    let bad = bdmlab(&["verify", "--claim", "INT-boundary", "--n-max", "6"], "");
    assert_eq!(bad.status.code(), Some(2));
    assert!(stdout(&bad).contains("Eq~w"));

    let sampled = bdmlab(&["verify", "--claim", "PTOL-boundary", "--ptolemaic-samples", "50", "--max-n", "20"], "");
    assert_eq!(sampled.status.code(), Some(0));
}

#[test]
fn kappa_hunt_small_orders() {
    let o = bdmlab(&["kappa-hunt", "--n", "3"], "");
    assert_eq!(o.status.code(), Some(0));
    let o = bdmlab(&["kappa-hunt", "--n", "6"], "");
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    let summary: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(summary["pairs"], 14);
    assert_eq!(text.lines().count(), 15);
}
