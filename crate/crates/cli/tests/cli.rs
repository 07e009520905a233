use std::fs;
use std::process::{Command, Output};

fn tlh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tlh"))
        .args(args)
        .env_remove("TLH_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = tlh(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

#[test]
fn poincare_text() {
    assert_eq!(ok(&["poincare", "2", "3", "1"]), "A + Q + T\n");
    assert_eq!(ok(&["poincare", "2", "2", "1"]), "(A + Q + T - Q*T) / (1-Q)^1\n");
    assert_eq!(ok(&["poincare", "2", "3", "1", "--q1"]), "1 + A + T\n");
    assert_eq!(ok(&["poincare", "1", "1", "3"]), "1\n");
}

#[test]
fn unreduced_adds_the_unknot_factor() {
    let out = ok(&["poincare", "2", "3", "1", "--unreduced"]);
    assert_eq!(out, "reduced: A + Q + T\nunknot: (1 + A) / (1-Q)\n");
}

#[test]
fn raw_output_keeps_the_engine_shift() {
    let raw = ok(&["--raw", "poincare", "2", "2", "2"]);
    let norm = ok(&["poincare", "2", "2", "2"]);
    assert_eq!(norm, "(A + Q^2 + T - Q^2*T) / (1-Q)^1\n");
    assert!(raw.contains("/ (1-Q)^1"), "{raw}");
}

#[test]
fn dimensions() {
    assert_eq!(ok(&["dim", "2", "3", "1"]), "3\n");
    assert_eq!(ok(&["dim", "3", "4", "1"]), "11\n");
    assert_eq!(ok(&["dim", "3", "5", "2"]), "289\n");
}

#[test]
fn exit_codes() {
    let o = tlh(&["dim", "2", "2", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("infinite-dimensional (link)"));
    assert_eq!(tlh(&["growth-check", "2", "4", "2"]).status.code(), Some(2));
    assert_eq!(tlh(&["growth-check", "2", "3", "0"]).status.code(), Some(2));
    assert_eq!(tlh(&["poincare", "0", "3", "1"]).status.code(), Some(2));
    assert_eq!(tlh(&["poincare", "2", "2", "1", "--q1"]).status.code(), Some(2));
    assert_eq!(tlh(&["poincare", "2", "x", "1"]).status.code(), Some(2));
    assert_eq!(tlh(&["colorshift-check", "t2even", "--n", "0", "--kmax", "2"]).status.code(), Some(2));
    assert_eq!(tlh(&["colorshift-check", "t33", "--kmin", "3", "--kmax", "2"]).status.code(), Some(2));
    assert_eq!(tlh(&["--workers", "0", "dim", "2", "3", "1"]).status.code(), Some(2));
    assert_eq!(tlh(&["cache-stats"]).status.code(), Some(2));
}

#[test]
fn checks_pass() {
    let out = ok(&["growth-check", "2", "3", "3"]);
    assert!(out.starts_with("growth m=2 n=3 kmax=3\n"));
    assert_eq!(out.matches(": pass").count(), 3);
    let out = ok(&["colorshift-check", "t2even", "--n", "1", "--kmax", "4"]);
    assert_eq!(out.matches(": pass").count(), 4);
    let out = ok(&["colorshift-check", "t33", "--kmin", "2", "--kmax", "3"]);
    assert!(out.starts_with("colorshift-t33 kmin=2 kmax=3\n"));
}

#[test]
fn json_envelopes() {
    let v: serde_json::Value = serde_json::from_str(&ok(&["--format", "json", "poincare", "2", "5", "1"])).unwrap();
    assert_eq!(v["m"], 2);
    assert_eq!(v["d"], 1);
    assert_eq!(v["reduced"], true);
    assert_eq!(v["dimension"], "5");
    assert_eq!(v["poincare"]["den_q"], 0);

    let v: serde_json::Value = serde_json::from_str(&ok(&["--format", "json", "poincare", "2", "2", "1"])).unwrap();
    assert_eq!(v["dimension"], serde_json::Value::Null);
    assert_eq!(v["poincare"]["den_q"], 1);
    assert_eq!(v["poincare"]["terms"].as_array().unwrap().len(), 4);

    let v: serde_json::Value =
        serde_json::from_str(&ok(&["--format", "json", "colorshift-check", "t2even", "--n", "2", "--kmax", "2"])).unwrap();
    assert_eq!(v["claim"], "colorshift-t2even");
    assert_eq!(v["range"]["n"], 2);
    assert_eq!(v["results"][1]["k"], 2);
    assert_eq!(v["results"][1]["witness"], serde_json::Value::Null);

    let v: serde_json::Value = serde_json::from_str(&ok(&["--format", "json", "dim", "4", "5", "1"])).unwrap();
    assert_eq!(v["dimension"], "45");
}

#[test]
fn output_does_not_depend_on_worker_count() {
    for args in [
        &["colorshift-check", "t2even", "--n", "3", "--kmax", "6"][..],
        &["growth-check", "3", "4", "3"][..],
        &["--format", "json", "colorshift-check", "t33", "--kmax", "5"][..],
    ] {
        let one = ok(&[&["--workers", "1"][..], args].concat());
        let three = ok(&[&["--workers", "3"][..], args].concat());
        assert_eq!(one, three, "{args:?}");
    }
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("memo.tlh");
    let p = path.to_str().unwrap();
    let cold = ok(&["--cache", p, "dim", "13", "14", "1"]);
    assert_eq!(cold, "71039373\n");
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("TLH-CACHE 1\n"));

    let warm = tlh(&["--cache", p, "--stats", "dim", "13", "14", "1"]);
    assert_eq!(stdout(&warm), cold);
    assert!(stderr(&warm).contains("misses=0"), "{}", stderr(&warm));
    // Nothing new computed, so the file is left alone.
    assert_eq!(fs::read_to_string(&path).unwrap(), text);

    ok(&["--cache", p, "colorshift-check", "t33", "--kmax", "2"]);
    let stats = ok(&["--cache", p, "cache-stats"]);
    assert!(stats.contains(": 3 entries"), "{stats}");

    // The environment variable supplies the default path.
    let o = Command::new(env!("CARGO_BIN_EXE_tlh")).args(["cache-stats"]).env("TLH_CACHE", p).output().unwrap();
    assert_eq!(stdout(&o), stats);
}

#[test]
fn cached_and_fresh_outputs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("memo.tlh");
    let p = p.to_str().unwrap();
    let args = ["--format", "json", "poincare", "3", "3", "2"];
    let fresh = ok(&args);
    ok(&[&["--cache", p][..], &args[..]].concat());
    assert_eq!(ok(&[&["--cache", p][..], &args[..]].concat()), fresh);
}

#[test]
fn bad_caches_are_replaced() {
    let dir = tempfile::tempdir().unwrap();
    for (name, contents) in [
        ("corrupt.tlh", "TLH-CACHE 1\n1|[1]|1|1|{not json\n"),
        ("version.tlh", "TLH-CACHE 2\n"),
        ("noheader.tlh", "hello\n"),
    ] {
        let path = dir.path().join(name);
        fs::write(&path, contents).unwrap();
        let o = tlh(&["--cache", path.to_str().unwrap(), "dim", "2", "3", "1"]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), "3\n");
        assert!(stderr(&o).contains("warning"), "{name}: {}", stderr(&o));
        assert!(fs::read_to_string(&path).unwrap().starts_with("TLH-CACHE 1\n"), "{name}");
    }
    let missing = dir.path().join("missing.tlh");
    let o = tlh(&["--cache", missing.to_str().unwrap(), "dim", "2", "3", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));
}
