use std::path::Path;
use std::process::{Command, Output};

fn coxalt(args: &[&str]) -> Output {
    coxalt_env(args, &[])
}

fn coxalt_env(args: &[&str], env: &[(&str, &Path)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_coxalt"));
    cmd.args(args).env_remove("COXALT_CACHE_DIR");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn failure(o: &Output) -> serde_json::Value {
    let line = stderr(o).lines().last().unwrap().to_string();
    serde_json::from_str(&line).unwrap()
}

#[test]
fn verify_a4_at_five() {
    let o = coxalt(&["verify", "A4", "--p", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json_lines(&o);
    let dims: Vec<(u64, u64, &str)> = rows
        .iter()
        .map(|r| (r["degree"].as_u64().unwrap(), r["dim"].as_u64().unwrap(), r["status"].as_str().unwrap()))
        .collect();
    assert_eq!(dims, vec![(1, 0, "pass"), (2, 0, "pass"), (3, 1, "info")]);
    assert!(rows.iter().all(|r| r["group"] == "A[A4]" && r["character"] == "trivial"));
}

#[test]
fn verify_refuses_non_p_free() {
    let o = coxalt(&["verify", "I2(5)", "--p", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let f = failure(&o);
    assert_eq!(f["error"], "hypothesis-violated");
    assert_eq!(f["exit_code"], 2);
    assert!(stdout(&o).is_empty());
}

#[test]
fn infinite_dihedral_h1() {
    let o = coxalt(&["verify", "I2(inf)", "--h1", "--p", "3", "--p", "5", "--p", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json_lines(&o);
    assert_eq!(rows.len(), 3);
    for (r, p) in rows.iter().zip([3, 5, 7]) {
        assert_eq!(r["p"], p);
        assert_eq!(r["dim"], 1);
        assert_eq!(r["method"], "presentation-H1");
    }
    let o = coxalt(&["verify", "I2(inf)", "--h1"]);
    assert_eq!(json_lines(&o).len(), 3);
}

#[test]
fn complex_profiles() {
    let o = coxalt(&["complex", "B3", "--p", "5", "--orbit"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json_lines(&o);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["complex"], "X[B3]");
    assert_eq!(rows[1]["complex"], "X[B3]/A");
    for r in &rows {
        assert_eq!(r["betti"], "(1,0,1)");
        assert_eq!(r["sphere"], true);
    }
    let o = coxalt(&["complex", "A1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["betti"], "(2)");
    assert!(stderr(&o).contains("S^0"));
    let o = coxalt(&["complex", "H3", "--p", "7"]);
    assert_eq!(json_lines(&o)[0]["betti"], "(1,0,1)");
}

#[test]
fn ss_check_examples() {
    for (g, p, dims) in [("A2", "3", "(1,1)"), ("I2(7)", "5", "(1,1)"), ("B3", "5", "(1,0,1)")] {
        let o = coxalt(&["ss-check", g, "--p", p]);
        assert_eq!(o.status.code(), Some(0), "{g}");
        let r = &json_lines(&o)[0];
        assert_eq!(r["e2"], dims);
        assert_eq!(r["invariant"], dims);
        assert_eq!(r["matches"], true);
    }
}

#[test]
fn catalog_formats() {
    let o = coxalt(&["catalog", "--format", "md"]);
    assert_eq!(o.status.code(), Some(0));
    let md = stdout(&o);
    assert!(md.starts_with("| kind | type | rank | order | p_freeness |"));
    assert!(md.contains("| family | H4 |  | 2^6·3^2·5^2 | p ≥ 7 |"));
    assert!(md.contains("| instance | H4 | 4 | 14400 | p ≥ 7 |"));
    assert!(md.contains("| family | A1 |  | 2 | p ≥ 3 |"));
    assert!(md.contains("| family | I2(m) (m ≥ 3) |  | 2m | p ∤ m |"));
    let csv = stdout(&coxalt(&["catalog", "--format", "csv"]));
    assert_eq!(csv.lines().next().unwrap(), "kind,type,rank,order,p_freeness");
    let json = coxalt(&["catalog"]);
    let rows = json_lines(&json);
    assert_eq!(rows.iter().filter(|r| r["kind"] == "family").count(), 12);
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32, &str)] = &[
        (&["verify", "A4", "--p", "4"], 4, "input-error"),
        (&["verify", "n=2; 1-3", "--p", "5"], 4, "input-error"),
        (&["verify", "A4"], 4, "input-error"),
        (&["complex", "I2(inf)"], 2, "hypothesis-violated"),
        (&["complex", "A4", "--cap", "50"], 3, "resource-cap"),
        (&["cohomology", "A5", "--p", "3", "--method", "cyclic-sylow"], 2, "hypothesis-violated"),
        (&["cohomology", "A4", "--group", "whole", "--p", "5", "--kmax", "3", "--method", "cocycle"], 3, "resource-cap"),
        (&["cohomology", "A3", "--p", "3", "--kmax", "2", "--mem", "1000", "--method", "cocycle"], 3, "resource-cap"),
    ];
    for (args, code, kind) in cases {
        let o = coxalt(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}");
        assert_eq!(failure(&o)["error"], *kind, "{args:?}");
    }
    // usage errors are input errors, not refusals
    assert_eq!(coxalt(&["verify", "A4", "--bogus"]).status.code(), Some(4));
    assert_eq!(coxalt(&["--help"]).status.code(), Some(0));
}

#[test]
fn unverifiable_degrees_exit_resource() {
    let o = coxalt(&["verify", "E8", "--p", "7"]);
    assert_eq!(o.status.code(), Some(3));
    let rows = json_lines(&o);
    assert!(rows.iter().any(|r| r["status"] == "unverified" && r["dim"].is_null()));
    assert!(stderr(&o).contains("not verifiable at desk scale"));
    // the order argument needs no realization
    let o = coxalt(&["verify", "E8", "--p", "11"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json_lines(&o).iter().all(|r| r["method"] == "order-argument"));
}

#[test]
fn deterministic_with_and_without_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let runs: Vec<&[&str]> = vec![
        &["verify", "A4", "--p", "5", "--twisted", "--format", "md"],
        &["complex", "B3", "--p", "5", "--orbit"],
        &["export-complex", "A3"],
    ];
    for args in runs {
        let plain = coxalt(args);
        let again = coxalt(args);
        let mut cached_args = args.to_vec();
        cached_args.extend(["--cache-dir", cache]);
        let cold = coxalt(&cached_args);
        let warm = coxalt(&cached_args);
        let via_env = coxalt_env(args, &[("COXALT_CACHE_DIR", dir.path())]);
        for o in [&again, &cold, &warm, &via_env] {
            assert_eq!(o.status.code(), Some(0));
            assert_eq!(o.stdout, plain.stdout, "{args:?}");
        }
    }
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some(), "cache was populated");
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "# defaults\np = 5\nformat = csv\n").unwrap();
    let conf = path.to_str().unwrap();
    let o = coxalt(&["verify", "A4", "--config", conf]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("group,p,character,degree,dim,method,status\n"));
    let o = coxalt(&["verify", "A4", "--config", conf, "--format", "json", "--p", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json_lines(&o).iter().all(|r| r["p"] == 7));
    std::fs::write(&path, "colour = blue\n").unwrap();
    assert_eq!(coxalt(&["catalog", "--config", conf]).status.code(), Some(4));
}

#[test]
fn export_and_dump_formats() {
    let o = coxalt(&["export-complex", "A2"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 12);
    assert!(lines[..6].iter().all(|l| l.split(' ').count() == 2 && l.starts_with("0 ")));
    assert!(lines[6..].iter().all(|l| l.split(' ').count() == 3 && l.starts_with("1 ")));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d0.txt");
    let o = coxalt(&["dump-matrix", "B3", "--degree", "1", "--p", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let dump = std::fs::read_to_string(&out).unwrap();
    let mut lines = dump.lines();
    assert_eq!(lines.next().unwrap(), "5 48 72");
    for l in lines {
        let v: Vec<u64> = l.split(' ').map(|x| x.parse().unwrap()).collect();
        assert_eq!(v.len(), 3);
        assert!(v[0] < 48 && v[1] < 72 && (1..5).contains(&v[2]));
    }
    let o = coxalt(&["dump-matrix", "B3", "--degree", "0", "--orbit", "--p", "5"]);
    assert!(stdout(&o).starts_with("5 3 3\n"));
    assert_eq!(coxalt(&["dump-matrix", "A2", "--degree", "5"]).status.code(), Some(4));
}

#[test]
fn scan_report() {
    let o = coxalt(&["scan", "--p", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("5,H3,3,120,false,false"));
}
