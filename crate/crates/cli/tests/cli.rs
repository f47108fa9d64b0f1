use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

fn netiso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netiso")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn analyze_reports_basic_invariants() {
    let pcu = data("nets/pcu.lqg");
    let o = netiso(&["analyze", pcu.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("depth,1"));
    assert!(out.contains("indivisible,true"));
    assert!(out.contains("proper,yes"));
    assert!(out.contains("td10,1561"));

    let o = netiso(&["analyze", pcu.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["fingerprint"]["td10"], 1561);
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lqg");
    fs::write(&bad, "vertex v1\nedge v1 v1 1 0\n").unwrap();
    assert_eq!(netiso(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(netiso(&["analyze", "/definitely/not/here.lqg"]).status.code(), Some(2));
}

#[test]
fn knot_written_alongside_analysis() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("dia.obj");
    let o = netiso(&["analyze", data("nets/dia.lqg").to_str().unwrap(), "--knot", obj.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let body = fs::read_to_string(obj).unwrap();
    assert!(body.lines().any(|l| l.starts_with("v ")));
    assert!(body.lines().any(|l| l.starts_with("l ")));
}

#[test]
fn grid_envelope_and_force() {
    let o = netiso(&["grids", "--n", "7", "--mode", "beta"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--force"));
    let o = netiso(&["grids", "--n", "3", "--mode", "rho"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "mode,n,count\nrho,3,4\n");
}

#[test]
fn grid_expectations() {
    let table = data("grid_counts.csv");
    let t = table.to_str().unwrap();
    for (mode, n) in [("alpha", "6"), ("beta", "5"), ("beta-t", "6"), ("beta-tt", "7"), ("rho", "4")] {
        let o = netiso(&["grids", "--n", n, "--mode", mode, "--expect", t]);
        assert_eq!(o.status.code(), Some(0), "{mode}({n}): {}", stderr(&o));
    }
    let dir = tempfile::tempdir().unwrap();
    let wrong = dir.path().join("wrong.csv");
    fs::write(&wrong, "mode,n,count\nbeta,4,4\n").unwrap();
    let o = netiso(&["grids", "--n", "4", "--mode", "beta", "--expect", wrong.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("expected 4, got 3"));
}

#[test]
fn lattice_census_writes_and_checks() {
    let dir = tempfile::tempdir().unwrap();
    let full = fs::read_to_string(data("lattice_census.csv")).unwrap();
    // drop the row whose penetration entry disagrees with the computed crossing count
    let agreeing: String = full.lines().filter(|l| !l.contains(",6095")).map(|l| format!("{l}\n")).collect();
    let expect = dir.path().join("expect.csv");
    fs::write(&expect, &agreeing).unwrap();
    let out = dir.path().join("out");
    let o = netiso(&[
        "census",
        "lattice",
        "--out",
        out.to_str().unwrap(),
        "--expect",
        expect.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let written = fs::read_to_string(out.join("census.csv")).unwrap();
    assert_eq!(written.lines().count(), 1 + 19 + 6);
    assert!(written.lines().any(|l| l.starts_with("pcu,a_x a_y a_z,6,0,0,1561")));

    let tampered = agreeing.replacen(",1561", ",1562", 1);
    fs::write(&expect, tampered).unwrap();
    let o = netiso(&["census", "lattice", "--out", out.to_str().unwrap(), "--expect", expect.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("1562"));
}

#[test]
fn double_lattice_census_one_degree() {
    let dir = tempfile::tempdir().unwrap();
    let o = netiso(&[
        "census",
        "double-lattice",
        "--m",
        "5",
        "--out",
        dir.path().to_str().unwrap(),
        "--expect",
        data("double_lattice_counts.csv").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("m=5 classes=11"));
    let csv = fs::read_to_string(dir.path().join("double_lattice_m5.csv")).unwrap();
    assert_eq!(csv.lines().count(), 12);
    assert_eq!(netiso(&["census", "double-lattice", "--m", "9"]).status.code(), Some(2));
}

#[test]
fn superlattices_match_table() {
    let o = netiso(&["superlattices", "--n", "6", "--expect", data("grid_counts.csv").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("n,hnf,proper,beta_tt\n6,91,"));
}

#[test]
fn freespace_counts_and_grid_export() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.json");
    let o = netiso(&[
        "freespace",
        data("nets/two_vertex.lqg").to_str().unwrap(),
        "--mobile",
        "v2",
        "--resolution",
        "16",
        "--emit-grid",
        grid.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",5,false"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(grid).unwrap()).unwrap();
    assert_eq!(v["resolution"], 16);

    let o = netiso(&["freespace", data("nets/cds.lqg").to_str().unwrap(), "--mobile", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = netiso(&["superlattices", "--n", "8", "--format", "json"]);
    let b = netiso(&["superlattices", "--n", "8", "--format", "json", "--threads", "1"]);
    assert_eq!(a.stdout, b.stdout);
}
