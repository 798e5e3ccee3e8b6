use std::process::{Command, Output};

fn cynodal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cynodal"))
        .args(args)
        .env("CYNODAL_WORKERS", "1")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn catalog_lists_every_row() {
    let o = cynodal(&["catalog", "list"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 24);
    assert!(s.lines().any(|l| l.starts_with("5\tdP7\tP7\t2,2,2,2\t30\t")));
}

#[test]
fn chern_ledger_for_dp7() {
    let o = cynodal(&["chern", "--surface", "dP7", "--ambient", "7", "--twist", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("c(N^v)/prod    1 + 1h + 30pt"), "{s}");
    assert!(s.contains("nodes          30"));
    let j = cynodal(&["chern", "--surface", "quadric", "--ambient", "6", "--degrees", "2,2,3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["nodes"], 14);
}

#[test]
fn run_and_verify_a_row() {
    let o = cynodal(&["run", "--rows", "14", "--format", "tsv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    let row: Vec<&str> = s.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(&row[..8], &["14", "quadric", "ok", "42", "24", "24", "24", "24"]);

    let v = cynodal(&["verify", "--row", "14"]);
    assert!(v.status.success());
    let rep: serde_json::Value = serde_json::from_slice(&v.stdout).unwrap();
    assert_eq!(rep["counts"]["jacobian"], 24);
    assert_eq!(rep["agreement"], true);
}

#[test]
fn json_run_has_schema() {
    let o = cynodal(&["run", "--rows", "11"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "cynodal-report/1");
    assert_eq!(v["rows"][0]["singularity"]["counts"]["linkage"], 20);
}

#[test]
fn gb_of_an_ideal_file() {
    let path = std::env::temp_dir().join(format!("cynodal-gb-{}.ideal", std::process::id()));
    std::fs::write(&path, "ring p=32003 vars=x,y,z\n# twisted cubic minus one\nx*z - y^2\ny - z\n").unwrap();
    let o = cynodal(&["gb", "--in", path.to_str().unwrap(), "--order", "lex"]);
    std::fs::remove_file(&path).ok();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.starts_with("ring p=32003"));
    assert!(s.lines().count() >= 3);
}

#[test]
fn tables_and_audit() {
    let t = cynodal(&["tables", "--which", "4"]);
    assert!(t.status.success());
    assert!(stdout(&t).lines().count() > 1);
    let j = cynodal(&["tables", "--which", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 20);
    let a = cynodal(&["audit"]);
    assert!(a.status.success());
    assert!(stdout(&a).contains("FLAG dP7"));
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(cynodal(&["run", "--rows", "99"]).status.code(), Some(2));
    assert_eq!(cynodal(&["tables", "--which", "9"]).status.code(), Some(2));
}
