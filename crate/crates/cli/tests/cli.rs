use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

const EXAMPLE: &str = "x1^5*z + 3*x1^4*z^2 + 4*x1^3*z^3 + 4*x1^2*z^4 + 3*x1*z^5 + z^6 \
    + 2*x1^3*x2*z + 5*x1^2*x2*z^2 + 4*x1*x2*z^3 + x2*z^4 + x1^2*x3*z + 2*x1*x3*z^2 + x3*z^3";

fn upoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_upoly"))
        .args(args)
        .env_remove("UPOLY_CAP_EDGES")
        .output()
        .unwrap()
}

fn upoly_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_upoly"))
        .args(args)
        .env_remove("UPOLY_CAP_EDGES")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn compute_rooted_u_of_a_tree() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.json", r#"{"n":2,"root":0,"edges":[[0,1]]}"#);
    let o = upoly(&["compute", "--tree", &t, "--invariant", "u-rooted", "--strategy", "fast"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "{\"terms\":[{\"c\":\"1\",\"y\":0,\"z\":1,\"parts\":[1]},{\"c\":\"1\",\"y\":0,\"z\":2,\"parts\":[]}]}\n"
    );
    let text = upoly(&["compute", "--tree", &t, "--invariant", "u-rooted", "--format", "text"]);
    assert_eq!(stdout(&text), "x1*z + z^2\n");
}

#[test]
fn compute_variants() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "p3.txt", "3: 0 1 2");
    let u = upoly(&["compute", "--tree", &path, "--format", "text"]);
    assert_eq!(stdout(&u), "x3 + 2*x1*x2 + x1^3\n");
    let subset = upoly(&["compute", "--tree", &path, "--strategy", "subset", "--format", "text"]);
    assert_eq!(stdout(&subset), stdout(&u));
    let w = upoly(&["compute", "--tree", &path, "--invariant", "w", "--format", "text"]);
    assert_eq!(stdout(&w), stdout(&u));
    let trunc = upoly(&["compute", "--tree", &path, "--truncate", "1", "--format", "text"]);
    assert_eq!(stdout(&trunc), "x3 + 2*x1*x2\n");
    let restrict = upoly(&["compute", "--tree", &path, "--restrict", "2", "--format", "text"]);
    assert_eq!(stdout(&restrict), "2*x1*x2 + x1^3\n");
    let x = upoly(&["compute", "--tree", &path, "--invariant", "chromatic", "--format", "text"]);
    assert_eq!(stdout(&x), "p3 - 2*p1*p2 + p1^3\n");
    let xr = upoly(&["compute", "--tree", &path, "--invariant", "chromatic-rooted"]);
    assert!(stdout(&xr).starts_with("{\"basis\":\"power_sum\""));
}

#[test]
fn compute_weighted_graph() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", r#"{"n":2,"edges":[[0,1],[1,1]],"weights":[2,3]}"#);
    let o = upoly(&["compute", "--graph", &g, "--invariant", "w", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "x5*y + x2*x3*y\n");
    let fast = upoly(&["compute", "--graph", &g, "--strategy", "fast"]);
    assert_eq!(fast.status.code(), Some(2));
    assert!(stderr(&fast).contains("NotATree"));
}

#[test]
fn subset_cap_from_environment() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.txt", "3: 0 1 2");
    let o = Command::new(env!("CARGO_BIN_EXE_upoly"))
        .args(["compute", "--tree", &t, "--strategy", "subset"])
        .env("UPOLY_CAP_EDGES", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("CapExceeded"));
    let flag = upoly(&["compute", "--tree", &t, "--strategy", "subset", "--cap-edges", "1"]);
    assert!(stderr(&flag).contains("CapExceeded"));
    let zero = upoly(&["compute", "--tree", &t, "--cap-edges", "0"]);
    assert_eq!(zero.status.code(), Some(2));
}

#[test]
fn construct_families() {
    let b0 = upoly(&["construct", "--family", "b", "--k", "0"]);
    assert_eq!(stdout(&b0), "{\"n\":3,\"root\":0,\"edges\":[[0,1],[1,2]]}\n");
    let a1 = upoly(&["construct", "--family", "a", "--k", "1", "--format", "text"]);
    assert!(stdout(&a1).starts_with("6: "));
    let y = upoly(&["construct", "--family", "y", "--k", "1", "--l", "1", "--format", "text"]);
    assert!(stdout(&y).starts_with("22: "));
    let missing = upoly(&["construct", "--family", "z", "--k", "0"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("--l"));
    let capped = upoly(&["construct", "--family", "y", "--k", "4", "--l", "0"]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(stderr(&capped).contains("CapExceeded"));
}

#[test]
fn verify_pair_reports_agreement() {
    let o = upoly(&["verify-pair", "--k", "1", "--l", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["agree_upto"], 4);
    assert_eq!(v["n"], 22);
    assert_eq!(v["iso_free"], false);
    assert_eq!(v["identities_ok"], true);
    let text = upoly(&["verify-pair", "--k", "0", "--l", "0", "--format", "text"]);
    assert!(stdout(&text).starts_with("k=0 l=0 n=10 agree_upto=2"));
}

#[test]
fn verify_identities_passes() {
    let o = upoly(&["verify-identities", "--max-k", "2", "--max-pair", "1", "--samples", "3", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3 + 3 * 3 + 4);
    assert!(lines.iter().all(|l| l["ok"] == true));
    let capped = upoly(&["verify-identities", "--max-pair", "5"]);
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn reconstruct_example() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", EXAMPLE);
    let o = upoly(&["reconstruct", "--poly", &p, "--format", "text"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "6: 0 1 2 3 1 1\n");
    // JSON input gives the same tree
    let json = upoly(&["compute", "--tree", &write(&dir, "t.txt", "6: 0 1 2 3 1 1"), "--invariant", "u-rooted"]);
    let pj = write(&dir, "p.json", &stdout(&json));
    let again = upoly(&["reconstruct", "--poly", &pj]);
    assert_eq!(stdout(&again), stdout(&upoly(&["reconstruct", "--poly", &p])));
}

#[test]
fn reconstruct_rejects_invalid_input() {
    let failed = upoly_stdin(&["reconstruct", "--poly", "-"], "x1*z + 2*x1^2*z + z^3");
    assert_eq!(failed.status.code(), Some(1));
    assert!(stderr(&failed).contains("ReconstructionFailed"));
    let malformed = upoly_stdin(&["reconstruct", "--poly", "-"], "x1*z");
    assert_eq!(malformed.status.code(), Some(2));
    assert!(stderr(&malformed).contains("Malformed"));
    let unparsable = upoly_stdin(&["reconstruct", "--poly", "-"], "x1 +* z");
    assert_eq!(unparsable.status.code(), Some(2));
    assert!(stderr(&unparsable).contains("ParseError"));
}

#[test]
fn scan_finds_the_smallest_pair() {
    let o = upoly(&["scan", "--n-max", "10", "--level", "2", "--threads", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let body = stdout(&o);
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines.len(), 1);
    let rec: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(rec["n"], 10);
    assert_eq!(rec["m"], 2);
    assert_eq!(rec["members"].as_array().unwrap().len(), 2);
    let none = upoly(&["scan", "--n-max", "9", "--level", "2"]);
    assert_eq!(stdout(&none), "");
    let full = upoly(&["scan", "--n-max", "8"]);
    assert_eq!(stdout(&full), "");
}

#[test]
fn phi_side_by_side() {
    let o = upoly(&["phi", "--m", "2", "--n-max", "12"]);
    assert_eq!(stdout(&o), "{\"m\":2,\"n_max\":12,\"phi_restricted\":10,\"upper_bound\":10}\n");
    let text = upoly(&["phi", "--m", "2", "--n-max", "9", "--format", "text"]);
    assert_eq!(stdout(&text), "m=2 n_max=9 phi_restricted=none upper_bound=10\n");
}

#[test]
fn out_flag_and_repeatability() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.json");
    let args = ["verify-identities", "--samples", "4", "--seed", "11", "--max-k", "2", "--max-pair", "1"];
    let o = upoly(&[&args[..], &["--out", out.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
    let first = fs::read(&out).unwrap();
    let second = upoly(&args).stdout;
    assert_eq!(first, second);
    assert_eq!(upoly(&args).stdout, second);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(upoly(&["compute", "--bogus"]).status.code(), Some(2));
    assert_eq!(upoly(&["nonsense"]).status.code(), Some(2));
    assert_eq!(upoly(&["scan", "--n-max", "3", "--level", "x"]).status.code(), Some(2));
    let missing = upoly(&["compute", "--tree", "/nonexistent/t.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("Io"));
}
