use std::process::{Command, Output};

use vcinv::ringcalc::{DimensionTable, FreeBasisReport};
use vcinv::{GroupKind, HilbertSeries, Status};

fn vcinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vcinv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn identities_pass_at_q3() {
    let o = vcinv(&["identities", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("16/16 identities PASS; 3/3 h relations PASS"));
}

#[test]
fn identities_at_q2_and_extension_field() {
    for q in ["2", "2^2", "3^2"] {
        let o = vcinv(&["identities", "--q", q]);
        assert_eq!(o.status.code(), Some(0), "q={q}");
    }
}

#[test]
fn non_prime_power_is_a_usage_error() {
    let o = vcinv(&["identities", "--q", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a prime power"));
}

#[test]
fn dims_csv_rows() {
    let o = vcinv(&["dims", "--group", "sl2", "--q", "2", "--max-deg", "12", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 14);
    assert_eq!(lines[0], "degree,dim");
    assert_eq!(lines[1], "0,1");
    assert_eq!(lines[3], "2,3");
}

#[test]
fn dims_json_round_trip() {
    let o = vcinv(&["dims", "--group", "gl2", "--q", "3", "--max-deg", "8", "--format", "json"]);
    let t: DimensionTable = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t.group, GroupKind::GL2);
    assert_eq!(t.dims, vec![1, 0, 1, 0, 3, 0, 5, 0, 10]);
    assert_eq!(serde_json::to_string_pretty(&t).unwrap() + "\n", stdout(&o));
}

#[test]
fn gorenstein_exponent() {
    let o = vcinv(&["gorenstein", "--group", "sl2", "--q", "3"]);
    assert_eq!(stdout(&o), "i = 4\n");
    let o = vcinv(&["gorenstein", "--group", "gl2", "--q", "5"]);
    assert_eq!(stdout(&o), "i = 4\n");
}

#[test]
fn basis_check_passes() {
    let o = vcinv(&["basis-check", "--basis", "S", "--q", "2", "--max-deg", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
    let o = vcinv(&["basis-check", "--basis", "D", "--q", "3", "--max-deg", "12", "--format", "json"]);
    let r: FreeBasisReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.hsop_degrees, [8, 6, 8, 6]);
}

#[test]
fn trace_of_u1_is_u1() {
    let o = vcinv(&["trace", "--q", "3", "--poly", "x1^3*y1 + x2^3*y2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x1^3*y1 + x2^3*y2\n");
}

#[test]
fn trace_rejects_non_invariant_input() {
    let o = vcinv(&["trace", "--q", "3", "--poly", "x1*y2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = vcinv(&["trace", "--q", "3", "--poly", "x1 +"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hilbert_json_round_trip_and_expansion() {
    let o = vcinv(&["hilbert", "--group", "sl2", "--q", "2", "--expand", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let h: HilbertSeries = serde_json::from_value(v["series"].clone()).unwrap();
    assert_eq!(h.denominator, vec![3, 2, 3, 2]);
    assert_eq!(v["expansion"], serde_json::json!([1, 0, 3, 4, 6]));
    assert_eq!(v["matches_basis_series"], serde_json::json!(true));
}

#[test]
fn hilbert_csv_expansion() {
    let o = vcinv(&["hilbert", "--group", "gl2", "--q", "3", "--expand", "4", "--format", "csv"]);
    assert_eq!(stdout(&o), "degree,coefficient\n0,1\n1,0\n2,1\n3,0\n4,3\n");
}

#[test]
fn generators_and_nonmembership() {
    let o = vcinv(&["generators-check", "--q", "3", "--max-deg", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let o = vcinv(&["generators-check", "--group", "sl2", "--q", "3", "--max-deg", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let o = vcinv(&["generators-check", "--group", "sl2", "--q", "2", "--max-deg", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = vcinv(&["nonmembership-h1", "--q", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "element,in_span\nh_1,false\nc21,true\nh_0,true\n");
}

#[test]
fn guard_is_reported() {
    let o = vcinv(&["dims", "--group", "sl2", "--q", "2", "--max-deg", "40"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("guard"));
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ids.json");
    let p = path.to_str().unwrap();
    let a = vcinv(&["identities", "--q", "4", "--format", "json", "--out", p]);
    assert_eq!(a.status.code(), Some(0));
    assert!(a.stdout.is_empty());
    let first = std::fs::read(&path).unwrap();
    vcinv(&["identities", "--q", "4", "--format", "json", "--out", p]);
    assert_eq!(first, std::fs::read(&path).unwrap());
    let direct = vcinv(&["identities", "--q", "4", "--format", "json"]);
    assert_eq!(first, direct.stdout);
}
