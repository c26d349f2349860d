//! End-to-end checks of the `khseq` binary: outputs and the exit-code
//! contract (0 pass, 1 fail, 2 config, 3 resource).

use std::fs;
use std::process::{Command, Output};

fn khseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_khseq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn gen_van_der_corput() {
    let o = khseq(&["gen", "--p", "2", "--halton", "X", "--n", "8"]);
    assert_eq!(code(&o), 0);
    let floats: Vec<f64> = stdout(&o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(floats, [0.0, 0.5, 0.25, 0.75, 0.125, 0.625, 0.375, 0.875]);
}

#[test]
fn gen_hybrid_prefix() {
    let o = khseq(&["gen", "--p", "2", "--kronecker", "gap2", "--halton", "X", "--n", "8", "--prec", "24"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 8);
    // Columns are n, then digits and float per coordinate.
    // n = 1: {L} has digits a_1 a_2 ... = 1 0 0 1 0 0 0 0 0 1 ..., Halton 1/2.
    let cols: Vec<&str> = rows[1].split(',').collect();
    assert_eq!(cols[0], "1");
    assert_eq!(cols[1], "100100000100000000000100");
    assert_eq!(cols[3], "100000000000000000000000");
}

#[test]
fn gen_rejects_common_bases() {
    let o = khseq(&["gen", "--p", "2", "--halton", "X", "--halton", "X", "--n", "4"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("coprime"));
}

#[test]
fn gen_rejects_composite_p() {
    assert_eq!(code(&khseq(&["gen", "--p", "4", "--halton", "X", "--n", "4"])), 2);
}

#[test]
fn cf_gap2() {
    let o = khseq(&["cf", "--p", "2", "--series", "gap2", "--terms", "6"]);
    assert_eq!(code(&o), 0);
    let quotients: Vec<String> = stdout(&o)
        .lines()
        .filter_map(|l| l.strip_prefix("h="))
        .map(|l| l.split(' ').nth(1).unwrap().trim_start_matches("A=").to_string())
        .collect();
    assert_eq!(quotients, ["X", "X^2", "X", "X^2", "X", "X^2"]);
    assert!(stdout(&o).contains("K=2 horizon=6"));
}

#[test]
fn cf_rational() {
    let o = khseq(&["cf", "--p", "2", "--series", "rational:X+1/X^2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("h=1 A=X+1 d=1"));
    assert!(text.contains("h=2 A=X+1 d=2"));
    assert!(!text.contains("h=3"));
}

#[test]
fn cf_zero_series_is_config_error() {
    assert_eq!(code(&khseq(&["cf", "--p", "2", "--series", "rational:0/1"])), 2);
}

#[test]
fn cf_short_expansion_is_resource_error() {
    let o = khseq(&["cf", "--p", "2", "--series", "rational:X+1/X^2", "--terms", "5"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn verify_thm3_level2() {
    let o = khseq(&["verify", "thm3", "--level", "2"]);
    assert_eq!(code(&o), 0);
    let line = stdout(&o);
    assert!(line.starts_with("PASS thm3"));
    for field in ["count=0", "expected_empty=true", "lower_bound=16", "N=512"] {
        assert!(line.contains(field), "{field} missing from {line}");
    }
}

#[test]
fn verify_thm3_bad_level() {
    assert_eq!(code(&khseq(&["verify", "thm3", "--level", "7"])), 2);
}

#[test]
fn verify_example2_and_prop1() {
    let o = khseq(&["verify", "example2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = khseq(&["verify", "prop1", "--series", "gap2", "--B", "X", "--mmax", "12"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("t_claim=2"));
}

#[test]
fn verify_prop1_rejects_rational() {
    assert_eq!(code(&khseq(&["verify", "prop1", "--series", "rational:1/X"])), 2);
}

#[test]
fn verify_fail_exits_1() {
    // A rational Kronecker series has N D*_N growing linearly.
    let o = khseq(&[
        "verify", "thm2", "--series", "rational:1/X^2", "--nlist", "256,512,1024,2048,4096",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("FAIL thm2"));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "lemma4", "--samples", "2000"];
    assert_eq!(stdout(&khseq(&args)), stdout(&khseq(&args)));
}

#[test]
fn gen_disc_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("points.csv");
    let path_s = path.to_str().unwrap();
    let o = khseq(&["gen", "--p", "2", "--kronecker", "gap2", "--halton", "X", "--n", "64", "--out", path_s]);
    assert_eq!(code(&o), 0);

    let bytes = fs::read(&path).unwrap();
    let dump = khseq::seqgen::read_points(&bytes[..]).unwrap();
    let rewritten = khseq::seqgen::write_points(Vec::new(), &dump).unwrap();
    assert_eq!(rewritten, bytes);

    let from_file = khseq(&["disc", "--in", path_s, "--nlist", "16,64"]);
    let inline = khseq(&["disc", "--p", "2", "--kronecker", "gap2", "--halton", "X", "--nlist", "16,64"]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(stdout(&from_file), stdout(&inline));
}

#[test]
fn disc_van_der_corput() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("vdc.csv");
    fs::write(&path, "# p=2\n# spec=halton:X\n# precision=2\n0,00,0\n1,10,0.5\n2,01,0.25\n3,11,0.75\n").unwrap();
    let o = khseq(&["disc", "--in", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("4,1/4,"));
}

#[test]
fn disc_empty_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.csv");
    fs::write(&path, "").unwrap();
    assert_eq!(code(&khseq(&["disc", "--in", path.to_str().unwrap()])), 2);
    fs::write(&path, "# p=2\n# spec=halton:X\n# precision=4\n").unwrap();
    assert_eq!(code(&khseq(&["disc", "--in", path.to_str().unwrap()])), 2);
}

#[test]
fn disc_normalized_table() {
    let o = khseq(&[
        "disc", "--p", "2", "--kronecker", "gap2", "--halton", "X", "--nlist", "16,64,256,1024",
        "--normalize", "sqrtlog",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "N,star_disc,star_disc_p,decimal,ND,ratio");
    // N D*_N regression values for the first hybrid prefixes.
    assert!(rows[1].starts_with("16,") && rows[1].contains(",5132197/2^21,"));
    assert!(rows[4].starts_with("1024,") && rows[4].contains(",4439183/2^20,"));
}

#[test]
fn disc_cap_is_resource_error() {
    let o = khseq(&["disc", "--p", "2", "--kronecker", "gap2", "--halton", "X", "--nlist", "8192"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn threads_flag_is_accepted() {
    let o = khseq(&["--threads", "2", "verify", "nets", "--halton", "X", "--halton", "X+1", "--mmax", "8"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("s=2"));
}
