//! Runs the binary on built-in examples and fixture files. Outputs are
//! compared byte for byte with `tests/golden/*.txt`; set `UPDATE_GOLDEN=1` to
//! rewrite them.

use std::path::PathBuf;
use std::process::Command;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hhloop"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("sphere_f2_ring", &["example", "sphere", "--even", "1", "--p", "2", "--max-degree", "8", "--ring"]),
    ("sphere_f3_ring", &["example", "sphere", "--even", "1", "--p", "3", "--max-degree", "8", "--ring"]),
    ("sphere_f2_loop", &["example", "sphere", "--even", "2", "--p", "2", "--max-degree", "12", "--loop", "--ring"]),
    ("cpn_f3_dims", &["example", "cpn", "--n", "2", "--p", "3", "--max-degree", "10"]),
    ("cpn_f2_ring_csv", &["example", "cpn", "--n", "2", "--p", "2", "--max-degree", "8", "--ring", "--format", "csv"]),
    ("cpn_f3_rho", &["example", "cpn", "--n", "1", "--p", "3", "--max-degree", "6", "--rho"]),
    ("sigma_cp2_ring", &["example", "sigma-cp2", "--max-degree", "10", "--ring"]),
    ("sigma_cp2_square", &["example", "sigma-cp2", "--max-degree", "10", "--power", "2", "--class", "1[x3]"]),
    ("sigma_cp2_loop", &["example", "sigma-cp2", "--max-degree", "10", "--loop"]),
    ("g2_ring", &["example", "g2", "--max-degree", "10", "--ring"]),
    ("g2_fifth_power", &["example", "g2", "--max-degree", "10", "--power", "5"]),
    ("g2_fifth_power_eps3", &["example", "g2", "--max-degree", "10", "--power", "5", "--epsilon", "3"]),
    ("file_cp2_hh", &["hh", "fixtures/cp2.txt", "--max-degree", "10", "--format", "csv"]),
    ("file_sphere4_ring_shc", &["hh", "fixtures/sphere4.txt", "--max-degree", "12", "--ring", "--pipeline", "shc"]),
];

fn check_golden(name: &str, args: &[&str]) {
    let (code, stdout, stderr) = run(args);
    assert_eq!(code, 0, "{name}: {stderr}");
    let path: PathBuf = root().join("golden").join(format!("{name}.txt"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &stdout).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(stdout, expected, "{name} differs from {}", path.display());
}

#[test]
fn golden_outputs() {
    for (name, args) in GOLDEN {
        check_golden(name, args);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["example", "sigma-cp2", "--max-degree", "8", "--ring", "--format", "csv"];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn degree_zero_prints_one_line() {
    let (code, out, _) = run(&["example", "sphere", "--max-degree", "0", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "degree,dim\n0,1\n");
}

#[test]
fn first_power_is_the_class() {
    let (code, out, _) = run(&["example", "g2", "--max-degree", "6", "--power", "1", "--class", "x3[]"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(x3[])^1 = x3[]");
    let (code, _, err) = run(&["example", "g2", "--max-degree", "6", "--power", "1", "--class", "1[x5]"]);
    assert_eq!(code, 1);
    assert!(err.contains("not a cycle"), "{err}");
}

#[test]
fn validate_exit_codes() {
    let (code, out, _) = run(&["validate", "fixtures/cp2.txt"]);
    assert_eq!(code, 0);
    assert!(out.contains("pass"));

    let (code, out, _) = run(&["validate", "fixtures/broken_leibniz.txt"]);
    assert_eq!(code, 1);
    assert!(out.contains("Leibniz"));

    let (code, _, err) = run(&["validate", "fixtures/malformed.txt"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 5"), "{err}");
}

#[test]
fn truncation_exit_code() {
    let (code, _, err) = run(&["example", "g2", "--max-degree", "12", "--power", "5"]);
    assert_eq!(code, 3, "{err}");
    let (code, _, _) = run(&["hh", "fixtures/sigma_cp2.txt", "--max-degree", "8"]);
    assert_eq!(code, 3);
}

#[test]
fn file_model_agrees_with_builtin() {
    let (code, out, err) = run(&["power", "fixtures/sigma_cp2.txt", "--class", "1[a]", "--k", "2", "--max-degree", "6"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.trim(), "(1[a])^2 = 1[b]");
    let file = run(&["hh", "fixtures/sigma_cp2.txt", "--max-degree", "6", "--ring"]).1;
    let builtin = run(&["example", "sigma-cp2", "--max-degree", "6", "--ring"]).1;
    let dims = |s: &str| s.split("\n\n").next().unwrap().to_string();
    assert_eq!(dims(&file), dims(&builtin));
    let products = |s: &str| s.lines().filter(|l| l.contains(" * ")).count();
    assert_eq!(products(&file), products(&builtin));
}

#[test]
fn field_flag_must_match_input() {
    let (code, _, err) = run(&["hh", "fixtures/cp2.txt", "--field", "5"]);
    assert_eq!(code, 1);
    assert!(err.contains("disagrees"));
}
