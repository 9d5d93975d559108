//! End-to-end tests of the binary: exit codes, canonical outputs,
//! byte-identical reports, and the config file.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algebroid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bracket_example() {
    let o = run(&[
        "courant", "bracket", "--n", "3", "--twist", "dx1^dx2^dx3", "--left", "[0|e1]",
        "--right", "[0|e2]",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[dx3|0]");
}

#[test]
fn check_pass_and_fail_exit_codes() {
    let o = run(&[
        "vertex", "check", "--n", "2", "--maxdeg", "3", "--trials", "50", "--seed", "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let body = stdout(&o);
    assert!(body.contains("\"status\": \"pass\""));
    assert!(body.contains("\"axioms\": 14"));
    assert!(body.contains("\"failures\": []"));

    // a flipped sign fails with exit code 1 and a witness in the report
    let o = run(&[
        "vertex", "check", "--n", "2", "--trials", "30", "--sign-assoc", "-1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"witnesses\""));
}

#[test]
fn input_errors_exit_2() {
    let o = run(&["calc", "d", "--n", "2", "--left", "x1^2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(err.contains("col 3"));
    assert!(err.contains("wedge"));

    let o = run(&["courant", "check", "--n", "4", "--twist", "x4*dx1^dx2^dx3"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["courant", "bogus", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let args = [
        "courant", "check", "--n", "3", "--twist", "dx1^dx2^dx3", "--trials", "40", "--seed",
        "123",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let args = ["vertex", "signsearch", "--n", "1", "--trials", "60"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("+-+---"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join("algebroid-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, "n=3\ntrials=20\nseed=5\ntwist=dx1^dx2^dx3\n").unwrap();
    let o = run(&["courant", "check", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"n\": 3"));
    // explicit flag wins over the config value
    let o = run(&[
        "courant", "check", "--config", cfg.to_str().unwrap(), "--trials", "10",
    ]);
    assert!(stdout(&o).contains("\"trials\": 10"));
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = std::env::temp_dir().join("algebroid-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = run(&[
        "vertex", "check", "--n", "1", "--trials", "20", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let on_disk = std::fs::read_to_string(&path).unwrap();
    assert_eq!(on_disk, stdout(&o));
}

#[test]
fn calc_and_chiral_surfaces() {
    let o = run(&["calc", "kappa", "--n", "3", "--left", "dx1^dx2^dx3"]);
    assert_eq!(
        stdout(&o).trim(),
        "1/3*x3*dx1^dx2-1/3*x2*dx1^dx3+1/3*x1*dx2^dx3"
    );
    let o = run(&[
        "chiral", "member", "--n", "1", "--truncate", "3", "--term", "-1:x1:e1;-1:-1:x1*e1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"member\": true"));
    let o = run(&[
        "chiral", "flat", "--n", "3", "--truncate", "2", "--twist", "t1*t2*t3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"db_plus_h_zero\": true"));
    let o = run(&["chiral", "check", "--n", "1", "--truncate", "3", "--trials", "30"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"condition_lin\": true"));
}

#[test]
fn vertex_value_examples() {
    let o = run(&["vertex", "star", "--n", "1", "--left", "x1", "--right", "[0|e1]"]);
    assert_eq!(stdout(&o).trim(), "[0|x1*e1]");
    let o = run(&[
        "vertex", "bracket", "--n", "2", "--left", "[0|e1]", "--right", "[0|x1*e2]",
    ]);
    assert_eq!(stdout(&o).trim(), "[0|e2]");
    let o = run(&[
        "vertex", "torsor-diff", "--n", "3", "--left", "dx1^dx2^dx3", "--right", "0",
    ]);
    assert_eq!(stdout(&o).trim(), "dx1^dx2^dx3");
}
