//! Behaviour that needs a real process: exit codes and the worker cap.

use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_desitter-lab")).args(args).output().expect("binary runs")
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(lab(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(lab(&["verify", "--ell", "-1"]).status.code(), Some(2));
    assert_eq!(lab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lab(&["geodesic", "--chart", "kerr"]).status.code(), Some(2));
}

#[test]
fn thread_cap_is_respected() {
    let capped = Command::new(env!("CARGO_BIN_EXE_desitter-lab"))
        .args(["verify", "--suite", "desitter"])
        .env("DESITTER_LAB_THREADS", "1")
        .output()
        .unwrap();
    let free = lab(&["verify", "--suite", "desitter"]);
    assert_eq!(capped.stdout, free.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_desitter-lab")).arg("algebra-report").env("DESITTER_LAB_THREADS", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

