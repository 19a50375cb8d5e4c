#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use toricity_core::exactalg::{Integer, IntegerMatrix};

pub fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_file(name: &str) -> String {
    corpus().join(name).to_string_lossy().into_owned()
}

pub fn data_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn toricity(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toricity"))
        .args(args)
        .env_remove("TORICITY_SEED")
        .output()
        .expect("the binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// Runs the command, requires success, and parses stdout as JSON.
pub fn json(args: &[&str]) -> Value {
    let out = toricity(args);
    assert!(
        out.status.success(),
        "toricity {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

pub fn integer_matrix(v: &Value) -> IntegerMatrix {
    let rows: Vec<Vec<Integer>> = v
        .as_array()
        .expect("matrix rows")
        .iter()
        .map(|r| {
            r.as_array()
                .expect("matrix row")
                .iter()
                .map(|x| match x {
                    Value::String(s) => s.parse().expect("integer string"),
                    other => Integer::from(other.as_i64().expect("integer entry")),
                })
                .collect()
        })
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    IntegerMatrix::from_rows(cols, rows).expect("rectangular matrix")
}
