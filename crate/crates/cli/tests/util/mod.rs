//! Shared helpers for driving the compiled binary from integration tests.

#![allow(dead_code)] // each suite compiles this module separately and uses its own subset

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde_json::Value;

static DIR_SEQ: AtomicUsize = AtomicUsize::new(0);

/// A fresh scratch directory under the system temp dir.
pub fn scratch_dir(tag: &str) -> PathBuf {
    let n = DIR_SEQ.fetch_add(1, Ordering::Relaxed);
    let dir = std::env::temp_dir().join(format!(
        "schottky-cli-{tag}-{}-{n}",
        std::process::id()
    ));
    std::fs::create_dir_all(&dir).expect("create scratch dir");
    dir
}

pub fn write_json(dir: &Path, name: &str, value: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).expect("write input");
    path
}

pub struct Outcome {
    pub code: i32,
    pub report: Option<Value>,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    /// The `result` payload; panics if the run did not succeed.
    pub fn result(&self) -> &Value {
        assert_eq!(self.code, 0, "stderr: {}", self.stderr);
        let report = self.report.as_ref().expect("report JSON on stdout");
        assert_eq!(report["ok"], Value::Bool(true));
        &report["result"]
    }

    pub fn error_message(&self) -> &str {
        let report = self.report.as_ref().expect("report JSON on stdout");
        assert_eq!(report["ok"], Value::Bool(false));
        report["error"].as_str().expect("error string")
    }
}

/// Runs the binary with the given arguments, capturing the report.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let output = Command::new(env!("CARGO_BIN_EXE_schottky"))
        .args(args)
        .output()
        .expect("spawn schottky");
    let stdout = String::from_utf8_lossy(&output.stdout).into_owned();
    let stderr = String::from_utf8_lossy(&output.stderr).into_owned();
    Outcome {
        code: output.status.code().expect("exit code"),
        report: serde_json::from_str(&stdout).ok(),
        stdout,
        stderr,
    }
}
