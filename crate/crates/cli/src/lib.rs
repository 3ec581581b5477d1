//! Library side of the `desitter-lab` binary: configuration layering and the
//! subcommands, kept here so tests can drive them without a process.

pub mod commands;
pub mod config;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker pool.
pub const THREADS_VAR: &str = "DESITTER_LAB_THREADS";

/// Reads the worker cap. Unset means rayon's default.
pub fn threads_from_env() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("{THREADS_VAR} = {v:?} must be a positive integer")),
        },
    }
}
