//! Runs without the libtest harness so every criterion line prints; exits non-zero if any fails.

use std::process::ExitCode;

fn main() -> ExitCode {
    if sumrules_validation::run() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
