//! Thin binary shim; all behavior lives in [`amr_distill::cli`].

use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(amr_distill::cli::run(std::env::args_os()) as u8)
}
