//! Batch fit-and-emit tool around `trigfit-core`: CSV in, JSON coefficient
//! reports and CSV grid evaluations out, suitable for external plotting.

pub mod args;
pub mod commands;
pub mod csvio;
pub mod report;
pub mod threads;

use args::{Cli, Command};

/// Exit codes: 0 ok, 1 input/validation, 2 numerical breakdown,
/// 3 non-converged best-effort result.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Fit1d(a) => commands::fit1d::run(&a),
        Command::Curve(a) => commands::curve::run(&a),
        Command::Seq(a) => commands::seq::run(&a),
        Command::Diag(a) => commands::diag::run(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("trigfit: error: {err:#}");
            exit_code_for(&err)
        }
    }
}

/// Numerical failures map to 2, everything else (IO, parsing, validation)
/// to 1.
pub fn exit_code_for(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(core_err) = cause.downcast_ref::<trigfit_core::Error>() {
            match core_err {
                trigfit_core::Error::Breakdown { .. }
                | trigfit_core::Error::SingularSystem { .. }
                | trigfit_core::Error::ZeroPivot
                | trigfit_core::Error::RankDeficient => return 2,
                _ => return 1,
            }
        }
    }
    1
}
