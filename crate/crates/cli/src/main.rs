use clap::error::ErrorKind;
use clap::Parser;

fn main() {
    // usage errors are input errors (exit 1); 2 is reserved for numerical
    // breakdown
    let cli = match trigfit_cli::args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(err)
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) =>
        {
            let _ = err.print();
            std::process::exit(0);
        }
        Err(err) => {
            let _ = err.print();
            std::process::exit(1);
        }
    };
    std::process::exit(trigfit_cli::run(cli));
}
