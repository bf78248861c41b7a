use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = mahonian_cli::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(&out.stdout).and_then(|()| stdout.flush()).is_err() {
        return ExitCode::from(mahonian_cli::EXIT_USAGE);
    }
    eprint!("{}", out.stderr);
    ExitCode::from(out.status)
}
