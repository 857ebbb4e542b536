use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(msg) = sqdist::cli::configure_threads() {
        eprintln!("warning: {msg}");
    }
    let out = sqdist::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code)
}
