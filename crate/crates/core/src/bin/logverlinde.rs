use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = logverlinde::cli::run_command(std::env::args_os());
    if code == logverlinde::cli::EXIT_USAGE || out.starts_with("error:") {
        eprint!("{out}");
    } else {
        let _ = std::io::stdout().write_all(out.as_bytes());
    }
    ExitCode::from(code as u8)
}
