use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = grassmat_cli::run_command(std::env::args_os());
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stderr.write_all(out.stderr.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(out.code as u8)
}
