use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = bunch_surface::commands::run(std::env::args_os());
    let _ = std::io::stdout().write_all(&out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code() as u8)
}
