use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let status = carc::cli::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(status as u8)
}
