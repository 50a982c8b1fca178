use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = tcolor::cli::dispatch(std::env::args_os());
    let res = if code == tcolor::cli::EXIT_INPUT {
        std::io::stderr().write_all(out.as_bytes())
    } else {
        std::io::stdout().write_all(out.as_bytes())
    };
    if res.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
