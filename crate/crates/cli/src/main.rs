use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (code, out) = krc_cli::run(&args);
    print!("{out}");
    ExitCode::from(code as u8)
}
