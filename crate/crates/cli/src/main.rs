use std::io::Write;
use std::process::ExitCode;

/// Deeply nested numerals recurse deeply; give the worker room.
const STACK: usize = 256 << 20;

fn main() -> ExitCode {
    let out = std::thread::Builder::new()
        .stack_size(STACK)
        .spawn(|| meadow_cli::run(std::env::args_os()))
        .expect("spawn worker")
        .join()
        .expect("worker panicked");
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
