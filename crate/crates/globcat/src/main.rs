use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = globcat::run_args(std::env::args_os().skip(1));
    let mut stdout = std::io::stdout().lock();
    // clap's own messages go to stderr like any other usage error
    if out.code == 2 && !out.stdout.starts_with('{') {
        eprint!("{}", out.stdout);
    } else {
        let _ = stdout.write_all(out.stdout.as_bytes());
    }
    ExitCode::from(out.code as u8)
}
