use std::io::{self, IsTerminal};
use std::process::ExitCode;

use almost_perfect::cli::{run, Format};

fn main() -> ExitCode {
    let default_format = if io::stdout().is_terminal() {
        Format::Human
    } else {
        Format::Machine
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = run(std::env::args_os(), &mut out, &mut io::stderr(), default_format);
    drop(out);
    ExitCode::from(code as u8)
}
