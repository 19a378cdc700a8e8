use std::io;
use std::process::ExitCode;

use qbailey::catalog::Catalog;

fn main() -> ExitCode {
    let catalog = Catalog::standard();
    let code = qbailey_cli::run(
        std::env::args_os(),
        &catalog,
        &mut io::stdout(),
        &mut io::stderr(),
    );
    ExitCode::from(code as u8)
}
