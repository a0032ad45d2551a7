use clap::error::ErrorKind;
use clap::Parser;

use howe_cli::run::{run, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successes; usage mistakes are domain
            // errors (exit 1), matching the element/prime validation path.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli.cmd) {
        Ok(out) => {
            println!("{}", out.text);
            std::process::exit(out.status);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(howe_cli::exit_code(&e));
        }
    }
}
