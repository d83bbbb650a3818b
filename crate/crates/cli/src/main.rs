use clap::Parser;
use futaki_cli::{execute, render, Cli, CliError};

fn main() {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(doc) => print!("{}", render(&doc, cli.format)),
        Err(e) => {
            if let CliError::Verification { report, .. } = &e {
                print!("{}", render(report, cli.format));
            }
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
