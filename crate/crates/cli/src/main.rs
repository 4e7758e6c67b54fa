use clap::Parser;

use hyperlip_cli::config::Cli;
use hyperlip_cli::{commands, exit_code_for};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = commands::run(cli) {
        eprintln!("error: {e:#}");
        std::process::exit(exit_code_for(&e));
    }
}
