use std::io::{IsTerminal, Read, Write};

use anyhow::Result;
use clap::Parser;
use su21_cli::{execute, Cli, Command};

fn main() -> Result<()> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut stdin = Vec::new();
    if reads_stdin(&cli.command) && !std::io::stdin().is_terminal() {
        std::io::stdin().read_to_end(&mut stdin)?;
    }
    let out = execute(&cli, &stdin);
    std::io::stdout().write_all(&out.stdout)?;
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}

fn reads_stdin(c: &Command) -> bool {
    use Command::*;
    match c {
        Classify(i) | Invariants(i) | Pair(i) | Exists(i) | Jorgensen(i) | Jkp(i) => {
            i.input.as_ref().is_none_or(|p| p.as_os_str() == "-")
        }
        _ => false,
    }
}
