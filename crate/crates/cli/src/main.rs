use std::process::ExitCode;

use clap::Parser;
use tcb_fisher_cli::config::{self, Cli};
use tcb_fisher_cli::{run_all, CliError};

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_owned(), |v| format!("{v:.4e}"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let configs = match config::resolve_cli(&cli) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };

    let mut status = 0;
    for result in run_all(&configs) {
        match result {
            Ok(out) => {
                let c = &out.config;
                println!(
                    "{}: N={} dt={} {}",
                    c.preset,
                    c.n,
                    c.dt,
                    config::linearization_name(c.linearization)
                );
                println!("{:>12} {:>12} {:>12}", "t", "linf", "relative");
                for r in &out.reports {
                    println!("{:>12} {:>12} {:>12}", r.t, fmt_opt(r.linf), fmt_opt(r.relative));
                }
                println!("wrote {} files to {}", out.files.len(), c.output_path.display());
            }
            Err(e) => {
                eprintln!("error: {e}");
                if status == 0 {
                    status = e.exit_code();
                }
            }
        }
    }
    ExitCode::from(status as u8)
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}
