mod args;
mod config;
mod figures;
mod report;
mod run;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, ExecutionArg};
use report::{config_error, Failure};
use run::Context;
use trigmie::Execution;

/// Exit status for a verification that found a violation.
const VIOLATION: u8 = 3;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match try_main() {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {f}");
            f.exit_code()
        }
    }
}

fn try_main() -> Result<ExitCode, Failure> {
    let argv = config::expand_args(std::env::args_os().collect())?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // help and version go to stdout and are not errors
            return Ok(if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS });
        }
    };

    let benchmarking = matches!(cli.command, Some(Command::Bench(_)))
        || cli.figure == Some(args::Figure::Speedup);
    if !benchmarking {
        if let Ok(v) = std::env::var("TRIGMIE_THREADS") {
            let n = v
                .parse()
                .map_err(|_| config_error(format!("TRIGMIE_THREADS must be a positive integer, got '{v}'")))?;
            trigmie::exec::set_thread_count(n)?;
        }
    }
    let ctx = Context {
        exec: match cli.execution {
            ExecutionArg::Parallel => Execution::Parallel,
            ExecutionArg::Sequential => Execution::Sequential,
        },
        seed: cli.seed,
    };

    let report = match (&cli.figure, &cli.command) {
        (Some(_), Some(_)) => return Err(config_error("--figure replaces the command; give one or the other")),
        (Some(f), None) => figures::run(*f, ctx, cli.histogram.as_deref())?,
        (None, None) => return Err(config_error("no command given; see --help")),
        (None, Some(cmd)) => match cmd {
            Command::Coeffs(a) => run::coeffs(a)?,
            Command::CrossSection(a) => run::cross_section(a)?,
            Command::Sweep(a) => run::sweep(a, ctx)?,
            Command::Integrate(a) => run::integrate(a, ctx)?,
            Command::Errors(a) => run::errors(a, ctx)?,
            Command::Bench(a) => run::bench(a, cli.histogram.as_deref())?,
            Command::Verify(a) => run::verify(a, ctx)?,
        },
    };

    report.table.write_to(cli.output.as_deref())?;
    for (path, table) in &report.extra {
        table.write_to(Some(path))?;
    }
    if cli.output.is_some() {
        println!("{}", report.summary);
    } else {
        eprintln!("{}", report.summary);
    }
    Ok(if report.violated { ExitCode::from(VIOLATION) } else { ExitCode::SUCCESS })
}
