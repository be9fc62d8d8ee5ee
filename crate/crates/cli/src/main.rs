mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{AfeArgs, CertifyArgs, CharactersArgs, CoeffArgs, EvalArgs, TailArgs};

const AFTER_HELP: &str = "\
Output:
  default   aligned text table
  --json    {\"schema\":\"1\",\"command\",\"parameters\",\"result\"}; floats carry 17
            significant digits, complex numbers are [re, im]
  --csv     eval/afe/tail: quantity,re,im,error_bound
            coeff: r,re,im,error_estimate,route
            certify: bound_id,r,alpha,lambda,q,label,check,measured,bound,margin,
                     asserted, then one column per extra report column
            characters: label,conductor,parity,primitive,principal,n,re,im

Exit status: 0 success, 1 invalid input, 2 an asserted bound failed.";

#[derive(Parser)]
#[command(name = "zeta-lab", version, about = "Hurwitz, Lerch and Dirichlet L-function derivatives", after_help = AFTER_HELP)]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate ζ^(r)(s,α), Z^(r)(s,a,q), L^(r)(s,χ) or φ^(r)(λ,α,s).
    Eval(EvalArgs),
    /// Tabulate expansion coefficients for r = 0..=r-max.
    Coeff(CoeffArgs),
    /// Sweep a bound over a parameter grid.
    Certify(CertifyArgs),
    /// Evaluate through the approximate functional equation.
    Afe(AfeArgs),
    /// List the Dirichlet characters mod q.
    Characters(CharactersArgs),
    /// Sawtooth-weighted tail integral from x to infinity.
    Tail(TailArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let outcome = match &cli.command {
        Command::Eval(a) => commands::eval(a),
        Command::Coeff(a) => commands::coeff(a),
        Command::Certify(a) => commands::certify(a),
        Command::Afe(a) => commands::afe(a),
        Command::Characters(a) => commands::characters(a),
        Command::Tail(a) => commands::tail(a),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let text = if cli.json {
        outcome.json
    } else if cli.csv {
        outcome.table.csv()
    } else {
        let mut t = outcome.table.human();
        for line in &outcome.summary {
            t.push_str(line);
            t.push('\n');
        }
        t
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
