use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use balanced_cone::cli::commands::exit;
use balanced_cone::cli::{parse_input, run_command, Command, Options, Report, Target};
use balanced_cone::graded::Grading;
use balanced_cone::groebner::Budget;
use balanced_cone::poly::Rational;

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum GradingArg {
    Filtration,
    Original,
}

/// Exact I-adic and balanced filtrations of finitely presented rings.
#[derive(Debug, Parser)]
#[command(name = "balcone", version)]
struct Args {
    command: Command,
    /// Session file; standard input when omitted or `-`.
    input: Option<PathBuf>,
    /// Element to evaluate (`q`, `barq`); repeatable.
    #[arg(long = "of")]
    of: Vec<String>,
    /// Adic search cap.
    #[arg(long, default_value_t = 16)]
    cap: u32,
    #[arg(long, default_value = "2")]
    degree_bound: Rational,
    #[arg(long, default_value_t = 4)]
    power_bound: u32,
    #[arg(long, default_value_t = 4)]
    relation_degree: u32,
    #[arg(long, num_args = 2, value_names = ["D0", "D1"])]
    window: Option<Vec<Rational>>,
    #[arg(long, default_value_t = 6)]
    denominator_bound: u32,
    /// Reduction steps per Gröbner computation.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    target: Option<Target>,
    #[arg(long, value_enum, default_value = "filtration")]
    grading: GradingArg,
    /// Largest degree for Hilbert tables, original degrees and toric dilations.
    #[arg(long)]
    degree: Option<Rational>,
    #[arg(long)]
    machine: bool,
}

fn read_input(path: &Option<PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(exit::USAGE as u8);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let opts = Options {
        cap: args.cap,
        degree_bound: args.degree_bound,
        power_bound: args.power_bound,
        relation_degree: args.relation_degree,
        window: args.window.map(|w| (w[0].clone(), w[1].clone())),
        denominator_bound: args.denominator_bound,
        budget: args.budget.map(Budget::steps).unwrap_or_default(),
        machine: args.machine,
        of: args.of,
        target: args.target,
        grading: match args.grading {
            GradingArg::Filtration => Grading::Filtration,
            GradingArg::Original => Grading::Original,
        },
        degree: args.degree,
    };
    let report = match read_input(&args.input) {
        Err(e) => Report::error(args.command.name(), exit::USAGE, format!("cannot read input: {e}")),
        Ok(text) => match parse_input(&text) {
            Err(e) => Report::error(args.command.name(), exit::USAGE, e.to_string()),
            Ok(session) => run_command(&session, args.command, &opts),
        },
    };
    print!("{}", report.render(opts.machine));
    ExitCode::from(report.exit_code as u8)
}
