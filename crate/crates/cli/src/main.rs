//! Command line front end: validate and run scenario files, execute
//! the bundled demonstrations, and re-check emitted certificates.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cogap_core::certificate;
use cogap_core::scenario::{
    bundled_scenario, exit_code, parse_scenario, resolve, run_scenario, RunOptions,
    ScenarioReport, DEFAULT_SEED,
};
use cogap_core::suites::{
    graph_gtc_suite, prism_comparison_suite, square_cofibration_suite, standard_contexts,
    SuiteOutcome,
};
use cogap_core::{Budget, Error};

const BUDGET_VAR: &str = "COGAP_BUDGET";

#[derive(Parser)]
#[command(
    name = "cogap",
    version,
    about = "Workbench for finite presheaf categories: scenario runs, lifting search, and machine-checkable certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a scenario file and construct everything it declares.
    Validate { file: PathBuf },
    /// Execute a scenario's task and print its report.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Seed for any random draws the task performs.
        #[arg(long)]
        seed: Option<u64>,
        /// Search budget in visited assignments.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run a bundled demonstration:
    /// kan-prisms | frobenius | left-fibration-counterexample | cylinders.
    Demo {
        name: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Rebuild a certificate from its raw tables and re-check every
    /// required equation.
    ReVerify { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Run { file, format, seed, budget } => run(&file, format, seed, budget),
        Command::Demo { name, format, seed, budget } => demo(&name, format, seed, budget),
        Command::ReVerify { file } => re_verify(&file),
    };
    ExitCode::from(code)
}

fn resolve_budget(flag: Option<u64>) -> Result<Budget, String> {
    if let Some(n) = flag {
        return Ok(Budget::new(n));
    }
    match std::env::var(BUDGET_VAR) {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map(Budget::new)
            .map_err(|_| format!("{BUDGET_VAR} must be an integer, found {text:?}")),
        Err(std::env::VarError::NotPresent) => Ok(Budget::default()),
        Err(e) => Err(format!("{BUDGET_VAR}: {e}")),
    }
}

fn options(seed: Option<u64>, budget: Option<u64>) -> Result<RunOptions, String> {
    Ok(RunOptions { seed: seed.unwrap_or(DEFAULT_SEED), budget: resolve_budget(budget)? })
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::CheckFailed { .. } | Error::NotFibration { .. } => 1,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn validate(path: &Path) -> u8 {
    let text = match read(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let scenario = match parse_scenario(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match resolve(&scenario, &Budget::default()) {
        Ok(resolved) => {
            println!(
                "ok: {} presheaves and {} maps over {}",
                resolved.presheaves.len(),
                resolved.maps.len(),
                resolved.base.name()
            );
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_code(&e)
        }
    }
}

fn print_report(report: &ScenarioReport, format: Format) -> u8 {
    match format {
        Format::Text => {
            print!("{}", report.render_text());
            0
        }
        Format::Json => match report.render_json() {
            Ok(text) => {
                print!("{text}");
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
    }
}

fn run(path: &Path, format: Format, seed: Option<u64>, budget: Option<u64>) -> u8 {
    let opts = match options(seed, budget) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let text = match read(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let scenario = match parse_scenario(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let outcome = run_scenario(&scenario, &opts);
    let code = exit_code(&outcome) as u8;
    match outcome {
        Ok(report) => {
            let print_code = print_report(&report, format);
            if print_code != 0 {
                return print_code;
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            code
        }
    }
}

fn suite_text(outcome: &SuiteOutcome) -> String {
    let mut out = format!(
        "suite: {}\ncases: {}\noutcome: {}\n",
        outcome.name,
        outcome.cases,
        if outcome.passed() { "pass" } else { "fail" }
    );
    for failure in &outcome.failures {
        out.push_str(&format!("  failure: {failure}\n"));
    }
    out
}

fn demo(name: &str, format: Format, seed: Option<u64>, budget: Option<u64>) -> u8 {
    let opts = match options(seed, budget) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let mut texts: Vec<String> = Vec::new();
    let mut values: Vec<serde_json::Value> = Vec::new();
    let mut worst: u8 = 0;

    let push_suite = |outcome: SuiteOutcome, texts: &mut Vec<String>, values: &mut Vec<serde_json::Value>, worst: &mut u8| {
        if !outcome.passed() {
            *worst = (*worst).max(1);
        }
        texts.push(suite_text(&outcome));
        values.push(serde_json::to_value(&outcome).expect("suite outcomes serialize"));
    };
    let push_scenario = |name: &str, texts: &mut Vec<String>, values: &mut Vec<serde_json::Value>, worst: &mut u8| {
        let outcome = bundled_scenario(name).and_then(|s| run_scenario(&s, &opts));
        *worst = (*worst).max(exit_code(&outcome) as u8);
        match outcome {
            Ok(report) => {
                texts.push(report.render_text());
                values.push(serde_json::to_value(&report).expect("reports serialize"));
            }
            Err(e) => eprintln!("error: {e}"),
        }
    };

    match name {
        "kan-prisms" => match prism_comparison_suite() {
            Ok(outcome) => push_suite(outcome, &mut texts, &mut values, &mut worst),
            Err(e) => {
                eprintln!("error: {e}");
                return error_code(&e);
            }
        },
        "cylinders" => {
            let contexts = match standard_contexts() {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return error_code(&e);
                }
            };
            for (k, ctx) in contexts.iter().enumerate() {
                let graph = graph_gtc_suite(ctx, opts.seed + k as u64, 10, 12, &opts.budget);
                let square =
                    square_cofibration_suite(ctx, opts.seed + 100 + k as u64, 10, 12, &opts.budget);
                for outcome in [graph, square] {
                    match outcome {
                        Ok(o) => push_suite(o, &mut texts, &mut values, &mut worst),
                        Err(e) => {
                            eprintln!("error: {e}");
                            return error_code(&e);
                        }
                    }
                }
            }
        }
        "frobenius" => {
            for scenario in
                ["retract_reflexive_graphs", "retract_cube1", "pushforward_reflexive_graphs"]
            {
                push_scenario(scenario, &mut texts, &mut values, &mut worst);
            }
        }
        "left-fibration-counterexample" => {
            push_scenario("left_fibration_counterexample", &mut texts, &mut values, &mut worst);
        }
        other => {
            eprintln!("error: no demo named {other:?}");
            return 2;
        }
    }

    match format {
        Format::Text => print!("{}", texts.join("\n")),
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&values).expect("values serialize");
            text.push('\n');
            print!("{text}");
        }
    }
    worst
}

fn re_verify(path: &Path) -> u8 {
    let text = match read(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let file = match certificate::parse(&text) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let report = certificate::verify_certificate(&file);
    println!("kind: {}", report.kind);
    println!("objects rebuilt: {}", report.objects);
    println!("maps rebuilt: {}", report.maps);
    println!("equations checked: {}", report.equations_checked);
    println!("outcome: {}", if report.is_verified() { "pass" } else { "fail" });
    for failure in &report.failures {
        println!("  failure: {failure}");
    }
    if report.is_verified() {
        0
    } else {
        1
    }
}
