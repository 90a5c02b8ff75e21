//! Command-line driver: run scenario files, verify homotopy certificates,
//! and replay the built-in demo suites with deterministic reports.
//!
//! Exit codes: 0 all assertions pass, 1 an assertion failed, 2 malformed
//! input, 3 a resource limit was hit. Reports go to stdout and are
//! byte-identical across runs; timing goes to stderr.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use jkforge::error::Error;
use jkforge::homotopy::check_homotopic;
use jkforge::scenario::{Report, Runner, Scenario};
use jkforge::serialize::Document;

#[derive(Debug, Parser)]
#[command(name = "jkforge", version)]
#[command(about = "exact homotopy-algebra constructions with verified reports")]
struct Cli {
    /// Coefficient ring override: Z, Q or `Fp:<p>`.
    #[arg(long, global = true)]
    ring: Option<String>,

    /// Truncation cap override.
    #[arg(long, global = true)]
    cap: Option<u32>,

    /// Force commutative (symmetric-word) mode for scenario algebras.
    #[arg(long, global = true)]
    commutative: bool,

    /// Approximate memory budget for constructed bases, in bytes.
    #[arg(long, global = true)]
    limit_bytes: Option<usize>,

    /// Report rendering.
    #[arg(long, global = true, value_enum, default_value_t = ReportKind::Text)]
    report: ReportKind,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportKind {
    Text,
    Machine,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a scenario file and report per-assertion verdicts.
    Run { file: PathBuf },
    /// Check a serialized homotopy certificate.
    Verify { file: PathBuf },
    /// Run one of the built-in demo suites.
    Demo { name: String },
    /// List the built-in demo suites.
    ListDemos,
}

const DEMOS: &[(&str, &str)] = &[
    (
        "simplicial-identities",
        include_str!("../demos/simplicial-identities.jk"),
    ),
    (
        "classifying-maps",
        include_str!("../demos/classifying-maps.jk"),
    ),
    ("exactness", include_str!("../demos/exactness.jk")),
    ("power-tensor", include_str!("../demos/power-tensor.jk")),
    ("subdivision", include_str!("../demos/subdivision.jk")),
    ("hauptlemma", include_str!("../demos/hauptlemma.jk")),
    ("excision-kit", include_str!("../demos/excision-kit.jk")),
    ("stabilization", include_str!("../demos/stabilization.jk")),
];

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = dispatch(&cli);
    eprintln!("elapsed: {:?}", start.elapsed());
    code
}

fn dispatch(cli: &Cli) -> ExitCode {
    match &cli.command {
        Command::Run { file } => {
            let text = match std::fs::read_to_string(file) {
                Ok(t) => t,
                Err(e) => return input_error(&format!("cannot read {}: {e}", file.display())),
            };
            let name = file
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "scenario".into());
            run_scenario(cli, &name, &text)
        }
        Command::Demo { name } => match DEMOS.iter().find(|(n, _)| n == name) {
            Some((n, text)) => run_scenario(cli, n, text),
            None => input_error(&format!(
                "unknown demo {name}; try `jkforge list-demos`"
            )),
        },
        Command::ListDemos => {
            for (n, text) in DEMOS {
                let first = text
                    .lines()
                    .find_map(|l| l.strip_prefix("# "))
                    .unwrap_or("");
                println!("{n}: {first}");
            }
            ExitCode::SUCCESS
        }
        Command::Verify { file } => {
            let text = match std::fs::read_to_string(file) {
                Ok(t) => t,
                Err(e) => return input_error(&format!("cannot read {}: {e}", file.display())),
            };
            verify_certificate(cli, file, &text)
        }
    }
}

fn run_scenario(cli: &Cli, name: &str, text: &str) -> ExitCode {
    let mut scenario = match Scenario::parse(name, text) {
        Ok(s) => s,
        Err(e) => return input_error(&e.to_string()),
    };
    if let Some(r) = &cli.ring {
        scenario.ring = match jkforge::serialize::parse_ring(r) {
            Ok(r) => r,
            Err(e) => return input_error(&e.to_string()),
        };
    }
    if let Some(c) = cli.cap {
        scenario.cap = c;
    }
    if cli.commutative {
        scenario.commutative = true;
    }
    let mut runner = Runner::default();
    runner.byte_limit = cli.limit_bytes;
    let report = runner.run(&scenario);
    finish(cli, &report)
}

fn verify_certificate(cli: &Cli, file: &PathBuf, text: &str) -> ExitCode {
    let doc = match Document::parse(text) {
        Ok(d) => d,
        Err(e) => return input_error(&e.to_string()),
    };
    let mut verdicts: Vec<(String, Result<(), String>)> = Vec::new();
    for check in &doc.checks {
        let what = check.join(" ");
        let verdict = run_check(&doc, check);
        verdicts.push((what, verdict));
    }
    let report = Report {
        scenario: file
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "certificate".into()),
        verdicts,
        lossy: doc
            .algebras
            .iter()
            .map(|a| (a.name.clone(), a.lossy))
            .collect(),
        error: None,
    };
    finish(cli, &report)
}

fn run_check(doc: &Document, check: &[String]) -> Result<(), String> {
    let as_err = |e: Error| e.to_string();
    match check[0].as_str() {
        "homotopic" if check.len() == 4 => {
            let f = doc.map(&check[1]).map_err(as_err)?;
            let g = doc.map(&check[2]).map_err(as_err)?;
            let chain = doc.build_chain(&check[3]).map_err(as_err)?;
            check_homotopic(f, g, &chain).map_err(as_err)
        }
        "equal" if check.len() == 3 => {
            let f = doc.map(&check[1]).map_err(as_err)?;
            let g = doc.map(&check[2]).map_err(as_err)?;
            let w = f.comparison_window(g);
            f.agrees_with(g, w)
        }
        "hom" if check.len() == 2 => {
            let f = doc.map(&check[1]).map_err(as_err)?;
            match f.verify() {
                jkforge::map::VerifyStatus::Failed { witness } => Err(witness),
                _ => Ok(()),
            }
        }
        "extension" if check.len() == 2 => {
            let e = doc.build_extension(&check[1]).map_err(as_err)?;
            e.validate().map_err(as_err)
        }
        other => Err(format!("unknown check {other}")),
    }
}

fn finish(cli: &Cli, report: &Report) -> ExitCode {
    match cli.report {
        ReportKind::Text => print!("{}", report.render_text()),
        ReportKind::Machine => print!("{}", report.render_machine()),
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
        return if e.contains("size limit")
            || e.contains("time limit")
            || e.contains("byte limit")
        {
            ExitCode::from(3)
        } else {
            ExitCode::from(2)
        };
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        if let Some(first) = report.first_failure() {
            eprintln!("first failing assertion: {first}");
        }
        ExitCode::from(1)
    }
}

fn input_error(msg: &str) -> ExitCode {
    eprintln!("input error: {msg}");
    ExitCode::from(2)
}
