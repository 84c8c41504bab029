use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hubnet_core::report::{SolveReport, Style};
use hubnet_core::scenario::{ScenarioFile, ScenarioLoadError};
use hubnet_core::{solve, CostClass, Scenario, SolveError};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "hubnet",
    version,
    about = "Place trading hubs on a transport network by the compromise principle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and print every intermediate table.
    Solve {
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print shortest-path weights for one cost class.
    Apsp {
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = Class::Heavy)]
        class: Class,
        /// Comma-separated row vertices (default: all).
        #[arg(long)]
        from: Option<String>,
        /// Comma-separated column vertices (default: all).
        #[arg(long)]
        to: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check a scenario file and print instance statistics.
    Validate {
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    Heavy,
    Light,
    Buyer,
}

impl From<Class> for CostClass {
    fn from(c: Class) -> Self {
        match c {
            Class::Heavy => CostClass::ActorHeavy,
            Class::Light => CostClass::ActorLight,
            Class::Buyer => CostClass::Buyer,
        }
    }
}

/// Process exit statuses.
mod status {
    pub const INVALID: u8 = 1;
    pub const IO: u8 = 2;
    pub const NEGATIVE_CYCLE: u8 = 3;
}

/// An error carrying the exit status it maps to.
struct Failure {
    status: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            status: status::IO,
            error: e.into(),
        }
    }
}

fn fail(status: u8, error: anyhow::Error) -> Failure {
    Failure { status, error }
}

fn load(path: &PathBuf) -> Result<Scenario, Failure> {
    Scenario::load(path).map_err(|e| match e {
        ScenarioLoadError::Invalid(errs) => {
            let listing = errs
                .errors()
                .iter()
                .map(|e| format!("error[{}]: {e}", e.code()))
                .collect::<Vec<_>>();
            fail(status::INVALID, anyhow!("{}", listing.join("\n")))
        }
        other => fail(status::IO, other.into()),
    })
}

fn solve_error(e: SolveError) -> Failure {
    match e {
        SolveError::NegativeCycle { .. } => fail(status::NEGATIVE_CYCLE, e.into()),
        other => fail(status::INVALID, other.into()),
    }
}

fn parse_list(arg: Option<&str>, n: usize) -> Result<Vec<usize>> {
    let Some(arg) = arg else {
        return Ok((0..n).collect());
    };
    arg.split(',')
        .map(|t| {
            let t = t.trim().trim_start_matches('x');
            let v: usize = t.parse().with_context(|| format!("invalid vertex `{t}`"))?;
            if v >= n {
                bail!("vertex {v} is not in the network (valid ids are 0..{n})");
            }
            Ok(v)
        })
        .collect()
}

fn color_enabled() -> bool {
    std::env::var_os("HUBNET_NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    match cli.command {
        Command::Solve { scenario, format } => {
            let started = Instant::now();
            let scn = load(&scenario)?;
            let solution = solve(&scn).map_err(solve_error)?;
            let report = SolveReport::new(&scn, &solution);
            match format {
                Format::Text => write!(
                    out,
                    "{}",
                    report.to_text(Style {
                        color: color_enabled()
                    })
                )?,
                Format::Json => {
                    writeln!(out, "{}", serde_json::to_string_pretty(&report.to_json())?)?
                }
            }
            eprintln!("solved in {:.3} ms", started.elapsed().as_secs_f64() * 1e3);
        }
        Command::Apsp {
            scenario,
            class,
            from,
            to,
            format,
        } => {
            let scn = load(&scenario)?;
            let n = scn.network().vertex_count();
            let rows = parse_list(from.as_deref(), n)?;
            let cols = parse_list(to.as_deref(), n)?;
            let class = CostClass::from(class);
            let d = scn
                .network()
                .shortest_paths(class)
                .map_err(|e| fail(status::NEGATIVE_CYCLE, e.into()))?;
            let table = d.select(&rows, &cols);
            match format {
                Format::Text => {
                    let cells: Vec<Vec<String>> = table
                        .iter()
                        .map(|r| r.iter().map(ToString::to_string).collect())
                        .collect();
                    let label_w = rows
                        .iter()
                        .map(|v| format!("x{v}").len())
                        .max()
                        .unwrap_or(0);
                    let widths: Vec<usize> = cols
                        .iter()
                        .enumerate()
                        .map(|(c, v)| {
                            cells
                                .iter()
                                .map(|r| r[c].len())
                                .chain([format!("x{v}").len()])
                                .max()
                                .unwrap_or(0)
                        })
                        .collect();
                    let mut header = format!("{:label_w$}", "");
                    for (v, w) in cols.iter().zip(&widths) {
                        header.push_str(&format!("  {:>w$}", format!("x{v}")));
                    }
                    writeln!(out, "{}", header.trim_end())?;
                    for (v, r) in rows.iter().zip(&cells) {
                        let mut line = format!("{:<label_w$}", format!("x{v}"));
                        for (cell, w) in r.iter().zip(&widths) {
                            line.push_str(&format!("  {cell:>w$}"));
                        }
                        writeln!(out, "{line}")?;
                    }
                }
                Format::Json => {
                    let doc = json!({ "class": class.name(), "from": rows, "to": cols, "weights": table });
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
                }
            }
        }
        Command::Validate { scenario, format } => {
            let text = std::fs::read_to_string(&scenario)
                .with_context(|| format!("cannot read {}", scenario.display()))?;
            let file = ScenarioFile::from_json(&text).context("malformed scenario")?;
            match file.validate() {
                Ok(scn) => {
                    let profiles = hubnet_core::market::enumerate_profiles(
                        scn.candidate_locations(),
                        scn.actor_count(),
                    );
                    match format {
                        Format::Text => writeln!(
                            out,
                            "OK: {} vertices, {} edges, {} profiles",
                            scn.network().vertex_count(),
                            scn.network().edge_count(),
                            profiles.len()
                        )?,
                        Format::Json => {
                            let doc = json!({
                                "valid": true,
                                "vertices": scn.network().vertex_count(),
                                "edges": scn.network().edge_count(),
                                "profiles": profiles.len(),
                            });
                            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
                        }
                    }
                }
                Err(errs) => {
                    if format == Format::Json {
                        let list: Vec<_> = errs
                            .errors()
                            .iter()
                            .map(|e| json!({ "code": e.code(), "message": e.to_string() }))
                            .collect();
                        writeln!(
                            out,
                            "{}",
                            serde_json::to_string_pretty(
                                &json!({ "valid": false, "errors": list })
                            )?
                        )?;
                    }
                    let listing = errs
                        .errors()
                        .iter()
                        .map(|e| format!("error[{}]: {e}", e.code()))
                        .collect::<Vec<_>>();
                    return Err(fail(status::INVALID, anyhow!("{}", listing.join("\n"))));
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { status, error }) => {
            let _ = out.flush();
            eprintln!("{error:#}");
            ExitCode::from(status)
        }
    }
}
