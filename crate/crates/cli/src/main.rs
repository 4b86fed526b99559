//! `watchwalk`: analysis, generation, census and property checks from the
//! command line.
//!
//! Exit status: 0 on success, 1 when a property fails or a census differs
//! from the reference, 2 for usage, input and engine-cap errors.

mod analyze;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use watchwalk::census::{census, diff_against, CensusOptions, ReferenceTable};
use watchwalk::families::{generate, is_generator_spec};
use watchwalk::properties::{verify_property, verify_with_engine, VerifyConfig, DEFAULT_SEED};
use watchwalk::watchman::watchman_number;
use watchwalk::{Digraph, Tournament};

#[derive(Parser)]
#[command(
    name = "watchwalk",
    version,
    about = "Watchman's walks and domination in digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure, domination numbers and watchman's walk of one digraph.
    Analyze {
        /// File (edge list or tournament code) or generator such as
        /// `paley:7`, `circulant:7:1,2,3`, `random:9:42`, `fixture:fig2_windmill`.
        input: String,
        /// Print a text table instead of JSON.
        #[arg(long)]
        human: bool,
    },
    /// Write a generated digraph.
    Generate {
        spec: String,
        /// Output format; tournaments default to tournament code.
        #[arg(long = "to", value_enum)]
        to: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count isomorphism classes of n-vertex tournaments by (w, gamma, m).
    Census {
        #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Append-only progress file; an existing file is resumed.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Permit n = 10.
        #[arg(long)]
        allow_large: bool,
        /// Compare with a reference CSV (the shipped table when no path is given).
        #[arg(long, num_args = 0..=1, value_name = "PATH")]
        verify: Option<Option<PathBuf>>,
    },
    /// Run one property suite.
    Verify {
        property: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
        /// Swap in a generic engine that overstates every positive watchman
        /// number, to check that the suites notice.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Convert between edge lists and tournament codes.
    Convert {
        input: String,
        #[arg(long = "to", value_enum)]
        to: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    EdgeList,
    Tcode,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Failed,
}

fn read_input(input: &str) -> Result<Digraph> {
    if is_generator_spec(input) {
        return Ok(generate(input)?);
    }
    let path = Path::new(input);
    if !path.exists() {
        bail!("{input}: no such file, and not a generator spec");
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {input}"))?;
    Digraph::parse(&text).with_context(|| format!("parsing {input}"))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn render(d: &Digraph, to: Format) -> Result<String> {
    Ok(match to {
        Format::EdgeList => d.to_edge_list(),
        Format::Tcode => {
            let t =
                Tournament::try_from(d.clone()).context("tournament code needs a tournament")?;
            format!("{}\n", t.to_code())
        }
    })
}

fn json(value: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Analyze { input, human } => {
            let d = read_input(&input)?;
            let a = analyze::analyze(&d)?;
            let text = if human {
                analyze::render_human(&a)
            } else {
                json(&a)?
            };
            emit(None, &text)?;
        }
        Command::Generate { spec, to, out } => {
            let d = generate(&spec)?;
            let to = to.unwrap_or(if d.is_tournament() {
                Format::Tcode
            } else {
                Format::EdgeList
            });
            emit(out.as_deref(), &render(&d, to)?)?;
        }
        Command::Convert { input, to, out } => {
            let d = read_input(&input)?;
            emit(out.as_deref(), &render(&d, to)?)?;
        }
        Command::Census {
            n,
            jobs,
            checkpoint,
            out,
            format,
            allow_large,
            verify,
        } => {
            let table = census(
                n as usize,
                &CensusOptions {
                    jobs,
                    checkpoint,
                    allow_large,
                },
            )?;
            let text = match format {
                TableFormat::Csv => table.to_csv(),
                TableFormat::Json => json(&table)?,
            };
            emit(out.as_deref(), &text)?;
            if let Some(path) = verify {
                let reference = match &path {
                    Some(p) => ReferenceTable::load(p)?,
                    None => ReferenceTable::shipped(),
                };
                let diff = diff_against(&table, &reference);
                for d in &diff.discrepancies {
                    eprintln!(
                        "diff n={} w={} gamma={} m={}: computed {}, reference {}{}",
                        d.n,
                        d.w,
                        d.gamma,
                        d.m,
                        d.computed,
                        d.reference,
                        if d.advisory { " (advisory)" } else { "" }
                    );
                }
                for n in &diff.unreferenced_orders {
                    eprintln!("order {n} is not covered by the reference");
                }
                if !diff.is_match() {
                    return Ok(Status::Failed);
                }
                eprintln!("census matches the reference");
            }
        }
        Command::Verify {
            property,
            n,
            seed,
            samples,
            inject_fault,
        } => {
            let config = VerifyConfig { n, seed, samples };
            let report = if inject_fault {
                let broken = |d: &Digraph| {
                    let mut r = watchman_number(d)?;
                    r.w = r.w.map(|w| if w > 0 { w + 2 } else { w });
                    Ok(r)
                };
                verify_with_engine(&property, &config, &broken)?
            } else {
                verify_property(&property, &config)?
            };
            emit(None, &json(&report)?)?;
            if !report.passed {
                return Ok(Status::Failed);
            }
        }
    }
    Ok(Status::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
