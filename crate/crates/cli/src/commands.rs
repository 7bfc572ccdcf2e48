//! Argument parsing and the four subcommands.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use nfold::diffop::DiffOperator;
use nfold::diffring::{format as ring_format, qi, Q};
use nfold::reduction::Bounds;

use crate::engine::{lookup_preset, parse_stage, Engine};
use crate::error::{exit, CliError};
use crate::golden::{corpus, find, Value};
use crate::render::{lookup_format, Document, Item, Label};
use crate::suite::{lookup_suite, suites};

#[derive(Debug, Parser)]
#[command(name = "nfold", version, about = "N-fold supersymmetry: conditions, integrals and goldens")]
pub struct Cli {
    /// Output format: plain, latex or json.
    #[arg(long, global = true, default_value = "plain")]
    pub format: String,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Highest derivative order in search ansätze (overrides NFOLD_DERIV_BOUND).
    #[arg(long, global = true)]
    pub deriv_bound: Option<u32>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the conditions of the N-fold system.
    Derive {
        #[arg(long)]
        n: u32,
        /// raw, eliminated or transformed.
        #[arg(long, default_value = "raw")]
        stage: String,
        #[arg(long, default_value = "paper")]
        preset: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Search for the k-th integral J_k.
    Search {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "paper")]
        preset: String,
    },
    /// Print a golden entry by id, or list the ids.
    Emit {
        #[arg(long)]
        id: Option<String>,
    },
}

fn bounds(cli: &Cli) -> Result<Bounds, CliError> {
    match cli.deriv_bound {
        Some(deriv_bound) => Ok(Bounds { deriv_bound }),
        None => Bounds::from_env().map_err(|e| CliError::Usage(e.to_string())),
    }
}

fn derive(engine: &Engine, n: u32, stage: &str, preset: &str) -> Result<Document, CliError> {
    let stage = parse_stage(stage)?;
    let preset = lookup_preset(preset)?;
    let cs = engine.conditions(n, stage, preset)?;
    let title = match stage {
        nfold::susy::Stage::Transformed => {
            format!("N={n} {stage} conditions (preset {})", preset.name())
        }
        _ => format!("N={n} {stage} conditions"),
    };
    let mut doc = Document::new(title);
    for c in &cs.conditions {
        let name = if stage == nfold::susy::Stage::Transformed {
            format!("Ibar_{}", c.k)
        } else {
            format!("I_{}", c.k)
        };
        let latex = if stage == nfold::susy::Stage::Transformed {
            format!("\\bar{{I}}_{{{}}}", c.k)
        } else {
            format!("I_{{{}}}", c.k)
        };
        doc.expr(Label::new(name, latex), Value::Poly(c.poly.clone()));
    }
    for s in &cs.scale_notes {
        doc.text(format!("display I_{}", s.k), s.label.clone());
    }
    Ok(doc)
}

fn verify(engine: &Engine, suite: &str) -> Result<Document, CliError> {
    let s = lookup_suite(suite).ok_or_else(|| {
        let known: Vec<&str> = suites().iter().map(|s| s.name()).collect();
        CliError::Usage(format!(
            "unknown suite '{suite}' (expected one of {})",
            known.join(", ")
        ))
    })?;
    let outcomes = s.run(engine);
    let mut doc = Document::new(format!("suite {}: {}", s.name(), s.summary()));
    doc.passed = Some(outcomes.iter().all(|o| o.passed));
    doc.items.extend(outcomes.into_iter().map(Item::Check));
    Ok(doc)
}

fn search(engine: &Engine, n: u32, k: u32, preset: &str) -> Result<Document, CliError> {
    let preset = lookup_preset(preset)?;
    let found = engine.search(n, k, preset)?;
    let ic = found.last().expect("k ≥ 1");
    let d = &ic.display;
    let scale = d.to_string();
    let mut doc = Document::new(format!("N={n} integral J_{k} (preset {})", preset.name()));
    doc.expr(
        Label::new(format!("{scale}*J_{k}"), format!("{}J_{{{k}}}", latex_factor(d))),
        Value::Poly(ic.displayed()),
    );
    for (j, l) in &ic.multipliers {
        doc.expr(
            Label::new(
                format!("{scale}*L_{k}{j}"),
                format!("{}L_{{{k}{j}}}", latex_factor(d)),
            ),
            Value::Operator(l.scale(d)),
        );
    }
    for (i, m) in &ic.relations {
        doc.expr(
            Label::new(
                format!("{scale}*M_{k}{i}"),
                format!("{}M_{{{k}{i}}}", latex_factor(d)),
            ),
            Value::Operator(DiffOperator::multiply(m.scale(d))),
        );
    }
    doc.text("scale", scale.clone());
    let conds: Vec<String> = ic.used_conditions.iter().map(|j| format!("Ibar_{j}")).collect();
    doc.text("conditions used", conds.join(", "));
    if let Some((g, img)) = &ic.degenerate {
        doc.text(
            "degenerate",
            format!("{} = {} on solutions", g.plain(), ring_format::plain(img)),
        );
    }
    doc.text("deriv bound", engine.bounds().deriv_bound.to_string());
    Ok(doc)
}

fn latex_factor(d: &Q) -> String {
    if *d == qi(1) {
        String::new()
    } else if d.is_integer() {
        d.to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", d.numer(), d.denom())
    }
}

fn emit(id: Option<&str>) -> Result<Document, CliError> {
    match id {
        Some(id) => {
            let e = find(id)?;
            let value = e.expression.decode().map_err(|reason| CliError::Corpus {
                id: e.id.clone(),
                reason,
            })?;
            let mut doc = Document::new(format!("golden {}", e.id));
            doc.text("n", e.n.to_string());
            doc.text("preset", e.preset.clone());
            doc.text("provenance", e.provenance.clone());
            doc.text("scale", e.scale.clone());
            doc.expr(Label::new(e.id.clone(), e.id.clone()), value);
            Ok(doc)
        }
        None => {
            let mut doc = Document::new("golden ids");
            for e in corpus()? {
                doc.text(e.id, e.provenance);
            }
            Ok(doc)
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let format = lookup_format(&cli.format).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown format '{}' (expected plain, latex or json)",
            cli.format
        ))
    })?;
    let engine = Engine::new(bounds(cli)?);
    let doc = match &cli.command {
        Command::Derive { n, stage, preset } => derive(&engine, *n, stage, preset)?,
        Command::Verify { suite } => verify(&engine, suite)?,
        Command::Search { n, k, preset } => search(&engine, *n, *k, preset)?,
        Command::Emit { id } => emit(id.as_deref())?,
    };
    let text = format.render(&doc);
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(match doc.passed {
        Some(false) => exit::FAILURE,
        _ => exit::PASS,
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::USAGE } else { exit::PASS };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("nfold: {e}");
            e.exit_code()
        }
    }
}
