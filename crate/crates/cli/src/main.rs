use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Parser, Subcommand};

use systolic_core::bounds::BoundConstants;

mod commands;
mod output;
mod sweep;

use commands::{
    AbelianizeArgs, BoundMultipleArgs, BoundsCmd, BuildGraphArgs, ComplexArgs, Ctx, GenfunCmd, GraphArgs, SleeveArgs,
    WaringArgs, WaringVerifyArgs,
};
use output::{Format, Meta, Report};

/// Exact homology, large-girth graphs, sleeve bookkeeping and systolic bound
/// evaluators.
#[derive(Debug, Parser)]
#[command(name = "systolic", version)]
struct Cli {
    /// Bound constants as JSON; defaults are illustrative.
    #[arg(long, global = true)]
    constants: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Worker threads for sweeps; output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Betti numbers, torsion and orientability of complexes.
    Homology(ComplexArgs),
    /// Triangle count against the H_1 torsion order.
    CheckTorsionBound(ComplexArgs),
    /// Abelian invariants of a finite presentation.
    Abelianize(AbelianizeArgs),
    /// Girth and regularity of graphs.
    Girth(GraphArgs),
    /// Random regular graph of prescribed girth.
    BuildGraph(BuildGraphArgs),
    /// Glue cube sleeves along a regular graph.
    Sleeve(SleeveArgs),
    /// Evaluate closed-form bounds.
    Bounds {
        #[command(subcommand)]
        cmd: BoundsCmd,
    },
    /// C k / ln(1 + k) over a range of multiples.
    BoundMultiple(BoundMultipleArgs),
    /// Minimal decompositions into d-th powers.
    Waring(WaringCli),
    /// Generating-function tools.
    Genfun {
        #[command(subcommand)]
        cmd: GenfunCmd,
    },
    /// Built-in complexes and graphs.
    Corpus,
    /// Run an experiment spec.
    Sweep(commands::SweepArgs),
}

#[derive(Debug, clap::Args)]
#[command(args_conflicts_with_subcommands = true)]
struct WaringCli {
    #[command(subcommand)]
    sub: Option<WaringSub>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long, default_value_t = 4)]
    d: u32,
}

#[derive(Debug, Subcommand)]
enum WaringSub {
    /// Check the Waring number over 1..=limit.
    Verify(WaringVerifyArgs),
}

/// A checked inequality or identity came out false.
const EXIT_VIOLATION: u8 = 1;
/// Bad arguments, unreadable input, or a precondition the inputs violate.
const EXIT_USAGE: u8 = 2;

fn load_constants(path: Option<&PathBuf>) -> Result<BoundConstants> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            Ok(BoundConstants::from_json(&text)?)
        }
        None => Ok(BoundConstants::default()),
    }
}

fn command_name(cmd: &Command) -> String {
    match cmd {
        Command::Homology(_) => "homology".into(),
        Command::CheckTorsionBound(_) => "check-torsion-bound".into(),
        Command::Abelianize(_) => "abelianize".into(),
        Command::Girth(_) => "girth".into(),
        Command::BuildGraph(_) => "build-graph".into(),
        Command::Sleeve(_) => "sleeve".into(),
        Command::Bounds { cmd } => {
            let debug = format!("{cmd:?}");
            let variant = debug.split('(').next().unwrap_or_default();
            format!("bounds.{}", kebab(variant))
        }
        Command::BoundMultiple(_) => "bound-multiple".into(),
        Command::Waring(w) if w.sub.is_some() => "waring-verify".into(),
        Command::Waring(_) => "waring".into(),
        Command::Genfun { cmd } => match cmd {
            GenfunCmd::Detect(_) => "genfun-detect".into(),
            GenfunCmd::Series(_) => "genfun-series".into(),
            GenfunCmd::Scan(_) => "genfun-scan".into(),
        },
        Command::Corpus => "corpus".into(),
        Command::Sweep(_) => "sweep".into(),
    }
}

fn kebab(camel: &str) -> String {
    let mut out = String::new();
    for (i, ch) in camel.chars().enumerate() {
        if ch.is_ascii_uppercase() && i > 0 {
            out.push('-');
        }
        out.push(ch.to_ascii_lowercase());
    }
    out
}

struct Run {
    report: Report,
    command: String,
    seed: u64,
    constants: BoundConstants,
    out: Option<PathBuf>,
}

fn execute(cli: &Cli) -> Result<Run> {
    let constants = load_constants(cli.constants.as_ref())?;
    let mut ctx = Ctx { seed: cli.seed, constants };
    let mut command = command_name(&cli.command);
    let mut out = cli.out.clone();
    let spec_path = match &cli.command {
        Command::Sweep(a) | Command::Bounds { cmd: BoundsCmd::Sweep(a) } => Some(a.spec.clone()),
        _ => None,
    };
    let report = if let Some(path) = spec_path {
        let text = std::fs::read_to_string(&path).with_context(|| format!("cannot read {}", path.display()))?;
        let spec = sweep::ExperimentSpec::from_json(&text)?;
        if let Some(c) = &spec.constants {
            ctx.constants = load_constants(Some(c))?;
        }
        ctx.seed = spec.seed.unwrap_or(ctx.seed);
        out = out.or_else(|| spec.out.clone());
        command = format!("sweep {}", spec.command);
        sweep::run(&spec, &ctx)?
    } else {
        match &cli.command {
            Command::Homology(a) => commands::homology(a)?,
            Command::CheckTorsionBound(a) => commands::check_torsion_bound(a)?,
            Command::Abelianize(a) => commands::abelianize(a)?,
            Command::Girth(a) => commands::girth(a)?,
            Command::BuildGraph(a) => commands::build_graph(a, &ctx)?,
            Command::Sleeve(a) => commands::sleeve(a, &ctx)?,
            Command::Bounds { cmd } => commands::bounds(cmd, &ctx)?,
            Command::BoundMultiple(a) => commands::bound_multiple(a)?,
            Command::Waring(w) => match (&w.sub, w.k) {
                (Some(WaringSub::Verify(a)), _) => commands::waring_verify(a)?,
                (None, Some(k)) => commands::waring_decompose(&WaringArgs { k, d: w.d })?,
                (None, None) => anyhow::bail!("waring needs --k, or the verify subcommand"),
            },
            Command::Genfun { cmd } => match cmd {
                GenfunCmd::Detect(a) => commands::genfun_detect(a)?,
                GenfunCmd::Series(a) => commands::genfun_series(a)?,
                GenfunCmd::Scan(a) => commands::genfun_scan(a, &ctx)?,
            },
            Command::Corpus => commands::corpus_list(),
            Command::Sweep(_) => unreachable!("handled above"),
        }
    };
    Ok(Run { report, command, seed: ctx.seed, constants: ctx.constants, out })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let run = match execute(&cli) {
        Ok(run) => run,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let meta = Meta { command: &run.command, seed: run.seed, constants: &run.constants.provenance };
    let written = output::render(&run.report, &meta, cli.format).and_then(|bytes| match &run.out {
        Some(path) => std::fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display())),
        None => std::io::stdout().write_all(&bytes).context("cannot write to stdout"),
    });
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_USAGE);
    }
    if run.report.errors > 0 {
        eprintln!("warning: {} row(s) failed; see the error column", run.report.errors);
    }
    if run.report.violations > 0 {
        eprintln!("invariant violated in {} row(s)", run.report.violations);
        return ExitCode::from(EXIT_VIOLATION);
    }
    ExitCode::SUCCESS
}
