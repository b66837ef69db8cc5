//! Command-line front end. Every subcommand prints `key=value` lines so the
//! output can be diffed and scripted.
//!
//! Exit codes: 0 on success, 1 on domain errors (bad diagram, failed
//! computation), 2 on usage errors.

use std::fmt::Display;
use std::io::Write;

use clap::{Args, Parser, Subcommand};

use crate::cocycle::{
    builtin_by_name, check_cocycle, enumerate_shiftable, enumerate_shiftable_with_threads, is_shiftable, CocycleTable,
};
use crate::coloring::{count_colorings, maxord, ColoringSpec, Colorings};
use crate::diagram::{Diagram, SemiArcId, Sign};
use crate::invariant::{phi_multiset, phi_multiset_unchecked_links, phi_shift, rii_report};
use crate::moves::{random_walk, MoveKind};

#[derive(Debug, Parser)]
#[command(name = "updown", version, about = "Up-down coloring and cocycle invariants of virtual links")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Weights {
    pub positive: i64,
    pub negative: i64,
}

fn parse_weights(s: &str) -> Result<Weights, String> {
    let (p, n) = s.split_once(',').ok_or("expected P,N")?;
    let p = p.trim().parse().map_err(|e| format!("P: {e}"))?;
    let n = n.trim().parse().map_err(|e| format!("N: {e}"))?;
    Ok(Weights { positive: p, negative: n })
}

#[derive(Debug, Args)]
pub struct ColoringArgs {
    /// Diagram code, or @path to read it from a file.
    pub diagram: String,
    /// Modulus of the coloring.
    #[arg(long)]
    pub n: u32,
    /// Generalized weights "P,N" (default 1,1).
    #[arg(long, value_parser = parse_weights)]
    pub weights: Option<Weights>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a diagram.
    Validate { diagram: String },
    /// Number of colorings.
    Count(ColoringArgs),
    /// Largest n admitting an up-down coloring (0 if every n does).
    Maxord { diagram: String },
    /// Number of colorings, optionally listing them.
    Colorings {
        #[command(flatten)]
        args: ColoringArgs,
        #[arg(long)]
        dump_colorings: bool,
    },
    /// Shift invariant of a knot for a shiftable cocycle.
    Phi {
        diagram: String,
        /// Builtin name (example-f, example-g, zero(n,m)) or @path.
        #[arg(long)]
        cocycle: String,
    },
    /// Multiset of weight sums over all colorings of a knot.
    PhiMultiset {
        diagram: String,
        #[arg(long)]
        cocycle: String,
        /// Allow multi-component diagrams. Invariance is only known for knots.
        #[arg(long)]
        unchecked_links: bool,
    },
    /// Lower bound on the number of RII moves between two diagrams.
    Compare {
        first: String,
        second: String,
        #[arg(long)]
        cocycle: Option<String>,
    },
    /// Check the cocycle conditions and shiftability of a table.
    CocycleCheck { cocycle: String },
    /// Enumerate shiftable cocycles.
    CocycleSearch {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        /// Worker threads (default: all cores).
        #[arg(long)]
        parallel: Option<usize>,
        /// Print each table's difference rows.
        #[arg(long)]
        dump: bool,
    },
    /// Seeded random walk of Reidemeister moves.
    Walk {
        diagram: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_values = ["RI-add", "RI-remove", "RIII"])]
        kinds: Vec<MoveKind>,
    },
    /// Connected sum of two knot diagrams.
    Connect {
        first: String,
        second: String,
        #[arg(long, default_value = "0:0")]
        site1: SemiArcId,
        #[arg(long, default_value = "0:0")]
        site2: SemiArcId,
    },
}

type Failure = Box<dyn std::error::Error>;

fn read_arg(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}").into()),
        None => Ok(arg.to_string()),
    }
}

fn diagram(arg: &str) -> Result<Diagram, Failure> {
    Ok(read_arg(arg)?.trim().parse::<Diagram>()?)
}

fn cocycle(arg: &str) -> Result<CocycleTable, Failure> {
    match arg.strip_prefix('@') {
        Some(_) => Ok(CocycleTable::parse_file(&read_arg(arg)?)?),
        None => Ok(builtin_by_name(arg)?),
    }
}

fn spec(args: &ColoringArgs) -> Result<ColoringSpec, Failure> {
    let w = args.weights.unwrap_or(Weights { positive: 1, negative: 1 });
    Ok(ColoringSpec::new(args.n, w.positive, w.negative)?)
}

fn line(out: &mut dyn Write, text: impl Display) -> Result<(), Failure> {
    writeln!(out, "{text}")?;
    Ok(())
}

fn join(values: &[u32]) -> String {
    values.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Validate { diagram: d } => {
            let d = diagram(&d)?;
            line(
                out,
                format_args!("valid components={} crossings={} code={d}", d.component_count(), d.crossing_count()),
            )
        }
        Command::Count(args) => {
            let d = diagram(&args.diagram)?;
            line(out, format_args!("count={}", count_colorings(&d, spec(&args)?)?))
        }
        Command::Maxord { diagram: d } => line(out, format_args!("maxord={}", maxord(&diagram(&d)?))),
        Command::Colorings { args, dump_colorings } => {
            let d = diagram(&args.diagram)?;
            let spec = spec(&args)?;
            line(out, format_args!("colorings={}", count_colorings(&d, spec)?))?;
            if dump_colorings {
                for (i, c) in Colorings::new(&d, spec).enumerate() {
                    line(out, format_args!("coloring={i}"))?;
                    for l in c.to_lines() {
                        line(out, l)?;
                    }
                }
            }
            Ok(())
        }
        Command::Phi { diagram: d, cocycle: f } => {
            line(out, format_args!("phi_shift={}", phi_shift(&diagram(&d)?, &cocycle(&f)?)?))
        }
        Command::PhiMultiset { diagram: d, cocycle: f, unchecked_links } => {
            let (d, f) = (diagram(&d)?, cocycle(&f)?);
            let phi = if unchecked_links { phi_multiset_unchecked_links(&d, &f)? } else { phi_multiset(&d, &f)? };
            line(out, format_args!("phi_multiset={phi}"))
        }
        Command::Compare { first, second, cocycle: f } => {
            let f = f.as_deref().map(cocycle).transpose()?;
            line(out, rii_report(&diagram(&first)?, &diagram(&second)?, f.as_ref())?)
        }
        Command::CocycleCheck { cocycle: f } => {
            let f = cocycle(&f)?;
            match check_cocycle(&f) {
                Ok(()) => line(out, format_args!("cocycle=ok n={} m={} shiftable={}", f.n(), f.m(), is_shiftable(&f))),
                Err(v) => line(
                    out,
                    format_args!(
                        "cocycle=fail n={} m={} condition={} witness={}",
                        f.n(),
                        f.m(),
                        v.condition,
                        v.witness
                    ),
                ),
            }
        }
        Command::CocycleSearch { n, m, parallel, dump } => {
            let found = match parallel {
                Some(k) => enumerate_shiftable_with_threads(n, m, k)?,
                None => enumerate_shiftable(n, m)?,
            };
            line(out, format_args!("shiftable_count={}", found.len()))?;
            if dump {
                for (i, t) in found.iter().enumerate() {
                    let plus = join(&t.differences(Sign::Positive));
                    let minus = join(&t.differences(Sign::Negative));
                    line(out, format_args!("table={i} h+={plus} h-={minus}"))?;
                }
            }
            Ok(())
        }
        Command::Walk { diagram: d, steps, seed, kinds } => {
            for step in random_walk(&diagram(&d)?, steps, &kinds, seed) {
                line(out, step)?;
            }
            Ok(())
        }
        Command::Connect { first, second, site1, site2 } => {
            let sum = diagram(&first)?.connected_sum(&diagram(&second)?, site1, site2)?;
            line(out, format_args!("code={sum}"))
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
