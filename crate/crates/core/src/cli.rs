//! Command-line front end. Exit codes: 0 all checks pass, 1 some check
//! failed, 2 usage error.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::hk_analysis::LatticeSelector;
use crate::report::{
    analyze_rows, default_suite, lemma_rows, sublattice_rows, Format, ReportDocument, Value, DEFAULT_SUITE,
};
use crate::root_data::{Family, RootSystemSpec};
use crate::weyl::{GroupCap, DEFAULT_GROUP_CAP, GROUP_CAP_ENV};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "roothk", version, about = "Exact checks for symplectic quotients (L ⊗ A)/W")]
struct Cli {
    /// Largest group enumerated exhaustively; larger groups are skipped.
    #[arg(long, global = true, env = GROUP_CAP_ENV, default_value_t = DEFAULT_GROUP_CAP)]
    group_cap: usize,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verdict for W of the given type acting on one lattice of its tower.
    Analyze {
        family: String,
        rank: usize,
        /// root, dual, or index:k (position in the tower).
        #[arg(long, default_value = "root")]
        lattice: String,
    },
    /// Invariant dimensions of Sym²V, ∧²V and ∧²(V⊕V) for every type up to a rank.
    LemmaCheck {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
    /// W-stable lattices between the root lattice and its dual.
    Sublattices { family: String, rank: usize },
    /// Run a fixed suite of checks.
    Report {
        #[arg(long, default_value = DEFAULT_SUITE)]
        suite: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Tsv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Tsv => Format::Tsv,
        }
    }
}

fn parse_spec(family: &str, rank: usize) -> Result<RootSystemSpec, Error> {
    let family: Family = family.parse()?;
    RootSystemSpec::new(family, rank)
}

fn document(cli: &Cli) -> Result<ReportDocument, Error> {
    let cap = GroupCap::new(cli.group_cap).ok_or_else(|| Error::InvalidSelector("group cap must be positive".into()))?;
    let cap_value = Value::from(cli.group_cap);
    Ok(match &cli.command {
        Command::Analyze { family, rank, lattice } => {
            let spec = parse_spec(family, *rank)?;
            let selector: LatticeSelector = lattice.parse()?;
            let rows = analyze_rows(spec, selector, cap)?;
            ReportDocument::new(
                "analyze",
                vec![("type", spec.to_string().into()), ("lattice", selector.to_string().into()), ("group_cap", cap_value)],
                rows,
            )
        }
        Command::LemmaCheck { max_rank } => {
            let specs = RootSystemSpec::supported_up_to(*max_rank);
            ReportDocument::new("lemma-check", vec![("max_rank", Value::from(*max_rank))], lemma_rows(&specs))
        }
        Command::Sublattices { family, rank } => {
            let spec = parse_spec(family, *rank)?;
            ReportDocument::new("sublattices", vec![("type", spec.to_string().into())], sublattice_rows(spec))
        }
        Command::Report { suite } => {
            if suite != DEFAULT_SUITE {
                return Err(Error::InvalidSelector(format!("unknown suite {suite}")));
            }
            ReportDocument::new(
                "report",
                vec![("suite", suite.as_str().into()), ("group_cap", cap_value)],
                default_suite(cap),
            )
        }
    })
}

/// Runs the CLI on `args` (including the program name), writing the
/// rendered report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match document(&cli) {
        Ok(doc) => {
            let _ = out.write_all(doc.render(cli.format.into()).as_bytes());
            doc.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn main_exit() -> ! {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code)
}
