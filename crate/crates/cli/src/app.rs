//! Argument parsing.

use clap::{Parser, Subcommand, ValueEnum};

use crate::command::{self, Command};
use crate::report::{Format, EXIT_PARSE};

/// Default candidate budget for the base-field witness search.
pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Record,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "sepdiff",
    version,
    about = "Separable differential polynomials over GF(p)(c1..cm)(t)"
)]
struct Cli {
    /// Output layout.
    #[arg(long, value_enum, default_value = "record", global = true)]
    format: FormatArg,
    #[command(subcommand)]
    cmd: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Describe a field presentation, optionally one element of it.
    Field {
        #[arg(long)]
        field: String,
        #[arg(long)]
        elem: Option<String>,
    },
    /// Leader, rank, separant and initial of a polynomial.
    Dpoly {
        #[arg(long)]
        field: String,
        /// Comma-separated indeterminates (default `x`).
        #[arg(long)]
        vars: Option<String>,
        #[arg(long)]
        poly: String,
        /// Evaluate at this tuple of field elements.
        #[arg(long)]
        point: Option<String>,
    },
    /// Apply the derivation.
    Delta {
        #[arg(long)]
        field: String,
        #[arg(long)]
        vars: Option<String>,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 1)]
        times: u32,
    },
    /// Full reduction with a certificate.
    Reduce {
        #[arg(long)]
        field: String,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
    },
    /// Membership in the saturated ideal of a generator.
    Member {
        #[arg(long)]
        field: String,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        assert_irreducible: bool,
    },
    /// Witness that an inequation g != 0 is compatible with f = 0.
    Witness {
        #[arg(long)]
        field: String,
        /// Omit to search for a point of K instead.
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: String,
        #[arg(long)]
        assert_irreducible: bool,
        /// Candidate budget for the point search (else SEPDIFF_BUDGET).
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Coefficients of a constant over the p-monomials.
    Lambda {
        #[arg(long)]
        field: String,
        #[arg(long)]
        b: String,
        /// Use this tuple instead of the standard basis.
        #[arg(long)]
        tuple: Option<String>,
    },
    /// p-independence of a tuple.
    Pindep {
        #[arg(long)]
        field: String,
        #[arg(long)]
        tuple: String,
    },
    /// Degree of imperfection and a differential p-basis.
    Basis {
        #[arg(long)]
        field: String,
    },
    /// Prolongation of an algebraic system.
    Prolong {
        #[arg(long)]
        field: String,
        #[arg(long)]
        vars: Option<String>,
        /// One equation; repeat for more.
        #[arg(long = "poly", required = true)]
        polys: Vec<String>,
        #[arg(long)]
        point: Option<String>,
    },
    /// Adjoin a p-th root of a constant generator.
    Adjoin {
        #[arg(long)]
        field: String,
        #[arg(long)]
        root: String,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        elem: Option<String>,
    },
    /// Run the seeded property suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        cases: usize,
    },
}

fn env_budget() -> usize {
    std::env::var("SEPDIFF_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Self {
        match s {
            Sub::Field { field, elem } => Command::Field { field, elem },
            Sub::Dpoly {
                field,
                vars,
                poly,
                point,
            } => Command::Dpoly {
                field,
                vars,
                poly,
                point,
            },
            Sub::Delta {
                field,
                vars,
                poly,
                times,
            } => Command::Delta {
                field,
                vars,
                poly,
                times,
            },
            Sub::Reduce { field, ideal, poly } => Command::Reduce { field, ideal, poly },
            Sub::Member {
                field,
                ideal,
                poly,
                assert_irreducible,
            } => Command::Member {
                field,
                ideal,
                poly,
                assert_irreducible,
            },
            Sub::Witness {
                field,
                f,
                g,
                assert_irreducible,
                budget,
            } => Command::Witness {
                field,
                f,
                g,
                assert_irreducible,
                budget: budget.unwrap_or_else(env_budget),
            },
            Sub::Lambda { field, b, tuple } => Command::Lambda { field, b, tuple },
            Sub::Pindep { field, tuple } => Command::Pindep { field, tuple },
            Sub::Basis { field } => Command::Basis { field },
            Sub::Prolong {
                field,
                vars,
                polys,
                point,
            } => Command::Prolong {
                field,
                vars,
                polys,
                point,
            },
            Sub::Adjoin {
                field,
                root,
                name,
                elem,
            } => Command::Adjoin {
                field,
                root,
                name,
                elem,
            },
            Sub::Selftest { seed, cases } => Command::Selftest { seed, cases },
        }
    }
}

/// Output of one invocation: what goes to stdout, stderr, and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Invocation {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Invocation {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let format = match cli.format {
        FormatArg::Record => Format::Record,
        FormatArg::Text => Format::Text,
    };
    let report = command::run(&cli.cmd.into());
    Invocation {
        stdout: report.render(format),
        stderr: String::new(),
        code: report.code,
    }
}
