//! `vcinv`: batch front end for the invariant-theory library.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use vcinv::invariants::MAX_CATALOG_Q;
use vcinv::{BasisId, FieldSpec, GroupKind};

#[derive(Parser, Debug)]
#[command(name = "vcinv", version, about = "Invariants of 2x2 matrix groups over F_q on a vector and a covector")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every tagged identity and the h_s relations.
    Identities {
        #[arg(long, value_parser = parse_q)]
        q: FieldSpec,
    },
    /// Dimensions of the graded pieces of an invariant ring.
    Dims {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long, value_parser = parse_q)]
        q: FieldSpec,
        #[arg(long = "max-deg")]
        max_deg: u32,
    },
    /// Hilbert series of an invariant ring, optionally expanded.
    Hilbert {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long, value_parser = parse_q)]
        q: FieldSpec,
        /// Expand through this degree.
        #[arg(long)]
        expand: Option<u32>,
    },
    /// The exponent i with H(1/t) = t^i H(t).
    Gorenstein {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long, value_parser = parse_q)]
        q: FieldSpec,
    },
    /// Certify a free basis degree by degree.
    BasisCheck {
        #[arg(long, value_parser = parse_basis)]
        basis: BasisId,
        #[arg(long, value_parser = parse_q)]
        q: FieldSpec,
        #[arg(long = "max-deg")]
        max_deg: u32,
    },
    /// Check that a generating set spans every graded piece.
    GeneratorsCheck {
        /// gl2: the seven GL2 generators; sl2: the eight with h_1.
        #[arg(long, value_enum, default_value_t = GroupArg::Gl2)]
        group: GroupArg,
        #[arg(long, value_parser = parse_q)]
        q: FieldSpec,
        #[arg(long = "max-deg")]
        max_deg: u32,
    },
    /// Decide whether h_1 lies in the subalgebra of the seven SL2 generators.
    #[command(name = "nonmembership-h1")]
    NonmembershipH1 {
        #[arg(long, value_parser = parse_q, default_value = "3")]
        q: FieldSpec,
    },
    /// Relative trace of an SL2-invariant polynomial.
    Trace {
        #[arg(long, value_parser = parse_q)]
        q: FieldSpec,
        /// Polynomial such as "x1^3*y1 + x2^3*y2".
        #[arg(long)]
        poly: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupArg {
    P2,
    Sl2,
    Gl2,
}

impl GroupArg {
    pub fn kind(self) -> GroupKind {
        match self {
            GroupArg::P2 => GroupKind::P2,
            GroupArg::Sl2 => GroupKind::SL2,
            GroupArg::Gl2 => GroupKind::GL2,
        }
    }
}

/// Accepts a bare prime power (`9`) or `p^r` (`3^2`).
fn parse_q(s: &str) -> Result<FieldSpec, String> {
    let s = s.trim();
    let field = match s.split_once('^') {
        Some((p, r)) => {
            let p: u64 = p.trim().parse().map_err(|_| format!("invalid prime {p:?}"))?;
            let r: u32 = r.trim().parse().map_err(|_| format!("invalid exponent {r:?}"))?;
            FieldSpec::new(p, r)
        }
        None => FieldSpec::with_order(s.parse().map_err(|_| format!("invalid q {s:?}"))?),
    }
    .map_err(|e| e.to_string())?;
    if field.order() > MAX_CATALOG_Q {
        return Err(format!("q = {} exceeds the supported maximum {MAX_CATALOG_Q}", field.order()));
    }
    Ok(field)
}

fn parse_basis(s: &str) -> Result<BasisId, String> {
    BasisId::parse(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(rendered) => {
            if let Err(e) = output::emit(cli.out.as_deref(), &rendered.text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if rendered.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
