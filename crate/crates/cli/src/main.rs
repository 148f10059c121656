//! `dabelian`: command-line front end for the window constructions and checks.
//!
//! Every flag also reads an environment variable `DAB_<FLAG>`, for instance
//! `DAB_SEED=7` or `DAB_FIELD=p=5`. Exit codes: 0 when every check passes or a
//! witness is found, 1 for a verified failure, 2 for usage errors and
//! unsupported instances.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "dabelian", version, about = "Constructions and axiom checks in truncated derived windows")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Algebra file with [field], [quiver] and [relations] sections.
    #[arg(long, env = "DAB_ALGEBRA")]
    pub algebra: PathBuf,
    /// `rationals` or `p=<prime>`; overrides the file's [field] section.
    #[arg(long, env = "DAB_FIELD")]
    pub field: Option<String>,
    #[arg(long, env = "DAB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Cap on sampled morphisms or enumerated subsets.
    #[arg(long, env = "DAB_BUDGET")]
    pub budget: Option<usize>,
    /// Largest total dimension of a catalogued indecomposable.
    #[arg(long, env = "DAB_DIM_BOUND", default_value_t = dabelian::catalog::DEFAULT_DIM_BOUND)]
    pub dim_bound: usize,
    /// Write the JSON report here; `-` prints it to stdout.
    #[arg(long, env = "DAB_JSON")]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct WindowArgs {
    /// `C[0,m]` for a hereditary-style window (the default).
    #[arg(long, env = "DAB_HEREDITARY", conflicts_with = "cluster_tilting")]
    pub hereditary: bool,
    /// `T[0,m]` for the n-cluster tilting module of the algebra.
    #[arg(long, env = "DAB_CLUSTER_TILTING")]
    pub cluster_tilting: bool,
    #[arg(long, env = "DAB_N")]
    pub n: Option<usize>,
    #[arg(long, env = "DAB_M", default_value_t = 0)]
    pub m: usize,
}

#[derive(Args, Debug, Clone)]
pub struct MapArgs {
    /// Source object: a window index, a label such as `SM[1,0]`, or
    /// `P<v>`, `I<v>`, `S<v>`, `M[..]`, `file:<path>` with an optional `@j` layer.
    #[arg(long, env = "DAB_FROM")]
    pub from: String,
    #[arg(long, env = "DAB_TO")]
    pub to: String,
    /// Coefficients of the map in the Hom basis; seeded random when omitted.
    #[arg(long, env = "DAB_COEFFS", value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Option<Vec<String>>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Samples the axioms of a d-abelian category on the window.
    CheckAxioms {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Builds and certifies the d-cokernel of a map.
    DCokernel {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Builds and certifies the d-kernel of a map.
    DKernel {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Splits a seeded random idempotent on a sum of window objects.
    SplitIdempotent {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        window: WindowArgs,
        /// Window object indices of the summands.
        #[arg(long, env = "DAB_PARTS", value_delimiter = ',')]
        parts: Option<Vec<usize>>,
    },
    /// Searches for the A2 failure of `C[0,m]` over a non-hereditary algebra.
    HereditaryWitness {
        #[command(flatten)]
        common: Common,
        #[arg(long, env = "DAB_M", default_value_t = 1)]
        m: usize,
    },
    /// Computes and certifies the n-cluster tilting module.
    ClusterTilting {
        #[command(flatten)]
        common: Common,
        #[arg(long, env = "DAB_N")]
        n: Option<usize>,
    },
    /// Checks the bijection between wide subcategories of the layer and
    /// repetitive wide subcategories of the window.
    WideBijection {
        #[command(flatten)]
        common: Common,
        #[arg(long, env = "DAB_N")]
        n: Option<usize>,
        #[arg(long, env = "DAB_M", default_value_t = 1)]
        m: usize,
    },
    /// Lists the indecomposable modules with Hom and Ext tables.
    Catalog {
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    ExitCode::from(commands::run(cli.command))
}
