use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "circmeasure", version, about = "Circular measures of ADE graphs, computed exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Loop counts c_k at the root, k = 0..=order.
    GraphLoops {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        order: OrderArg,
    },
    /// T series of a graph from its loop counts.
    GraphTseries {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Expand a ξ expression such as `xi(5+,9+:15+)`.
    XiExpand {
        #[command(flatten)]
        expr: ExprArg,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Atoms, mass and positivity of a measure expression.
    MeasureShow {
        #[command(flatten)]
        expr: ExprArg,
    },
    /// Moments ∫ u^k for k = 0..=count.
    MeasureMoments {
        #[command(flatten)]
        expr: ExprArg,
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// T series of a measure expression.
    MeasureTseries {
        #[command(flatten)]
        expr: ExprArg,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Real measure obtained under u ↦ 2 + u² + u⁻².
    MeasurePushforward {
        #[command(flatten)]
        expr: ExprArg,
    },
    /// Coefficients over Re(1 - q^{2l})_n; n defaults to half the minimal support order.
    Expand {
        #[command(flatten)]
        expr: ExprArg,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Level and canonical expansion over the divisor family.
    Level {
        #[command(flatten)]
        expr: ExprArg,
    },
    /// Run the check registry and emit a report.
    Verify {
        #[command(flatten)]
        order: OrderArg,
        /// Glob over check ids, e.g. `thm8.7/*` or `prop5.?/*`.
        #[arg(long)]
        only: Option<String>,
        /// Comma-separated graph labels replacing the default size matrix.
        #[arg(long, value_delimiter = ',')]
        graphs: Option<Vec<String>>,
        /// Write the report here instead of stdout; a `.md` extension selects Markdown.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Graph label (`E7`, `A4`, `Dtilde6`) or series name used with --param.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub param: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ExprArg {
    #[arg(long)]
    pub expr: String,
}

#[derive(Debug, Args)]
pub struct OrderArg {
    /// Working order K.
    #[arg(long, default_value_t = 64)]
    pub order: usize,
}
