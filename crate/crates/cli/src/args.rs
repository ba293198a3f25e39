use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

/// Cycles (circles, lines, points and imaginary circles) in tetracyclic
/// coordinates: products, cross ratios, figures and checks.
///
/// Cycle arguments are inline JSON (`{"k":1,"l":0,"n":0,"m":-1}`, or an
/// array) or paths to JSON files; all arguments are read in order and
/// arrays are flattened.
#[derive(Debug, Parser)]
#[command(name = "cycles", version)]
pub struct Cli {
    /// Sets both the absolute and the relative tolerance.
    #[arg(long, global = true)]
    pub eps: Option<f64>,

    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Resolve {
    /// Shrink the zero-radius cycle into a family of small circles: 0.
    Orthogonal,
    /// Move along the pencil from the point to the cycle: 1.
    Tangent,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cycle product of two cycles and how they sit relative to each other.
    Product {
        #[arg(required = true)]
        cycles: Vec<String>,
    },
    /// Cross ratio ⟦C1, C2; C3, C4⟧ of four cycles.
    Crossratio {
        #[arg(required = true)]
        cycles: Vec<String>,
        /// Resolve a 0/0 value of a quadruple X, Y, Y, X where one of X, Y
        /// is a point on the other.
        #[arg(long, value_enum)]
        resolve: Option<Resolve>,
    },
    /// Möbius invariant distance between two cycles.
    Distance {
        #[arg(required = true)]
        cycles: Vec<String>,
        /// Write an SVG of the construction.
        #[arg(long)]
        render: Option<PathBuf>,
        #[command(flatten)]
        view: ViewArgs,
    },
    /// Figure constructions.
    Figure {
        #[command(subcommand)]
        figure: Figure,
    },
    /// Draw cycles as SVG.
    Render {
        #[arg(required = true)]
        cycles: Vec<String>,
        /// Output file; standard output when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        view: ViewArgs,
    },
    /// Run the seeded invariant suites.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Worker threads; trials are merged by index, so the report does
        /// not depend on this.
        #[arg(long)]
        threads: Option<usize>,
        /// Negative control: evaluate the squared-modulus suite with a
        /// corrupted cycle product. That suite must then fail.
        #[arg(long)]
        mutate_product: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum Figure {
    /// Reflection of a cycle in a mirror, checked through ⟦C1, C2; Z1, Z2⟧ = 1.
    Harmonic {
        /// Mirror and cycle, in this order.
        #[arg(required = true)]
        cycles: Vec<String>,
        /// Seed for the choice of the orthogonal cycle.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        render: Option<PathBuf>,
        #[command(flatten)]
        view: ViewArgs,
    },
}

#[derive(Debug, Clone, clap::Args)]
pub struct ViewArgs {
    /// Visible region `xmin,xmax,ymin,ymax`.
    #[arg(long, default_value = "-5,5,-5,5", allow_hyphen_values = true)]
    pub viewport: String,
    #[arg(long, default_value_t = 1.5)]
    pub stroke_width: f64,
    /// Skip circles with imaginary radius instead of drawing them dashed.
    #[arg(long)]
    pub hide_imaginary: bool,
}
