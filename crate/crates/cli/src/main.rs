//! `pocset`: command-line front end for the pocset library.
//!
//! Every command reads one input (a poc-set, chain-family or cube-complex
//! JSON file; `fixtures/FIX-HEX` resolves `fixtures/FIX-HEX.json`, and the
//! shipped fixture names fall back to built-in copies) and writes text,
//! JSON (`schema: "pocset-cli/1"`), DOT or SVG to stdout. Exit status: 0 on
//! success, 1 on a domain error, 2 on a usage error; errors are JSON on
//! stderr.

mod commands;
mod input;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "pocset", version, about = "Poc-sets, dual cubings, Roller boundaries and shadows")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Svg,
}

/// Flags shared by every command.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Window bound W: cut coordinates are restricted to [-W, W].
    #[arg(long, global = true)]
    pub window: Option<i64>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a poc-set, chain family or cube complex.
    Validate { input: String },
    /// Enumerate the ultrafilters of a finite poc-set.
    Ultrafilters { input: String },
    /// Build the dual cube complex of a finite poc-set.
    Cubing { input: String },
    /// Duality round trip (poc-set) or halfspace extraction (cube complex).
    Dual {
        input: Option<String>,
        /// Check this many random poc-sets instead of an input file.
        #[arg(long)]
        random: Option<usize>,
        /// Largest number of proper pairs for random poc-sets.
        #[arg(long, default_value_t = 5)]
        max_pairs: usize,
    },
    /// The Roller boundary poset of a chain family.
    Boundary { input: String },
    /// The class ρ(ξ) of a boundary direction.
    Rho {
        input: String,
        /// Direction, e.g. `1,0` or `√3/2,-1/2`.
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
    },
    /// The image of ρ with its fibers.
    Image { input: String },
    /// Safe components of the image of ρ.
    Safe { input: String },
    /// Check the closure formula on every fiber.
    Closure { input: String },
    /// Restrict the wall system to the line `base + t·direction`.
    Restrict {
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        /// Base point of the line (default: the origin).
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
    },
    /// Shadow report of a principal ultrafilter.
    Shadows {
        input: String,
        /// Cut tuple, e.g. `5,5,5`.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "ultrafilter")]
        cuts: Option<String>,
        /// Ultrafilter literal, e.g. `r:cut(5) s:cut(5) t:cut(5)`.
        #[arg(long, allow_hyphen_values = true)]
        ultrafilter: Option<String>,
    },
    /// Build an escaping geodesic ray towards a class.
    Escape {
        input: String,
        /// Target class, e.g. `(+,+,+)`.
        #[arg(long, allow_hyphen_values = true)]
        signature: String,
        /// Number of moves after leaving Π₀.
        #[arg(long, default_value_t = 20)]
        length: usize,
    },
    /// Surjectivity / co-compactness report.
    Report { input: String },
}

fn main() {
    let cli = Cli::parse();
    match commands::run(&cli.command, &cli.common) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
        }
        Err(fail) => {
            eprintln!("{}", fail.diagnostic());
            std::process::exit(fail.exit_code());
        }
    }
}
