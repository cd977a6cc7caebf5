//! `metadual`: dual groups of covers, local symbols and cocycle tools.
//!
//! Exit codes: 0 ok, 2 unparseable input, 3 failed invariant, 4 a search
//! or precision bound was exceeded. With `--json` every command prints one
//! envelope `{command, schema_version, status, code?, error?, payload,
//! warnings}` on stdout.

mod cohomology;
mod input;
mod report;
mod structure;
mod symbols;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "metadual", version, about = "Dual groups of covering groups and their L-group data")]
struct Cli {
    /// Print a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the root datum axioms (and the form, for a cover).
    Validate(structure::ValidateArgs),
    /// Identify the dual group of a cover.
    Dualize(structure::DualizeArgs),
    /// Dual groups for a family of simply connected groups, n = 1..nmax.
    Tables(structure::TablesArgs),
    /// Compare a cover with the Levi cover on a set of simple roots.
    Levi(structure::LeviArgs),
    /// Check that a map of covers is well aligned and compute its dual.
    Align(structure::AlignArgs),
    /// Quadratic Hilbert symbols.
    Hilbert(symbols::HilbertArgs),
    /// Normalized Weil indices.
    Weil(symbols::WeilArgs),
    /// Operations on 2-cocycles.
    #[command(subcommand)]
    Cocycle(cohomology::CocycleCmd),
    /// The metaGalois cocycle on square classes at a place.
    Metagalois(cohomology::MetagaloisArgs),
    /// The L-group data of a cover at a place.
    Lgroup(cohomology::LgroupArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Dualize(_) => "dualize",
            Command::Tables(_) => "tables",
            Command::Levi(_) => "levi",
            Command::Align(_) => "align",
            Command::Hilbert(_) => "hilbert",
            Command::Weil(_) => "weil",
            Command::Cocycle(_) => "cocycle",
            Command::Metagalois(_) => "metagalois",
            Command::Lgroup(_) => "lgroup",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(a) => structure::cmd_validate(a),
        Command::Dualize(a) => structure::cmd_dualize(a),
        Command::Tables(a) => structure::cmd_tables(a),
        Command::Levi(a) => structure::cmd_levi(a),
        Command::Align(a) => structure::cmd_align(a),
        Command::Hilbert(a) => symbols::cmd_hilbert(a),
        Command::Weil(a) => symbols::cmd_weil(a),
        Command::Cocycle(c) => cohomology::cmd_cocycle(c),
        Command::Metagalois(a) => cohomology::cmd_metagalois(a),
        Command::Lgroup(a) => cohomology::cmd_lgroup(a),
    };
    ExitCode::from(report::emit(cli.command.name(), result, cli.json))
}
