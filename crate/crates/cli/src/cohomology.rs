//! Cocycle operations, metaGalois models and L-group data.

use std::fmt::Write;

use anyhow::Result;
use clap::{Args, Subcommand};
use serde::Serialize;

use metadual_core::arith::Place;
use metadual_core::cohomology::{
    kummer_boundary, lgroup, lgroup_twist1, metagalois_model, unit_subgroup, ExtensionGroup, FailingTriple,
    FiniteModule, GModule, LGroupData, ModuleHom, OneCocycle, TwoCocycle,
};

use crate::input::{inline_json, read_json, CoverArgs};
use crate::report::{usage, Outcome, INVARIANT};

#[derive(Serialize)]
pub struct Summary {
    group_order: usize,
    module_factors: Vec<u64>,
    split: bool,
    class_order: u64,
    extension_order: usize,
    /// Order of `(0, g)` in the extension, per group element.
    lift_orders: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    splitting: Option<Vec<Vec<u64>>>,
}

fn summarize(c: &TwoCocycle) -> Result<Summary> {
    let splitting = c.find_splitting()?;
    let ext = ExtensionGroup::new(c.clone())?;
    let zero = c.module().zero();
    Ok(Summary {
        group_order: c.group().order(),
        module_factors: c.module().factors.clone(),
        split: splitting.is_some(),
        class_order: c.class_order()?,
        extension_order: ext.order(),
        lift_orders: (0..c.group().order()).map(|g| ext.element_order(&zero, g)).collect(),
        splitting,
    })
}

fn summary_line(s: &Summary) -> String {
    let top = s.lift_orders.iter().copied().max().unwrap_or(1);
    if s.split {
        format!("split, extension of order {}, largest lift order {top}", s.extension_order)
    } else {
        format!(
            "nonsplit, class of order {}, extension of order {}, element of order {top}",
            s.class_order, s.extension_order
        )
    }
}

#[derive(Serialize)]
struct CocycleResult {
    cocycle: TwoCocycle,
    summary: Summary,
}

fn with_summary(c: TwoCocycle, header: &str) -> Result<Outcome> {
    if let Err(t) = c.verify() {
        return Err(identity_failure(t));
    }
    let summary = summarize(&c)?;
    let text = format!("{header}{}\n", summary_line(&summary));
    Ok(Outcome::new(CocycleResult { cocycle: c, summary }, text))
}

fn identity_failure(t: FailingTriple) -> anyhow::Error {
    metadual_core::cohomology::CohomologyError::BadCocycle(format!(
        "cocycle identity fails at (g, h, k) = ({}, {}, {})",
        t.g, t.h, t.k
    ))
    .into()
}

#[derive(Subcommand, Debug)]
pub enum CocycleCmd {
    /// Check normalization and the cocycle identity.
    Verify { file: String },
    /// Baer sum of two cocycles on the same module.
    Sum { first: String, second: String },
    /// Pushout along a module map into a module with the given factors.
    Pushout {
        file: String,
        /// Matrix of the map as JSON, rows indexed by target coordinates.
        #[arg(long)]
        matrix: String,
        /// Invariant factors of the target, e.g. `4` or `2,4`.
        #[arg(long, value_delimiter = ',', required = true)]
        factors: Vec<u64>,
        /// Action matrices of the target as JSON; trivial when omitted.
        #[arg(long)]
        action: Option<String>,
    },
    /// Find `s` with `ds = c`.
    Split { file: String },
    /// Connecting map of `0 -> C[n] -> C -> nC -> 0` applied to a 1-cocycle.
    Kummer {
        file: String,
        #[arg(long)]
        n: u64,
    },
    /// The square-class model at a place.
    Metagalois {
        #[arg(long, default_value = "real")]
        place: String,
    },
}

pub fn cmd_cocycle(cmd: &CocycleCmd) -> Result<Outcome> {
    match cmd {
        CocycleCmd::Verify { file } => {
            let c: TwoCocycle = read_json(file)?;
            match c.verify() {
                Ok(()) => Ok(Outcome::new(serde_json::json!({ "valid": true }), "cocycle identity holds\n")),
                Err(t) => {
                    let msg = format!("cocycle identity fails at (g, h, k) = ({}, {}, {})", t.g, t.h, t.k);
                    Ok(Outcome::new(serde_json::json!({ "valid": false, "failing": t }), format!("{msg}\n"))
                        .fail(INVARIANT, msg))
                }
            }
        }
        CocycleCmd::Sum { first, second } => {
            let a: TwoCocycle = read_json(first)?;
            let b: TwoCocycle = read_json(second)?;
            with_summary(a.baer_sum(&b)?, "sum: ")
        }
        CocycleCmd::Pushout { file, matrix, factors, action } => {
            let c: TwoCocycle = read_json(file)?;
            let matrix: Vec<Vec<i64>> = inline_json(matrix, "--matrix")?;
            let action: Vec<Vec<Vec<i64>>> = match action {
                Some(a) => inline_json(a, "--action")?,
                None => Vec::new(),
            };
            let target = GModule::new(c.group().clone(), FiniteModule::new(factors.clone())?, action)?;
            with_summary(c.pushout(&ModuleHom { matrix }, &target)?, "pushout: ")
        }
        CocycleCmd::Split { file } => {
            let c: TwoCocycle = read_json(file)?;
            with_summary(c, "")
        }
        CocycleCmd::Kummer { file, n } => {
            if *n == 0 {
                return Err(usage("--n must be positive"));
            }
            let z: OneCocycle = read_json(file)?;
            with_summary(kummer_boundary(&z, *n)?, "boundary: ")
        }
        CocycleCmd::Metagalois { place } => cmd_metagalois(&MetagaloisArgs { place: place.clone() }),
    }
}

#[derive(Args, Debug)]
pub struct MetagaloisArgs {
    /// A prime or `real`.
    #[arg(long, default_value = "real")]
    pub place: String,
}

#[derive(Serialize)]
struct MetagaloisReport {
    place: Place,
    cocycle: TwoCocycle,
    summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    units_split: Option<bool>,
}

pub fn cmd_metagalois(args: &MetagaloisArgs) -> Result<Outcome> {
    let place: Place = args.place.parse()?;
    let c = metagalois_model(place)?;
    let summary = summarize(&c)?;
    let units_split = match place {
        Place::Real => None,
        Place::Prime(_) => {
            let (units, incl) = unit_subgroup(place);
            Some(c.pullback(&units, &incl)?.is_split()?)
        }
    };
    let mut text = format!("{place}: {}\n", summary_line(&summary));
    if let Some(s) = units_split {
        writeln!(text, "restriction to unit classes: {}", if s { "split" } else { "nonsplit" })?;
    }
    Ok(Outcome::new(MetagaloisReport { place, cocycle: c, summary, units_split }, text))
}

#[derive(Args, Debug)]
pub struct LgroupArgs {
    #[command(flatten)]
    pub cover: CoverArgs,
    /// A prime or `real`.
    #[arg(long, default_value = "real")]
    pub place: String,
    /// Second twist as a cocycle JSON file; zero when omitted.
    #[arg(long)]
    pub twist2: Option<String>,
}

#[derive(Serialize)]
struct LgroupReport {
    place: Place,
    tau: Vec<u64>,
    data: LGroupData,
}

pub fn cmd_lgroup(args: &LgroupArgs) -> Result<Outcome> {
    let c = args.cover.load()?;
    let place: Place = args.place.parse()?;
    let twist2: Option<TwoCocycle> = match &args.twist2 {
        Some(path) => Some(read_json(path)?),
        None => None,
    };
    let (_, tau) = lgroup_twist1(&c, place)?;
    let data = lgroup(&c, place, twist2.as_ref())?;
    let mut text = String::new();
    writeln!(text, "dual group: {}", data.dual.starred_name())?;
    let center: Vec<String> = data.center_factors.iter().map(|d| format!("Z/{d}")).collect();
    writeln!(text, "dual center: {}", if center.is_empty() { "0".to_string() } else { center.join(" x ") })?;
    writeln!(text, "tau(-1): {:?}", tau.coords)?;
    writeln!(text, "L-group of the center: order {}", data.lz_order)?;
    if data.class_is_zero {
        writeln!(text, "class at {place}: zero (split)")?;
    } else {
        writeln!(text, "class at {place}: nonzero of order {}", data.class_order)?;
    }
    let out = Outcome::new(LgroupReport { place, tau: tau.coords, data }, text);
    Ok(if twist2.is_none() { out.warn("second twist not given; taken to be zero") } else { out })
}
