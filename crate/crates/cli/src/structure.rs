//! Root data, dual groups, tables and maps of covers.

use std::fmt::Write;

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;

use metadual_core::cover::{
    emit_table, identify_dual, levi_cover, modified_datum, tau_evidence, well_aligned, TableFamily, TauEvidence,
};
use metadual_core::rootdata::{build_from_code, center_invariants, dynkin_type, validate, Violation};
use metadual_core::{CoverSpec, DualGroupId, IntMatrix, RootDatum};

use crate::input::{cover_spec, inline_json, read_json, CoverArgs};
use crate::report::{usage, Outcome, INVARIANT};

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Root datum JSON file, checked axiom by axiom.
    #[arg(long, conflicts_with_all = ["cover", "builder"])]
    pub datum: Option<String>,
    #[command(flatten)]
    pub cover: CoverArgs,
}

#[derive(Serialize)]
struct Validation {
    valid: bool,
    violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dynkin: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fundamental_group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cover: Option<CoverSpec>,
}

fn describe(rd: &RootDatum) -> (Option<String>, Option<String>) {
    (dynkin_type(rd).ok().map(|d| d.to_string()), Some(center_invariants(rd).to_string()))
}

pub fn cmd_validate(args: &ValidateArgs) -> Result<Outcome> {
    let (rd, cover) = match &args.datum {
        Some(path) => (read_json::<RootDatum>(path)?, None),
        None if args.cover.cover.is_none() && args.cover.n.is_none() => {
            let code = args.cover.builder.as_deref().ok_or_else(|| usage("give --datum, --cover or --builder"))?;
            (build_from_code(code, args.cover.rank)?, None)
        }
        None => {
            let c = args.cover.load()?;
            (c.root_datum.clone(), Some(cover_spec(&c)))
        }
    };
    let violations = validate(&rd);
    let (dynkin, fundamental_group) = if violations.is_empty() { describe(&rd) } else { (None, None) };
    let mut text = String::new();
    if violations.is_empty() {
        writeln!(text, "valid root datum of rank {}", rd.rank)?;
        if let Some(d) = &dynkin {
            writeln!(text, "type: {d}")?;
        }
        if let Some(f) = &fundamental_group {
            writeln!(text, "X / root span: {f}")?;
        }
        if cover.is_some() {
            writeln!(text, "form: integral, Weyl-invariant")?;
        }
    } else {
        for v in &violations {
            writeln!(text, "violation {v}")?;
        }
    }
    let first = violations.first().map(|v| format!("root datum axiom {} fails: {}", v.axiom, v.detail));
    let out =
        Outcome::new(Validation { valid: violations.is_empty(), violations, dynkin, fundamental_group, cover }, text);
    Ok(match first {
        Some(msg) => out.fail(INVARIANT, msg),
        None => out,
    })
}

#[derive(Args, Debug)]
pub struct DualizeArgs {
    #[command(flatten)]
    pub cover: CoverArgs,
    /// Add the basis of Y_{Q,n}, the n_phi table and the tau evidence.
    #[arg(long)]
    pub explain: bool,
}

#[derive(Serialize)]
struct RootLine {
    root: Vec<i64>,
    coroot: Vec<i64>,
    n_phi: u64,
    modified_coroot: Vec<i64>,
}

#[derive(Serialize)]
struct Explanation {
    yqn_basis: IntMatrix,
    roots: Vec<RootLine>,
    tau: TauEvidence,
}

#[derive(Serialize)]
struct Dualization {
    name: String,
    dual: DualGroupId,
    dual_datum: RootDatum,
    cover: CoverSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    explain: Option<Explanation>,
}

pub fn cmd_dualize(args: &DualizeArgs) -> Result<Outcome> {
    let c = args.cover.load()?;
    let id = identify_dual(&c)?;
    let md = modified_datum(&c)?;
    let name = id.starred_name();
    let mut text = format!("{name}\n");
    let explain = if args.explain {
        let rd = &c.root_datum;
        let roots: Vec<RootLine> = (0..rd.roots.len())
            .map(|i| RootLine {
                root: rd.roots[i].clone(),
                coroot: rd.coroots[i].clone(),
                n_phi: md.nphi[i],
                modified_coroot: md.modified_coroots[i].clone(),
            })
            .collect();
        let tau = tau_evidence(&c)?;
        writeln!(text, "type: {}", id.dynkin)?;
        writeln!(text, "fundamental group: {}", id.fundamental_group)?;
        writeln!(text, "Y_Q,n basis (rows):")?;
        for j in 0..md.yqn.basis().rows() {
            let row: Vec<String> = md.yqn.basis().row(j).iter().map(|x| x.to_string()).collect();
            writeln!(text, "  [{}]", row.join(", "))?;
        }
        writeln!(text, "roots (root | coroot | n_phi):")?;
        for r in &roots {
            writeln!(text, "  {:?} | {:?} | {}", r.root, r.coroot, r.n_phi)?;
        }
        writeln!(text, "tau: {}", if tau.nontrivial { "nontrivial" } else { "trivial" })?;
        for ((g, o), h) in tau.generators.iter().zip(&tau.orders).zip(&tau.half_values) {
            writeln!(text, "  {g:?} of order {o}: Q(y)/n {} mod Z", if *h { "= 1/2" } else { "= 0" })?;
        }
        Some(Explanation { yqn_basis: md.yqn.basis().clone(), roots, tau })
    } else {
        None
    };
    Ok(Outcome::new(Dualization { name, dual: id, dual_datum: md.dual, cover: cover_spec(&c), explain }, text))
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    /// A, B, C, D, E or all.
    #[arg(long, default_value = "all")]
    pub family: String,
    #[arg(long, default_value_t = 6)]
    pub nmax: u64,
    /// Tab-separated text instead of aligned columns.
    #[arg(long)]
    pub tsv: bool,
}

pub fn cmd_tables(args: &TablesArgs) -> Result<Outcome> {
    let families = if args.family.eq_ignore_ascii_case("all") {
        TableFamily::ALL.to_vec()
    } else {
        vec![TableFamily::from_letter(&args.family).ok_or_else(|| usage(format!("unknown family {}", args.family)))?]
    };
    if args.nmax == 0 {
        return Err(usage("--nmax must be at least 1"));
    }
    let mut tables = Vec::new();
    let mut text = String::new();
    for f in families {
        let t = emit_table(f, args.nmax)?;
        if !text.is_empty() {
            text.push('\n');
        }
        writeln!(text, "family {}", f.letter())?;
        text.push_str(&if args.tsv { t.to_tsv() } else { t.to_text() });
        tables.push(t);
    }
    Ok(Outcome::new(tables, text))
}

#[derive(Args, Debug)]
pub struct LeviArgs {
    #[command(flatten)]
    pub cover: CoverArgs,
    /// Simple root indices spanning the Levi, e.g. `0,2`.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub subset: Vec<usize>,
}

pub fn cmd_levi(args: &LeviArgs) -> Result<Outcome> {
    let c = args.cover.load()?;
    let rep = levi_cover(&c, &args.subset)?;
    let mut text = String::new();
    writeln!(text, "Levi dual: {}", rep.levi_dual.starred_name())?;
    writeln!(text, "modified coroots contained: {}", rep.roots_contained)?;
    writeln!(text, "simple modified coroots contained: {}", rep.simple_contained)?;
    writeln!(text, "tau: cover {}, Levi {}, compatible {}", rep.tau_full, rep.tau_levi, rep.tau_agrees)?;
    let ok = rep.roots_contained && rep.simple_contained && rep.tau_agrees;
    let out = Outcome::new(&rep, text);
    Ok(if ok { out } else { out.fail(INVARIANT, "Levi compatibility fails") })
}

#[derive(Args, Debug)]
pub struct AlignArgs {
    /// Source cover JSON file.
    #[arg(long)]
    pub source: String,
    /// Target cover JSON file.
    #[arg(long)]
    pub target: String,
    /// The map Y1 -> Y2 as a JSON matrix acting on columns, or `@file`.
    #[arg(long)]
    pub map: String,
}

pub fn cmd_align(args: &AlignArgs) -> Result<Outcome> {
    let c1 = metadual_core::parse_cover(&crate::input::read_source(&args.source)?).context("reading source")?;
    let c2 = metadual_core::parse_cover(&crate::input::read_source(&args.target)?).context("reading target")?;
    let iota: IntMatrix = inline_json(&args.map, "--map")?;
    let rep = well_aligned(&iota, &c1, &c2)?;
    let mut text = String::new();
    for cond in &rep.conditions {
        let status = if cond.passed { "holds" } else { "fails" };
        if cond.detail.is_empty() {
            writeln!(text, "condition ({}) {status}", cond.number)?;
        } else {
            writeln!(text, "condition ({}) {status}: {}", cond.number, cond.detail)?;
        }
    }
    if let Some(m) = &rep.dual_map {
        writeln!(text, "dual map: {m:?}")?;
        writeln!(text, "modified coroots preserved: {}", rep.modified_coroots_preserved.unwrap_or(false))?;
        writeln!(text, "tau compatible: {}", rep.tau_compatible.unwrap_or(false))?;
    }
    let failed = rep
        .conditions
        .iter()
        .find(|c| !c.passed)
        .map(|c| format!("well-aligned condition ({}) fails: {}", c.number, c.detail));
    let out = Outcome::new(&rep, text);
    Ok(match failed {
        Some(msg) => out.fail(INVARIANT, msg),
        None => out,
    })
}
