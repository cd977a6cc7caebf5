//! Reading covers, cocycles and matrices from files and flags.

use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use clap::Args;
use serde::de::DeserializeOwned;

use metadual_core::{Cover, CoverSpec, IntMatrix};

use crate::report::usage;

/// A cover, from a JSON file or from builder flags.
#[derive(Args, Debug, Clone, Default)]
pub struct CoverArgs {
    /// Cover JSON file (`-` for stdin).
    #[arg(long, conflicts_with_all = ["builder", "rank", "qt", "q", "b"])]
    pub cover: Option<String>,
    /// Catalog code such as SL2, Sp6, E8, GL, GSp.
    #[arg(long)]
    pub builder: Option<String>,
    /// Rank for GL and GSp builders.
    #[arg(long)]
    pub rank: Option<usize>,
    /// Value of Q on short coroots.
    #[arg(long = "Qt", allow_negative_numbers = true)]
    pub qt: Option<i64>,
    /// Pair `a,b` for the GL and GSp families.
    #[arg(long = "Q", value_delimiter = ',', allow_negative_numbers = true)]
    pub q: Option<Vec<i64>>,
    /// Polarization matrix as JSON, e.g. `[[2,-1],[-1,2]]`.
    #[arg(long = "B")]
    pub b: Option<String>,
    /// Degree of the cover.
    #[arg(long)]
    pub n: Option<u64>,
}

impl CoverArgs {
    pub fn load(&self) -> Result<Cover> {
        if let Some(path) = &self.cover {
            let text = read_source(path)?;
            return metadual_core::parse_cover(&text).with_context(|| format!("reading cover {path}"));
        }
        let n = self.n.ok_or_else(|| usage("give --cover or builder flags with --n"))?;
        let b = match &self.b {
            Some(text) => Some(serde_json::from_str::<IntMatrix>(text).context("parsing --B")?),
            None => None,
        };
        let spec = CoverSpec {
            root_datum: None,
            builder: self.builder.clone(),
            rank: self.rank,
            b,
            qt: self.qt,
            q: self.q.clone(),
            n,
        };
        Ok(spec.build()?)
    }
}

pub fn read_source(path: &str) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(Path::new(path)).with_context(|| format!("reading {path}"))?;
    }
    Ok(text)
}

pub fn read_json<T: DeserializeOwned>(path: &str) -> Result<T> {
    let text = read_source(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {path}"))
}

/// A JSON value given inline or, with a leading `@`, as a file.
pub fn inline_json<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T> {
    let text = match arg.strip_prefix('@') {
        Some(path) => read_source(path)?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {what}"))
}

/// The cover in the form `parse_cover` accepts.
pub fn cover_spec(c: &Cover) -> CoverSpec {
    CoverSpec { root_datum: Some(c.root_datum.clone()), b: Some(c.q.gram_b.clone()), n: c.n, ..Default::default() }
}
