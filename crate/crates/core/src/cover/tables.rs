//! Dual group tables for the covers `Q_1` of the simply connected groups.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{identify_dual, qt_form, Cover, CoverError};
use crate::rootdata::build_from_code;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableFamily {
    A,
    B,
    C,
    D,
    E,
}

impl TableFamily {
    pub const ALL: [TableFamily; 5] = [TableFamily::A, TableFamily::B, TableFamily::C, TableFamily::D, TableFamily::E];

    pub fn from_letter(s: &str) -> Option<TableFamily> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Some(TableFamily::A),
            "B" => Some(TableFamily::B),
            "C" => Some(TableFamily::C),
            "D" => Some(TableFamily::D),
            "E" => Some(TableFamily::E),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            TableFamily::A => 'A',
            TableFamily::B => 'B',
            TableFamily::C => 'C',
            TableFamily::D => 'D',
            TableFamily::E => 'E',
        }
    }
}

/// Column headers and builder codes.
pub fn table_columns(family: TableFamily) -> Vec<(String, String)> {
    let classical = |head: &str, sizes: Vec<usize>| -> Vec<(String, String)> {
        sizes.into_iter().map(|s| (format!("{head}_{s}"), format!("{head}{s}"))).collect()
    };
    match family {
        TableFamily::A => classical("SL", (2..=6).collect()),
        TableFamily::B => classical("Spin", (7..=17).step_by(2).collect()),
        TableFamily::C => classical("Sp", vec![6, 8, 10]),
        TableFamily::D => classical("Spin", (8..=18).step_by(2).collect()),
        TableFamily::E => ["E6", "E7", "E8", "F4", "G2"].iter().map(|s| (s.to_string(), s.to_string())).collect(),
    }
}

/// The cover with form `Q_1` of the group in `column` and degree `n`.
pub fn table_cover(family: TableFamily, column: usize, n: u64) -> Result<Cover, CoverError> {
    let cols = table_columns(family);
    let (_, code) = cols.get(column).ok_or(CoverError::Mismatch(format!("column {column}")))?;
    let rd = build_from_code(code, None)?;
    let q = qt_form(&rd, 1)?;
    Cover::new(rd, q, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u64,
    /// Display names, with a leading `*` where `tau_Q(-1)` is nontrivial.
    pub cells: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub family: TableFamily,
    pub headers: Vec<String>,
    pub rows: Vec<TableRow>,
}

impl Table {
    /// Tab-separated: a header line `n<TAB>SL_2...` then one line per degree.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n");
        for h in &self.headers {
            out.push('\t');
            out.push_str(h);
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.n.to_string());
            for c in &row.cells {
                out.push('\t');
                out.push_str(c);
            }
            out.push('\n');
        }
        out
    }

    /// Space-aligned columns for terminals.
    pub fn to_text(&self) -> String {
        let mut grid: Vec<Vec<String>> =
            vec![std::iter::once("n".to_string()).chain(self.headers.iter().cloned()).collect()];
        for row in &self.rows {
            grid.push(std::iter::once(row.n.to_string()).chain(row.cells.iter().cloned()).collect());
        }
        let widths: Vec<usize> =
            (0..grid[0].len()).map(|j| grid.iter().map(|r| r[j].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for r in &grid {
            let line: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// Rows `n = 1..=n_max`, cells computed in parallel.
pub fn emit_table(family: TableFamily, n_max: u64) -> Result<Table, CoverError> {
    let cols = table_columns(family);
    let jobs: Vec<(u64, usize)> = (1..=n_max).flat_map(|n| (0..cols.len()).map(move |j| (n, j))).collect();
    let cells: Vec<String> = jobs
        .par_iter()
        .map(|&(n, j)| Ok(identify_dual(&table_cover(family, j, n)?)?.starred_name()))
        .collect::<Result<_, CoverError>>()?;
    let rows = cells
        .chunks(cols.len().max(1))
        .zip(1..=n_max)
        .map(|(chunk, n)| TableRow { n, cells: chunk.to_vec() })
        .collect();
    Ok(Table { family, headers: cols.into_iter().map(|(h, _)| h).collect(), rows })
}
