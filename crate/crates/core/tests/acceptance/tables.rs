use std::time::{Duration, Instant};

use metadual_core::cover::{emit_table, TableFamily};

use super::Check;

fn golden(f: TableFamily) -> String {
    let path = format!("{}/goldens/table_{}.txt", env!("CARGO_MANIFEST_DIR"), f.letter());
    std::fs::read_to_string(path).expect("golden table")
}

pub fn criterion() -> Check {
    let start = Instant::now();
    let mut cells = 0;
    let mut per_family = Vec::new();
    for f in TableFamily::ALL {
        let t = emit_table(f, 6).map_err(|e| format!("table {}: {e}", f.letter()))?;
        let (got, want) = (t.to_tsv(), golden(f));
        if got != want {
            let line = got.lines().zip(want.lines()).position(|(a, b)| a != b).unwrap_or(0);
            return Err(format!(
                "table {} differs at line {}: got {:?}, expected {:?}",
                f.letter(),
                line + 1,
                got.lines().nth(line),
                want.lines().nth(line)
            ));
        }
        let count: usize = t.rows.iter().map(|r| r.cells.len()).sum();
        per_family.push(format!("{}={count}", f.letter()));
        cells += count;
    }
    let elapsed = start.elapsed();
    if cells != 150 {
        return Err(format!("expected 150 cells, found {cells}"));
    }
    if elapsed > Duration::from_secs(10) {
        return Err(format!("took {:.2}s, limit 10s", elapsed.as_secs_f64()));
    }
    Ok(format!("{cells} cells match ({}) in {:.2}s", per_family.join(" "), elapsed.as_secs_f64()))
}
