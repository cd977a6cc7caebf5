use num_traits::ToPrimitive;

use metadual_core::arith::Place;
use metadual_core::cohomology::{lgroup, ExtensionGroup, TwoCocycle};
use metadual_core::cover::{identify_dual, modified_datum, table_columns, table_cover, TableFamily};

use super::Check;

pub fn criterion() -> Check {
    let (mut starred, mut unstarred) = (0, 0);
    let mut failures = Vec::new();
    for f in TableFamily::ALL {
        for (col, (header, _)) in table_columns(f).into_iter().enumerate() {
            for n in 1..=6 {
                let label = format!("{header} n={n}");
                let c = table_cover(f, col, n).map_err(|e| format!("{label}: {e}"))?;
                let id = identify_dual(&c).map_err(|e| format!("{label}: {e}"))?;
                let data = lgroup(&c, Place::Real, None).map_err(|e| format!("{label}: {e}"))?;
                if id.tau_nontrivial {
                    starred += 1;
                    let md = modified_datum(&c).map_err(|e| format!("{label}: {e}"))?;
                    let center = md.yqn.relative_invariants(&md.ysc).map_err(|e| e.to_string())?.torsion_order();
                    let expected = center.to_usize().ok_or("center too large")? * 2;
                    let ext = ExtensionGroup::new(data.class.clone()).map_err(|e| format!("{label}: {e}"))?;
                    let order = ext.materialize().map_err(|e| format!("{label}: {e}"))?.order();
                    if data.class_is_zero || data.class_order != 2 {
                        failures.push(format!("{label} (class order {})", data.class_order));
                    } else if order != expected || data.lz_order != expected {
                        failures.push(format!("{label} (order {order}, expected {expected})"));
                    }
                } else {
                    unstarred += 1;
                    let split = match &data.splitting {
                        Some(s) => {
                            TwoCocycle::coboundary(&data.class.base, s).map(|d| d == data.class).unwrap_or(false)
                        }
                        None => false,
                    };
                    if !data.class_is_zero || !split {
                        failures.push(format!("{label} (unstarred, no splitting)"));
                    }
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{starred} starred cells nonzero of order 2, {unstarred} unstarred cells split"))
    } else {
        Err(format!(
            "{} of {starred} starred and {unstarred} unstarred cells fail: {}",
            failures.len(),
            failures.join(", ")
        ))
    }
}
