//! Functoriality of the dual group along well-aligned maps, and Levi
//! subgroups of covers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::dual::{modified_datum, tau_evidence_with, ModifiedDatum};
use super::{Cover, CoverError};
use crate::lattice::{self, IntMatrix};
use crate::rootdata::{identify_datum, levi_subdatum, DualGroupId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub number: u8,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`well_aligned`].
///
/// `dual_map` is present when all four conditions hold. It is the matrix of
/// `X_{2,Q,n} -> X_{1,Q,n}` in the bases dual to `yqn.basis()` of each side,
/// i.e. the transpose of `iota` restricted to `Y_{1,Q,n} -> Y_{2,Q,n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignmentReport {
    pub conditions: Vec<ConditionCheck>,
    pub dual_map: Option<IntMatrix>,
    pub modified_coroots_preserved: Option<bool>,
    pub tau_compatible: Option<bool>,
}

impl AlignmentReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    /// Numbers of the failed conditions.
    pub fn failures(&self) -> Vec<u8> {
        self.conditions.iter().filter(|c| !c.passed).map(|c| c.number).collect()
    }
}

fn i64_rows(m: &IntMatrix) -> Result<Vec<Vec<i64>>, CoverError> {
    m.to_i64_rows().ok_or_else(|| CoverError::Integrality("map entries exceed 64 bits".into()))
}

/// Checks the four well-alignment conditions for `iota: Y1 -> Y2`, given as
/// an `r2 x r1` matrix acting on column vectors.
///
/// 1. coroots of `c1` map to coroots of `c2`, and `ker iota` pairs trivially
///    with every root of `c1`;
/// 2. simple coroots map to simple coroots;
/// 3. `Q1 = Q2 o iota`;
/// 4. `iota(Y_{1,Q,n}) ⊂ Y_{2,Q,n}`.
pub fn well_aligned(iota: &IntMatrix, c1: &Cover, c2: &Cover) -> Result<AlignmentReport, CoverError> {
    let (r1, r2) = (c1.rank(), c2.rank());
    if iota.rows() != r2 || iota.cols() != r1 {
        return Err(CoverError::Dimension { expected: r2 * r1, found: iota.rows() * iota.cols() });
    }
    if c1.n != c2.n {
        return Err(CoverError::Mismatch("degree".into()));
    }
    let (rd1, rd2) = (&c1.root_datum, &c2.root_datum);
    let m = i64_rows(iota)?;
    let image = |y: &[i64]| -> Vec<i64> { m.iter().map(|row| row.iter().zip(y).map(|(a, b)| a * b).sum()).collect() };
    let mut conditions = Vec::with_capacity(4);

    let mut detail = String::new();
    if let Some(i) = rd1.coroots.iter().position(|c| !rd2.coroots.contains(&image(c))) {
        detail = format!("coroot {i} does not map to a coroot");
    } else {
        let kernel = lattice::left_kernel(&iota.transpose());
        'k: for k in &kernel {
            for (i, phi) in rd1.roots.iter().enumerate() {
                let p: BigInt = phi.iter().zip(k).map(|(&a, b)| BigInt::from(a) * b).sum();
                if !p.is_zero() {
                    detail = format!("kernel vector pairs nontrivially with root {i}");
                    break 'k;
                }
            }
        }
    }
    conditions.push(ConditionCheck { number: 1, passed: detail.is_empty(), detail });

    let simple2 = rd2.simple_coroots();
    let bad = rd1.simple_coroots().iter().position(|c| !simple2.contains(&image(c)));
    conditions.push(ConditionCheck {
        number: 2,
        passed: bad.is_none(),
        detail: bad.map(|i| format!("simple coroot {i} does not map to a simple coroot")).unwrap_or_default(),
    });

    let pulled = iota.transpose().mul(&c2.q.gram_b)?.mul(iota)?;
    let ok3 = pulled == c1.q.gram_b;
    conditions.push(ConditionCheck {
        number: 3,
        passed: ok3,
        detail: if ok3 { String::new() } else { "Q1 is not the pullback of Q2".into() },
    });

    let md1 = modified_datum(c1)?;
    let md2 = modified_datum(c2)?;
    let mut restricted: Vec<Vec<BigInt>> = Vec::with_capacity(md1.yqn.rank());
    let mut ok4 = true;
    for j in 0..md1.yqn.rank() {
        let y = iota.apply(md1.yqn.basis().row(j));
        match md2.yqn.coordinates(&y) {
            Some(c) => restricted.push(c),
            None => {
                ok4 = false;
                break;
            }
        }
    }
    conditions.push(ConditionCheck {
        number: 4,
        passed: ok4,
        detail: if ok4 { String::new() } else { "image of Y_1,Q,n is not inside Y_2,Q,n".into() },
    });

    let mut report =
        AlignmentReport { conditions, dual_map: None, modified_coroots_preserved: None, tau_compatible: None };
    if !report.passed() {
        return Ok(report);
    }
    // columns of N are coordinates of iota(L1_j) in L2
    let n_mat = IntMatrix::from_rows(md2.yqn.rank(), &restricted)?.transpose();
    report.dual_map = Some(n_mat.transpose());
    report.modified_coroots_preserved =
        Some(md1.modified_coroots.iter().all(|c| md2.modified_coroots.contains(&image(c))));
    report.tau_compatible = Some(tau_maps_agree(c1, c2, &md1, iota));
    Ok(report)
}

/// `Q2(iota y) / n = Q1(y) / n mod Z` on a basis of `Y_{1,Q,n}`. The map
/// `y -> Q(y)/n mod Z` is additive on `Y_{Q,n}`, so a basis suffices.
fn tau_maps_agree(c1: &Cover, c2: &Cover, md1: &ModifiedDatum, iota: &IntMatrix) -> bool {
    let n = c1.n_big();
    (0..md1.yqn.rank()).all(|j| {
        let y = md1.yqn.basis().row(j);
        let diff = c2.q.b_value(&iota.apply(y), &iota.apply(y)) - c1.q.b_value(y, y);
        // both sides are halves of B-values; compare 2Q modulo 2n
        diff.is_multiple_of(&(&n * 2))
    })
}

/// Outcome of [`levi_cover`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviReport {
    pub levi: Cover,
    pub levi_dual: DualGroupId,
    /// Modified coroots of the Levi are modified coroots of the cover.
    pub roots_contained: bool,
    /// Simple modified coroots of the Levi are simple for the cover.
    pub simple_contained: bool,
    pub tau_full: bool,
    pub tau_levi: bool,
    /// `tau_Q(-1)` of the cover maps to that of the Levi under the center
    /// inclusion: the same character on `Y_{Q,n}`, killing both coroot spans.
    pub tau_agrees: bool,
}

/// Restricts a cover to the Levi subgroup generated by the simple roots at
/// `subset`, keeping `(Y, B, n)`.
pub fn levi_cover(c: &Cover, subset: &[usize]) -> Result<LeviReport, CoverError> {
    let rd_m = levi_subdatum(&c.root_datum, subset)?;
    let levi = Cover::new(rd_m, c.q.clone(), c.n)?;
    let md = modified_datum(c)?;
    let md_m = modified_datum(&levi)?;
    let roots_contained = md_m.modified_coroots.iter().all(|v| md.modified_coroots.contains(v));
    let simple_full: Vec<&Vec<i64>> = md.dual.simple.iter().map(|&i| &md.dual.roots[i]).collect();
    let simple_contained = md_m.dual.simple.iter().all(|&i| simple_full.contains(&&md_m.dual.roots[i]));
    let ev = tau_evidence_with(c, &md)?;
    let ev_m = tau_evidence_with(&levi, &md_m)?;
    let mut levi_dual = identify_datum(&md_m.dual)?;
    levi_dual.tau_nontrivial = ev_m.nontrivial;
    // Both characters are y -> Q(y)/n on the same Y_{Q,n}. The full one kills
    // Y^SC of the cover, hence also the smaller Y^SC of the Levi, and a
    // trivial tau on the cover forces a trivial tau on the Levi.
    let tau_agrees = md.yqn == md_m.yqn && md.ysc.contains_lattice(&md_m.ysc) && (ev.nontrivial || !ev_m.nontrivial);
    Ok(LeviReport {
        levi,
        levi_dual,
        roots_contained,
        simple_contained,
        tau_full: ev.nontrivial,
        tau_levi: ev_m.nontrivial,
        tau_agrees,
    })
}
