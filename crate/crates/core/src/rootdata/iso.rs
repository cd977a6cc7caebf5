//! Bounded isomorphism testing for based root data.
//!
//! For each diagram isomorphism `sigma` between the simple systems, the
//! conditions `g alpha_i = alpha'_{sigma i}` and `g^T alpha'^vee_{sigma i} =
//! alpha^vee_i` are linear in the entries of `g`. The integer solution set is
//! a coset of a kernel lattice, searched for a unimodular member.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{cartan_matrix, center_invariants, fundamental_group_invariants, RootDataError, RootDatum};
use crate::lattice::{self, IntMatrix};

pub const MAX_ISO_RANK: usize = 9;
const MAX_KERNEL_DIM: usize = 4;
const COEFF_RANGE: i64 = 3;

/// All bijections `sigma` with `c1[i][j] == c2[sigma i][sigma j]`.
pub fn diagram_automorphisms(c1: &IntMatrix, c2: &IntMatrix) -> Vec<Vec<usize>> {
    let n = c1.rows();
    if c2.rows() != n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut sigma = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(c1: &IntMatrix, c2: &IntMatrix, sigma: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let i = sigma.len();
        let n = c1.rows();
        if i == n {
            out.push(sigma.clone());
            return;
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            let ok = (0..=i).all(|j| {
                let sj = if j == i { cand } else { sigma[j] };
                c1[(i, j)] == c2[(cand, sj)] && c1[(j, i)] == c2[(sj, cand)]
            });
            if ok {
                used[cand] = true;
                sigma.push(cand);
                rec(c1, c2, sigma, used, out);
                sigma.pop();
                used[cand] = false;
            }
        }
    }
    rec(c1, c2, &mut sigma, &mut used, &mut out);
    out
}

/// Whether a lattice isomorphism `X1 -> X2` carries the based root datum
/// `a` onto `b` (simple roots to simple roots up to a diagram isomorphism).
///
/// Errors when the rank exceeds [`MAX_ISO_RANK`] or the solution coset has
/// more than four free directions.
pub fn root_datum_isomorphic(a: &RootDatum, b: &RootDatum) -> Result<bool, RootDataError> {
    if a.rank > MAX_ISO_RANK || b.rank > MAX_ISO_RANK {
        return Err(RootDataError::BoundExceeded(format!("isomorphism search limited to rank {MAX_ISO_RANK}")));
    }
    if a.rank != b.rank || a.roots.len() != b.roots.len() || a.simple.len() != b.simple.len() {
        return Ok(false);
    }
    if center_invariants(a) != center_invariants(b)
        || fundamental_group_invariants(a) != fundamental_group_invariants(b)
    {
        return Ok(false);
    }
    if a.simple.is_empty() {
        return Ok(true);
    }
    let (c1, c2) = (cartan_matrix(a), cartan_matrix(b));
    for sigma in diagram_automorphisms(&c1, &c2) {
        if let Some(g) = lattice_map_for(a, b, &sigma)? {
            debug_assert!(maps_roots(a, b, &g));
            if maps_roots(a, b, &g) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn maps_roots(a: &RootDatum, b: &RootDatum, g: &IntMatrix) -> bool {
    a.roots.iter().all(|r| {
        let img = lattice::to_i64(&g.apply(&lattice::to_big(r))).unwrap_or_default();
        b.root_index(&img).is_some()
    })
}

fn lattice_map_for(a: &RootDatum, b: &RootDatum, sigma: &[usize]) -> Result<Option<IntMatrix>, RootDataError> {
    let r = a.rank;
    let (sa, sb) = (a.simple_roots(), b.simple_roots());
    let (ca, cb) = (a.simple_coroots(), b.simple_coroots());
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut rhs: Vec<BigInt> = Vec::new();
    for (i, &s) in sigma.iter().enumerate() {
        // (g alpha_i)_p = alpha'_{sigma i, p}
        for p in 0..r {
            let mut row = vec![BigInt::zero(); r * r];
            for q in 0..r {
                row[p * r + q] = BigInt::from(sa[i][q]);
            }
            rows.push(row);
            rhs.push(BigInt::from(sb[s][p]));
        }
        // (g^T alpha'^vee_{sigma i})_q = alpha^vee_{i, q}
        for q in 0..r {
            let mut row = vec![BigInt::zero(); r * r];
            for p in 0..r {
                row[p * r + q] = BigInt::from(cb[s][p]);
            }
            rows.push(row);
            rhs.push(BigInt::from(ca[i][q]));
        }
    }
    let sys = IntMatrix::from_rows(r * r, &rows)?;
    let Some((x0, kernel)) = lattice::solve_integer_system(&sys, &rhs) else { return Ok(None) };
    let to_matrix = |v: &[BigInt]| -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = (0..r).map(|p| v[p * r..(p + 1) * r].to_vec()).collect();
        IntMatrix::from_rows(r, &rows).expect("square")
    };
    let g0 = to_matrix(&x0);
    if kernel.is_empty() {
        return Ok(g0.is_unimodular().then_some(g0));
    }
    if kernel.len() == 1 {
        // rank-one perturbations make the determinant affine in the coefficient
        let k = to_matrix(&kernel[0]);
        if lattice::smith_normal_form(&k).rank() <= 1 {
            let d0 = g0.determinant()?;
            let g1 = add_scaled(&g0, &k, &BigInt::one());
            let slope = g1.determinant()? - &d0;
            for target in [BigInt::one(), -BigInt::one()] {
                let t = if slope.is_zero() {
                    if d0 == target {
                        Some(BigInt::zero())
                    } else {
                        None
                    }
                } else {
                    let diff = &target - &d0;
                    (&diff % &slope).is_zero().then(|| diff / &slope)
                };
                if let Some(t) = t {
                    let g = add_scaled(&g0, &k, &t);
                    debug_assert!(g.determinant().map(|d| d.abs().is_one()).unwrap_or(false));
                    return Ok(Some(g));
                }
            }
            return Ok(None);
        }
    }
    if kernel.len() > MAX_KERNEL_DIM {
        return Err(RootDataError::BoundExceeded(format!(
            "isomorphism coset has {} free directions (limit {MAX_KERNEL_DIM})",
            kernel.len()
        )));
    }
    let ks: Vec<IntMatrix> = kernel.iter().map(|v| to_matrix(v)).collect();
    let span = (2 * COEFF_RANGE + 1) as usize;
    let total = span.pow(ks.len() as u32);
    for idx in 0..total {
        let mut g = g0.clone();
        let mut rest = idx;
        for k in &ks {
            let c = (rest % span) as i64 - COEFF_RANGE;
            rest /= span;
            g = add_scaled(&g, k, &BigInt::from(c));
        }
        if g.determinant()?.abs().to_i64() == Some(1) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

fn add_scaled(a: &IntMatrix, b: &IntMatrix, t: &BigInt) -> IntMatrix {
    let mut out = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out[(i, j)] += &b[(i, j)] * t;
        }
    }
    out
}
