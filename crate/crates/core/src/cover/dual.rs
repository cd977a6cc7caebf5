//! The modified root datum of a cover and the element `tau_Q(-1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{nm_constants, Cover, CoverError};
use crate::lattice::{self, congruence_sublattice, IntMatrix, Sublattice};
use crate::rootdata::{identify_datum, DualGroupId, RootDatum};

/// Everything computed from `(Y, B, n)` and the roots.
///
/// The dual datum is written in coordinates adapted to `Y_{Q,n}`: its
/// character lattice has basis the rows of `yqn.basis()`, its roots are the
/// modified coroots `n_phi phi^vee` in that basis, and its coroots are the
/// modified roots `phi / n_phi` in the dual basis of `X_{Q,n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModifiedDatum {
    pub n: u64,
    pub yqn: Sublattice,
    /// Rows are `n` times the basis of `X_{Q,n}` dual to `yqn.basis()`.
    pub xqn_numerators: IntMatrix,
    /// `Y^SC_{Q,n}`, the span of the modified coroots.
    pub ysc: Sublattice,
    pub nphi: Vec<u64>,
    pub mphi: Vec<i64>,
    /// `n_phi phi^vee` in `Y` coordinates.
    pub modified_coroots: Vec<Vec<i64>>,
    pub dual: RootDatum,
}

impl ModifiedDatum {
    /// `phi / n_phi` as a rational vector on `X`.
    pub fn modified_root(&self, rd: &RootDatum, i: usize) -> Vec<BigRational> {
        let d = BigInt::from(self.nphi[i]);
        rd.roots[i].iter().map(|&x| BigRational::new(BigInt::from(x), d.clone())).collect()
    }

    /// Equality of the based root datum part, ignoring `m_phi`.
    pub fn same_datum(&self, other: &ModifiedDatum) -> bool {
        self.n == other.n
            && self.yqn == other.yqn
            && self.xqn_numerators == other.xqn_numerators
            && self.nphi == other.nphi
            && self.modified_coroots == other.modified_coroots
            && self.dual == other.dual
    }
}

/// Coordinates of `v` in the basis `L` of `Y_{Q,n}`: `c_j = <v, L*_j>`,
/// computed from the numerators `n L*_j`.
fn yqn_coordinates(xqn_num: &IntMatrix, n: &BigInt, v: &[BigInt]) -> Option<Vec<i64>> {
    (0..xqn_num.rows())
        .map(|j| {
            let s: BigInt = xqn_num.row(j).iter().zip(v).map(|(a, b)| a * b).sum();
            let (q, r) = s.div_rem(n);
            if r.is_zero() {
                q.to_i64()
            } else {
                None
            }
        })
        .collect()
}

pub fn modified_datum(c: &Cover) -> Result<ModifiedDatum, CoverError> {
    let rd = &c.root_datum;
    let r = rd.rank;
    let n_i = i64::try_from(c.n).map_err(|_| CoverError::BadDegree)?;
    let n = c.n_big();
    let yqn = congruence_sublattice(&c.q.gram_b, n_i)?;
    let basis = yqn.basis().clone();
    let xqn_numerators =
        yqn.dual_numerators(n_i).ok_or_else(|| CoverError::Integrality("n X_{Q,n} is not integral".into()))?;
    let mut nphi = Vec::with_capacity(rd.roots.len());
    let mut mphi = Vec::with_capacity(rd.roots.len());
    let mut modified_coroots = Vec::with_capacity(rd.roots.len());
    let mut dual_roots = Vec::with_capacity(rd.roots.len());
    let mut dual_coroots = Vec::with_capacity(rd.roots.len());
    for i in 0..rd.roots.len() {
        let (np, mp) = nm_constants(c, i)?;
        nphi.push(np);
        mphi.push(mp);
        let npi = np as i64;
        let mc: Vec<i64> = rd.coroots[i].iter().map(|&x| x * npi).collect();
        let coords = yqn_coordinates(&xqn_numerators, &n, &lattice::to_big(&mc))
            .ok_or_else(|| CoverError::Integrality(format!("modified coroot {i} is not in Y_Q,n")))?;
        let phi = lattice::to_big(&rd.roots[i]);
        let mut co = Vec::with_capacity(r);
        for j in 0..r {
            let s: BigInt = basis.row(j).iter().zip(&phi).map(|(a, b)| a * b).sum();
            let (q, rem) = s.div_rem(&BigInt::from(np));
            if !rem.is_zero() {
                return Err(CoverError::Integrality(format!("modified root {i} is not in X_Q,n")));
            }
            co.push(q.to_i64().ok_or_else(|| CoverError::Integrality("coordinate exceeds 64 bits".into()))?);
        }
        modified_coroots.push(mc);
        dual_roots.push(coords);
        dual_coroots.push(co);
    }
    let ysc = Sublattice::from_i64_vectors(r, &modified_coroots)?;
    let dual = RootDatum::new(r, dual_roots, dual_coroots, rd.simple.clone())?;
    Ok(ModifiedDatum { n: c.n, yqn, xqn_numerators, ysc, nphi, mphi, modified_coroots, dual })
}

/// Generators of `Y_{Q,n} / (Y^SC_{Q,n} + n Y_{Q,n})` and the values of
/// `y -> Q(y)/n mod Z` on them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauEvidence {
    /// Generators in `Y` coordinates.
    pub generators: Vec<Vec<i64>>,
    pub orders: Vec<u64>,
    /// `true` where `Q(y)/n = 1/2 mod Z`.
    pub half_values: Vec<bool>,
    pub nontrivial: bool,
}

/// `true` iff `2 Q(y) / n` is odd, for `y` in `Y_{Q,n}`.
fn q_over_n_is_half(c: &Cover, y: &[BigInt]) -> bool {
    let twice = c.q.b_value(y, y);
    let (q, r) = twice.div_rem(&c.n_big());
    debug_assert!(r.is_zero(), "2Q(y) is divisible by n on Y_Q,n");
    q.is_odd()
}

fn from_yqn_coords(md: &ModifiedDatum, w: &[BigInt]) -> Vec<BigInt> {
    md.yqn.basis().apply_left(w)
}

pub fn tau_evidence(c: &Cover) -> Result<TauEvidence, CoverError> {
    let md = modified_datum(c)?;
    tau_evidence_with(c, &md)
}

pub(crate) fn tau_evidence_with(c: &Cover, md: &ModifiedDatum) -> Result<TauEvidence, CoverError> {
    let r = c.rank();
    let mut rows: Vec<Vec<i64>> = md.dual.roots.clone();
    let n = c.n as i64;
    for j in 0..r {
        let mut v = vec![0; r];
        v[j] = n;
        rows.push(v);
    }
    let a = IntMatrix::from_rows(r, &rows)?;
    let snf = lattice::smith_normal_form(&a);
    let vinv = lattice::solve_inverse(&snf.v).expect("unimodular");
    let diag = snf.diagonal();
    let mut out =
        TauEvidence { generators: Vec::new(), orders: Vec::new(), half_values: Vec::new(), nontrivial: false };
    for (j, d) in diag.iter().enumerate() {
        if d == &BigInt::from(1) {
            continue;
        }
        let y = from_yqn_coords(md, vinv.row(j));
        let half = q_over_n_is_half(c, &y);
        out.generators.push(lattice::to_i64(&y).expect("small"));
        out.orders.push(d.to_u64().expect("small"));
        out.half_values.push(half);
        out.nontrivial |= half;
    }
    Ok(out)
}

/// Whether `tau_Q(-1)` is nontrivial.
pub fn tau_minus_one(c: &Cover) -> Result<bool, CoverError> {
    Ok(tau_evidence(c)?.nontrivial)
}

/// Exhaustive version of [`tau_minus_one`]: evaluates `Q(y)/n mod Z` on
/// every element of a transversal of `Y_{Q,n} / (Y^SC_{Q,n} + n Y_{Q,n})`.
pub fn tau_transversal_scan(c: &Cover) -> Result<bool, CoverError> {
    let md = modified_datum(c)?;
    let ev = tau_evidence_with(c, &md)?;
    let total: u64 = ev.orders.iter().product();
    if total > 1 << 20 {
        return Err(CoverError::Integrality(format!("transversal of size {total} is too large to scan")));
    }
    let gens: Vec<Vec<BigInt>> = ev.generators.iter().map(|g| lattice::to_big(g)).collect();
    for idx in 0..total {
        let mut rest = idx;
        let mut y = vec![BigInt::zero(); c.rank()];
        for (g, &o) in gens.iter().zip(&ev.orders) {
            let k = BigInt::from(rest % o);
            rest /= o;
            for (a, b) in y.iter_mut().zip(g) {
                *a += &k * b;
            }
        }
        if q_over_n_is_half(c, &y) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `tau_Q(-1)` as an element of the dual center `Hom(Y_{Q,n}/Y^SC_{Q,n}, Q/Z)`
/// written in `Z/d_1 + ... + Z/d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterElement {
    pub factors: Vec<u64>,
    pub coords: Vec<u64>,
    pub free_rank: usize,
}

impl CenterElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&k| k == 0)
    }
}

/// Uses a basis `b_i` of `Y_{Q,n}` with `Y^SC_{Q,n} = span(d_i b_i)`; the
/// character `chi` has coordinates `d_i chi(b_i) mod d_i`.
pub fn tau_center_element(c: &Cover) -> Result<CenterElement, CoverError> {
    let md = modified_datum(c)?;
    let r = c.rank();
    let a = IntMatrix::from_rows(r, &md.dual.roots)?;
    let (diag, vinv) = if md.dual.roots.is_empty() {
        (Vec::new(), IntMatrix::identity(r))
    } else {
        let snf = lattice::smith_normal_form(&a);
        (snf.diagonal(), lattice::solve_inverse(&snf.v).expect("unimodular"))
    };
    let mut factors = Vec::new();
    let mut coords = Vec::new();
    for (j, d) in diag.iter().enumerate() {
        let d = d.to_u64().expect("small");
        if d == 1 {
            continue;
        }
        let b = from_yqn_coords(&md, vinv.row(j));
        let half = q_over_n_is_half(c, &b);
        factors.push(d);
        coords.push(if half { d / 2 } else { 0 });
    }
    Ok(CenterElement { factors, coords, free_rank: r - diag.len() })
}

/// Dual group identification of a cover, including `tau_Q(-1)`.
pub fn identify_dual(c: &Cover) -> Result<DualGroupId, CoverError> {
    let md = modified_datum(c)?;
    let mut id = identify_datum(&md.dual)?;
    id.tau_nontrivial = tau_evidence_with(c, &md)?.nontrivial;
    Ok(id)
}

/// `Q(e_i)` and the off-diagonal entries of `B` agree modulo `n`.
pub fn forms_congruent_mod_n(c1: &Cover, c2: &Cover) -> bool {
    let n = c1.n_big();
    let (b1, b2) = (&c1.q.gram_b, &c2.q.gram_b);
    if b1.rows() != b2.rows() {
        return false;
    }
    (0..b1.rows()).all(|i| {
        let half: BigInt = (&b1[(i, i)] - &b2[(i, i)]) / 2;
        half.is_multiple_of(&n) && (0..i).all(|j| (&b1[(i, j)] - &b2[(i, j)]).is_multiple_of(&n))
    })
}

/// Whether two covers of the same datum and degree have identical modified
/// root data.
pub fn mod_n_equal(c1: &Cover, c2: &Cover) -> Result<bool, CoverError> {
    if c1.root_datum != c2.root_datum {
        return Err(CoverError::Mismatch("root datum".into()));
    }
    if c1.n != c2.n {
        return Err(CoverError::Mismatch("degree".into()));
    }
    Ok(modified_datum(c1)?.same_datum(&modified_datum(c2)?))
}
