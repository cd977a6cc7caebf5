//! Based root data: validation, Weyl closure, Cartan matrices, Dynkin
//! classification, a catalog of builders, isomorphism testing and Levi
//! subdata.
//!
//! `X` and `Y` are both coordinatized as `Z^rank` and paired by the dot
//! product. Roots and coroots are index-paired.

mod catalog;
mod dynkin;
mod iso;
mod naming;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{self, AbelianInvariants, IntMatrix, LatticeError, Sublattice};

pub use catalog::{build, build_from_code, build_gl, build_gsp, canonical_cartan, Family, Isogeny};
pub use dynkin::{classify_dynkin, DynkinComponent, DynkinType};
pub use iso::{diagram_automorphisms, root_datum_isomorphic, MAX_ISO_RANK};
pub use naming::{identify_datum, DualGroupId};

/// Maximum number of roots produced by [`weyl_closure`] before giving up.
pub const CLOSURE_BOUND: usize = 2048;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("unknown catalog entry: {0}")]
    UnknownBuilder(String),
    #[error("invalid simple index {0}")]
    InvalidIndex(usize),
    #[error("not of finite type: {0}")]
    NotFiniteType(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("root datum axioms fail: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A failed root-datum axiom, named by a short stable tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub detail: String,
}

impl Violation {
    fn new(axiom: &str, detail: impl Into<String>) -> Self {
        Violation { axiom: axiom.to_string(), detail: detail.into() }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.axiom, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootDatum {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    /// Indices into `roots` forming the simple system, in diagram order.
    pub simple: Vec<usize>,
    /// Generators of a finite group acting on `X` by matrices (`x -> g x`).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub galois_action: Vec<Vec<Vec<i64>>>,
}

pub fn pair(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn axpy(y: &[i64], k: i64, x: &[i64]) -> Vec<i64> {
    y.iter().zip(x).map(|(a, b)| a - k * b).collect()
}

impl RootDatum {
    /// Builds and validates.
    pub fn new(
        rank: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        simple: Vec<usize>,
    ) -> Result<Self, RootDataError> {
        let rd = RootDatum { rank, roots, coroots, simple, galois_action: Vec::new() };
        rd.checked()
    }

    /// Returns `self` if [`validate`] finds nothing, else the violations.
    pub fn checked(self) -> Result<Self, RootDataError> {
        let v = validate(&self);
        if v.is_empty() {
            Ok(self)
        } else {
            Err(RootDataError::Invalid(v))
        }
    }

    /// Toral datum of the given rank: no roots.
    pub fn torus(rank: usize) -> Self {
        RootDatum { rank, roots: Vec::new(), coroots: Vec::new(), simple: Vec::new(), galois_action: Vec::new() }
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple.len()
    }

    pub fn simple_roots(&self) -> Vec<Vec<i64>> {
        self.simple.iter().map(|&i| self.roots[i].clone()).collect()
    }

    pub fn simple_coroots(&self) -> Vec<Vec<i64>> {
        self.simple.iter().map(|&i| self.coroots[i].clone()).collect()
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r == v)
    }

    /// `s_alpha(x) = x - <x, alpha^vee> alpha` for root index `i`.
    pub fn reflect_x(&self, i: usize, x: &[i64]) -> Vec<i64> {
        axpy(x, pair(x, &self.coroots[i]), &self.roots[i])
    }

    /// `s_alpha(y) = y - <alpha, y> alpha^vee` for root index `i`.
    pub fn reflect_y(&self, i: usize, y: &[i64]) -> Vec<i64> {
        axpy(y, pair(&self.roots[i], y), &self.coroots[i])
    }

    /// Coordinates of every root in terms of the simple roots, or `None` if
    /// some root is not an integral combination of them.
    pub fn simple_coordinates(&self) -> Option<Vec<Vec<i64>>> {
        let l = self.simple.len();
        if l == 0 {
            return if self.roots.is_empty() { Some(Vec::new()) } else { None };
        }
        let a = IntMatrix::from_rows(l, &{
            // columns are simple roots
            let mut rows = vec![vec![0i64; l]; self.rank];
            for (j, &s) in self.simple.iter().enumerate() {
                for (i, row) in rows.iter_mut().enumerate() {
                    row[j] = self.roots[s][i];
                }
            }
            rows
        })
        .ok()?;
        self.roots
            .iter()
            .map(|r| {
                let (x, _) = lattice::solve_integer_system(&a, &lattice::to_big(r))?;
                lattice::to_i64(&x)
            })
            .collect()
    }

    pub fn is_positive(&self, coords: &[i64]) -> bool {
        coords.iter().all(|&c| c >= 0)
    }

    /// Indices of positive roots (nonnegative simple coordinates).
    pub fn positive_roots(&self) -> Vec<usize> {
        let coords = self.simple_coordinates().unwrap_or_default();
        (0..coords.len()).filter(|&i| coords[i].iter().all(|&c| c >= 0)).collect()
    }

    pub fn root_span(&self) -> Sublattice {
        Sublattice::from_i64_vectors(self.rank, &self.roots).expect("root length")
    }

    pub fn coroot_span(&self) -> Sublattice {
        coroot_span(self)
    }

    /// Swaps the roles of `X` and `Y`.
    pub fn dualize(&self) -> RootDatum {
        dualize_datum(self)
    }
}

/// Checks every root-datum axiom; an empty list means the datum is valid.
pub fn validate(rd: &RootDatum) -> Vec<Violation> {
    let mut out = Vec::new();
    let r = rd.rank;
    if rd.roots.len() != rd.coroots.len() {
        out.push(Violation::new(
            "count-mismatch",
            format!("{} roots but {} coroots", rd.roots.len(), rd.coroots.len()),
        ));
        return out;
    }
    for (i, (a, c)) in rd.roots.iter().zip(&rd.coroots).enumerate() {
        if a.len() != r || c.len() != r {
            out.push(Violation::new("dimension", format!("root {i} has wrong length")));
        }
    }
    if !out.is_empty() {
        return out;
    }
    for (i, (a, c)) in rd.roots.iter().zip(&rd.coroots).enumerate() {
        let p = pair(a, c);
        if p != 2 {
            out.push(Violation::new("pairing-not-2", format!("<alpha_{i}, alpha_{i}^vee> = {p}")));
        }
    }
    let index: HashMap<&[i64], usize> = rd.roots.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    if index.len() != rd.roots.len() {
        out.push(Violation::new("duplicate-root", "root list has repeated entries"));
    }
    for s in &rd.simple {
        if *s >= rd.roots.len() {
            out.push(Violation::new("simple-index", format!("simple index {s} out of range")));
        }
    }
    if !out.is_empty() {
        return out;
    }
    for (i, a) in rd.roots.iter().enumerate() {
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        match index.get(neg.as_slice()) {
            Some(&j) => {
                let negc: Vec<i64> = rd.coroots[i].iter().map(|x| -x).collect();
                if rd.coroots[j] != negc {
                    out.push(Violation::new("not-paired", format!("coroot of -alpha_{i} is not -alpha_{i}^vee")));
                }
            }
            None => out.push(Violation::new("not-paired", format!("-alpha_{i} missing"))),
        }
        for (j, b) in rd.roots.iter().enumerate() {
            if i == j {
                continue;
            }
            // b = k a with k rational, k not in {1, -1}
            if is_multiple(a, b) && b != &neg {
                out.push(Violation::new("not-reduced", format!("alpha_{j} is a multiple of alpha_{i}")));
            }
        }
    }
    for i in 0..rd.roots.len() {
        for j in 0..rd.roots.len() {
            let img = rd.reflect_x(i, &rd.roots[j]);
            match index.get(img.as_slice()) {
                Some(&k) => {
                    let cimg = rd.reflect_y(i, &rd.coroots[j]);
                    if rd.coroots[k] != cimg {
                        out.push(Violation::new(
                            "reflection-not-compatible",
                            format!("s_{i} maps alpha_{j} to alpha_{k} but coroots disagree"),
                        ));
                    }
                }
                None => out.push(Violation::new("reflection-not-closed", format!("s_{i}(alpha_{j}) is not a root"))),
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    let l = rd.simple.len();
    if l > 0 {
        let m = IntMatrix::from_rows(r, &rd.simple_roots()).expect("lengths checked");
        if lattice::smith_normal_form(&m).rank() != l {
            out.push(Violation::new("simple-not-independent", "simple roots are linearly dependent"));
            return out;
        }
    }
    match rd.simple_coordinates() {
        None => {
            out.push(Violation::new("not-in-simple-span", "some root is not an integral combination of simple roots"))
        }
        Some(coords) => {
            for (i, c) in coords.iter().enumerate() {
                if !(c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0)) {
                    out.push(Violation::new("mixed-sign", format!("alpha_{i} has mixed simple coordinates {c:?}")));
                }
            }
        }
    }
    for (gi, g) in rd.galois_action.iter().enumerate() {
        out.extend(validate_galois(rd, gi, g, &index));
    }
    out
}

fn is_multiple(a: &[i64], b: &[i64]) -> bool {
    // b parallel to a
    let Some(k) = a.iter().position(|&x| x != 0) else { return false };
    a.iter().zip(b).all(|(x, y)| x * b[k] == y * a[k])
}

fn validate_galois(rd: &RootDatum, gi: usize, g: &[Vec<i64>], index: &HashMap<&[i64], usize>) -> Vec<Violation> {
    let mut out = Vec::new();
    let Ok(m) = IntMatrix::from_rows(rd.rank, g) else {
        return vec![Violation::new("galois-shape", format!("generator {gi} is not {0}x{0}", rd.rank))];
    };
    if m.rows() != rd.rank || !m.is_unimodular() {
        return vec![Violation::new("galois-not-automorphism", format!("generator {gi} is not unimodular"))];
    }
    let apply = |v: &[i64]| -> Vec<i64> { g.iter().map(|row| pair(row, v)).collect() };
    let mut simple_img = Vec::new();
    for (i, a) in rd.roots.iter().enumerate() {
        let img = apply(a);
        match index.get(img.as_slice()) {
            Some(&k) => {
                if rd.simple.contains(&i) {
                    simple_img.push(k);
                }
                // coroots transform by the inverse transpose: pairing is preserved
                for (j, b) in rd.roots.iter().enumerate() {
                    if pair(b, &rd.coroots[i]) != pair(&apply(b), &rd.coroots[k]) {
                        out.push(Violation::new(
                            "galois-not-automorphism",
                            format!(
                                "generator {gi} does not carry alpha_{i}^vee to alpha_{k}^vee (tested on alpha_{j})"
                            ),
                        ));
                        return out;
                    }
                }
            }
            None => {
                out.push(Violation::new(
                    "galois-not-automorphism",
                    format!("generator {gi} moves alpha_{i} off the root set"),
                ));
                return out;
            }
        }
    }
    simple_img.sort_unstable();
    let mut s = rd.simple.clone();
    s.sort_unstable();
    if simple_img != s {
        out.push(Violation::new("galois-not-pinned", format!("generator {gi} does not preserve the simple set")));
    }
    out
}

/// Closure of a simple system under simple reflections. Returns roots and
/// paired coroots with the simple ones first, in the given order.
pub fn weyl_closure(
    simple_roots: &[Vec<i64>],
    simple_coroots: &[Vec<i64>],
) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>), RootDataError> {
    weyl_closure_bounded(simple_roots, simple_coroots, CLOSURE_BOUND)
}

pub fn weyl_closure_bounded(
    simple_roots: &[Vec<i64>],
    simple_coroots: &[Vec<i64>],
    bound: usize,
) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>), RootDataError> {
    let mut roots: Vec<Vec<i64>> = simple_roots.to_vec();
    let mut coroots: Vec<Vec<i64>> = simple_coroots.to_vec();
    let mut seen: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let mut head = 0;
    while head < roots.len() {
        for (a, c) in simple_roots.iter().zip(simple_coroots) {
            let b = &roots[head];
            let bc = &coroots[head];
            let nb = axpy(b, pair(b, c), a);
            if !seen.contains_key(&nb) {
                let nc = axpy(bc, pair(a, bc), c);
                seen.insert(nb.clone(), roots.len());
                roots.push(nb);
                coroots.push(nc);
                if roots.len() > bound {
                    return Err(RootDataError::NotFiniteType(format!("Weyl closure exceeds {bound} roots")));
                }
            }
        }
        head += 1;
    }
    Ok((roots, coroots))
}

/// `C_ij = <alpha_i, alpha_j^vee>` over the simple system.
pub fn cartan_matrix(rd: &RootDatum) -> IntMatrix {
    let sr = rd.simple_roots();
    let sc = rd.simple_coroots();
    let rows: Vec<Vec<i64>> = sr.iter().map(|a| sc.iter().map(|c| pair(a, c)).collect()).collect();
    IntMatrix::from_rows(rd.simple.len(), &rows).expect("square")
}

pub fn coroot_span(rd: &RootDatum) -> Sublattice {
    Sublattice::from_i64_vectors(rd.rank, &rd.coroots).expect("coroot length")
}

/// Invariants of `X / Z Phi`, the character group of the center.
pub fn center_invariants(rd: &RootDatum) -> AbelianInvariants {
    lattice::quotient_invariants(&rd.root_span(), rd.rank).expect("same ambient")
}

/// Invariants of `Y / Z Phi^vee`, the algebraic fundamental group.
pub fn fundamental_group_invariants(rd: &RootDatum) -> AbelianInvariants {
    lattice::quotient_invariants(&coroot_span(rd), rd.rank).expect("same ambient")
}

pub fn dualize_datum(rd: &RootDatum) -> RootDatum {
    let galois_action = rd
        .galois_action
        .iter()
        .map(|g| {
            // contragredient action on Y
            let m = IntMatrix::from_rows(rd.rank, g).expect("square");
            let inv = lattice::solve_inverse(&m).expect("unimodular");
            inv.transpose().to_i64_rows().expect("small")
        })
        .collect();
    RootDatum {
        rank: rd.rank,
        roots: rd.coroots.clone(),
        coroots: rd.roots.clone(),
        simple: rd.simple.clone(),
        galois_action,
    }
}

/// Levi subdatum generated by the simple roots at `subset` (positions in
/// `rd.simple`). The new simple list keeps the original diagram order.
pub fn levi_subdatum(rd: &RootDatum, subset: &[usize]) -> Result<RootDatum, RootDataError> {
    let l = rd.simple.len();
    let mut chosen = vec![false; l];
    for &s in subset {
        if s >= l {
            return Err(RootDataError::InvalidIndex(s));
        }
        chosen[s] = true;
    }
    let coords = rd.simple_coordinates().ok_or_else(|| RootDataError::Invalid(validate(rd)))?;
    let keep: Vec<usize> =
        (0..rd.roots.len()).filter(|&i| coords[i].iter().enumerate().all(|(j, &c)| c == 0 || chosen[j])).collect();
    let roots: Vec<Vec<i64>> = keep.iter().map(|&i| rd.roots[i].clone()).collect();
    let coroots: Vec<Vec<i64>> = keep.iter().map(|&i| rd.coroots[i].clone()).collect();
    let simple: Vec<usize> = (0..l)
        .filter(|&j| chosen[j])
        .map(|j| keep.iter().position(|&k| k == rd.simple[j]).expect("simple root kept"))
        .collect();
    RootDatum::new(rd.rank, roots, coroots, simple)
}

/// Dynkin type of a datum, including the central torus rank.
pub fn dynkin_type(rd: &RootDatum) -> Result<DynkinType, RootDataError> {
    let mut t = classify_dynkin(&cartan_matrix(rd))?;
    t.torus_rank = rd.rank - rd.simple.len();
    Ok(t)
}
