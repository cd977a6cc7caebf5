//! Builders for the groups in the catalog. Simple roots follow the Bourbaki
//! labeling: `B` ends in a short root, `C` in a long root, the `D` fork sits
//! at the last two nodes, `E` has node 2 attached to node 4, `F4` starts with
//! the two long roots and `G2` starts with the short root.

use serde::{Deserialize, Serialize};

use super::{weyl_closure, RootDataError, RootDatum};
use crate::lattice::{self, Sublattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn legal_rank(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

/// Which isogeny class member to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
    /// `SO_{2l}`: character lattice generated by roots and the vector weight.
    Special,
    /// `HSpin_{2l}` (l even): roots plus the half-spin weight `omega_l`.
    HalfSpin,
}

/// Cartan matrix `C_ij = <alpha_i, alpha_j^vee>` with Bourbaki labels.
pub fn canonical_cartan(family: Family, rank: usize) -> Result<Vec<Vec<i64>>, RootDataError> {
    if !family.legal_rank(rank) {
        return Err(RootDataError::UnknownBuilder(format!("{}{}", family.letter(), rank)));
    }
    let l = rank;
    let mut c = vec![vec![0i64; l]; l];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match family {
        Family::A | Family::B | Family::C => {
            for i in 0..l - 1 {
                link(i, i + 1);
            }
        }
        Family::D => {
            for i in 0..l - 2 {
                link(i, i + 1);
            }
            link(l - 3, l - 1);
        }
        Family::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..l - 1 {
                link(i, i + 1);
            }
        }
        Family::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        Family::G => link(0, 1),
    }
    // entry C_ij = -2 or -3 means alpha_i is long and alpha_j short
    match family {
        Family::B => c[l - 2][l - 1] = -2,
        Family::C => c[l - 1][l - 2] = -2,
        Family::F => c[1][2] = -2,
        Family::G => c[1][0] = -3,
        _ => {}
    }
    Ok(c)
}

fn from_simple(
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
) -> Result<RootDatum, RootDataError> {
    let l = simple_roots.len();
    let (roots, coroots) = weyl_closure(&simple_roots, &simple_coroots)?;
    RootDatum::new(rank, roots, coroots, (0..l).collect())
}

/// Character lattice `Q + Z{extra}` inside the weight lattice, in
/// fundamental-weight coordinates.
fn intermediate(cartan: &[Vec<i64>], extra: &[Vec<i64>]) -> Result<RootDatum, RootDataError> {
    let l = cartan.len();
    let mut gens = cartan.to_vec();
    gens.extend(extra.iter().cloned());
    let lat = Sublattice::from_i64_vectors(l, &gens)?;
    let basis = lat.basis().clone();
    let simple_roots: Vec<Vec<i64>> = cartan
        .iter()
        .map(|row| {
            let c = lat.coordinates(&lattice::to_big(row)).expect("root in lattice");
            lattice::to_i64(&c).expect("small")
        })
        .collect();
    let simple_coroots: Vec<Vec<i64>> = (0..l).map(|j| lattice::to_i64(&basis.col(j)).expect("small")).collect();
    from_simple(l, simple_roots, simple_coroots)
}

fn unit(l: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; l];
    v[i] = 1;
    v
}

/// Builds the datum of the given family, isogeny and rank.
pub fn build(family: Family, isogeny: Isogeny, rank: usize) -> Result<RootDatum, RootDataError> {
    let c = canonical_cartan(family, rank)?;
    let l = rank;
    match isogeny {
        Isogeny::SimplyConnected => from_simple(l, c.clone(), (0..l).map(|i| unit(l, i)).collect()),
        Isogeny::Adjoint => {
            let coroots = (0..l).map(|j| (0..l).map(|i| c[i][j]).collect()).collect();
            from_simple(l, (0..l).map(|i| unit(l, i)).collect(), coroots)
        }
        Isogeny::Special if family == Family::D => intermediate(&c, &[unit(l, 0)]),
        Isogeny::HalfSpin if family == Family::D && l.is_multiple_of(2) => intermediate(&c, &[unit(l, l - 1)]),
        _ => Err(RootDataError::UnknownBuilder(format!("{:?} {}{}", isogeny, family.letter(), rank))),
    }
}

/// `GL_r` on `Z^r` with roots `e_i - e_j`.
pub fn build_gl(r: usize) -> Result<RootDatum, RootDataError> {
    if r == 0 {
        return Err(RootDataError::UnknownBuilder("GL0".into()));
    }
    let simple: Vec<Vec<i64>> = (0..r - 1)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v[i + 1] = -1;
            v
        })
        .collect();
    from_simple(r, simple.clone(), simple)
}

/// `GSp_{2r}` with `Y` basis `e_0..e_r` and dual basis `f_0..f_r` of `X`:
/// `alpha_i = f_i - f_{i+1}`, `alpha_r = 2 f_r - f_0`,
/// `alpha_i^vee = e_i - e_{i+1}`, `alpha_r^vee = e_r`.
pub fn build_gsp(r: usize) -> Result<RootDatum, RootDataError> {
    if r == 0 {
        return Err(RootDataError::UnknownBuilder("GSp0".into()));
    }
    let n = r + 1;
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    for i in 1..r {
        let mut v = vec![0; n];
        v[i] = 1;
        v[i + 1] = -1;
        roots.push(v.clone());
        coroots.push(v);
    }
    let mut a = vec![0; n];
    a[r] = 2;
    a[0] = -1;
    roots.push(a);
    coroots.push(unit(n, r));
    from_simple(n, roots, coroots)
}

fn split_code(code: &str) -> (String, Option<usize>) {
    let digits: String =
        code.chars().rev().take_while(|c| c.is_ascii_digit()).collect::<Vec<_>>().into_iter().rev().collect();
    let head = code[..code.len() - digits.len()].to_string();
    (head, digits.parse().ok())
}

/// Builds from a string code such as `"SL6"`, `"Sp6"`, `"Spin12"`,
/// `"E7sc"` or `"GSp"` with `rank = Some(2)`.
///
/// A numeric suffix is the matrix size (`SL6` is `SL_6`, `Sp6` is `Sp_6`).
/// Without a suffix, `rank` is the Lie rank `l` (`r` for `GL_r` and
/// `GSp_{2r}`).
pub fn build_from_code(code: &str, rank: Option<usize>) -> Result<RootDatum, RootDataError> {
    let unknown = || RootDataError::UnknownBuilder(code.to_string());
    match code {
        "E6" | "E6sc" => return build(Family::E, Isogeny::SimplyConnected, 6),
        "E6adj" => return build(Family::E, Isogeny::Adjoint, 6),
        "E7" | "E7sc" => return build(Family::E, Isogeny::SimplyConnected, 7),
        "E7adj" => return build(Family::E, Isogeny::Adjoint, 7),
        "E8" => return build(Family::E, Isogeny::SimplyConnected, 8),
        "F4" => return build(Family::F, Isogeny::SimplyConnected, 4),
        "G2" => return build(Family::G, Isogeny::SimplyConnected, 2),
        _ => {}
    }
    let (head, size) = split_code(code);
    // (lie rank from matrix size, lie rank from --rank)
    let lie = |from_size: fn(usize) -> Option<usize>| -> Result<usize, RootDataError> {
        match (size, rank) {
            (Some(s), _) => from_size(s).ok_or_else(unknown),
            (None, Some(r)) => Ok(r),
            (None, None) => Err(unknown()),
        }
    };
    let even_half = |s: usize| if s.is_multiple_of(2) { Some(s / 2) } else { None };
    match head.as_str() {
        "SL" => build(Family::A, Isogeny::SimplyConnected, lie(|s| s.checked_sub(1))?),
        "PGL" => build(Family::A, Isogeny::Adjoint, lie(|s| s.checked_sub(1))?),
        "GL" => build_gl(lie(Some)?),
        "Sp" => build(Family::C, Isogeny::SimplyConnected, lie(even_half)?),
        "PGSp" => build(Family::C, Isogeny::Adjoint, lie(even_half)?),
        "GSp" => build_gsp(lie(even_half)?),
        "Spin" | "SO" => {
            let s = size.ok_or_else(unknown)?;
            match (s % 2, head.as_str()) {
                (1, "Spin") => build(Family::B, Isogeny::SimplyConnected, (s - 1) / 2),
                (1, _) => build(Family::B, Isogeny::Adjoint, (s - 1) / 2),
                (_, "Spin") => build(Family::D, Isogeny::SimplyConnected, s / 2),
                _ => build(Family::D, Isogeny::Special, s / 2),
            }
        }
        "PGO" => build(Family::D, Isogeny::Adjoint, lie(even_half)?),
        "HSpin" => build(Family::D, Isogeny::HalfSpin, lie(even_half)?),
        _ => Err(unknown()),
    }
}
