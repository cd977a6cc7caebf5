//! Finite models of the metaGalois extension.
//!
//! Over a local field `F` the group `Gamma = F^x / (F^x)^2` stands in for the
//! Galois group through the reciprocity map, and the cocycle is the Hilbert
//! symbol, written additively in `Z/2`.

use serde::{Deserialize, Serialize};

use super::{CohomologyError, Elem, FiniteGroup, FiniteModule, GModule, ModuleHom, TwoCocycle};
use crate::arith::{chi, hilbert, weil_index, Place, SquareClass};

/// `F^x / (F^x)^2` with elements in the order of `place.square_classes()`.
pub fn square_class_group(place: Place) -> (FiniteGroup, Vec<SquareClass>) {
    let classes = place.square_classes();
    let table =
        classes.iter().map(|a| classes.iter().map(|b| a.mul(b).expect("same place").index()).collect()).collect();
    let g = FiniteGroup::from_table(table)
        .expect("square classes form a group")
        .with_labels(classes.iter().map(|c| c.to_string()).collect())
        .expect("one label per class");
    (g, classes)
}

/// Unit classes as a subgroup, with the inclusion map.
pub fn unit_subgroup(place: Place) -> (FiniteGroup, Vec<usize>) {
    let units = place.unit_classes();
    let table = units
        .iter()
        .map(|a| {
            units
                .iter()
                .map(|b| units.iter().position(|u| *u == a.mul(b).expect("same place")).expect("closed"))
                .collect()
        })
        .collect();
    let g = FiniteGroup::from_table(table).expect("unit classes form a group");
    (g, units.iter().map(|u| u.index()).collect())
}

fn bit(s: i8) -> Elem {
    vec![u64::from(s < 0)]
}

/// `c(a, b) = [Hilb(a, b) = -1]` on the square-class group, in `Z/2`.
pub fn metagalois_model(place: Place) -> Result<TwoCocycle, CohomologyError> {
    let (g, classes) = square_class_group(place);
    let base = GModule::trivial(g, FiniteModule::cyclic(2));
    let mut table = vec![vec![vec![0]; classes.len()]; classes.len()];
    for (i, a) in classes.iter().enumerate() {
        for (j, b) in classes.iter().enumerate() {
            table[i][j] = bit(hilbert(a, b)?);
        }
    }
    TwoCocycle::new(base, table)
}

/// Pushout along `mu_2 -> mu_4`, `1 -> 2` (that is, `-1 -> -1`).
pub fn mu4_pushout(c: &TwoCocycle) -> Result<TwoCocycle, CohomologyError> {
    let target = GModule::trivial(c.group().clone(), FiniteModule::cyclic(4));
    c.pushout(&ModuleHom { matrix: vec![vec![2]] }, &target)
}

/// `a -> w(a, psi)` as a section of the `mu_4` pushout, with `w = i^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeilSplitting {
    pub place: Place,
    pub psi_scale: SquareClass,
    pub classes: Vec<SquareClass>,
    /// `w(a, psi) = i^{exponents[a]}`.
    pub exponents: Vec<u64>,
    /// `a -> (w(a, psi), a)` is a homomorphism into the pushout extension.
    pub is_homomorphism: bool,
    /// `w(a, u psi) = chi_u(a) w(a, psi)` for every class `u` and `a`.
    pub shift_law: bool,
}

fn weil_exponents(psi: &SquareClass, classes: &[SquareClass]) -> Result<Vec<u64>, CohomologyError> {
    classes.iter().map(|a| Ok(weil_index(a, psi)?.mu4_exponent().expect("weil index is in mu_4") as u64)).collect()
}

pub fn weil_splitting(place: Place, psi_scale: SquareClass) -> Result<WeilSplitting, CohomologyError> {
    let c4 = mu4_pushout(&metagalois_model(place)?)?;
    let (g, classes) = square_class_group(place);
    let exponents = weil_exponents(&psi_scale, &classes)?;
    // (w(a), a)(w(b), b) = (w(a) + w(b) + c(a, b), ab)
    let is_homomorphism = (0..g.order()).all(|a| {
        (0..g.order()).all(|b| (exponents[a] + exponents[b] + c4.table[a][b][0]) % 4 == exponents[g.mul(a, b)])
    });
    let mut shift_law = true;
    for u in &classes {
        let shifted = weil_exponents(&psi_scale.mul(u)?, &classes)?;
        for (i, a) in classes.iter().enumerate() {
            let chi_exp = if chi(u, a)? < 0 { 2 } else { 0 };
            shift_law &= shifted[i] == (exponents[i] + chi_exp) % 4;
        }
    }
    Ok(WeilSplitting { place, psi_scale, classes, exponents, is_homomorphism, shift_law })
}

/// `(q - 1) / 2 mod 2`; the Frobenius cocycle is `(-1)^{m k e}`.
fn frobenius_parity(q: u64) -> Result<u64, CohomologyError> {
    if q.is_multiple_of(2) || q < 3 {
        return Err(CohomologyError::BadModel(format!("q = {q} must be an odd prime power")));
    }
    Ok((q - 1) / 2 % 2)
}

/// `c(Fr^m, Fr^k) = (-1)^{m k (q - 1) / 2}` on the free group `Z`, as a bit.
pub fn frobenius_cocycle(q: u64, m: i64, k: i64) -> Result<u64, CohomologyError> {
    let e = frobenius_parity(q)?;
    Ok((m.rem_euclid(2) as u64) * (k.rem_euclid(2) as u64) * e)
}

/// `mu_2`-valued splitting on `Z`: `f(m) = (-1)^{m(m-1)/2 (q-1)/2}`, with
/// `f(m) f(k) / f(m + k) = c(m, k)`.
pub fn frobenius_splitting_mu2(q: u64, m: i64) -> Result<u64, CohomologyError> {
    let e = frobenius_parity(q)?;
    Ok(((m * (m - 1) / 2).rem_euclid(2) as u64) * e)
}

/// `mu_4`-valued splitting: `f(m) = i^{m^2 (q-1)/2}` as an exponent of `i`.
pub fn frobenius_splitting_mu4(q: u64, m: i64) -> Result<u64, CohomologyError> {
    let e = frobenius_parity(q)?;
    Ok(((m * m).rem_euclid(4) as u64 * e) % 4)
}

/// The Frobenius cocycle on the quotient `Z/N` (`N` even), in `Z/2`.
pub fn frobenius_model(q: u64, n: usize) -> Result<TwoCocycle, CohomologyError> {
    if n % 2 == 1 {
        return Err(CohomologyError::BadModel("the finite Frobenius model needs an even period".into()));
    }
    let e = frobenius_parity(q)?;
    let base = GModule::trivial(FiniteGroup::cyclic(n), FiniteModule::cyclic(2));
    TwoCocycle::from_fn(base, |a, b| vec![(a as u64 % 2) * (b as u64 % 2) * e])
}
