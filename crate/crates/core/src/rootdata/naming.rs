//! Human names for root data, in the style of the classical isogeny names
//! (`SL_4/mu2`, `PGSp_6`, `HSpin_12`, `E7/mu2`, `PGSp_4 × GL_1`).

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::catalog::{build_gl, build_gsp, Family};
use super::dynkin::DynkinComponent;
use super::{
    center_invariants, dynkin_type, fundamental_group_invariants, root_datum_isomorphic, DynkinType, RootDataError,
    RootDatum,
};
use crate::lattice::{self, AbelianInvariants, IntMatrix, Sublattice};

/// The content of one table cell.
///
/// `fundamental_group` holds the invariants of the character lattice modulo
/// the root lattice of the named datum. For a dual datum built from a cover,
/// whose character lattice is `Y_{Q,n}` and whose roots are the modified
/// coroots, this is `Y_{Q,n} / Y^SC_{Q,n}`.
///
/// `center_kernel_label` has one entry per Dynkin component: `trivial` for
/// the simply connected form, `full` for the adjoint form, `muD` for a
/// kernel of order `D` in type `A`, and `vector`, `half-spin+` or
/// `half-spin-` for the three intermediate forms of `D_l` with `l` even,
/// named after the fundamental weight class that survives in the character
/// lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGroupId {
    pub dynkin: DynkinType,
    pub fundamental_group: AbelianInvariants,
    pub center_kernel_label: Vec<String>,
    pub tau_nontrivial: bool,
    pub display_name: String,
}

impl DualGroupId {
    /// Display name with a leading `*` when `tau_nontrivial`.
    pub fn starred_name(&self) -> String {
        if self.tau_nontrivial {
            format!("*{}", self.display_name)
        } else {
            self.display_name.clone()
        }
    }
}

/// Identifies a datum up to isomorphism; `tau_nontrivial` is left false.
pub fn identify_datum(rd: &RootDatum) -> Result<DualGroupId, RootDataError> {
    let dynkin = dynkin_type(rd)?;
    let fundamental_group = center_invariants(rd);
    let (display_name, center_kernel_label) =
        if dynkin.torus_rank == 0 { semisimple_name(rd, &dynkin)? } else { reductive_name(rd, &dynkin)? };
    Ok(DualGroupId { dynkin, fundamental_group, center_kernel_label, tau_nontrivial: false, display_name })
}

fn unit_big(l: usize, i: usize) -> Vec<num_bigint::BigInt> {
    let mut v = vec![0i64; l];
    v[i] = 1;
    lattice::to_big(&v)
}

fn semisimple_name(rd: &RootDatum, dynkin: &DynkinType) -> Result<(String, Vec<String>), RootDataError> {
    let l = rd.simple.len();
    if l == 0 {
        return Ok(("trivial".into(), Vec::new()));
    }
    let coroots = rd.simple_coroots();
    // image of X in the weight lattice, fundamental-weight coordinates
    let weights: Vec<Vec<i64>> = (0..rd.rank).map(|k| coroots.iter().map(|c| c[k]).collect()).collect();
    let lat = Sublattice::from_i64_vectors(l, &weights)?;
    let cartan = super::cartan_matrix(rd);
    let mut pieces = Vec::new();
    let mut labels = Vec::new();
    let mut blocks = Vec::new();
    for comp in &dynkin.components {
        let coord = Sublattice::from_vectors(l, &comp.nodes.iter().map(|&i| unit_big(l, i)).collect::<Vec<_>>())?;
        let lc = lat.intersection(&coord)?;
        let qc = Sublattice::from_vectors(l, &comp.nodes.iter().map(|&i| cartan.row(i).to_vec()).collect::<Vec<_>>())?;
        let order = lc.relative_invariants(&qc)?.torsion_order().to_u64().expect("small center");
        let (name, label) = component_name(comp, order, &lc, l);
        pieces.push(name);
        labels.push(label);
        blocks.push(lc);
    }
    let mut total = Sublattice::zero(l);
    for b in &blocks {
        total = total.sum(b)?;
    }
    if total == lat {
        return Ok((pieces.join(" × "), labels));
    }
    // character lattice does not split along the components
    let sc: Vec<String> =
        dynkin.components.iter().map(|c| component_name(c, sc_order(c), &Sublattice::full(l), l).0).collect();
    let kernel = lattice::quotient_invariants(&lat, l)?;
    let name = format!("({})/[{}]", sc.join(" × "), kernel);
    Ok((name, vec!["mixed".to_string(); dynkin.components.len()]))
}

fn sc_order(c: &DynkinComponent) -> u64 {
    super::dynkin::component_cartan_det(c.family, c.rank)
}

/// Name of one simple factor whose character lattice has index `order` over
/// the root lattice. `lc` is that lattice in weight coordinates.
fn component_name(comp: &DynkinComponent, order: u64, lc: &Sublattice, l: usize) -> (String, String) {
    let r = comp.rank;
    let full = sc_order(comp);
    let label = if order == full {
        "trivial".to_string()
    } else if order == 1 {
        "full".to_string()
    } else {
        format!("mu{}", full / order)
    };
    let name = match comp.family {
        Family::A => match label.as_str() {
            "trivial" => format!("SL_{}", r + 1),
            "full" => format!("PGL_{}", r + 1),
            _ => format!("SL_{}/mu{}", r + 1, full / order),
        },
        // a rank-two double bond is reported as B2 and named as C2
        Family::B if r == 2 => {
            if order == 2 {
                "Sp_4".to_string()
            } else {
                "PGSp_4".to_string()
            }
        }
        Family::B => {
            if order == 2 {
                format!("Spin_{}", 2 * r + 1)
            } else {
                format!("SO_{}", 2 * r + 1)
            }
        }
        Family::C => {
            if order == 2 {
                format!("Sp_{}", 2 * r)
            } else {
                format!("PGSp_{}", 2 * r)
            }
        }
        Family::D => match order {
            4 => format!("Spin_{}", 2 * r),
            1 => format!("PGO_{}", 2 * r),
            _ if r % 2 == 1 => format!("SO_{}", 2 * r),
            _ => {
                let has = |node: usize| lc.contains(&unit_big(l, comp.nodes[node]));
                let label = if has(0) {
                    "vector"
                } else if has(r - 1) {
                    "half-spin+"
                } else {
                    "half-spin-"
                };
                let name = if label == "vector" { format!("SO_{}", 2 * r) } else { format!("HSpin_{}", 2 * r) };
                return (name, label.to_string());
            }
        },
        Family::E => match (r, order == full) {
            (8, _) => "E8".to_string(),
            (6, true) => "E6".to_string(),
            (6, false) => "E6/mu3".to_string(),
            (_, true) => "E7".to_string(),
            (_, false) => "E7/mu2".to_string(),
        },
        Family::F => "F4".to_string(),
        Family::G => "G2".to_string(),
    };
    (name, label)
}

fn torus_name(t: usize) -> String {
    if t == 1 {
        "GL_1".to_string()
    } else {
        format!("GL_1^{t}")
    }
}

/// Derived datum on `Y_der`, the saturation of the coroot span, if `Y`
/// splits as `Y_der + Y_Z` with `Y_Z` the cocharacters killed by all roots.
fn split_derived(rd: &RootDatum) -> Result<Option<RootDatum>, RootDataError> {
    let r = rd.rank;
    let yder = lattice::saturate(&rd.coroot_span());
    let roots = IntMatrix::from_rows(r, &rd.roots)?;
    let yz = if rd.roots.is_empty() {
        Sublattice::full(r)
    } else {
        let (_, kernel) = lattice::solve_integer_system(&roots, &vec![num_bigint::BigInt::from(0); rd.roots.len()])
            .expect("homogeneous system");
        Sublattice::from_vectors(r, &kernel)?
    };
    if yder.sum(&yz)? != Sublattice::full(r) {
        return Ok(None);
    }
    let basis = yder.basis();
    let k = basis.rows();
    let coroots: Vec<Vec<i64>> = rd
        .coroots
        .iter()
        .map(|c| lattice::to_i64(&yder.coordinates(&lattice::to_big(c)).expect("coroot in span")).expect("small"))
        .collect();
    let new_roots: Vec<Vec<i64>> =
        rd.roots.iter().map(|a| lattice::to_i64(&basis.apply(&lattice::to_big(a))).expect("small")).collect();
    debug_assert!(new_roots.iter().all(|v| v.len() == k));
    Ok(Some(RootDatum::new(k, new_roots, coroots, rd.simple.clone())?))
}

fn reductive_name(rd: &RootDatum, dynkin: &DynkinType) -> Result<(String, Vec<String>), RootDataError> {
    let t = dynkin.torus_rank;
    if let Some(der) = split_derived(rd)? {
        if der.simple.is_empty() {
            return Ok((torus_name(t), Vec::new()));
        }
        let der_type = dynkin_type(&der)?;
        let (name, labels) = semisimple_name(&der, &der_type)?;
        return Ok((format!("{name} × {}", torus_name(t)), labels));
    }
    if t == 1 && dynkin.components.len() == 1 {
        let c = &dynkin.components[0];
        if c.family == Family::A && rd.rank == c.rank + 1 && root_datum_isomorphic(rd, &build_gl(c.rank + 1)?)? {
            return Ok((format!("GL_{}", c.rank + 1), vec!["gl".into()]));
        }
        // B2 is how a rank-two C diagram is reported
        if c.family == Family::C || (c.family == Family::B && c.rank == 2) || (c.family == Family::A && c.rank == 1) {
            let r = c.rank;
            if rd.rank == r + 1 && root_datum_isomorphic(rd, &build_gsp(r)?)? {
                return Ok((format!("GSp_{}", 2 * r), vec!["gsp".into()]));
            }
        }
    }
    let name = format!("{dynkin} [pi1 = {}]", fundamental_group_invariants(rd));
    Ok((name, vec!["mixed".to_string(); dynkin.components.len()]))
}
