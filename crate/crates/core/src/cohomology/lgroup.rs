//! Cocycle-level assembly of the L-group of a cover.
//!
//! The dual center `Z~v = Hom(Y_{Q,n} / Y^SC_{Q,n}, Q/Z)` is finite for
//! semisimple covers. The first twist is the pushout of the metaGalois
//! cocycle along `tau_Q: mu_2 -> Z~v`. The second twist comes from the gerbe
//! of the cover and is not determined by `(Q, n)`, so it is an input,
//! zero by default. The L-group of the center is the extension given by the
//! Baer sum; the full L-group is recorded as (dual group, action, class).

use serde::{Deserialize, Serialize};

use super::{CohomologyError, Elem, ExtensionGroup, FiniteModule, GModule, ModuleHom, TwoCocycle};
use crate::arith::Place;
use crate::cover::{identify_dual, tau_center_element, CenterElement, Cover};
use crate::rootdata::DualGroupId;

/// Pushout of the square-class metaGalois cocycle at `place` along
/// `tau_Q`. Returns the cocycle and the element `tau_Q(-1)`.
pub fn lgroup_twist1(c: &Cover, place: Place) -> Result<(TwoCocycle, CenterElement), CohomologyError> {
    let tau = tau_center_element(c)?;
    if tau.free_rank > 0 {
        return Err(CohomologyError::InfiniteCenter(tau.free_rank));
    }
    let meta = super::metagalois_model(place)?;
    let target = GModule::trivial(meta.group().clone(), FiniteModule::new(tau.factors.clone())?);
    let f = ModuleHom { matrix: tau.coords.iter().map(|&k| vec![k as i64]).collect() };
    Ok((meta.pushout(&f, &target)?, tau))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LGroupData {
    pub dual: DualGroupId,
    pub center_factors: Vec<u64>,
    /// Order of the L-group of the center, `|Z~v| |Gamma|`.
    pub lz_order: usize,
    pub class: TwoCocycle,
    pub class_is_zero: bool,
    /// Order of the class in `H^2`.
    pub class_order: u64,
    /// `s` with `ds = class`, when the class vanishes.
    pub splitting: Option<Vec<Elem>>,
}

/// Baer sum of the twists and the resulting extension data. The Galois
/// action on the dual group is trivial for the split groups handled here.
pub fn lgroup_assemble(
    twist1: &TwoCocycle,
    twist2: Option<&TwoCocycle>,
    dual: DualGroupId,
) -> Result<LGroupData, CohomologyError> {
    let class = match twist2 {
        Some(t2) => twist1.baer_sum(t2)?,
        None => twist1.clone(),
    };
    let ext = ExtensionGroup::new(class.clone())?;
    let splitting = class.find_splitting()?;
    Ok(LGroupData {
        dual,
        center_factors: class.module().factors.clone(),
        lz_order: ext.order(),
        class_is_zero: splitting.is_some(),
        class_order: class.class_order()?,
        class,
        splitting,
    })
}

/// [`lgroup_twist1`] followed by [`lgroup_assemble`].
pub fn lgroup(c: &Cover, place: Place, twist2: Option<&TwoCocycle>) -> Result<LGroupData, CohomologyError> {
    let (t1, _) = lgroup_twist1(c, place)?;
    lgroup_assemble(&t1, twist2, identify_dual(c)?)
}
