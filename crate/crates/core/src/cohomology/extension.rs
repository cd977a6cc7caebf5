use serde::{Deserialize, Serialize};

use super::{CohomologyError, Elem, FiniteGroup, GModule, TwoCocycle};

/// Largest extension materialized as a multiplication table.
pub const MATERIALIZE_BOUND: usize = 4096;

/// `A x G` with `(a, g)(b, h) = (a + g b + c(g, h), gh)`. The pair `(a, g)`
/// has index `index(a) * |G| + g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionGroup {
    pub cocycle: TwoCocycle,
}

impl ExtensionGroup {
    pub fn new(cocycle: TwoCocycle) -> Result<Self, CohomologyError> {
        cocycle
            .verify()
            .map_err(|t| CohomologyError::BadCocycle(format!("identity fails at ({}, {}, {})", t.g, t.h, t.k)))?;
        Ok(ExtensionGroup { cocycle })
    }

    pub fn order(&self) -> usize {
        self.cocycle.module().order() as usize * self.cocycle.group().order()
    }

    pub fn pair(&self, x: usize) -> (Elem, usize) {
        let n = self.cocycle.group().order();
        (self.cocycle.module().element(x / n), x % n)
    }

    pub fn index(&self, a: &[u64], g: usize) -> usize {
        self.cocycle.module().index(a) * self.cocycle.group().order() + g
    }

    pub fn mul_pairs(&self, x: (&[u64], usize), y: (&[u64], usize)) -> (Elem, usize) {
        let m = self.cocycle.module();
        let a = m.add(&m.add(x.0, &self.cocycle.base.act(x.1, y.0)), &self.cocycle.table[x.1][y.1]);
        (a, self.cocycle.group().mul(x.1, y.1))
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        let (a, g) = self.pair(x);
        let (b, h) = self.pair(y);
        let (c, k) = self.mul_pairs((&a, g), (&b, h));
        self.index(&c, k)
    }

    pub fn projection(&self, x: usize) -> usize {
        x % self.cocycle.group().order()
    }

    pub fn inclusion(&self, a: &[u64]) -> usize {
        self.index(a, 0)
    }

    /// Order of the element `(a, g)`.
    pub fn element_order(&self, a: &[u64], g: usize) -> usize {
        let start = (a.to_vec(), g);
        let mut cur = start.clone();
        let mut k = 1;
        let zero = self.cocycle.module().zero();
        while !(cur.0 == zero && cur.1 == 0) {
            cur = self.mul_pairs((&cur.0, cur.1), (&start.0, start.1));
            k += 1;
        }
        k
    }

    /// Multiplication table as a validated [`FiniteGroup`].
    pub fn materialize(&self) -> Result<FiniteGroup, CohomologyError> {
        let n = self.order();
        if n > MATERIALIZE_BOUND {
            return Err(CohomologyError::BoundExceeded(format!("extension of order {n}")));
        }
        FiniteGroup::from_table((0..n).map(|x| (0..n).map(|y| self.mul(x, y)).collect()).collect())
    }
}

/// Reads a cocycle off an abstract extension `A -> E -> G`.
///
/// `inclusion[i]` is the image of the `i`-th element of `A` (mixed-radix
/// order), `projection[x]` the image of `x` in `G`, and `section[g]` a set
/// section with `section[0] = 0`. The action on `A` is by conjugation and
/// must agree with `base`.
pub fn cocycle_from_extension(
    e: &FiniteGroup,
    base: &GModule,
    inclusion: &[usize],
    projection: &[usize],
    section: &[usize],
) -> Result<TwoCocycle, CohomologyError> {
    let m = base.module();
    let gp = &base.group;
    let bad = |s: &str| CohomologyError::BadExtension(s.to_string());
    if inclusion.len() != m.order() as usize || projection.len() != e.order() || section.len() != gp.order() {
        return Err(bad("sizes do not match"));
    }
    if section[0] != 0 || (0..gp.order()).any(|g| projection[section[g]] != g) {
        return Err(bad("section is not normalized or not a section"));
    }
    if !e.is_homomorphism(projection, gp) {
        return Err(bad("projection is not a homomorphism"));
    }
    let mut preimage = vec![usize::MAX; e.order()];
    for (i, &x) in inclusion.iter().enumerate() {
        preimage[x] = i;
    }
    let to_a = |x: usize| -> Result<Elem, CohomologyError> {
        match preimage[x] {
            usize::MAX => Err(bad("element expected in the kernel is not in the image of A")),
            i => Ok(m.element(i)),
        }
    };
    for g in 0..gp.order() {
        let s = section[g];
        let s_inv = e.inverse(s);
        for i in 0..m.order() as usize {
            let conj = e.mul(e.mul(s, inclusion[i]), s_inv);
            if to_a(conj)? != base.act(g, &m.element(i)) {
                return Err(bad("conjugation action differs from the module action"));
            }
        }
    }
    let mut table = vec![vec![m.zero(); gp.order()]; gp.order()];
    for g in 0..gp.order() {
        for h in 0..gp.order() {
            let x = e.mul(e.mul(section[g], section[h]), e.inverse(section[gp.mul(g, h)]));
            table[g][h] = to_a(x)?;
        }
    }
    TwoCocycle::new(base.clone(), table)
}

#[cfg(test)]
mod tests {
    use super::super::FiniteModule;
    use super::*;

    #[test]
    fn quaternion_like_extension_round_trip() {
        // Z/4 as an extension of Z/2 by Z/2
        let base = GModule::trivial(FiniteGroup::cyclic(2), FiniteModule::cyclic(2));
        let c = TwoCocycle::from_fn(base.clone(), |g, h| vec![u64::from(g == 1 && h == 1)]).unwrap();
        let ext = ExtensionGroup::new(c.clone()).unwrap();
        assert_eq!(ext.element_order(&[0], 1), 4);
        let e = ext.materialize().unwrap();
        let inclusion: Vec<usize> = (0..2).map(|i| ext.inclusion(&[i])).collect();
        let projection: Vec<usize> = (0..4).map(|x| ext.projection(x)).collect();
        for lift in 0..2u64 {
            let section = vec![0, ext.index(&[lift], 1)];
            let back = cocycle_from_extension(&e, &base, &inclusion, &projection, &section).unwrap();
            assert!(back.equivalent(&c).unwrap());
        }
    }
}
