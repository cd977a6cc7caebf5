use serde::{Deserialize, Serialize};

use super::{CohomologyError, Elem, FiniteGroup};

/// `Z/d_1 + ... + Z/d_k`; elements are coordinate vectors reduced mod `d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteModule {
    pub factors: Vec<u64>,
}

impl FiniteModule {
    pub fn new(factors: Vec<u64>) -> Result<Self, CohomologyError> {
        if factors.contains(&0) {
            return Err(CohomologyError::BadModule("factors must be positive".into()));
        }
        Ok(FiniteModule { factors })
    }

    pub fn cyclic(d: u64) -> Self {
        FiniteModule { factors: vec![d] }
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.rank()]
    }

    pub fn reduce(&self, a: &[i64]) -> Elem {
        a.iter().zip(&self.factors).map(|(&x, &d)| x.rem_euclid(d as i64) as u64).collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Elem {
        a.iter().zip(b).zip(&self.factors).map(|((x, y), d)| (x + y) % d).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Elem {
        a.iter().zip(&self.factors).map(|(x, d)| (d - x % d) % d).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &[u64]) -> Elem {
        a.iter().zip(&self.factors).map(|(&x, &d)| ((k as i128 * x as i128).rem_euclid(d as i128)) as u64).collect()
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, a: &[u64]) -> bool {
        a.len() == self.rank() && a.iter().zip(&self.factors).all(|(x, d)| x < d)
    }

    /// Mixed-radix index of an element.
    pub fn index(&self, a: &[u64]) -> usize {
        a.iter().zip(&self.factors).fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
    }

    pub fn element(&self, mut idx: usize) -> Elem {
        let mut out = vec![0; self.rank()];
        for (slot, &d) in out.iter_mut().zip(&self.factors).rev() {
            *slot = (idx % d as usize) as u64;
            idx /= d as usize;
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order() as usize).map(|i| self.element(i))
    }

    /// `d_j m_ij = 0 mod d_i`, so that `m` is a well-defined endomorphism
    /// or map into `target`.
    pub(crate) fn matrix_well_defined(&self, target: &FiniteModule, m: &[Vec<i64>]) -> bool {
        m.len() == target.rank()
            && m.iter().enumerate().all(|(i, row)| {
                row.len() == self.rank()
                    && row
                        .iter()
                        .zip(&self.factors)
                        .all(|(&x, &dj)| (dj as i128 * x as i128) % target.factors[i] as i128 == 0)
            })
    }

    pub(crate) fn apply_matrix(&self, target: &FiniteModule, m: &[Vec<i64>], a: &[u64]) -> Elem {
        let v: Vec<i64> = m
            .iter()
            .zip(&target.factors)
            .map(|(row, &d)| {
                let s: i128 = row.iter().zip(a).map(|(&x, &y)| x as i128 * y as i128).sum();
                s.rem_euclid(d as i128) as i64
            })
            .collect();
        target.reduce(&v)
    }
}

/// A finite module with an action of a finite group, one integer matrix
/// per group element acting on coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGModule")]
pub struct GModule {
    pub group: FiniteGroup,
    pub module: ModuleSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub factors: Vec<u64>,
    /// `action[g]` is a `k x k` matrix; omitted means trivial action.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub action: Vec<Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
struct RawGModule {
    group: FiniteGroup,
    module: ModuleSpec,
}

impl TryFrom<RawGModule> for GModule {
    type Error = CohomologyError;

    fn try_from(raw: RawGModule) -> Result<Self, Self::Error> {
        GModule::new(raw.group, FiniteModule::new(raw.module.factors)?, raw.module.action)
    }
}

fn identity(k: usize) -> Vec<Vec<i64>> {
    (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect()
}

impl GModule {
    /// Validates that each matrix is well defined, `e` acts trivially and
    /// the action is a homomorphism. An empty `action` means trivial.
    pub fn new(group: FiniteGroup, module: FiniteModule, action: Vec<Vec<Vec<i64>>>) -> Result<Self, CohomologyError> {
        let k = module.rank();
        let action = if action.is_empty() { vec![identity(k); group.order()] } else { action };
        let g = GModule { group, module: ModuleSpec { factors: module.factors.clone(), action } };
        if g.module.action.len() != g.group.order() {
            return Err(CohomologyError::BadModule("one action matrix per group element is required".into()));
        }
        for (idx, m) in g.module.action.iter().enumerate() {
            if !module.matrix_well_defined(&module, m) {
                return Err(CohomologyError::BadModule(format!("action of element {idx} is not well defined")));
            }
        }
        let basis: Vec<Elem> = (0..k)
            .map(|j| {
                let mut e = vec![0; k];
                e[j] = 1 % module.factors[j];
                e
            })
            .collect();
        for e in &basis {
            if g.act(0, e) != *e {
                return Err(CohomologyError::BadModule("identity acts nontrivially".into()));
            }
        }
        let n = g.group.order();
        for a in 0..n {
            for b in 0..n {
                for e in &basis {
                    if g.act(g.group.mul(a, b), e) != g.act(a, &g.act(b, e)) {
                        return Err(CohomologyError::BadModule(format!("action is not a homomorphism at ({a}, {b})")));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn trivial(group: FiniteGroup, module: FiniteModule) -> Self {
        GModule::new(group, module, Vec::new()).expect("trivial action")
    }

    pub fn module(&self) -> FiniteModule {
        FiniteModule { factors: self.module.factors.clone() }
    }

    pub fn act(&self, g: usize, a: &[u64]) -> Elem {
        let m = self.module();
        m.apply_matrix(&m, &self.module.action[g], a)
    }

    pub fn is_trivial_action(&self) -> bool {
        let m = self.module();
        (0..self.group.order()).all(|g| {
            (0..m.rank()).all(|j| {
                let mut e = vec![0; m.rank()];
                e[j] = 1 % m.factors[j];
                self.act(g, &e) == e
            })
        })
    }

    /// Same module, action pulled back along `phi: group -> self.group`.
    pub fn pullback(&self, group: FiniteGroup, phi: &[usize]) -> Result<GModule, CohomologyError> {
        if !group.is_homomorphism(phi, &self.group) {
            return Err(CohomologyError::NotHomomorphism);
        }
        let action = phi.iter().map(|&g| self.module.action[g].clone()).collect();
        GModule::new(group, self.module(), action)
    }
}

/// A map of modules `A -> B` given by a `rank(B) x rank(A)` integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleHom {
    pub matrix: Vec<Vec<i64>>,
}

impl ModuleHom {
    /// Checks well-definedness and equivariance.
    pub fn check(&self, source: &GModule, target: &GModule) -> Result<(), CohomologyError> {
        if source.group != target.group {
            return Err(CohomologyError::Mismatch("groups of source and target".into()));
        }
        let (a, b) = (source.module(), target.module());
        if !a.matrix_well_defined(&b, &self.matrix) {
            return Err(CohomologyError::BadHom("matrix is not well defined on the source".into()));
        }
        for g in 0..source.group.order() {
            for j in 0..a.rank() {
                let mut e = vec![0; a.rank()];
                e[j] = 1 % a.factors[j];
                if self.apply(source, target, &source.act(g, &e)) != target.act(g, &self.apply(source, target, &e)) {
                    return Err(CohomologyError::BadHom(format!("not equivariant for element {g}")));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, source: &GModule, target: &GModule, a: &[u64]) -> Elem {
        source.module().apply_matrix(&target.module(), &self.matrix, a)
    }
}
