use serde::{Deserialize, Serialize};

use super::modsolve::{self, Row};
use super::{CohomologyError, Elem, FiniteGroup, FiniteModule, GModule, ModuleHom};

/// Largest `|G|^2 * rank(A)` accepted by the linear solver.
pub const SOLVER_BOUND: usize = 1 << 20;

/// A normalized 2-cocycle, `table[g][h] = c(g, h)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCocycle")]
pub struct TwoCocycle {
    #[serde(flatten)]
    pub base: GModule,
    pub table: Vec<Vec<Elem>>,
}

#[derive(Deserialize)]
struct RawCocycle {
    #[serde(flatten)]
    base: GModule,
    table: Vec<Vec<Elem>>,
}

impl TryFrom<RawCocycle> for TwoCocycle {
    type Error = CohomologyError;

    fn try_from(raw: RawCocycle) -> Result<Self, Self::Error> {
        TwoCocycle::new(raw.base, raw.table)
    }
}

/// First triple `(g, h, k)` at which the cocycle identity fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailingTriple {
    pub g: usize,
    pub h: usize,
    pub k: usize,
}

impl TwoCocycle {
    /// Checks shape, reduction and normalization; the cocycle identity is
    /// checked separately by [`TwoCocycle::verify`].
    pub fn new(base: GModule, table: Vec<Vec<Elem>>) -> Result<Self, CohomologyError> {
        let n = base.group.order();
        let m = base.module();
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|a| !m.contains(a))) {
            return Err(CohomologyError::BadCocycle("table shape or entries do not match the module".into()));
        }
        if (0..n).any(|g| !m.is_zero(&table[0][g]) || !m.is_zero(&table[g][0])) {
            return Err(CohomologyError::BadCocycle("cocycle is not normalized".into()));
        }
        Ok(TwoCocycle { base, table })
    }

    pub fn from_fn(base: GModule, f: impl Fn(usize, usize) -> Elem) -> Result<Self, CohomologyError> {
        let n = base.group.order();
        let table = (0..n).map(|g| (0..n).map(|h| f(g, h)).collect()).collect();
        TwoCocycle::new(base, table)
    }

    pub fn zero(base: GModule) -> Self {
        let n = base.group.order();
        let z = base.module().zero();
        TwoCocycle { table: vec![vec![z; n]; n], base }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.base.group
    }

    pub fn module(&self) -> FiniteModule {
        self.base.module()
    }

    pub fn value(&self, g: usize, h: usize) -> &Elem {
        &self.table[g][h]
    }

    /// `g c(h, k) - c(gh, k) + c(g, hk) - c(g, h) = 0` for all triples.
    pub fn verify(&self) -> Result<(), FailingTriple> {
        let gp = self.group();
        let m = self.module();
        let n = gp.order();
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    let lhs = m.add(&self.base.act(g, &self.table[h][k]), &self.table[g][gp.mul(h, k)]);
                    let rhs = m.add(&self.table[gp.mul(g, h)][k], &self.table[g][h]);
                    if lhs != rhs {
                        return Err(FailingTriple { g, h, k });
                    }
                }
            }
        }
        Ok(())
    }

    fn same_base(&self, other: &TwoCocycle) -> Result<(), CohomologyError> {
        if self.base != other.base {
            return Err(CohomologyError::Mismatch("cocycles live on different modules".into()));
        }
        Ok(())
    }

    /// Pointwise sum, representing the Baer sum of extensions.
    pub fn baer_sum(&self, other: &TwoCocycle) -> Result<TwoCocycle, CohomologyError> {
        self.same_base(other)?;
        let m = self.module();
        let n = self.group().order();
        let table = (0..n).map(|g| (0..n).map(|h| m.add(&self.table[g][h], &other.table[g][h])).collect()).collect();
        Ok(TwoCocycle { base: self.base.clone(), table })
    }

    pub fn neg(&self) -> TwoCocycle {
        let m = self.module();
        let table = self.table.iter().map(|r| r.iter().map(|a| m.neg(a)).collect()).collect();
        TwoCocycle { base: self.base.clone(), table }
    }

    pub fn scale(&self, k: i64) -> TwoCocycle {
        let m = self.module();
        let table = self.table.iter().map(|r| r.iter().map(|a| m.scale(k, a)).collect()).collect();
        TwoCocycle { base: self.base.clone(), table }
    }

    /// `f o c` for an equivariant `f: A -> B`.
    pub fn pushout(&self, f: &ModuleHom, target: &GModule) -> Result<TwoCocycle, CohomologyError> {
        f.check(&self.base, target)?;
        let table = self.table.iter().map(|r| r.iter().map(|a| f.apply(&self.base, target, a)).collect()).collect();
        Ok(TwoCocycle { base: target.clone(), table })
    }

    /// `c o (phi x phi)` for a homomorphism `phi: group -> self.group()`.
    pub fn pullback(&self, group: &FiniteGroup, phi: &[usize]) -> Result<TwoCocycle, CohomologyError> {
        let base = self.base.pullback(group.clone(), phi)?;
        let n = group.order();
        let table = (0..n).map(|g| (0..n).map(|h| self.table[phi[g]][phi[h]].clone()).collect()).collect();
        Ok(TwoCocycle { base, table })
    }

    /// `(ds)(g, h) = s(g) + g s(h) - s(gh)` for a normalized 1-cochain.
    pub fn coboundary(base: &GModule, s: &[Elem]) -> Result<TwoCocycle, CohomologyError> {
        let gp = &base.group;
        let m = base.module();
        if s.len() != gp.order() || !m.is_zero(&s[0]) {
            return Err(CohomologyError::BadCocycle("cochain must be normalized with one value per element".into()));
        }
        TwoCocycle::from_fn(base.clone(), |g, h| m.sub(&m.add(&s[g], &base.act(g, &s[h])), &s[gp.mul(g, h)]))
    }

    /// A normalized `s` with `ds = c`, if the class is zero. The section
    /// `g -> (-s(g), g)` of the extension is then a homomorphism.
    pub fn find_splitting(&self) -> Result<Option<Vec<Elem>>, CohomologyError> {
        let gp = self.group();
        let m = self.module();
        let (n, k) = (gp.order(), m.rank());
        if n * n * k.max(1) > SOLVER_BOUND {
            return Err(CohomologyError::BoundExceeded(format!("|G|^2 rank(A) = {}", n * n * k)));
        }
        if k == 0 {
            return Ok(Some(vec![Vec::new(); n]));
        }
        // variable (g, i) for g >= 1
        let var = |g: usize, i: usize| (g - 1) * k + i;
        let var_moduli: Vec<u64> = (1..n).flat_map(|_| m.factors.iter().copied()).collect();
        let mut rows = Vec::new();
        for g in 1..n {
            for h in 1..n {
                let gh = gp.mul(g, h);
                let act = &self.base.module.action[g];
                for i in 0..k {
                    let mut coeffs = vec![(var(g, i), 1)];
                    for (j, &a) in act[i].iter().enumerate() {
                        if a != 0 {
                            coeffs.push((var(h, j), a));
                        }
                    }
                    if gh != 0 {
                        coeffs.push((var(gh, i), -1));
                    }
                    rows.push(Row { coeffs, rhs: self.table[g][h][i] as i64, modulus: m.factors[i] });
                }
            }
        }
        Ok(modsolve::solve(&var_moduli, &rows)
            .map(|x| std::iter::once(m.zero()).chain((1..n).map(|g| x[(g - 1) * k..g * k].to_vec())).collect()))
    }

    pub fn is_split(&self) -> Result<bool, CohomologyError> {
        Ok(self.find_splitting()?.is_some())
    }

    /// Whether `self - other` is a coboundary.
    pub fn equivalent(&self, other: &TwoCocycle) -> Result<bool, CohomologyError> {
        self.baer_sum(&other.neg())?.is_split()
    }

    /// Smallest `k >= 1` with `k [c] = 0`.
    pub fn class_order(&self) -> Result<u64, CohomologyError> {
        let exp = self.module().factors.iter().fold(1u64, |a, &d| num_integer::lcm(a, d));
        let bound = exp * self.group().order() as u64;
        for k in 1..=bound {
            if bound.is_multiple_of(k) && self.scale(k as i64).is_split()? {
                return Ok(k);
            }
        }
        Ok(bound)
    }
}

/// A crossed homomorphism `z(gh) = z(g) + g z(h)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawOneCocycle")]
pub struct OneCocycle {
    #[serde(flatten)]
    pub base: GModule,
    pub values: Vec<Elem>,
}

#[derive(Deserialize)]
struct RawOneCocycle {
    #[serde(flatten)]
    base: GModule,
    values: Vec<Elem>,
}

impl TryFrom<RawOneCocycle> for OneCocycle {
    type Error = CohomologyError;

    fn try_from(raw: RawOneCocycle) -> Result<Self, Self::Error> {
        OneCocycle::new(raw.base, raw.values)
    }
}

impl OneCocycle {
    pub fn new(base: GModule, values: Vec<Elem>) -> Result<Self, CohomologyError> {
        let m = base.module();
        if values.len() != base.group.order() || values.iter().any(|a| !m.contains(a)) {
            return Err(CohomologyError::BadCocycle("one value per group element is required".into()));
        }
        let z = OneCocycle { base, values };
        let gp = &z.base.group;
        for g in 0..gp.order() {
            for h in 0..gp.order() {
                if z.values[gp.mul(g, h)] != m.add(&z.values[g], &z.base.act(g, &z.values[h])) {
                    return Err(CohomologyError::BadCocycle(format!(
                        "crossed homomorphism identity fails at ({g}, {h})"
                    )));
                }
            }
        }
        Ok(z)
    }
}

/// The `n`-torsion submodule `C[n]` with its inclusion into `C`.
pub fn torsion_submodule(base: &GModule, n: u64) -> Result<(GModule, ModuleHom), CohomologyError> {
    let c = base.module();
    let g: Vec<u64> = c.factors.iter().map(|&d| num_integer::gcd(n, d)).collect();
    let step: Vec<i64> = c.factors.iter().zip(&g).map(|(&d, &gi)| (d / gi) as i64).collect();
    let k = c.rank();
    let incl =
        ModuleHom { matrix: (0..k).map(|i| (0..k).map(|j| if i == j { step[i] } else { 0 }).collect()).collect() };
    let action: Vec<Vec<Vec<i64>>> = base
        .module
        .action
        .iter()
        .map(|m| {
            (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            let v = (m[i][j] as i128 * step[j] as i128).rem_euclid(c.factors[i] as i128);
                            debug_assert_eq!(v % step[i] as i128, 0);
                            (v / step[i] as i128) as i64
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let sub = GModule::new(base.group.clone(), FiniteModule::new(g)?, action)?;
    incl.check(&sub, base)?;
    Ok((sub, incl))
}

/// Connecting map of `0 -> C[n] -> C -> nC -> 0`.
///
/// `z` is a crossed homomorphism with values in `nC`. With `lift(a)` a
/// preimage of `z(g)` under multiplication by `n` (chosen by `lift`), the
/// result is `w(g) + g w(h) - w(gh)`, which lies in `C[n]`.
pub fn kummer_boundary_with(
    z: &OneCocycle,
    n: u64,
    lift: impl Fn(&[Vec<u64>]) -> Vec<u64>,
) -> Result<TwoCocycle, CohomologyError> {
    let c = z.base.module();
    let (sub, _) = torsion_submodule(&z.base, n)?;
    let mut w = Vec::with_capacity(z.values.len());
    for (g, val) in z.values.iter().enumerate() {
        let pre: Vec<Vec<u64>> = c.elements().filter(|a| c.scale(n as i64, a) == *val).collect();
        if pre.is_empty() {
            return Err(CohomologyError::NotDivisible(g));
        }
        w.push(if g == 0 { c.zero() } else { lift(&pre) });
    }
    let gp = &z.base.group;
    let step: Vec<u64> = c.factors.iter().zip(&sub.module.factors).map(|(&d, &gi)| d / gi).collect();
    TwoCocycle::from_fn(sub.clone(), |g, h| {
        let v = c.sub(&c.add(&w[g], &z.base.act(g, &w[h])), &w[gp.mul(g, h)]);
        v.iter().zip(&step).map(|(&x, &s)| x / s).collect()
    })
}

/// [`kummer_boundary_with`] choosing the smallest preimage.
pub fn kummer_boundary(z: &OneCocycle, n: u64) -> Result<TwoCocycle, CohomologyError> {
    kummer_boundary_with(z, n, |pre| pre[0].clone())
}
