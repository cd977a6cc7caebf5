use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use metadual_core::cohomology::{
    cocycle_from_extension, kummer_boundary, kummer_boundary_with, Elem, ExtensionGroup, FiniteGroup, FiniteModule,
    GModule, ModuleHom, OneCocycle, TwoCocycle,
};

use super::oracles::splitting_brute;
use super::Check;

/// A group with some homomorphisms to cyclic groups `(m, values)`.
struct Grp {
    name: String,
    group: FiniteGroup,
    chars: Vec<(u64, Vec<u64>)>,
}

fn cyclic(n: usize) -> Grp {
    let chars = (2..=n)
        .filter(|m| n.is_multiple_of(*m))
        .map(|m| (m as u64, (0..n).map(|g| (g % m) as u64).collect()))
        .collect();
    Grp { name: format!("C{n}"), group: FiniteGroup::cyclic(n), chars }
}

fn product(a: &Grp, b: &Grp) -> Grp {
    let nb = b.group.order();
    let size = a.group.order() * nb;
    let mut chars: Vec<(u64, Vec<u64>)> =
        a.chars.iter().map(|(m, v)| (*m, (0..size).map(|x| v[x / nb]).collect())).collect();
    chars.extend(b.chars.iter().map(|(m, v)| (*m, (0..size).map(|x| v[x % nb]).collect())));
    Grp { name: format!("{}x{}", a.name, b.name), group: FiniteGroup::product(&a.group, &b.group), chars }
}

/// Closure of a set of permutations, identity first, `(pq)(i) = p(q(i))`.
fn permutation_group(name: &str, gens: &[Vec<usize>]) -> Grp {
    let id: Vec<usize> = (0..gens[0].len()).collect();
    let mut elems = vec![id];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let p: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
            if !elems.contains(&p) {
                elems.push(p);
            }
        }
        i += 1;
    }
    let index = |p: &Vec<usize>| elems.iter().position(|q| q == p).expect("closed");
    let table =
        elems.iter().map(|p| elems.iter().map(|q| index(&q.iter().map(|&x| p[x]).collect())).collect()).collect();
    let group = FiniteGroup::from_table(table).expect("permutation group");
    let n = group.order();
    // homomorphisms to C2, by enumeration
    let chars = (1u32..1 << n)
        .map(|bits| (0..n).map(|g| u64::from(bits >> g & 1 == 1)).collect::<Vec<u64>>())
        .filter(|v| v[0] == 0 && (0..n).all(|g| (0..n).all(|h| v[group.mul(g, h)] == (v[g] + v[h]) % 2)))
        .map(|v| (2, v))
        .collect();
    Grp { name: name.to_string(), group, chars }
}

/// Left multiplication by `i` and `j` on `{+-1, +-i, +-j, +-k}`.
fn quaternion_group() -> Grp {
    // basis products e_a e_b = sign * e_c for 1, i, j, k
    const PROD: [[(i8, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let left = |a: usize| -> Vec<usize> {
        (0..8)
            .map(|x| {
                let (s, c) = PROD[a][x % 4];
                let neg = (x >= 4) ^ (s < 0);
                c + if neg { 4 } else { 0 }
            })
            .collect()
    };
    permutation_group("Q8", &[left(1), left(2)])
}

fn groups() -> Vec<Grp> {
    let mut out: Vec<Grp> = (1..=8).map(cyclic).collect();
    out.push(product(&cyclic(2), &cyclic(2)));
    out.push(product(&cyclic(2), &cyclic(4)));
    out.push(product(&product(&cyclic(2), &cyclic(2)), &cyclic(2)));
    out.push(product(&cyclic(3), &cyclic(3)));
    out.push(product(&cyclic(4), &cyclic(4)));
    out.push(permutation_group("S3", &[vec![1, 2, 0], vec![1, 0, 2]]));
    out.push(permutation_group("D4", &[vec![1, 2, 3, 0], vec![2, 1, 0, 3]]));
    out.push(quaternion_group());
    out
}

#[derive(Clone, Copy, PartialEq)]
enum Action {
    Trivial,
    /// `-1` through a character of order 2.
    Sign,
    /// Coordinate swap through a character of order 2.
    Swap,
}

const MODULES: &[(&[u64], Action)] = &[
    (&[2], Action::Trivial),
    (&[3], Action::Trivial),
    (&[4], Action::Trivial),
    (&[6], Action::Trivial),
    (&[8], Action::Trivial),
    (&[2, 2], Action::Trivial),
    (&[2, 4], Action::Trivial),
    (&[3, 3], Action::Trivial),
    (&[2, 2, 2], Action::Trivial),
    (&[3], Action::Sign),
    (&[4], Action::Sign),
    (&[8], Action::Sign),
    (&[2, 4], Action::Sign),
    (&[2, 2], Action::Swap),
    (&[3, 3], Action::Swap),
    (&[4, 4], Action::Swap),
];

fn gmodule(g: &Grp, factors: &[u64], action: Action) -> Option<GModule> {
    let module = FiniteModule::new(factors.to_vec()).expect("factors");
    let k = factors.len();
    let eps = match action {
        Action::Trivial => return Some(GModule::trivial(g.group.clone(), module)),
        _ => &g.chars.iter().find(|(m, _)| *m == 2)?.1,
    };
    let matrices = eps
        .iter()
        .map(|&e| {
            (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| match (action, e) {
                            (_, 0) => i64::from(i == j),
                            (Action::Sign, _) => -i64::from(i == j),
                            _ => i64::from(i + j == 1),
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    GModule::new(g.group.clone(), module, matrices).ok()
}

struct Instance {
    name: String,
    base: GModule,
    /// Basis-like cocycles: carries along characters times invariants.
    cocycles: Vec<TwoCocycle>,
}

fn invariants(base: &GModule) -> Vec<Elem> {
    let m = base.module();
    m.elements().filter(|a| !m.is_zero(a) && (0..base.group.order()).all(|g| base.act(g, a) == *a)).collect()
}

fn instances() -> Vec<Instance> {
    let mut out = Vec::new();
    for g in groups() {
        for &(factors, action) in MODULES {
            let order: u64 = factors.iter().product();
            if order * g.group.order() as u64 > 256 {
                continue;
            }
            let Some(base) = gmodule(&g, factors, action) else { continue };
            let m = base.module();
            let inv = invariants(&base);
            let mut cocycles = vec![TwoCocycle::zero(base.clone())];
            for (m_chi, chi) in g.chars.iter().take(3) {
                for t in inv.iter().take(2) {
                    let c =
                        TwoCocycle::from_fn(
                            base.clone(),
                            |x, y| {
                                if chi[x] + chi[y] >= *m_chi {
                                    t.clone()
                                } else {
                                    m.zero()
                                }
                            },
                        )
                        .expect("carry cocycle");
                    cocycles.push(c);
                }
            }
            let name = format!(
                "{} on {:?} ({})",
                g.name,
                factors,
                match action {
                    Action::Trivial => "trivial",
                    Action::Sign => "sign",
                    Action::Swap => "swap",
                }
            );
            out.push(Instance { name, base, cocycles });
        }
    }
    out
}

fn random_cochain(rng: &mut StdRng, base: &GModule) -> Vec<Elem> {
    let m = base.module();
    (0..base.group.order())
        .map(|g| if g == 0 { m.zero() } else { m.element(rng.gen_range(0..m.order() as usize)) })
        .collect()
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn check_cocycle(rng: &mut StdRng, c: &TwoCocycle, c1: &TwoCocycle, c2: &TwoCocycle) -> Result<bool, String> {
    if let Err(t) = c.verify() {
        return Err(format!("cocycle identity fails at {t:?}"));
    }
    let g = c.group();
    let m = c.module();
    let ext = ExtensionGroup::new(c.clone()).map_err(e2s)?;
    let e = ext.materialize().map_err(e2s)?;
    if e.order() != g.order() * m.order() as usize {
        return Err("extension has the wrong order".into());
    }
    let projection: Vec<usize> = (0..e.order()).map(|x| ext.projection(x)).collect();
    if !e.is_homomorphism(&projection, g) {
        return Err("projection is not a homomorphism".into());
    }
    let elements: Vec<Elem> = m.elements().collect();
    let inclusion: Vec<usize> = elements.iter().map(|a| ext.inclusion(a)).collect();
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            if e.mul(inclusion[i], inclusion[j]) != ext.inclusion(&m.add(a, b)) {
                return Err("inclusion is not a homomorphism".into());
            }
        }
    }

    let zero = TwoCocycle::zero(c.base.clone());
    let split = c.find_splitting().map_err(e2s)?;
    if let Some(s) = &split {
        if TwoCocycle::coboundary(&c.base, s).map_err(e2s)? != *c {
            return Err("returned splitting does not have coboundary c".into());
        }
    }
    if c.equivalent(&zero).map_err(e2s)? != split.is_some() {
        return Err("find_splitting and equivalence to 0 disagree".into());
    }
    if let Some(brute) = splitting_brute(c) {
        if brute != split.is_some() {
            return Err(format!("enumeration says split = {brute}, solver disagrees"));
        }
    }

    let left = c.baer_sum(c1).map_err(e2s)?.baer_sum(c2).map_err(e2s)?;
    let right = c.baer_sum(&c1.baer_sum(c2).map_err(e2s)?).map_err(e2s)?;
    if !left.equivalent(&right).map_err(e2s)? {
        return Err("Baer sum is not associative on classes".into());
    }
    if !c.baer_sum(&c.neg()).map_err(e2s)?.is_split().map_err(e2s)? {
        return Err("c + (-c) is not split".into());
    }

    let big = FiniteGroup::product(g, &FiniteGroup::cyclic(2));
    let phi: Vec<usize> = (0..big.order()).map(|x| x / 2).collect();
    let k = m.rank();
    let f = ModuleHom { matrix: (0..k).map(|i| (0..k).map(|j| if i == j { 3 } else { 0 }).collect()).collect() };
    let a = c.pushout(&f, &c.base).map_err(e2s)?.pullback(&big, &phi).map_err(e2s)?;
    let pulled = c.pullback(&big, &phi).map_err(e2s)?;
    let b = pulled.pushout(&f, &pulled.base).map_err(e2s)?;
    if a != b {
        return Err("pushout and pullback do not commute".into());
    }

    let section: Vec<usize> = (0..g.order())
        .map(|x| if x == 0 { 0 } else { ext.index(&elements[rng.gen_range(0..elements.len())], x) })
        .collect();
    let back = cocycle_from_extension(&e, &c.base, &inclusion, &projection, &section).map_err(e2s)?;
    if !back.equivalent(c).map_err(e2s)? {
        return Err("cocycle read off the extension is not equivalent".into());
    }
    Ok(split.is_none())
}

/// Crossed homomorphisms into `n C`: characters times invariants and
/// principal ones.
fn kummer_checks(rng: &mut StdRng) -> Result<(usize, usize), String> {
    let (mut count, mut nonzero) = (0, 0);
    for g in groups().iter().filter(|g| g.group.order() <= 8) {
        for &(factors, action) in MODULES.iter().filter(|(_, a)| *a != Action::Swap) {
            let cyclic_c: Vec<u64> = factors.iter().map(|d| d * d).collect();
            let Some(base) = gmodule(g, &cyclic_c, action) else { continue };
            let m = base.module();
            for n in [2u64, 3, 4] {
                let nc: Vec<Elem> =
                    m.elements().filter(|a| m.elements().any(|b| m.scale(n as i64, &b) == *a)).collect();
                let mut zs = Vec::new();
                for a in nc.iter().take(3) {
                    zs.push((0..g.group.order()).map(|x| m.sub(&base.act(x, a), a)).collect::<Vec<Elem>>());
                }
                for (mc, chi) in &g.chars {
                    if let Some(t) = nc.iter().find(|t| {
                        !m.is_zero(t)
                            && m.is_zero(&m.scale(*mc as i64, t))
                            && (0..g.group.order()).all(|x| base.act(x, t) == **t)
                    }) {
                        zs.push(chi.iter().map(|&v| m.scale(v as i64, t)).collect());
                    }
                }
                for values in zs {
                    let z = OneCocycle::new(base.clone(), values).map_err(e2s)?;
                    let k1 = kummer_boundary(&z, n).map_err(e2s)?;
                    let pick = rng.gen::<u64>();
                    let k2 = kummer_boundary_with(&z, n, |pre| pre[(pick % pre.len() as u64) as usize].clone())
                        .map_err(e2s)?;
                    if k1.verify().is_err() || !k1.equivalent(&k2).map_err(e2s)? {
                        return Err(format!(
                            "Kummer class depends on the lift ({} on {:?}, n = {n})",
                            g.name, cyclic_c
                        ));
                    }
                    if !k1.scale(n as i64).is_split().map_err(e2s)? {
                        return Err("n times the Kummer class is nonzero".into());
                    }
                    if !k1.is_split().map_err(e2s)? {
                        nonzero += 1;
                    }
                    count += 1;
                }
            }
        }
    }
    if nonzero == 0 {
        return Err("no nonzero Kummer class was produced".into());
    }
    Ok((count, nonzero))
}

pub fn criterion() -> Check {
    let mut rng = StdRng::seed_from_u64(0x636f_6879);
    let insts = instances();
    let (mut exhaustive, mut nonsplit) = (0, 0);
    for inst in &insts {
        let cs = &inst.cocycles;
        for (i, c) in cs.iter().enumerate() {
            let s = random_cochain(&mut rng, &inst.base);
            let c = c.baer_sum(&TwoCocycle::coboundary(&inst.base, &s).map_err(e2s)?).map_err(e2s)?;
            let (c1, c2) = (&cs[(i + 1) % cs.len()], &cs[(i + 2) % cs.len()]);
            nonsplit += usize::from(check_cocycle(&mut rng, &c, c1, c2).map_err(|e| format!("{}: {e}", inst.name))?);
            exhaustive += 1;
        }
    }
    for trial in 0..500 {
        let inst = &insts[rng.gen_range(0..insts.len())];
        let pick = |rng: &mut StdRng| -> Result<TwoCocycle, String> {
            let mut c = TwoCocycle::coboundary(&inst.base, &random_cochain(rng, &inst.base)).map_err(e2s)?;
            for b in &inst.cocycles {
                c = c.baer_sum(&b.scale(rng.gen_range(0..4))).map_err(e2s)?;
            }
            Ok(c)
        };
        let (c, c1, c2) = (pick(&mut rng)?, pick(&mut rng)?, pick(&mut rng)?);
        check_cocycle(&mut rng, &c, &c1, &c2).map_err(|e| format!("random trial {trial} on {}: {e}", inst.name))?;
    }
    let (kummer, kummer_nonzero) = kummer_checks(&mut rng)?;
    Ok(format!(
        "{} module instances, {exhaustive} exhaustive cocycles ({nonsplit} nonsplit), 500 random, {kummer} Kummer boundaries ({kummer_nonzero} nonzero)",
        insts.len()
    ))
}
