use std::fmt;

use serde::{Deserialize, Serialize};

use super::catalog::{canonical_cartan, Family};
use super::RootDataError;
use crate::lattice::IntMatrix;

/// One connected component. `nodes[k]` is the index (into the classified
/// Cartan matrix) of the Bourbaki node `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DynkinComponent {
    pub family: Family,
    pub rank: usize,
    pub nodes: Vec<usize>,
}

/// Components are sorted by family, then rank, then smallest node index.
/// `B2` is reported for a rank-2 double bond and `A3` for `D3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DynkinType {
    pub components: Vec<DynkinComponent>,
    pub torus_rank: usize,
}

impl DynkinType {
    /// Family and rank pairs without node data.
    pub fn shape(&self) -> Vec<(Family, usize)> {
        self.components.iter().map(|c| (c.family, c.rank)).collect()
    }

    pub fn semisimple_rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> =
            self.components.iter().map(|c| format!("{}{}", c.family.letter(), c.rank)).collect();
        match self.torus_rank {
            0 => {}
            1 => parts.push("T1".into()),
            t => parts.push(format!("T{t}")),
        }
        if parts.is_empty() {
            write!(f, "trivial")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

fn not_finite(msg: impl Into<String>) -> RootDataError {
    RootDataError::NotFiniteType(msg.into())
}

/// Classifies a Cartan matrix (`C_ij = <alpha_i, alpha_j^vee>`) of finite
/// type into connected components with Bourbaki node labels.
pub fn classify_dynkin(c: &IntMatrix) -> Result<DynkinType, RootDataError> {
    let n = c.rows();
    if c.cols() != n {
        return Err(not_finite("Cartan matrix is not square"));
    }
    let m: Vec<Vec<i64>> = c.to_i64_rows().ok_or_else(|| not_finite("entries too large"))?;
    for i in 0..n {
        if m[i][i] != 2 {
            return Err(not_finite(format!("diagonal entry {i} is {}", m[i][i])));
        }
        for j in 0..n {
            if i != j && (m[i][j] > 0 || (m[i][j] == 0) != (m[j][i] == 0)) {
                return Err(not_finite(format!("entries ({i},{j}) and ({j},{i}) are not a valid bond")));
            }
        }
    }
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            for w in 0..n {
                if w != v && m[v][w] != 0 && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            head += 1;
        }
        comp.sort_unstable();
        components.push(classify_component(&m, &comp)?);
    }
    components.sort_by(|a, b| (a.family, a.rank, a.nodes.iter().min()).cmp(&(b.family, b.rank, b.nodes.iter().min())));
    Ok(DynkinType { components, torus_rank: 0 })
}

fn neighbours(m: &[Vec<i64>], comp: &[usize], v: usize) -> Vec<usize> {
    comp.iter().copied().filter(|&w| w != v && m[v][w] != 0).collect()
}

/// Walks a path starting at the leaf `start`.
fn walk_path(m: &[Vec<i64>], comp: &[usize], start: usize) -> Vec<usize> {
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = neighbours(m, comp, cur).into_iter().find(|&w| w != prev);
        match next {
            Some(w) => {
                path.push(w);
                prev = cur;
                cur = w;
            }
            None => return path,
        }
    }
}

/// Arm hanging off `center` through `first`, listed outward.
fn arm(m: &[Vec<i64>], comp: &[usize], center: usize, first: usize) -> Vec<usize> {
    let mut out = vec![first];
    let mut prev = center;
    let mut cur = first;
    while let Some(w) = neighbours(m, comp, cur).into_iter().find(|&w| w != prev) {
        out.push(w);
        prev = cur;
        cur = w;
    }
    out
}

fn classify_component(m: &[Vec<i64>], comp: &[usize]) -> Result<DynkinComponent, RootDataError> {
    let k = comp.len();
    let make = |family: Family, nodes: Vec<usize>| -> Result<DynkinComponent, RootDataError> {
        let canon = canonical_cartan(family, nodes.len())?;
        for a in 0..nodes.len() {
            for b in 0..nodes.len() {
                if canon[a][b] != m[nodes[a]][nodes[b]] {
                    return Err(not_finite(format!(
                        "component {comp:?} does not match {}{}",
                        family.letter(),
                        nodes.len()
                    )));
                }
            }
        }
        Ok(DynkinComponent { family, rank: nodes.len(), nodes })
    };
    if k == 1 {
        return make(Family::A, comp.to_vec());
    }
    let mut edges = 0;
    let mut multi: Vec<(usize, usize, i64)> = Vec::new();
    for (a, &i) in comp.iter().enumerate() {
        for &j in &comp[a + 1..] {
            if m[i][j] != 0 {
                edges += 1;
                let p = m[i][j] * m[j][i];
                if p >= 4 {
                    return Err(not_finite(format!("bond between {i} and {j} has weight {p}")));
                }
                if p > 1 {
                    multi.push((i, j, p));
                }
            }
        }
    }
    if edges != k - 1 {
        return Err(not_finite(format!("component {comp:?} contains a cycle")));
    }
    let degree = |v: usize| neighbours(m, comp, v).len();
    let leaves: Vec<usize> = comp.iter().copied().filter(|&v| degree(v) == 1).collect();
    let branch: Vec<usize> = comp.iter().copied().filter(|&v| degree(v) >= 3).collect();
    // long end of a multiple bond (i, j): C_ij < -1 means i long
    let long_of = |(i, j, _): (usize, usize, i64)| if m[i][j] < -1 { i } else { j };
    match multi.len() {
        0 => {}
        1 => {
            if !branch.is_empty() {
                return Err(not_finite("multiple bond in a branched diagram"));
            }
            let (i, j, p) = multi[0];
            if p == 3 {
                if k != 2 {
                    return Err(not_finite("triple bond in rank > 2"));
                }
                let long = long_of(multi[0]);
                let short = if long == i { j } else { i };
                return make(Family::G, vec![short, long]);
            }
            let long = long_of(multi[0]);
            let short = if long == i { j } else { i };
            if k == 2 {
                return make(Family::B, vec![long, short]);
            }
            if degree(short) == 1 {
                // B: last node short
                let mut p = walk_path(m, comp, short);
                p.reverse();
                return make(Family::B, p);
            }
            if degree(long) == 1 {
                let mut p = walk_path(m, comp, long);
                p.reverse();
                return make(Family::C, p);
            }
            if k == 4 {
                // F4: start from the leaf on the long side
                let start = leaves.iter().copied().find(|&v| m[v][long] != 0).ok_or_else(|| not_finite("bad F4"))?;
                return make(Family::F, walk_path(m, comp, start));
            }
            return Err(not_finite("interior double bond outside F4"));
        }
        _ => return Err(not_finite("more than one multiple bond")),
    }
    match branch.len() {
        0 => {
            let start = *leaves.iter().min().expect("path has leaves");
            make(Family::A, walk_path(m, comp, start))
        }
        1 => {
            let center = branch[0];
            let mut arms: Vec<Vec<usize>> =
                neighbours(m, comp, center).into_iter().map(|f| arm(m, comp, center, f)).collect();
            if arms.len() != 3 {
                return Err(not_finite("branch node of degree > 3"));
            }
            arms.sort_by_key(|a| (a.len(), *a.last().expect("nonempty")));
            let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
            match lens.as_slice() {
                [1, 1, _] => {
                    // D: long arm outward to the center, then the two short leaves
                    let (a0, a1, long) = (&arms[0], &arms[1], &arms[2]);
                    let (long, forks) = if long.len() == 1 {
                        // D4: lowest-index leaf becomes node 1
                        let mut leaves3 = [a0[0], a1[0], long[0]];
                        leaves3.sort_unstable();
                        (vec![leaves3[0]], vec![leaves3[1], leaves3[2]])
                    } else {
                        (long.clone(), vec![a0[0], a1[0]])
                    };
                    let mut nodes: Vec<usize> = long.into_iter().rev().collect();
                    nodes.push(center);
                    let mut forks = forks;
                    forks.sort_unstable();
                    nodes.extend(forks);
                    make(Family::D, nodes)
                }
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => {
                    // E: node 1 - 3 - 4 - 5 ..., node 2 on 4
                    let short = arms[0][0];
                    let mid = &arms[1];
                    let long = &arms[2];
                    let mut nodes = vec![mid[1], short, mid[0], center];
                    nodes.extend(long.iter().copied());
                    make(Family::E, nodes)
                }
                _ => Err(not_finite(format!("branched diagram with arms {lens:?}"))),
            }
        }
        _ => Err(not_finite("more than one branch node")),
    }
}

pub(crate) fn component_cartan_det(family: Family, rank: usize) -> u64 {
    match family {
        Family::A => (rank + 1) as u64,
        Family::B | Family::C => 2,
        Family::D => 4,
        Family::E => (9 - rank) as u64,
        Family::F | Family::G => 1,
    }
}
