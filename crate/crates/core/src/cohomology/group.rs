use serde::{Deserialize, Serialize};

use super::CohomologyError;

/// A finite group given by its multiplication table; element `0` is the
/// identity and `table[g][h] = gh`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGroup")]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct RawGroup {
    table: Vec<Vec<usize>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

impl TryFrom<RawGroup> for FiniteGroup {
    type Error = CohomologyError;

    fn try_from(raw: RawGroup) -> Result<Self, Self::Error> {
        let g = FiniteGroup::from_table(raw.table)?;
        match raw.labels {
            Some(l) => g.with_labels(l),
            None => Ok(g),
        }
    }
}

impl FiniteGroup {
    /// Validates closure, identity at `0`, inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, CohomologyError> {
        let n = table.len();
        let bad = |m: &str| CohomologyError::BadGroup(m.to_string());
        if n == 0 {
            return Err(bad("empty group"));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(bad("table is not square or has out-of-range entries"));
        }
        for g in 0..n {
            if table[0][g] != g || table[g][0] != g {
                return Err(bad("element 0 is not the identity"));
            }
            if !table[g].contains(&0) {
                return Err(bad("missing inverse"));
            }
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    if table[table[g][h]][k] != table[g][table[h][k]] {
                        return Err(CohomologyError::BadGroup(format!("not associative at ({g}, {h}, {k})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, CohomologyError> {
        if labels.len() != self.order() {
            return Err(CohomologyError::BadGroup("label count differs from order".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn trivial() -> Self {
        FiniteGroup { table: vec![vec![0]], labels: None }
    }

    pub fn cyclic(n: usize) -> Self {
        let n = n.max(1);
        FiniteGroup { table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(), labels: None }
    }

    /// `G x H` with `(g, h)` at index `g * |H| + h`.
    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (m, n) = (a.order(), b.order());
        let table =
            (0..m * n).map(|x| (0..m * n).map(|y| a.mul(x / n, y / n) * n + b.mul(x % n, y % n)).collect()).collect();
        FiniteGroup { table, labels: None }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.table[g].iter().position(|&x| x == 0).expect("validated")
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn label(&self, g: usize) -> String {
        self.labels.as_ref().map(|l| l[g].clone()).unwrap_or_else(|| g.to_string())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|g| (0..self.order()).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Checks that `phi: self -> target` (by index) is a homomorphism.
    pub fn is_homomorphism(&self, phi: &[usize], target: &FiniteGroup) -> bool {
        phi.len() == self.order()
            && phi.iter().all(|&x| x < target.order())
            && (0..self.order()).all(|g| (0..self.order()).all(|h| phi[self.mul(g, h)] == target.mul(phi[g], phi[h])))
    }
}
