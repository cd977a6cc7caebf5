//! Covers `(root datum, Q, n)` and their dual groups.
//!
//! `Q` is stored through its polarization `B` (symmetric, even diagonal):
//! `Q(y) = B(y, y) / 2` and `B(y1, y2) = Q(y1 + y2) - Q(y1) - Q(y2)`.

mod align;
mod dual;
mod forms;
mod tables;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{self, IntMatrix, LatticeError};
use crate::rootdata::{RootDataError, RootDatum};

pub use align::{levi_cover, well_aligned, AlignmentReport, ConditionCheck, LeviReport};
pub use dual::{
    forms_congruent_mod_n, identify_dual, mod_n_equal, modified_datum, tau_center_element, tau_evidence, tau_minus_one,
    tau_transversal_scan, CenterElement, ModifiedDatum, TauEvidence,
};
pub use forms::{glr_form, gsp_form, qt_form};
pub use tables::{emit_table, table_columns, table_cover, Table, TableFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("quadratic form is not symmetric")]
    NotSymmetric,
    #[error("quadratic form has an odd diagonal entry at {0}")]
    OddDiagonal(usize),
    #[error("quadratic form is not Weyl-invariant (simple reflection {0})")]
    NotWeylInvariant(usize),
    #[error("quadratic form is not invariant under Galois generator {0}")]
    NotGaloisInvariant(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("degree must be at least 1")]
    BadDegree,
    #[error("no integral form with the requested values: {0}")]
    UnsupportedForm(String),
    #[error("covers differ in {0}")]
    Mismatch(String),
    #[error("integrality failed: {0}")]
    Integrality(String),
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A Weyl-invariant integer quadratic form on `Y`, stored as `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticForm {
    #[serde(rename = "B")]
    pub gram_b: IntMatrix,
}

impl QuadraticForm {
    pub fn new(gram_b: IntMatrix) -> Result<Self, CoverError> {
        let n = gram_b.rows();
        if gram_b.cols() != n {
            return Err(CoverError::Dimension { expected: n, found: gram_b.cols() });
        }
        for i in 0..n {
            if gram_b[(i, i)].is_odd() {
                return Err(CoverError::OddDiagonal(i));
            }
            for j in 0..i {
                if gram_b[(i, j)] != gram_b[(j, i)] {
                    return Err(CoverError::NotSymmetric);
                }
            }
        }
        Ok(QuadraticForm { gram_b })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, CoverError> {
        Self::new(IntMatrix::from_rows(rows.len(), rows)?)
    }

    pub fn rank(&self) -> usize {
        self.gram_b.rows()
    }

    pub fn b_value(&self, y1: &[BigInt], y2: &[BigInt]) -> BigInt {
        let by2 = self.gram_b.apply(y2);
        y1.iter().zip(&by2).map(|(a, b)| a * b).sum()
    }

    pub fn q_value(&self, y: &[BigInt]) -> BigInt {
        self.b_value(y, y) / 2
    }

    pub fn q_value_i64(&self, y: &[i64]) -> BigInt {
        self.q_value(&lattice::to_big(y))
    }

    pub fn scaled(&self, k: i64) -> QuadraticForm {
        let mut b = self.gram_b.clone();
        let k = BigInt::from(k);
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                b[(i, j)] = &b[(i, j)] * &k;
            }
        }
        QuadraticForm { gram_b: b }
    }

    pub fn add(&self, other: &QuadraticForm) -> Result<QuadraticForm, CoverError> {
        if other.rank() != self.rank() {
            return Err(CoverError::Dimension { expected: self.rank(), found: other.rank() });
        }
        let mut b = self.gram_b.clone();
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                b[(i, j)] += &other.gram_b[(i, j)];
            }
        }
        Ok(QuadraticForm { gram_b: b })
    }

    /// Whether `Q` takes only even values.
    pub fn is_even(&self) -> bool {
        let b = &self.gram_b;
        (0..b.rows()).all(|i| {
            let half: BigInt = &b[(i, i)] / 2;
            half.is_even() && (0..i).all(|j| b[(i, j)].is_even())
        })
    }
}

/// `S_i = I - alpha_i^vee alpha_i^T`, the reflection acting on column
/// vectors of `Y`.
pub(crate) fn reflection_on_y(rd: &RootDatum, root: usize) -> IntMatrix {
    let r = rd.rank;
    let mut s = IntMatrix::identity(r);
    let (a, c) = (&rd.roots[root], &rd.coroots[root]);
    for i in 0..r {
        for j in 0..r {
            s[(i, j)] -= BigInt::from(c[i] * a[j]);
        }
    }
    s
}

/// Checks `B(s y1, s y2) = B(y1, y2)` for every simple reflection.
pub fn check_weyl_invariant(rd: &RootDatum, q: &QuadraticForm) -> Result<(), CoverError> {
    if q.rank() != rd.rank {
        return Err(CoverError::Dimension { expected: rd.rank, found: q.rank() });
    }
    for (k, &i) in rd.simple.iter().enumerate() {
        let s = reflection_on_y(rd, i);
        let t = s.transpose().mul(&q.gram_b)?.mul(&s)?;
        if t != q.gram_b {
            return Err(CoverError::NotWeylInvariant(k));
        }
    }
    for (k, g) in rd.galois_action.iter().enumerate() {
        // g acts on X; on Y by the inverse transpose
        let m = IntMatrix::from_rows(rd.rank, g)?;
        let h = lattice::solve_inverse(&m).ok_or(CoverError::NotGaloisInvariant(k))?.transpose();
        if h.transpose().mul(&q.gram_b)?.mul(&h)? != q.gram_b {
            return Err(CoverError::NotGaloisInvariant(k));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub root_datum: RootDatum,
    #[serde(flatten)]
    pub q: QuadraticForm,
    pub n: u64,
}

impl Cover {
    /// Validates the datum, the form and its Weyl invariance.
    pub fn new(root_datum: RootDatum, q: QuadraticForm, n: u64) -> Result<Self, CoverError> {
        if n == 0 {
            return Err(CoverError::BadDegree);
        }
        let root_datum = root_datum.checked()?;
        let q = QuadraticForm::new(q.gram_b)?;
        check_weyl_invariant(&root_datum, &q)?;
        Ok(Cover { root_datum, q, n })
    }

    pub fn rank(&self) -> usize {
        self.root_datum.rank
    }

    pub fn n_big(&self) -> BigInt {
        BigInt::from(self.n)
    }

    /// `Q(phi^vee)` for root index `i`.
    pub fn q_coroot(&self, i: usize) -> BigInt {
        self.q.q_value_i64(&self.root_datum.coroots[i])
    }
}

/// `beta_Q(y1, y2) = B(y1, y2) / n`.
pub fn beta(c: &Cover, y1: &[BigInt], y2: &[BigInt]) -> Result<BigRational, CoverError> {
    let r = c.rank();
    for y in [y1, y2] {
        if y.len() != r {
            return Err(CoverError::Dimension { expected: r, found: y.len() });
        }
    }
    Ok(BigRational::new(c.q.b_value(y1, y2), c.n_big()))
}

/// `(n_phi, m_phi)` with `n_phi = n / gcd(n, Q(phi^vee))` and
/// `Q(phi^vee) n_phi = m_phi n`.
pub fn nm_constants(c: &Cover, root_index: usize) -> Result<(u64, i64), CoverError> {
    if root_index >= c.root_datum.roots.len() {
        return Err(CoverError::RootData(RootDataError::InvalidIndex(root_index)));
    }
    let q = c.q_coroot(root_index);
    let n = c.n_big();
    let g = n.gcd(&q);
    let nphi = (&n / &g).to_u64().expect("divides n");
    let mphi = (&q / &g).to_i64().ok_or_else(|| CoverError::Integrality("m_phi exceeds 64 bits".into()))?;
    Ok((nphi, mphi))
}

/// `delta_Q(y) = B(y, .) / n` as a rational covector on `Y`.
pub fn delta_q(c: &Cover, y: &[BigInt]) -> Result<Vec<BigRational>, CoverError> {
    let r = c.rank();
    if y.len() != r {
        return Err(CoverError::Dimension { expected: r, found: y.len() });
    }
    let n = c.n_big();
    Ok(c.q.gram_b.apply(y).into_iter().map(|v| BigRational::new(v, n.clone())).collect())
}

/// Replaces `Q` by `(n + 1) Q` when `n` is odd and `Q` takes an odd value.
pub fn rectify_odd(c: &Cover) -> Cover {
    if c.n % 2 == 1 && !c.q.is_even() {
        let k = i64::try_from(c.n + 1).expect("degree fits i64");
        Cover { root_datum: c.root_datum.clone(), q: c.q.scaled(k), n: c.n }
    } else {
        c.clone()
    }
}
