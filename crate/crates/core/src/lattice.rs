//! Exact integer matrices and lattices: Smith and Hermite normal forms,
//! congruence sublattices, saturation and quotient invariants.
//!
//! Everything here is arbitrary precision. Sublattices of `Z^r` are stored by
//! a row basis in Hermite normal form, so two sublattices are equal exactly
//! when their stored bases are equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("malformed matrix: {0}")]
    Malformed(String),
    #[error("modulus must be positive")]
    BadModulus,
}

/// Dense integer matrix, row-major.
///
/// Zero-row matrices are allowed; they stand for the basis of the zero
/// sublattice.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = BigInt::from(e);
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Result<Self, LatticeError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LatticeError::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    /// Convenience constructor for literal matrices with at least one row.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(cols, &owned).expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        if self.cols != other.rows {
            return Err(LatticeError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `v M` for a row vector `v`.
    pub fn apply_left(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows, "vector length");
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += c * a;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    /// Exact determinant (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> Result<BigInt, LatticeError> {
        if self.rows != self.cols {
            return Err(LatticeError::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        Ok(sign * &m[(n - 1, n - 1)])
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonEntry {
    Str(String),
    Int(i64),
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rows: Vec<Vec<JsonEntry>> = Vec::deserialize(d)?;
        let cols = rows.first().map_or(0, |r| r.len());
        let mut parsed = Vec::with_capacity(rows.len());
        for r in rows {
            let mut out = Vec::with_capacity(r.len());
            for e in r {
                out.push(match e {
                    JsonEntry::Int(i) => BigInt::from(i),
                    JsonEntry::Str(s) => s.trim().parse::<BigInt>().map_err(D::Error::custom)?,
                });
            }
            parsed.push(out);
        }
        IntMatrix::from_rows(cols, &parsed).map_err(D::Error::custom)
    }
}

/// Result of [`smith_normal_form`]: `u * m * v == s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries of `s`, in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s[(i, i)].clone()).take_while(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

fn smallest_nonzero<I: Iterator<Item = (usize, usize)>>(m: &IntMatrix, cells: I) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (i, j) in cells {
        let a = m[(i, j)].abs();
        if a.is_zero() {
            continue;
        }
        match &best {
            Some((_, b)) if *b <= a => {}
            _ => best = Some(((i, j), a)),
        }
    }
    best.map(|(p, _)| p)
}

/// Smith normal form with unimodular transforms, `U M V = S`.
///
/// Pivots are chosen as the smallest nonzero absolute value in the active
/// block, ties broken by row-major position, so the output is a function of
/// the input alone.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut t = 0;
    while t < r.min(c) {
        let cells = (t..r).flat_map(|i| (t..c).map(move |j| (i, j)));
        let Some((pi, pj)) = smallest_nonzero(&s, cells) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let p = s[(t, t)].clone();
            for i in t + 1..r {
                if !s[(i, t)].is_zero() {
                    let q = -(&s[(i, t)] / &p);
                    s.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                }
            }
            for j in t + 1..c {
                if !s[(t, j)].is_zero() {
                    let q = -(&s[(t, j)] / &p);
                    s.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                }
            }
            let cross = (t..r).map(|i| (i, t)).chain((t + 1..c).map(|j| (t, j)));
            let (bi, bj) = smallest_nonzero(&s, cross).expect("pivot survives reduction");
            let clean = (t + 1..r).all(|i| s[(i, t)].is_zero()) && (t + 1..c).all(|j| s[(t, j)].is_zero());
            if !clean {
                s.swap_rows(t, bi);
                u.swap_rows(t, bi);
                s.swap_cols(t, bj);
                v.swap_cols(t, bj);
                continue;
            }
            // divisibility of the remaining block by the pivot
            let p = s[(t, t)].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !s[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Snf { s, u, v }
}

/// Row-style Hermite normal form: nonzero rows in echelon form, positive
/// pivots, entries above each pivot reduced into `[0, pivot)`. Zero rows are
/// dropped, so the result is a basis of the row lattice.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    let (r, c) = (h.rows, h.cols);
    let mut prow = 0;
    let mut pivots = Vec::new();
    for col in 0..c {
        if prow == r {
            break;
        }
        loop {
            let Some((i, _)) = smallest_nonzero(&h, (prow..r).map(|i| (i, col))) else { break };
            h.swap_rows(prow, i);
            let p = h[(prow, col)].clone();
            let mut done = true;
            for k in prow + 1..r {
                if !h[(k, col)].is_zero() {
                    let q = -(&h[(k, col)].div_floor(&p));
                    h.add_row_multiple(k, prow, &q);
                    if !h[(k, col)].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[(prow, col)].is_zero() {
            continue;
        }
        if h[(prow, col)].is_negative() {
            h.negate_row(prow);
        }
        let p = h[(prow, col)].clone();
        for k in 0..prow {
            let q = -(h[(k, col)].div_floor(&p));
            h.add_row_multiple(k, prow, &q);
        }
        pivots.push(col);
        prow += 1;
    }
    let rows: Vec<Vec<BigInt>> = (0..prow).map(|i| h.row(i).to_vec()).collect();
    IntMatrix::from_rows(c, &rows).expect("consistent width")
}

/// Solves `A x = b` over the integers. Returns a particular solution and a
/// basis of the integer kernel of `A`, or `None` when no integer solution
/// exists.
pub fn solve_integer_system(a: &IntMatrix, b: &[BigInt]) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    assert_eq!(a.rows, b.len(), "right-hand side length");
    let snf = smith_normal_form(a);
    let ub = snf.u.apply(b);
    let diag = snf.diagonal();
    let rank = diag.len();
    let mut z = vec![BigInt::zero(); a.cols];
    for (i, d) in diag.iter().enumerate() {
        let (q, rem) = ub[i].div_rem(d);
        if !rem.is_zero() {
            return None;
        }
        z[i] = q;
    }
    if ub[rank..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let x = snf.v.apply(&z);
    let kernel = (rank..a.cols).map(|j| snf.v.col(j)).collect();
    Some((x, kernel))
}

/// Basis of `{ w : w M = 0 }`.
pub fn left_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    (snf.rank()..m.rows).map(|i| snf.u.row(i).to_vec()).collect()
}

/// Finite abelian group with free part: `Z^free_rank + Z/d_1 + ... + Z/d_k`
/// with `d_1 | d_2 | ... | d_k` and every `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    #[serde(with = "bigint_vec")]
    pub factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { factors: Vec::new(), free_rank: 0 }
    }

    /// Normalizes an arbitrary list of cyclic orders (`0` meaning `Z`).
    pub fn from_diagonal(diag: &[BigInt], extra_free: usize) -> Self {
        let mut factors = Vec::new();
        let mut free_rank = extra_free;
        for d in diag {
            let d = d.abs();
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                factors.push(d);
            }
        }
        // diagonal of an SNF is already a divisibility chain; re-chain otherwise
        let snf = smith_normal_form(&{
            let mut m = IntMatrix::zeros(factors.len(), factors.len());
            for (i, f) in factors.iter().enumerate() {
                m[(i, i)] = f.clone();
            }
            m
        });
        let factors = snf.diagonal().into_iter().filter(|d| !d.is_one()).collect();
        AbelianInvariants { factors, free_rank }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.factors.is_empty()
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn factors_u64(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.to_u64().expect("invariant factor fits u64")).collect()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            k => parts.push(format!("Z^{k}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

pub(crate) mod bigint_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        use serde::de::Error;
        let raw: Vec<super::JsonEntry> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|e| match e {
                super::JsonEntry::Int(i) => Ok(BigInt::from(i)),
                super::JsonEntry::Str(s) => s.parse().map_err(D::Error::custom),
            })
            .collect()
    }
}

/// A sublattice of `Z^ambient_rank`, stored by its HNF row basis.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sublattice(Z^{}, {:?})", self.ambient_rank, self.basis)
    }
}

impl Sublattice {
    /// The lattice spanned by `gens` (rows), which need not be independent.
    pub fn from_generators(ambient_rank: usize, gens: &IntMatrix) -> Result<Self, LatticeError> {
        if gens.cols != ambient_rank {
            return Err(LatticeError::DimensionMismatch { expected: ambient_rank, found: gens.cols });
        }
        Ok(Sublattice { ambient_rank, basis: hermite_normal_form(gens) })
    }

    pub fn from_vectors(ambient_rank: usize, gens: &[Vec<BigInt>]) -> Result<Self, LatticeError> {
        Self::from_generators(ambient_rank, &IntMatrix::from_rows(ambient_rank, gens)?)
    }

    pub fn from_i64_vectors(ambient_rank: usize, gens: &[Vec<i64>]) -> Result<Self, LatticeError> {
        Self::from_generators(ambient_rank, &IntMatrix::from_rows(ambient_rank, gens)?)
    }

    pub fn full(ambient_rank: usize) -> Self {
        Sublattice { ambient_rank, basis: IntMatrix::identity(ambient_rank) }
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Sublattice { ambient_rank, basis: IntMatrix::zeros(0, ambient_rank) }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient_rank
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient_rank {
            return None;
        }
        // basis^T c = v
        solve_integer_system(&self.basis.transpose(), v).map(|(c, _)| c)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        other.basis.row_vecs().iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Sublattice) -> Result<Sublattice, LatticeError> {
        if other.ambient_rank != self.ambient_rank {
            return Err(LatticeError::DimensionMismatch { expected: self.ambient_rank, found: other.ambient_rank });
        }
        let mut gens = self.basis.row_vecs();
        gens.extend(other.basis.row_vecs());
        Sublattice::from_vectors(self.ambient_rank, &gens)
    }

    pub fn intersection(&self, other: &Sublattice) -> Result<Sublattice, LatticeError> {
        if other.ambient_rank != self.ambient_rank {
            return Err(LatticeError::DimensionMismatch { expected: self.ambient_rank, found: other.ambient_rank });
        }
        let (k1, k2) = (self.rank(), other.rank());
        if k1 == 0 || k2 == 0 {
            return Ok(Sublattice::zero(self.ambient_rank));
        }
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs().into_iter().map(|r| r.into_iter().map(|x| -x).collect()));
        let stacked = IntMatrix::from_rows(self.ambient_rank, &rows)?;
        let gens: Vec<Vec<BigInt>> =
            left_kernel(&stacked).into_iter().map(|w| self.basis.apply_left(&w[..k1])).collect();
        Sublattice::from_vectors(self.ambient_rank, &gens)
    }

    pub fn scaled(&self, k: i64) -> Sublattice {
        let k = BigInt::from(k);
        let gens: Vec<Vec<BigInt>> =
            self.basis.row_vecs().into_iter().map(|r| r.into_iter().map(|x| x * &k).collect()).collect();
        Sublattice::from_vectors(self.ambient_rank, &gens).expect("same ambient")
    }

    /// Invariants of `self / sub`; `sub` must be contained in `self`.
    pub fn relative_invariants(&self, sub: &Sublattice) -> Result<AbelianInvariants, LatticeError> {
        if sub.ambient_rank != self.ambient_rank {
            return Err(LatticeError::DimensionMismatch { expected: self.ambient_rank, found: sub.ambient_rank });
        }
        let coords: Option<Vec<Vec<BigInt>>> = sub.basis.row_vecs().iter().map(|r| self.coordinates(r)).collect();
        let coords = coords.ok_or_else(|| LatticeError::Malformed("sublattice not contained".into()))?;
        if coords.is_empty() {
            return Ok(AbelianInvariants::from_diagonal(&[], self.rank()));
        }
        let m = IntMatrix::from_rows(self.rank(), &coords)?;
        let snf = smith_normal_form(&m);
        let diag = snf.diagonal();
        Ok(AbelianInvariants::from_diagonal(&diag, self.rank() - diag.len()))
    }

    /// Basis of the dual lattice `{ x in Q^r : x . y in Z for all y in self }`
    /// written as integer numerators over `denominator`. Requires full rank
    /// and that `denominator * dual` is integral.
    pub fn dual_numerators(&self, denominator: i64) -> Option<IntMatrix> {
        if !self.is_full_rank() {
            return None;
        }
        let r = self.ambient_rank;
        let d = BigInt::from(denominator);
        // Solve basis * X = d * I for X; columns of X are the dual basis.
        let mut cols = Vec::with_capacity(r);
        for j in 0..r {
            let mut e = vec![BigInt::zero(); r];
            e[j] = d.clone();
            let (x, _) = solve_integer_system(&self.basis, &e)?;
            cols.push(x);
        }
        IntMatrix::from_rows(r, &cols).ok()
    }
}

/// `Z^r / sub` as invariant factors plus free rank.
pub fn quotient_invariants(sub: &Sublattice, ambient_rank: usize) -> Result<AbelianInvariants, LatticeError> {
    if sub.ambient_rank != ambient_rank {
        return Err(LatticeError::DimensionMismatch { expected: ambient_rank, found: sub.ambient_rank });
    }
    Sublattice::full(ambient_rank).relative_invariants(sub)
}

/// `{ y in Z^r : f . y = 0 mod n for every row f of functionals }`.
///
/// The rows are the integer numerators of rational covectors with common
/// denominator `modulus`.
pub fn congruence_sublattice(functionals: &IntMatrix, modulus: i64) -> Result<Sublattice, LatticeError> {
    if modulus <= 0 {
        return Err(LatticeError::BadModulus);
    }
    let r = functionals.cols;
    if functionals.rows == 0 {
        return Ok(Sublattice::full(r));
    }
    let n = BigInt::from(modulus);
    let snf = smith_normal_form(functionals);
    // F = U^-1 S V^-1; with z = V^-1 y the conditions decouple.
    let mut gens = Vec::with_capacity(r);
    for j in 0..r {
        let s_j = if j < functionals.rows { snf.s[(j, j)].clone() } else { BigInt::zero() };
        let step = &n / n.gcd(&s_j);
        gens.push(snf.v.col(j).into_iter().map(|x| x * &step).collect::<Vec<_>>());
    }
    Sublattice::from_vectors(r, &gens)
}

/// Smallest sublattice containing `sub` with torsion-free quotient.
pub fn saturate(sub: &Sublattice) -> Sublattice {
    let r = sub.ambient_rank;
    if sub.rank() == 0 {
        return sub.clone();
    }
    let snf = smith_normal_form(&sub.basis);
    // rows of M live in the span of the first `rank` rows of V^-1
    let vinv = solve_inverse(&snf.v).expect("unimodular");
    let gens: Vec<Vec<BigInt>> = (0..snf.rank()).map(|i| vinv.row(i).to_vec()).collect();
    Sublattice::from_vectors(r, &gens).expect("same ambient")
}

/// Inverse of a unimodular matrix.
pub fn solve_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[j] = BigInt::one();
        let (x, _) = solve_integer_system(m, &e)?;
        cols.push(x);
    }
    Some(IntMatrix::from_rows(n, &cols).ok()?.transpose())
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_i64(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}
