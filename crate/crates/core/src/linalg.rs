//! Exact rational linear algebra.
//!
//! Everything downstream (center, derivations, bilinear-map spaces, cocycles)
//! reduces to kernels and spans over `Q`. Dense matrices are used for small
//! problems; [`SparseEliminator`] handles the large constraint systems built
//! from basis triples.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::LinalgError;

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Sparse vector as `(index, value)` pairs sorted by index, no zero values.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_scalar(s: &str) -> Result<Scalar, LinalgError> {
    let s = s.trim();
    let bad = || LinalgError::ParseScalar(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(p, q))
        }
        None => Ok(Scalar::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn bit_size(x: &Scalar) -> u64 {
    x.numer().bits() + x.denom().bits()
}

/// Dense row-major matrix of scalars.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::RaggedRows);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from integer rows; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .expect("ragged integer matrix")
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
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

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| acc + &self[(i, i)])
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &mut self.data[r * self.cols + c]
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

/// Reduced row-echelon form. Among candidate pivot rows the entry with the
/// smallest bit size is chosen.
pub fn rref(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !a[(i, c)].is_zero())
            .min_by_key(|&i| bit_size(&a[(i, c)]));
        let Some(p) = best else { continue };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                if !a[(r, j)].is_zero() {
                    let d = &f * &a[(r, j)];
                    a[(i, j)] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        reduced: a,
        rank: pivots.len(),
        pivot_columns: pivots,
    }
}

/// Canonical basis of the right null space: one vector per free column, with
/// a 1 in that column and zeros in the other free columns.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let Rref {
        reduced,
        pivot_columns,
        ..
    } = rref(m);
    kernel_from_rref(&reduced, &pivot_columns)
}

fn kernel_from_rref(reduced: &Matrix, pivots: &[usize]) -> Vec<Vec<Scalar>> {
    let cols = reduced.cols;
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -reduced[(row, f)].clone();
            }
            v
        })
        .collect()
}

/// A particular solution together with the homogeneous solution space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Vec<Scalar>,
    pub homogeneous_basis: Vec<Vec<Scalar>>,
}

/// Solves `m x = rhs`; `Ok(None)` when the system is inconsistent.
pub fn solve_linear(m: &Matrix, rhs: &[Scalar]) -> Result<Option<LinearSolution>, LinalgError> {
    if rhs.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows,
            found: rhs.len(),
        });
    }
    let mut aug = Matrix::zeros(m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug[(r, c)] = m[(r, c)].clone();
        }
        aug[(r, m.cols)] = rhs[r].clone();
    }
    let red = rref(&aug);
    if red.pivot_columns.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut particular = vec![Scalar::zero(); m.cols];
    for (row, &p) in red.pivot_columns.iter().enumerate() {
        particular[p] = red.reduced[(row, m.cols)].clone();
    }
    Ok(Some(LinearSolution {
        particular,
        homogeneous_basis: kernel_basis(m),
    }))
}

/// Canonical basis (nonzero rows of the rref) of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<Scalar>], ambient: usize) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut elim = SparseEliminator::new(ambient);
    for v in vectors {
        elim.push_dense(v);
    }
    elim.row_basis()
}

pub fn rank_of(vectors: &[Vec<Scalar>], ambient: usize) -> usize {
    let mut elim = SparseEliminator::new(ambient);
    for v in vectors {
        elim.push_dense(v);
    }
    elim.rank()
}

/// Linear subspace of `Q^ambient`, stored as its canonical rref basis so
/// that equal subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        Subspace {
            ambient,
            basis: span_basis(vectors, ambient),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::span(ambient, &Matrix::identity(ambient).to_rows())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut all = self.basis.clone();
        all.push(v.to_vec());
        rank_of(&all, self.ambient) == self.basis.len()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }
}

/// Incremental sparse Gaussian elimination.
///
/// Rows are reduced against the stored pivot rows as they arrive, so the
/// memory footprint is bounded by the rank rather than the number of
/// equations. Each stored row is normalized so its leading entry is 1.
#[derive(Clone, Debug)]
pub struct SparseEliminator {
    cols: usize,
    pivots: BTreeMap<usize, SparseVec>,
}

impl SparseEliminator {
    pub fn new(cols: usize) -> Self {
        SparseEliminator {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn push_dense(&mut self, row: &[Scalar]) -> bool {
        let sparse = row
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        self.push(sparse)
    }

    /// Adds a row (entries in any order; duplicates are summed). Returns
    /// whether it increased the rank.
    pub fn push(&mut self, entries: Vec<(usize, Scalar)>) -> bool {
        let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, x) in entries {
            assert!(c < self.cols, "column {c} out of range {}", self.cols);
            let slot = row.entry(c).or_insert_with(Scalar::zero);
            *slot += x;
            if slot.is_zero() {
                row.remove(&c);
            }
        }
        let mut cursor = 0;
        loop {
            let next = row
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, factor)) = next else { break };
            for (pc, px) in &self.pivots[&c] {
                let slot = row.entry(*pc).or_insert_with(Scalar::zero);
                *slot -= &factor * px;
                if slot.is_zero() {
                    row.remove(pc);
                }
            }
            cursor = c + 1;
        }
        let Some((&lead, lead_val)) = row.iter().next() else {
            return false;
        };
        let inv = lead_val.recip();
        let normalized: SparseVec = row.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        self.pivots.insert(lead, normalized);
        true
    }

    /// Pivot rows brought to fully reduced form.
    fn reduced_rows(&self) -> BTreeMap<usize, SparseVec> {
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (&p, row) in self.pivots.iter().rev() {
            let mut acc: BTreeMap<usize, Scalar> = row.iter().cloned().collect();
            let others: Vec<usize> = acc
                .keys()
                .copied()
                .filter(|c| *c != p && done.contains_key(c))
                .collect();
            for c in others {
                let Some(f) = acc.get(&c).cloned() else { continue };
                for (rc, rx) in &done[&c] {
                    let slot = acc.entry(*rc).or_insert_with(Scalar::zero);
                    *slot -= &f * rx;
                    if slot.is_zero() {
                        acc.remove(rc);
                    }
                }
            }
            done.insert(p, acc.into_iter().collect());
        }
        done
    }

    /// Canonical rref basis of the row space.
    pub fn row_basis(&self) -> Vec<Vec<Scalar>> {
        self.reduced_rows()
            .into_values()
            .map(|row| {
                let mut v = vec![Scalar::zero(); self.cols];
                for (c, x) in row {
                    v[c] = x;
                }
                v
            })
            .collect()
    }

    /// Canonical kernel basis, identical to [`kernel_basis`] of the dense
    /// matrix formed by all pushed rows.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let reduced = self.reduced_rows();
        let mut free_entries: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for (&p, row) in &reduced {
            for (c, x) in row {
                if *c != p {
                    free_entries[*c].push((p, x.clone()));
                }
            }
        }
        (0..self.cols)
            .filter(|c| !reduced.contains_key(c))
            .map(|f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (p, x) in &free_entries[f] {
                    v[*p] = -x.clone();
                }
                v
            })
            .collect()
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Makes the first nonzero entry positive and clears denominators and
/// common factors, giving a primitive integer representative.
pub fn primitive(v: &[Scalar]) -> Vec<Scalar> {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for x in v.iter().filter(|x| !x.is_zero()) {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Scalar::from_integer(lcm.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = ints.iter().find(|x| !x.is_zero()).map_or(1, |x| if x.is_negative() { -1 } else { 1 });
    ints.into_iter()
        .map(|x| Scalar::from_integer(x / &g * BigInt::from(sign)))
        .collect()
}
