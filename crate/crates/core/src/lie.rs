//! Finite-dimensional Lie algebras given by structure constants, and their
//! linear invariants: center, derived algebra, derivations, centroid,
//! second cohomology and the Killing form.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::LieError;
use crate::linalg::{
    format_scalar, rank_of, span_basis, Matrix, Scalar, SparseEliminator, SparseVec,
    Subspace,
};

/// Lie algebra over `Q` with `[b_i, b_j] = sum_k c_ij^k b_k`.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    labels: Vec<String>,
    table: Vec<SparseVec>,
    center: OnceLock<Subspace>,
    derived: OnceLock<Subspace>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.table == other.table
    }
}

impl Eq for LieAlgebra {}

pub(crate) fn accumulate(target: &mut BTreeMap<usize, Scalar>, index: usize, value: Scalar) {
    if value.is_zero() {
        return;
    }
    let slot = target.entry(index).or_insert_with(Scalar::zero);
    *slot += value;
    if slot.is_zero() {
        target.remove(&index);
    }
}

pub(crate) fn to_sparse(map: BTreeMap<usize, Scalar>) -> SparseVec {
    map.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

pub(crate) fn sparse_to_dense(v: &[(usize, Scalar)], dim: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); dim];
    for (i, x) in v {
        out[*i] += x;
    }
    out
}

pub(crate) fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

fn render_vector(v: &[(usize, Scalar)], labels: &[String]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(i, x)| format!("{}*{}", format_scalar(x), labels[*i]))
        .collect::<Vec<_>>()
        .join(" + ")
}

impl LieAlgebra {
    /// Builds and validates an algebra from brackets `[b_i, b_j]` with
    /// `i < j`; the remaining entries follow by antisymmetry. Entries with
    /// `i > j` are accepted when consistent with their mirror.
    pub fn from_structure_constants(
        dim: usize,
        labels: Vec<String>,
        brackets: &[(usize, usize, SparseVec)],
    ) -> Result<Self, LieError> {
        if labels.len() != dim {
            return Err(LieError::LabelCount {
                expected: dim,
                found: labels.len(),
            });
        }
        let mut table: Vec<Option<BTreeMap<usize, Scalar>>> = vec![None; dim * dim];
        for (i, j, value) in brackets {
            for &index in [i, j].into_iter().chain(value.iter().map(|(k, _)| k)) {
                if index >= dim {
                    return Err(LieError::IndexOutOfRange { index, dim });
                }
            }
            let mut v = BTreeMap::new();
            for (k, x) in value {
                accumulate(&mut v, *k, x.clone());
            }
            if i == j {
                if !v.is_empty() {
                    return Err(LieError::AntisymmetryViolation(
                        labels[*i].clone(),
                        labels[*j].clone(),
                    ));
                }
                continue;
            }
            let neg: BTreeMap<usize, Scalar> = v.iter().map(|(k, x)| (*k, -x.clone())).collect();
            for (slot, val) in [(i * dim + j, v), (j * dim + i, neg)] {
                match &table[slot] {
                    Some(existing) if *existing != val => {
                        return Err(LieError::AntisymmetryViolation(
                            labels[*i].clone(),
                            labels[*j].clone(),
                        ))
                    }
                    _ => table[slot] = Some(val),
                }
            }
        }
        let table = table
            .into_iter()
            .map(|e| e.map(to_sparse).unwrap_or_default())
            .collect();
        Self::from_table(labels, table)
    }

    /// Builds from a full `dim x dim` table, checking antisymmetry and Jacobi.
    pub fn from_table(labels: Vec<String>, table: Vec<SparseVec>) -> Result<Self, LieError> {
        let dim = labels.len();
        assert_eq!(table.len(), dim * dim, "bracket table has wrong size");
        let alg = LieAlgebra {
            labels,
            table,
            center: OnceLock::new(),
            derived: OnceLock::new(),
        };
        alg.check_antisymmetry()?;
        alg.check_jacobi()?;
        Ok(alg)
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra {
            labels: (1..=n).map(|i| format!("x{i}")).collect(),
            table: vec![Vec::new(); n * n],
            center: OnceLock::new(),
            derived: OnceLock::new(),
        }
    }

    fn check_antisymmetry(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let a = &self.table[i * n + j];
                let b = &self.table[j * n + i];
                let ok = a.len() == b.len()
                    && a.iter().zip(b).all(|((k1, x1), (k2, x2))| k1 == k2 && *x1 == -x2.clone());
                if !ok {
                    return Err(LieError::AntisymmetryViolation(
                        self.labels[i].clone(),
                        self.labels[j].clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = BTreeMap::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, x) in self.bracket_basis(a, b) {
                            for (p, y) in self.bracket_basis(*m, c) {
                                accumulate(&mut acc, *p, x * y);
                            }
                        }
                    }
                    if !acc.is_empty() {
                        return Err(LieError::JacobiViolation {
                            triple: (
                                self.labels[i].clone(),
                                self.labels[j].clone(),
                                self.labels[k].clone(),
                            ),
                            residual: render_vector(&to_sparse(acc), &self.labels),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `[b_i, b_j]` as a sparse vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    /// Upper-triangular nonzero brackets, the serialized form.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, SparseVec)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.bracket_basis(i, j);
                if !v.is_empty() {
                    out.push((i, j, v.to_vec()));
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.bracket_basis(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = num_traits::One::one();
        v
    }

    /// Matrix of `ad b_i`; column `j` holds `[b_i, b_j]`.
    pub fn ad(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for (k, c) in self.bracket_basis(i, j) {
                m[(*k, j)] = c.clone();
            }
        }
        m
    }

    pub fn ad_of(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            let col = self.bracket(x, &self.basis_vector(j));
            for (k, c) in col.into_iter().enumerate() {
                m[(k, j)] = c;
            }
        }
        m
    }

    /// `{x : [x, L] = 0}`.
    pub fn center(&self) -> &Subspace {
        self.center.get_or_init(|| {
            let n = self.dim();
            // x = sum x_i b_i, [x, b_j]_k = sum_i x_i c_ij^k
            let mut elim = SparseEliminator::new(n);
            for j in 0..n {
                let mut rows: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
                for i in 0..n {
                    for (k, c) in self.bracket_basis(i, j) {
                        rows.entry(*k).or_default().push((i, c.clone()));
                    }
                }
                for row in rows.into_values() {
                    elim.push(row);
                }
            }
            Subspace::span(n, &elim.kernel_basis())
        })
    }

    /// `[L, L]`.
    pub fn derived_subalgebra(&self) -> &Subspace {
        self.derived.get_or_init(|| {
            let n = self.dim();
            let vectors: Vec<Vec<Scalar>> = self
                .nonzero_brackets()
                .into_iter()
                .map(|(_, _, v)| sparse_to_dense(&v, n))
                .collect();
            Subspace::span(n, &vectors)
        })
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subalgebra().dim() == self.dim()
    }

    pub fn is_centerless(&self) -> bool {
        self.center().dim() == 0
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    /// Kernel of a linear system in the `n^2` entries of an endomorphism,
    /// variable `i * n + k` being the coefficient of `b_k` in `T(b_i)`.
    fn endomorphism_kernel(&self, equations: impl Fn(usize, usize, &mut dyn FnMut(usize, usize, Scalar))) -> Vec<LinearMap> {
        let n = self.dim();
        let mut elim = SparseEliminator::new(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut rows: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
                equations(i, j, &mut |out, var, coeff| {
                    if !coeff.is_zero() {
                        rows.entry(out).or_default().push((var, coeff));
                    }
                });
                for row in rows.into_values() {
                    elim.push(row);
                }
            }
        }
        elim.kernel_basis()
            .into_iter()
            .map(|v| LinearMap::from_flat(n, &v))
            .collect()
    }

    /// Basis of `Der(L)`.
    pub fn derivation_space(&self) -> Vec<LinearMap> {
        let n = self.dim();
        self.endomorphism_kernel(|i, j, emit| {
            if i >= j {
                return;
            }
            // T[b_i,b_j] - [T b_i, b_j] - [b_i, T b_j]
            for (p, c) in self.bracket_basis(i, j) {
                for m in 0..n {
                    emit(m, p * n + m, c.clone());
                }
            }
            for k in 0..n {
                for (m, c) in self.bracket_basis(k, j) {
                    emit(*m, i * n + k, -c.clone());
                }
                for (m, c) in self.bracket_basis(i, k) {
                    emit(*m, j * n + k, -c.clone());
                }
            }
        })
    }

    /// Span of `ad b_i`, canonical basis.
    pub fn inner_derivation_space(&self) -> Vec<LinearMap> {
        let n = self.dim();
        let flats: Vec<Vec<Scalar>> = (0..n).map(|i| LinearMap::new(self.ad(i)).flatten()).collect();
        span_basis(&flats, n * n)
            .into_iter()
            .map(|v| LinearMap::from_flat(n, &v))
            .collect()
    }

    pub fn all_derivations_inner(&self) -> bool {
        self.derivation_space().len() == self.inner_derivation_space().len()
    }

    pub fn is_derivation(&self, d: &LinearMap) -> bool {
        self.derivation_failure(d).is_none()
    }

    /// First basis pair on which `d` fails the Leibniz rule.
    pub fn derivation_failure(&self, d: &LinearMap) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let bij = sparse_to_dense(self.bracket_basis(i, j), n);
                let lhs = d.apply(&bij);
                let a = self.bracket(&d.image(i), &self.basis_vector(j));
                let b = self.bracket(&self.basis_vector(i), &d.image(j));
                let ok = lhs.iter().zip(a.iter().zip(&b)).all(|(l, (x, y))| *l == x + y);
                if !ok {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_inner(&self, d: &LinearMap) -> bool {
        let n = self.dim();
        let inner: Vec<Vec<Scalar>> = self.inner_derivation_space().iter().map(LinearMap::flatten).collect();
        let space = Subspace::span(n * n, &inner);
        space.contains(&d.flatten())
    }

    /// Basis of the centroid `{g : g[x,y] = [g x, y]}`.
    pub fn centroid(&self) -> Vec<LinearMap> {
        let n = self.dim();
        self.endomorphism_kernel(|i, j, emit| {
            for (p, c) in self.bracket_basis(i, j) {
                for m in 0..n {
                    emit(m, p * n + m, c.clone());
                }
            }
            for k in 0..n {
                for (m, c) in self.bracket_basis(k, j) {
                    emit(*m, i * n + k, -c.clone());
                }
            }
        })
    }

    pub fn is_central(&self) -> bool {
        self.centroid().len() == 1
    }

    /// Basis of `{w : [w x, y] + [x, w y] = 0}`.
    pub fn skew_invariance_kernel(&self) -> Vec<LinearMap> {
        let n = self.dim();
        self.endomorphism_kernel(|i, j, emit| {
            if i > j {
                return;
            }
            for k in 0..n {
                for (m, c) in self.bracket_basis(k, j) {
                    emit(*m, i * n + k, c.clone());
                }
                for (m, c) in self.bracket_basis(i, k) {
                    emit(*m, j * n + k, c.clone());
                }
            }
        })
    }

    fn pair_index(n: usize, i: usize, j: usize) -> usize {
        debug_assert!(i < j);
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    /// Basis of scalar 2-cocycles.
    pub fn two_cocycles(&self) -> Vec<Cocycle2> {
        let n = self.dim();
        let pairs = n * n.saturating_sub(1) / 2;
        let mut elim = SparseEliminator::new(pairs);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut row = Vec::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        // xi([b_a, b_b], b_c)
                        for (p, x) in self.bracket_basis(a, b) {
                            match p.cmp(&c) {
                                std::cmp::Ordering::Less => row.push((Self::pair_index(n, *p, c), x.clone())),
                                std::cmp::Ordering::Greater => row.push((Self::pair_index(n, c, *p), -x.clone())),
                                std::cmp::Ordering::Equal => {}
                            }
                        }
                    }
                    elim.push(row);
                }
            }
        }
        elim.kernel_basis()
            .into_iter()
            .map(|v| {
                let mut m = Matrix::zeros(n, n);
                for i in 0..n {
                    for j in i + 1..n {
                        let x = v[Self::pair_index(n, i, j)].clone();
                        m[(j, i)] = -x.clone();
                        m[(i, j)] = x;
                    }
                }
                Cocycle2 { coefficients: m }
            })
            .collect()
    }

    /// Canonical basis of coboundaries `(x, y) -> f([x, y])`.
    pub fn coboundaries(&self) -> Vec<Cocycle2> {
        let n = self.dim();
        let flats: Vec<Vec<Scalar>> = (0..n)
            .map(|m| {
                let mut c = Matrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        if let Some((_, x)) = self.bracket_basis(i, j).iter().find(|(k, _)| *k == m) {
                            c[(i, j)] = x.clone();
                        }
                    }
                }
                Cocycle2 { coefficients: c }.flatten()
            })
            .collect();
        span_basis(&flats, n * n)
            .into_iter()
            .map(|v| Cocycle2::from_flat(n, &v))
            .collect()
    }

    pub fn h2_dim(&self) -> usize {
        self.two_cocycles().len() - self.coboundaries().len()
    }

    pub fn is_coboundary(&self, xi: &Cocycle2) -> bool {
        let n = self.dim();
        let flats: Vec<Vec<Scalar>> = self.coboundaries().iter().map(Cocycle2::flatten).collect();
        Subspace::span(n * n, &flats).contains(&xi.flatten())
    }

    /// First canonical cocycle basis element that is not a coboundary.
    pub fn pick_nontrivial_cocycle(&self) -> Option<Cocycle2> {
        let n = self.dim();
        let mut cob: Vec<Vec<Scalar>> = self.coboundaries().iter().map(Cocycle2::flatten).collect();
        let base = rank_of(&cob, n * n);
        self.two_cocycles().into_iter().find(|z| {
            cob.push(z.flatten());
            let r = rank_of(&cob, n * n);
            cob.pop();
            r > base
        })
    }

    /// `kappa(b_i, b_j) = tr(ad b_i ad b_j)`.
    pub fn killing_form(&self) -> Matrix {
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad(i)).collect();
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = ads[i].mul(&ads[j]).expect("square").trace();
                k[(j, i)] = t.clone();
                k[(i, j)] = t;
            }
        }
        k
    }
}

/// Endomorphism of the underlying vector space; column `i` is the image of `b_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Self {
        assert_eq!(matrix.rows(), matrix.cols(), "linear map must be square");
        LinearMap { matrix }
    }

    pub fn zero(n: usize) -> Self {
        LinearMap::new(Matrix::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Inverse of [`LinearMap::flatten`].
    pub fn from_flat(n: usize, v: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for k in 0..n {
                m[(k, i)] = v[i * n + k].clone();
            }
        }
        LinearMap::new(m)
    }

    /// Entries ordered as (source `i`, target `k`) -> `i * n + k`.
    pub fn flatten(&self) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for k in 0..n {
                out.push(self.matrix[(k, i)].clone());
            }
        }
        out
    }

    pub fn image(&self, i: usize) -> Vec<Scalar> {
        self.matrix.column(i)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v).expect("dimension checked by caller")
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Antisymmetric scalar 2-cochain `xi(b_i, b_j) = coefficients[(i, j)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    pub coefficients: Matrix,
}

impl Cocycle2 {
    pub fn dim(&self) -> usize {
        self.coefficients.rows()
    }

    pub fn value(&self, i: usize, j: usize) -> &Scalar {
        &self.coefficients[(i, j)]
    }

    pub fn evaluate(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                acc += a * b * self.value(i, j);
            }
        }
        acc
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        let n = self.dim();
        (0..n * n).map(|f| self.coefficients[(f / n, f % n)].clone()).collect()
    }

    pub fn from_flat(n: usize, v: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(n, n);
        for f in 0..n * n {
            m[(f / n, f % n)] = v[f].clone();
        }
        Cocycle2 { coefficients: m }
    }

    /// Checks antisymmetry and the cyclic identity
    /// `xi([x,y],z) + xi([y,z],x) + xi([z,x],y) = 0` on all basis triples.
    pub fn validate(&self, l: &LieAlgebra) -> Result<(), LieError> {
        let n = l.dim();
        if self.dim() != n {
            return Err(crate::error::LinalgError::DimensionMismatch {
                expected: n,
                found: self.dim(),
            }
            .into());
        }
        for i in 0..n {
            for j in i..n {
                if *self.value(i, j) != -self.value(j, i).clone() {
                    return Err(LieError::NotAntisymmetric);
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = Scalar::zero();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (p, x) in l.bracket_basis(a, b) {
                            acc += x * self.value(*p, c);
                        }
                    }
                    if !acc.is_zero() {
                        return Err(LieError::NotACocycle(
                            l.label(i).into(),
                            l.label(j).into(),
                            l.label(k).into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{builtin_algebra, sl_n};
    use crate::linalg::int;

    fn heisenberg() -> LieAlgebra {
        builtin_algebra("heisenberg").unwrap()
    }

    fn sl2() -> LieAlgebra {
        sl_n(2)
    }

    #[test]
    fn jacobi_violation_is_reported() {
        // [[x,y],z] + [[y,z],x] + [[z,x],y] = z - x + y
        let err = LieAlgebra::from_structure_constants(
            3,
            vec!["x".into(), "y".into(), "z".into()],
            &[
                (0, 1, vec![(0, int(1))]),
                (1, 2, vec![(1, int(1))]),
                (0, 2, vec![(2, int(1))]),
            ],
        )
        .unwrap_err();
        match err {
            LieError::JacobiViolation { triple, .. } => {
                assert_eq!(triple, ("x".into(), "y".into(), "z".into()))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn diagonal_bracket_rejected() {
        let err = LieAlgebra::from_structure_constants(1, vec!["x".into()], &[(0, 0, vec![(0, int(1))])]);
        assert!(matches!(err, Err(LieError::AntisymmetryViolation(..))));
    }

    #[test]
    fn center_and_derived() {
        let s = sl2();
        assert_eq!(s.center().dim(), 0);
        assert!(s.is_perfect());
        let h = heisenberg();
        assert_eq!(h.center().basis(), &[vec![int(0), int(0), int(1)]]);
        assert_eq!(h.derived_subalgebra().basis(), &[vec![int(0), int(0), int(1)]]);
        assert!(!h.is_perfect());
        let a = LieAlgebra::abelian(4);
        assert_eq!(a.center().dim(), 4);
        assert_eq!(a.derived_subalgebra().dim(), 0);
        assert!(!a.is_perfect());
    }

    #[test]
    fn derivations() {
        let s = sl2();
        assert_eq!(s.derivation_space().len(), 3);
        assert!(s.all_derivations_inner());
        let a = LieAlgebra::abelian(3);
        assert_eq!(a.derivation_space().len(), 9);
        assert_eq!(a.inner_derivation_space().len(), 0);
        let h = heisenberg();
        assert_eq!(h.inner_derivation_space().len(), 2);
        // Der(heisenberg) = {D : D z = tr(D|span(x,y)) z, D(x), D(y) arbitrary mod z...}: dim 6
        assert_eq!(h.derivation_space().len(), 6);
        for d in h.derivation_space() {
            assert!(h.is_derivation(&d));
        }
        let inner: Vec<Vec<Scalar>> = h.inner_derivation_space().iter().map(LinearMap::flatten).collect();
        let all: Vec<Vec<Scalar>> = h.derivation_space().iter().map(LinearMap::flatten).collect();
        assert!(Subspace::span(9, &inner).is_subspace_of(&Subspace::span(9, &all)));
    }

    #[test]
    fn centroids() {
        let s = sl2();
        assert_eq!(s.centroid().len(), 1);
        assert!(s.is_central());
        assert_eq!(LieAlgebra::abelian(2).centroid().len(), 4);
    }

    #[test]
    fn skew_invariance() {
        assert!(sl2().skew_invariance_kernel().is_empty());
        assert_eq!(LieAlgebra::abelian(2).skew_invariance_kernel().len(), 4);
        let h = heisenberg();
        let k = h.skew_invariance_kernel();
        assert!(!k.is_empty());
        for w in &k {
            for i in 0..3 {
                for j in 0..3 {
                    let a = h.bracket(&w.image(i), &h.basis_vector(j));
                    let b = h.bracket(&h.basis_vector(i), &w.image(j));
                    assert!(a.iter().zip(&b).all(|(x, y)| (x + y).is_zero()));
                }
            }
        }
    }

    #[test]
    fn cohomology() {
        let s = sl2();
        assert_eq!(s.h2_dim(), 0);
        assert!(s.pick_nontrivial_cocycle().is_none());
        let a = LieAlgebra::abelian(2);
        assert_eq!(a.two_cocycles().len(), 1);
        assert_eq!(a.coboundaries().len(), 0);
        assert_eq!(a.h2_dim(), 1);
        let h = heisenberg();
        assert!(h.h2_dim() >= 1);
        for c in h.two_cocycles().iter().chain(&h.coboundaries()) {
            c.validate(&h).unwrap();
        }
        let xi = h.pick_nontrivial_cocycle().unwrap();
        assert!(!h.is_coboundary(&xi));
    }

    #[test]
    fn killing_forms() {
        let k = sl2().killing_form();
        // basis h, e, f
        assert_eq!(k[(0, 0)], int(8));
        assert_eq!(k[(1, 2)], int(4));
        assert_eq!(k[(2, 1)], int(4));
        for (i, j) in [(0, 1), (0, 2), (1, 1), (2, 2)] {
            assert!(k[(i, j)].is_zero());
        }
        assert!(LieAlgebra::abelian(3).killing_form().is_zero());
        assert!(heisenberg().killing_form().is_zero());
    }

    #[test]
    fn killing_form_is_invariant() {
        for l in [sl2(), sl_n(3), heisenberg()] {
            let k = l.killing_form();
            let n = l.dim();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let lhs: Scalar = l.bracket_basis(x, y).iter().map(|(p, c)| c * &k[(*p, z)]).sum();
                        let rhs: Scalar = l.bracket_basis(y, z).iter().map(|(p, c)| c * &k[(x, *p)]).sum();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn sl3_invariants() {
        let s = sl_n(3);
        assert_eq!(s.dim(), 8);
        assert!(s.is_centerless());
        assert!(s.is_perfect());
    }
}
