//! Builders for the algebras under study: `sl_n`, current algebras
//! `L (x) A`, loop and twisted loop windows, Witt windows, extensions by a
//! derivation or a central element, and the affine Kac-Moody window.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{ConstructionError, GradingError, LieError};
use crate::grading::{attach_grading, GradedLieAlgebra, Grading, GradingGroup};
use crate::lie::{accumulate, dense_to_sparse, to_sparse, Cocycle2, LieAlgebra, LinearMap};
use crate::linalg::{int, Scalar, SparseVec};
use crate::structure::PartialAlgebra;

/// `sl_n` in the basis `h_1..h_{n-1}`, `E_ij (i < j)`, `E_ij (i > j)`, with
/// `h_i = E_ii - E_{i+1,i+1}`. For `n = 2` this is `h, e, f`.
pub fn sl_n(n: usize) -> LieAlgebra {
    assert!(n >= 2, "sl_n needs n >= 2");
    // basis elements as sparse n x n matrices
    let mut mats: Vec<BTreeMap<(usize, usize), i64>> = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n - 1 {
        mats.push([((i, i), 1), ((i + 1, i + 1), -1)].into());
        labels.push(if n == 2 { "h".to_string() } else { format!("h{}", i + 1) });
    }
    let mut offdiag = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            offdiag.push((i, j));
        }
    }
    for i in 0..n {
        for j in 0..i {
            offdiag.push((i, j));
        }
    }
    let position: BTreeMap<(usize, usize), usize> = offdiag
        .iter()
        .enumerate()
        .map(|(p, ij)| (*ij, n - 1 + p))
        .collect();
    for (i, j) in &offdiag {
        mats.push([((*i, *j), 1)].into());
        labels.push(match (n, i < j) {
            (2, true) => "e".to_string(),
            (2, false) => "f".to_string(),
            (_, true) => format!("e{}{}", i + 1, j + 1),
            (_, false) => format!("f{}{}", i + 1, j + 1),
        });
    }
    let commutator = |a: &BTreeMap<(usize, usize), i64>, b: &BTreeMap<(usize, usize), i64>| {
        let mut out: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (&(i, k), x) in a {
            for (&(k2, j), y) in b {
                if k == k2 {
                    *out.entry((i, j)).or_insert(0) += x * y;
                }
            }
        }
        for (&(i, k), x) in b {
            for (&(k2, j), y) in a {
                if k == k2 {
                    *out.entry((i, j)).or_insert(0) -= x * y;
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    };
    let dim = mats.len();
    let mut table = vec![Vec::new(); dim * dim];
    for a in 0..dim {
        for b in 0..dim {
            let c = commutator(&mats[a], &mats[b]);
            let mut v: BTreeMap<usize, Scalar> = BTreeMap::new();
            // diagonal part d = sum a_k h_k with a_k = d_1 + ... + d_k
            let mut running = 0;
            for k in 0..n - 1 {
                running += c.get(&(k, k)).copied().unwrap_or(0);
                accumulate(&mut v, k, int(running));
            }
            for (&(i, j), x) in &c {
                if i != j {
                    accumulate(&mut v, position[&(i, j)], int(*x));
                }
            }
            table[a * dim + b] = to_sparse(v);
        }
    }
    LieAlgebra::from_table(labels, table).expect("sl_n structure constants are valid")
}

fn heisenberg() -> LieAlgebra {
    LieAlgebra::from_structure_constants(
        3,
        vec!["x".into(), "y".into(), "z".into()],
        &[(0, 1, vec![(2, Scalar::one())])],
    )
    .expect("heisenberg")
}

/// Two-dimensional non-abelian algebra `[x, y] = y`.
fn affine_line() -> LieAlgebra {
    LieAlgebra::from_structure_constants(2, vec!["x".into(), "y".into()], &[(0, 1, vec![(1, Scalar::one())])])
        .expect("r2")
}

/// Built-in algebra, optionally with a grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Plain(LieAlgebra),
    Graded(GradedLieAlgebra),
}

impl Builtin {
    pub fn algebra(&self) -> &LieAlgebra {
        match self {
            Builtin::Plain(l) => l,
            Builtin::Graded(g) => &g.algebra,
        }
    }

    /// The attached grading, or the trivial `Z/1` grading.
    pub fn graded(&self) -> GradedLieAlgebra {
        match self {
            Builtin::Plain(l) => GradedLieAlgebra {
                algebra: l.clone(),
                grading: Grading::trivial(l.dim()),
            },
            Builtin::Graded(g) => g.clone(),
        }
    }
}

/// Names of the built-in families.
pub const BUILTIN_NAMES: &[&str] = &[
    "sl2", "sl3", "heisenberg", "r2", "abelian<n>", "sl2_z1", "sl3_z1", "sl2_z2", "sl2_root",
];

/// Looks up a built-in family by name: `sl2`, `sl3`, `heisenberg`, `r2`,
/// `abelian<n>` (also `abelian(n)`), `sl2_z1`/`sl3_z1` (trivial `Z/1`
/// grading), `sl2_z2` (`deg h = 0`, `deg e = deg f = 1` mod 2) and
/// `sl2_root` (root grading over `Z`).
pub fn builtin(name: &str) -> Result<Builtin, ConstructionError> {
    let trivially_graded = |l: LieAlgebra| -> Result<Builtin, ConstructionError> {
        let n = l.dim();
        Ok(Builtin::Graded(attach_grading(l, Grading::trivial(n))?))
    };
    match name {
        "sl2" => Ok(Builtin::Plain(sl_n(2))),
        "sl3" => Ok(Builtin::Plain(sl_n(3))),
        "heisenberg" => Ok(Builtin::Plain(heisenberg())),
        "r2" => Ok(Builtin::Plain(affine_line())),
        "sl2_z1" => trivially_graded(sl_n(2)),
        "sl3_z1" => trivially_graded(sl_n(3)),
        "sl2_z2" => Ok(Builtin::Graded(attach_grading(
            sl_n(2),
            Grading::new(GradingGroup::IntegersMod(2), vec![0, 1, 1])?,
        )?)),
        "sl2_root" => Ok(Builtin::Graded(attach_grading(
            sl_n(2),
            Grading::new(GradingGroup::Integers, vec![0, 1, -1])?,
        )?)),
        other => {
            let digits = other
                .strip_prefix("abelian")
                .map(|rest| rest.trim_start_matches('(').trim_end_matches(')'));
            match digits.and_then(|d| d.parse::<usize>().ok()) {
                Some(n) if n >= 1 => Ok(Builtin::Plain(LieAlgebra::abelian(n))),
                _ => Err(ConstructionError::UnknownFamily(other.to_string())),
            }
        }
    }
}

pub fn builtin_algebra(name: &str) -> Result<LieAlgebra, ConstructionError> {
    builtin(name).map(|b| b.algebra().clone())
}

/// Commutative associative unital algebra by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativeAlgebra {
    labels: Vec<String>,
    table: Vec<SparseVec>,
    unit: Vec<Scalar>,
}

impl CommutativeAlgebra {
    pub fn new(labels: Vec<String>, table: Vec<SparseVec>, unit: Vec<Scalar>) -> Result<Self, ConstructionError> {
        let a = CommutativeAlgebra { labels, table, unit };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<(), ConstructionError> {
        let n = self.dim();
        let bad = |s: String| Err(ConstructionError::BadCommutativeAlgebra(s));
        if self.table.len() != n * n || self.unit.len() != n {
            return bad("table or unit has the wrong size".into());
        }
        for i in 0..n {
            for j in 0..n {
                if self.mul_basis(i, j) != self.mul_basis(j, i) {
                    return bad(format!("not commutative at ({}, {})", self.labels[i], self.labels[j]));
                }
                for k in 0..n {
                    let left = self.mul(&self.mul(&self.basis(i), &self.basis(j)), &self.basis(k));
                    let right = self.mul(&self.basis(i), &self.mul(&self.basis(j), &self.basis(k)));
                    if left != right {
                        return bad(format!("not associative at ({}, {}, {})", self.labels[i], self.labels[j], self.labels[k]));
                    }
                }
            }
            if self.mul(&self.unit, &self.basis(i)) != self.basis(i) {
                return bad(format!("unit fails on {}", self.labels[i]));
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

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    fn basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                for (k, c) in self.mul_basis(i, j) {
                    out[*k] += a * b * c;
                }
            }
        }
        out
    }
}

impl PartialAlgebra for CommutativeAlgebra {
    fn dim(&self) -> usize {
        CommutativeAlgebra::dim(self)
    }

    fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    fn degree(&self, _i: usize) -> i64 {
        0
    }

    fn degree_in_range(&self, d: i64) -> bool {
        d == 0
    }

    fn product(&self, i: usize, j: usize) -> Option<&[(usize, Scalar)]> {
        Some(self.mul_basis(i, j))
    }

    fn is_lie(&self) -> bool {
        false
    }
}

fn power_label(p: usize) -> String {
    match p {
        0 => "1".into(),
        1 => "t".into(),
        _ => format!("t^{p}"),
    }
}

/// `Q[t]/(t^n)` with basis `1, t, ..., t^{n-1}`.
pub fn truncated_polynomial_algebra(n: usize) -> Result<CommutativeAlgebra, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::BadBound(0));
    }
    let mut table = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                table[i * n + j] = vec![(i + j, Scalar::one())];
            }
        }
    }
    let mut unit = vec![Scalar::zero(); n];
    unit[0] = Scalar::one();
    CommutativeAlgebra::new((0..n).map(power_label).collect(), table, unit)
}

fn monomials(nvars: usize, order: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == nvars {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(nvars, budget - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, order - 1, &mut Vec::new(), &mut out);
    out.sort_by_key(|m| (m.iter().sum::<u32>(), std::cmp::Reverse(m.clone())));
    out
}

fn variable_names(nvars: usize) -> Vec<String> {
    match nvars {
        1 => vec!["t".into()],
        2 => vec!["s".into(), "t".into()],
        _ => (1..=nvars).map(|i| format!("t{i}")).collect(),
    }
}

fn monomial_label(exps: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// `Q[t_1..t_k]/(t_1..t_k)^order`, basis the monomials of total degree
/// `< order` ordered by degree.
pub fn truncated_polynomial_algebra_in(nvars: usize, order: u32) -> Result<CommutativeAlgebra, ConstructionError> {
    if nvars == 0 || order == 0 {
        return Err(ConstructionError::BadBound(order as usize));
    }
    let basis = monomials(nvars, order);
    let names = variable_names(nvars);
    let position: BTreeMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = basis.len();
    let mut table = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            let prod: Vec<u32> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
            if let Some(&k) = position.get(&prod) {
                table[i * n + j] = vec![(k, Scalar::one())];
            }
        }
    }
    let mut unit = vec![Scalar::zero(); n];
    unit[0] = Scalar::one();
    let labels = basis.iter().map(|m| monomial_label(m, &names)).collect();
    CommutativeAlgebra::new(labels, table, unit)
}

/// The derivation `sum_v w_v t_v d/dt_v` of `truncated_polynomial_algebra_in`,
/// diagonal on monomials.
pub fn weight_derivation(nvars: usize, order: u32, weights: &[i64]) -> LinearMap {
    assert_eq!(weights.len(), nvars, "one weight per variable");
    let basis = monomials(nvars, order);
    let mut m = crate::linalg::Matrix::zeros(basis.len(), basis.len());
    for (i, exps) in basis.iter().enumerate() {
        let w: i64 = exps.iter().zip(weights).map(|(e, w)| *e as i64 * w).sum();
        m[(i, i)] = int(w);
    }
    LinearMap::new(m)
}

/// `id (x) delta` on `L (x) A` for a derivation `delta` of `A`.
pub fn current_derivation(l_dim: usize, delta: &LinearMap) -> LinearMap {
    let m = delta.dim();
    let mut out = crate::linalg::Matrix::zeros(l_dim * m, l_dim * m);
    for i in 0..l_dim {
        for p in 0..m {
            for (q, c) in delta.image(p).into_iter().enumerate() {
                if !c.is_zero() {
                    out[(i * m + q, i * m + p)] = c;
                }
            }
        }
    }
    LinearMap::new(out)
}

/// `L (x) A` with `[x (x) a, y (x) b] = [x, y] (x) ab`; basis index
/// `i * dim A + p` for `b_i (x) a_p`.
pub fn current_algebra(l: &LieAlgebra, a: &CommutativeAlgebra) -> Result<LieAlgebra, ConstructionError> {
    let (n, m) = (l.dim(), a.dim());
    let dim = n * m;
    let mut labels = Vec::with_capacity(dim);
    for i in 0..n {
        for p in 0..m {
            labels.push(if m == 1 {
                l.label(i).to_string()
            } else {
                format!("{}*{}", l.label(i), a.labels()[p])
            });
        }
    }
    let mut table = vec![Vec::new(); dim * dim];
    for i in 0..n {
        for j in 0..n {
            let lij = l.bracket_basis(i, j);
            if lij.is_empty() {
                continue;
            }
            for p in 0..m {
                for q in 0..m {
                    let mut v = BTreeMap::new();
                    for (k, c) in lij {
                        for (r, d) in a.mul_basis(p, q) {
                            accumulate(&mut v, k * m + r, c * d);
                        }
                    }
                    table[(i * m + p) * dim + (j * m + q)] = to_sparse(v);
                }
            }
        }
    }
    Ok(LieAlgebra::from_table(labels, table)?)
}

/// The derivation `t^k d/dt` of `Q[t]/(t^n)` acting on the second factor
/// of `L (x) Q[t]/(t^n)`: `x (x) t^p -> p x (x) t^{p+k-1}`. `k = 1` is the
/// Euler derivation.
pub fn vector_field_derivation(l_dim: usize, n: usize, k: usize) -> LinearMap {
    let mut m = crate::linalg::Matrix::zeros(n, n);
    for p in 1..n {
        let q = p + k - 1;
        if q < n {
            m[(q, p)] = int(p as i64);
        }
    }
    current_derivation(l_dim, &LinearMap::new(m))
}

pub fn euler_derivation(l_dim: usize, n: usize) -> LinearMap {
    vector_field_derivation(l_dim, n, 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionKind {
    SemidirectByDerivation(LinearMap),
    CentralByCocycle(Cocycle2),
}

/// One-dimensional extension `L (+) K w`; the new element is the last basis
/// vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub algebra: LieAlgebra,
    pub base: LieAlgebra,
    pub kind: ExtensionKind,
    pub new_label: String,
    /// Outer derivation, resp. nontrivial cocycle; computed, not asserted.
    pub nontrivial: bool,
}

impl Extension {
    pub fn new_index(&self) -> usize {
        self.base.dim()
    }
}

/// `L (+) K D` with `[D, x] = D(x)`.
pub fn semidirect_by_derivation(l: &LieAlgebra, d: &LinearMap, label: &str) -> Result<Extension, ConstructionError> {
    let n = l.dim();
    if d.dim() != n {
        return Err(ConstructionError::NotADerivation("dimension".into(), "mismatch".into()));
    }
    if let Some((i, j)) = l.derivation_failure(d) {
        return Err(ConstructionError::NotADerivation(l.label(i).into(), l.label(j).into()));
    }
    let mut labels = l.labels().to_vec();
    labels.push(label.to_string());
    let dim = n + 1;
    let mut table = vec![Vec::new(); dim * dim];
    for i in 0..n {
        for j in 0..n {
            table[i * dim + j] = l.bracket_basis(i, j).to_vec();
        }
        let image = dense_to_sparse(&d.image(i));
        table[i * dim + n] = image.iter().map(|(k, x)| (*k, -x.clone())).collect();
        table[n * dim + i] = image;
    }
    let algebra = LieAlgebra::from_table(labels, table)?;
    Ok(Extension {
        algebra,
        base: l.clone(),
        nontrivial: !l.is_inner(d),
        kind: ExtensionKind::SemidirectByDerivation(d.clone()),
        new_label: label.to_string(),
    })
}

/// `L (+) K z` with `{x, y} = [x, y] + xi(x, y) z`.
pub fn central_extension(l: &LieAlgebra, xi: &Cocycle2, label: &str) -> Result<Extension, ConstructionError> {
    xi.validate(l)?;
    let n = l.dim();
    let mut labels = l.labels().to_vec();
    labels.push(label.to_string());
    let dim = n + 1;
    let mut table = vec![Vec::new(); dim * dim];
    for i in 0..n {
        for j in 0..n {
            let mut v = l.bracket_basis(i, j).to_vec();
            let c = xi.value(i, j);
            if !c.is_zero() {
                v.push((n, c.clone()));
            }
            table[i * dim + j] = v;
        }
    }
    let algebra = LieAlgebra::from_table(labels, table)?;
    Ok(Extension {
        algebra,
        base: l.clone(),
        nontrivial: !l.is_coboundary(xi),
        kind: ExtensionKind::CentralByCocycle(xi.clone()),
        new_label: label.to_string(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowKind {
    Loop { modulus: u32 },
    Witt { one_sided: bool },
    KacMoody { modulus: u32 },
}

/// Result of a window bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowBracket<'a> {
    Defined(&'a [(usize, Scalar)]),
    Undefined,
}

/// Degree-truncated slice of a `Z`-graded infinite-dimensional Lie algebra.
/// Brackets whose result degree leaves `[min_degree, max_degree]` are
/// undefined rather than zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraWindow {
    pub kind: WindowKind,
    pub bound: usize,
    labels: Vec<String>,
    degrees: Vec<i64>,
    /// Index in the base algebra, for loop-type elements.
    base_index: Vec<Option<usize>>,
    min_degree: i64,
    max_degree: i64,
    table: Vec<Option<SparseVec>>,
    /// Euler derivation and central element of a Kac-Moody window.
    pub derivation_index: Option<usize>,
    pub central_index: Option<usize>,
}

impl AlgebraWindow {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree_range(&self) -> (i64, i64) {
        (self.min_degree, self.max_degree)
    }

    pub fn base_index(&self, i: usize) -> Option<usize> {
        self.base_index[i]
    }

    /// Window index of `b (x) t^i`.
    pub fn loop_element(&self, base: usize, degree: i64) -> Option<usize> {
        (0..self.dim()).find(|&w| self.base_index[w] == Some(base) && self.degrees[w] == degree)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn bracket(&self, i: usize, j: usize) -> WindowBracket<'_> {
        match &self.table[i * self.dim() + j] {
            Some(v) => WindowBracket::Defined(v),
            None => WindowBracket::Undefined,
        }
    }

    fn in_range(&self, d: i64) -> bool {
        self.min_degree <= d && d <= self.max_degree
    }

    /// Antisymmetry on all defined pairs and Jacobi on every triple whose
    /// full evaluation stays inside the window.
    pub fn validate(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let a = &self.table[i * n + j];
                let b = &self.table[j * n + i];
                let ok = match (a, b) {
                    (None, None) => true,
                    (Some(x), Some(y)) => {
                        x.len() == y.len() && x.iter().zip(y).all(|((k1, c1), (k2, c2))| k1 == k2 && *c1 == -c2.clone())
                    }
                    _ => false,
                };
                if !ok {
                    return Err(LieError::AntisymmetryViolation(self.labels[i].clone(), self.labels[j].clone()));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = BTreeMap::new();
                    let mut exact = true;
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let Some(ab) = &self.table[a * n + b] else {
                            exact = false;
                            break;
                        };
                        for (m, x) in ab {
                            match &self.table[m * n + c] {
                                Some(mc) => {
                                    for (p, y) in mc {
                                        accumulate(&mut acc, *p, x * y);
                                    }
                                }
                                None => exact = false,
                            }
                        }
                        if !self.in_range(self.degrees[a] + self.degrees[b] + self.degrees[c]) {
                            exact = false;
                        }
                    }
                    if exact && !acc.is_empty() {
                        return Err(LieError::JacobiViolation {
                            triple: (self.labels[i].clone(), self.labels[j].clone(), self.labels[k].clone()),
                            residual: format!("{:?}", to_sparse(acc)),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn from_parts(
        kind: WindowKind,
        bound: usize,
        labels: Vec<String>,
        degrees: Vec<i64>,
        base_index: Vec<Option<usize>>,
        range: (i64, i64),
        bracket: impl Fn(usize, usize) -> SparseVec,
    ) -> Result<Self, ConstructionError> {
        let n = labels.len();
        let mut table = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                let d = degrees[i] + degrees[j];
                if range.0 <= d && d <= range.1 {
                    table[i * n + j] = Some(bracket(i, j));
                }
            }
        }
        let w = AlgebraWindow {
            kind,
            bound,
            labels,
            degrees,
            base_index,
            min_degree: range.0,
            max_degree: range.1,
            table,
            derivation_index: None,
            central_index: None,
        };
        w.validate()?;
        Ok(w)
    }
}

impl PartialAlgebra for AlgebraWindow {
    fn dim(&self) -> usize {
        AlgebraWindow::dim(self)
    }

    fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    fn degree_in_range(&self, d: i64) -> bool {
        self.in_range(d)
    }

    fn product(&self, i: usize, j: usize) -> Option<&[(usize, Scalar)]> {
        self.table[i * self.dim() + j].as_deref()
    }
}

fn loop_modulus(g: &GradedLieAlgebra) -> Result<u32, ConstructionError> {
    g.grading.modulus().ok_or_else(|| {
        ConstructionError::InvalidGrading("loop windows need a Z/n grading".into())
    })
}

fn loop_basis(g: &GradedLieAlgebra, n_mod: u32, bound: usize) -> (Vec<String>, Vec<i64>, Vec<Option<usize>>) {
    let nb = bound as i64;
    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    let mut base = Vec::new();
    for i in -nb..=nb {
        for a in 0..g.algebra.dim() {
            if g.grading.degree(a) == i.rem_euclid(n_mod as i64) {
                labels.push(format!("{}*t^{}", g.algebra.label(a), i));
                degrees.push(i);
                base.push(Some(a));
            }
        }
    }
    (labels, degrees, base)
}

/// Window `|i| <= N` of the twisted loop algebra
/// `sum_i L_{i mod n} (x) t^i`.
pub fn loop_window(g: &GradedLieAlgebra, bound: usize) -> Result<AlgebraWindow, ConstructionError> {
    if bound == 0 {
        return Err(ConstructionError::BadBound(0));
    }
    let n_mod = loop_modulus(g)?;
    let (labels, degrees, base) = loop_basis(g, n_mod, bound);
    let lookup: BTreeMap<(usize, i64), usize> = base
        .iter()
        .zip(&degrees)
        .enumerate()
        .map(|(w, (b, d))| ((b.unwrap(), *d), w))
        .collect();
    let nb = bound as i64;
    AlgebraWindow::from_parts(
        WindowKind::Loop { modulus: n_mod },
        bound,
        labels,
        degrees.clone(),
        base.clone(),
        (-nb, nb),
        |i, j| {
            let d = degrees[i] + degrees[j];
            g.algebra
                .bracket_basis(base[i].unwrap(), base[j].unwrap())
                .iter()
                .map(|(k, c)| (lookup[&(*k, d)], c.clone()))
                .collect()
        },
    )
}

/// Window of the Witt algebra `[e_i, e_j] = (j - i) e_{i+j}` with indices
/// `-N..=N`, or `-1..=N` for the one-sided algebra.
pub fn witt_window(bound: usize, one_sided: bool) -> Result<AlgebraWindow, ConstructionError> {
    if bound < 2 {
        return Err(ConstructionError::BadBound(bound));
    }
    let nb = bound as i64;
    let lo = if one_sided { -1 } else { -nb };
    let degrees: Vec<i64> = (lo..=nb).collect();
    let labels = degrees.iter().map(|i| format!("e_{i}")).collect();
    let base = vec![None; degrees.len()];
    let degs = degrees.clone();
    AlgebraWindow::from_parts(WindowKind::Witt { one_sided }, bound, labels, degrees, base, (lo, nb), |i, j| {
        let (a, b) = (degs[i], degs[j]);
        if a == b {
            Vec::new()
        } else {
            vec![((a + b - lo) as usize, int(b - a))]
        }
    })
}

/// Kac-Moody window: `loop_window (+) Q d (+) Q z` with `[d, x t^i] = i x t^i`,
/// `z` central, and the loop bracket twisted by
/// `cocycle_scale * i * delta_{i+j,0} * kappa(x, y) z`, `kappa` the Killing
/// form. `include_derivation = false` drops `d`.
pub fn kac_moody_window_with(
    g: &GradedLieAlgebra,
    bound: usize,
    cocycle_scale: &Scalar,
    include_derivation: bool,
) -> Result<AlgebraWindow, ConstructionError> {
    if bound == 0 {
        return Err(ConstructionError::BadBound(0));
    }
    let n_mod = loop_modulus(g)?;
    let (mut labels, mut degrees, mut base) = loop_basis(g, n_mod, bound);
    let loop_dim = labels.len();
    let lookup: BTreeMap<(usize, i64), usize> = base
        .iter()
        .zip(&degrees)
        .enumerate()
        .map(|(w, (b, d))| ((b.unwrap(), *d), w))
        .collect();
    let d_index = include_derivation.then(|| {
        labels.push("d".into());
        degrees.push(0);
        base.push(None);
        labels.len() - 1
    });
    labels.push("z".into());
    degrees.push(0);
    base.push(None);
    let z_index = labels.len() - 1;
    let kappa = g.algebra.killing_form();
    let nb = bound as i64;
    let degs = degrees.clone();
    let bases = base.clone();
    let mut w = AlgebraWindow::from_parts(
        WindowKind::KacMoody { modulus: n_mod },
        bound,
        labels,
        degrees,
        base,
        (-nb, nb),
        |i, j| {
            if i < loop_dim && j < loop_dim {
                let d = degs[i] + degs[j];
                let (a, b) = (bases[i].unwrap(), bases[j].unwrap());
                let mut v: SparseVec = g
                    .algebra
                    .bracket_basis(a, b)
                    .iter()
                    .map(|(k, c)| (lookup[&(*k, d)], c.clone()))
                    .collect();
                if d == 0 && !kappa[(a, b)].is_zero() {
                    let c = cocycle_scale * int(degs[i]) * &kappa[(a, b)];
                    if !c.is_zero() {
                        v.push((z_index, c));
                    }
                }
                v
            } else if Some(i) == d_index && j < loop_dim {
                if degs[j] == 0 {
                    Vec::new()
                } else {
                    vec![(j, int(degs[j]))]
                }
            } else if Some(j) == d_index && i < loop_dim {
                if degs[i] == 0 {
                    Vec::new()
                } else {
                    vec![(i, int(-degs[i]))]
                }
            } else {
                Vec::new()
            }
        },
    )?;
    w.derivation_index = d_index;
    w.central_index = Some(z_index);
    Ok(w)
}

pub fn kac_moody_window(g: &GradedLieAlgebra, bound: usize) -> Result<AlgebraWindow, ConstructionError> {
    kac_moody_window_with(g, bound, &Scalar::one(), true)
}

/// A `Z/n` grading given by the user, checked against the bracket.
pub fn graded(l: LieAlgebra, group: GradingGroup, degrees: Vec<i64>) -> Result<GradedLieAlgebra, ConstructionError> {
    let grading = Grading::new(group, degrees).map_err(ConstructionError::from)?;
    attach_grading(l, grading).map_err(|e: GradingError| e.into())
}
