//! Spaces of bilinear maps `phi: L x L -> L` cut out by linear identities:
//! `D(L)` (every `phi(x, .)` a derivation), `D_comm(L)` (additionally
//! symmetric) and `C(L)` (every `phi(x, .)` in the centroid).
//!
//! Unknowns are the coefficients `phi(b_a, b_b) = sum_c l_ab^c b_c`. On
//! graded windows the unknowns are split by degree `deg c - deg a - deg b`
//! and each identity is imposed only on triples where every term is
//! representable, so solutions over-approximate restrictions of maps on the
//! infinite algebra.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::SpaceError;
use crate::lie::{accumulate, LieAlgebra};
use crate::linalg::{format_scalar, is_zero_vec, span_basis, Scalar, SparseEliminator};
use crate::structure::{indices_by_degree, PartialAlgebra};

/// Coefficient tensor of a bilinear map; entry `(i * n + j) * n + k` is the
/// coefficient of `b_k` in `phi(b_i, b_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMap {
    dim: usize,
    coeffs: Vec<Scalar>,
}

impl BilinearMap {
    pub fn zero(dim: usize) -> Self {
        BilinearMap {
            dim,
            coeffs: vec![Scalar::zero(); dim * dim * dim],
        }
    }

    pub fn from_flat(dim: usize, coeffs: Vec<Scalar>) -> Self {
        assert_eq!(coeffs.len(), dim * dim * dim, "tensor size mismatch");
        BilinearMap { dim, coeffs }
    }

    /// Builds from `(i, j, k, value)` entries; repeated entries add up.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, Scalar)]) -> Self {
        let mut m = Self::zero(dim);
        for (i, j, k, x) in entries {
            m.coeffs[(i * dim + j) * dim + k] += x;
        }
        m
    }

    /// The bracket of a Lie algebra viewed as a bilinear map.
    pub fn from_bracket(l: &LieAlgebra) -> Self {
        let n = l.dim();
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                for (k, c) in l.bracket_basis(i, j) {
                    m.set(i, j, *k, c.clone());
                }
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.coeffs[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, x: Scalar) {
        let n = self.dim;
        self.coeffs[(i * n + j) * n + k] = x;
    }

    pub fn flat(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (i + 1..n).all(|j| (0..n).all(|k| self.get(i, j, k) == self.get(j, i, k))))
    }

    /// `phi(b_i, b_j)` as a sparse vector.
    pub fn value(&self, i: usize, j: usize) -> Vec<(usize, Scalar)> {
        let n = self.dim;
        let base = (i * n + j) * n;
        (0..n)
            .filter(|k| !self.coeffs[base + k].is_zero())
            .map(|k| (k, self.coeffs[base + k].clone()))
            .collect()
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                let base = (i * n + j) * n;
                for k in 0..n {
                    let c = &self.coeffs[base + k];
                    if !c.is_zero() {
                        out[k] += &ab * c;
                    }
                }
            }
        }
        out
    }

    /// Nonzero entries `(i, j, k, value)` in index order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(f, x)| (f / (n * n), (f / n) % n, f % n, x.clone()))
            .collect()
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &BilinearMap) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }

    pub fn linear_combination(dim: usize, coeffs: &[Scalar], maps: &[BilinearMap]) -> BilinearMap {
        let mut out = BilinearMap::zero(dim);
        for (c, m) in coeffs.iter().zip(maps) {
            if !c.is_zero() {
                out.add_scaled(c, m);
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceKind {
    D,
    Dcomm,
    C,
    Custom,
}

/// Linear space of bilinear maps with an explicit basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMapSpace {
    pub dim: usize,
    pub kind: SpaceKind,
    pub basis: Vec<BilinearMap>,
    /// Degree of each basis element when the basis is homogeneous.
    pub degrees: Option<Vec<i64>>,
}

impl BilinearMapSpace {
    pub fn new(dim: usize, kind: SpaceKind, basis: Vec<BilinearMap>) -> Self {
        BilinearMapSpace {
            dim,
            kind,
            basis,
            degrees: None,
        }
    }

    /// Space spanned by arbitrary maps, re-based canonically (rref of the
    /// flattened tensors).
    pub fn span(dim: usize, kind: SpaceKind, maps: &[BilinearMap]) -> Self {
        let flats: Vec<Vec<Scalar>> = maps.iter().map(|m| m.coeffs.clone()).collect();
        let basis = span_basis(&flats, dim * dim * dim)
            .into_iter()
            .map(|v| BilinearMap::from_flat(dim, v))
            .collect();
        Self::new(dim, kind, basis)
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical (rref) basis of the flattened tensors, for comparisons.
    pub fn canonical_basis(&self) -> Vec<Vec<Scalar>> {
        let flats: Vec<Vec<Scalar>> = self.basis.iter().map(|m| m.coeffs.clone()).collect();
        span_basis(&flats, self.dim * self.dim * self.dim)
    }

    pub fn same_span(&self, other: &BilinearMapSpace) -> bool {
        self.dim == other.dim && self.canonical_basis() == other.canonical_basis()
    }

    pub fn contains(&self, m: &BilinearMap) -> bool {
        let mut flats = self.canonical_basis();
        let before = flats.len();
        flats.push(m.coeffs.clone());
        crate::linalg::rank_of(&flats, self.dim * self.dim * self.dim) == before
    }

    pub fn is_subspace_of(&self, other: &BilinearMapSpace) -> bool {
        let mut flats = other.canonical_basis();
        let before = flats.len();
        flats.extend(self.basis.iter().map(|m| m.coeffs.clone()));
        crate::linalg::rank_of(&flats, self.dim * self.dim * self.dim) == before
    }

    /// Per-degree dimensions when the basis is homogeneous.
    pub fn per_degree(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        if let Some(d) = &self.degrees {
            for g in d {
                *out.entry(*g).or_insert(0) += 1;
            }
        }
        out
    }
}

/// Unknowns of one homogeneous degree: `phi(b_a, b_b)`'s coefficient on
/// `b_c`, with `(a, b)` unordered for symmetric kinds.
struct DegreeUnknowns {
    degree: i64,
    index: HashMap<(usize, usize, usize), usize>,
    list: Vec<(usize, usize, usize)>,
}

struct Assembler<'a, A: PartialAlgebra + ?Sized> {
    alg: &'a A,
    kind: SpaceKind,
    by_degree: BTreeMap<i64, Vec<usize>>,
}

impl<'a, A: PartialAlgebra + ?Sized> Assembler<'a, A> {
    fn symmetric(&self) -> bool {
        self.kind == SpaceKind::Dcomm
    }

    fn pair_key(&self, a: usize, b: usize) -> (usize, usize) {
        if self.symmetric() && a > b {
            (b, a)
        } else {
            (a, b)
        }
    }

    fn outputs(&self, d: i64) -> &[usize] {
        if !self.alg.degree_in_range(d) {
            return &[];
        }
        self.by_degree.get(&d).map_or(&[], Vec::as_slice)
    }

    fn unknowns(&self, degree: i64) -> DegreeUnknowns {
        let n = self.alg.dim();
        let mut list = Vec::new();
        for a in 0..n {
            let start = if self.symmetric() { a } else { 0 };
            for b in start..n {
                let target = self.alg.degree(a) + self.alg.degree(b) + degree;
                for &c in self.outputs(target) {
                    list.push((a, b, c));
                }
            }
        }
        let index = list.iter().enumerate().map(|(v, t)| (*t, v)).collect();
        DegreeUnknowns { degree, index, list }
    }

    /// Solves one homogeneous degree. Returns the kernel basis as maps and
    /// the first uncovered unknown, if any.
    fn solve_degree(&self, u: &DegreeUnknowns) -> (Vec<BilinearMap>, Option<(usize, usize, usize)>) {
        let n = self.alg.dim();
        let ell = u.degree;
        let mut elim = SparseEliminator::new(u.list.len());
        let mut covered: Vec<bool> = vec![false; n * n];
        let var = |a: usize, b: usize, c: usize| -> Option<usize> {
            let (a, b) = self.pair_key(a, b);
            u.index.get(&(a, b, c)).copied()
        };
        for x in 0..n {
            let dx = self.alg.degree(x);
            for y in 0..n {
                let dy = self.alg.degree(y);
                if !self.alg.degree_in_range(dx + dy + ell) {
                    continue;
                }
                for z in 0..n {
                    let dz = self.alg.degree(z);
                    let Some(yz) = self.alg.product(y, z) else { continue };
                    let target = dx + dy + dz + ell;
                    if !self.alg.degree_in_range(target) {
                        continue;
                    }
                    let uses_xz = self.kind != SpaceKind::C;
                    if uses_xz && !self.alg.degree_in_range(dx + dz + ell) {
                        continue;
                    }
                    let (p, q) = self.pair_key(x, y);
                    covered[p * n + q] = true;
                    if uses_xz {
                        let (p, q) = self.pair_key(x, z);
                        covered[p * n + q] = true;
                    }
                    // phi(x, y*z) - phi(x,y)*z - y*phi(x,z), the last term
                    // dropped for the centroid kind
                    let mut rows: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
                    for (p, c) in yz {
                        for &m in self.outputs(target) {
                            if let Some(v) = var(x, *p, m) {
                                accumulate(rows.entry(m).or_default(), v, c.clone());
                            }
                        }
                    }
                    for &k in self.outputs(dx + dy + ell) {
                        let Some(v) = var(x, y, k) else { continue };
                        if let Some(kz) = self.alg.product(k, z) {
                            for (m, c) in kz {
                                accumulate(rows.entry(*m).or_default(), v, -c.clone());
                            }
                        }
                    }
                    if uses_xz {
                        for &k in self.outputs(dx + dz + ell) {
                            let Some(v) = var(x, z, k) else { continue };
                            if let Some(yk) = self.alg.product(y, k) {
                                for (m, c) in yk {
                                    accumulate(rows.entry(*m).or_default(), v, -c.clone());
                                }
                            }
                        }
                    }
                    for row in rows.into_values() {
                        if !row.is_empty() {
                            elim.push(row.into_iter().collect());
                        }
                    }
                }
            }
        }
        let uncovered = u
            .list
            .iter()
            .find(|(a, b, _)| !covered[a * n + b])
            .copied();
        let maps = elim
            .kernel_basis()
            .into_iter()
            .map(|v| {
                let mut m = BilinearMap::zero(n);
                for (val, (a, b, c)) in v.into_iter().zip(&u.list) {
                    if val.is_zero() {
                        continue;
                    }
                    if self.symmetric() && a != b {
                        m.set(*b, *a, *c, val.clone());
                    }
                    m.set(*a, *b, *c, val);
                }
                m
            })
            .collect();
        (maps, uncovered)
    }
}

/// Solves the defining identities of `kind` degree by degree for degrees in
/// `degrees`. The returned basis is homogeneous and ordered by degree.
pub fn solve_space<A: PartialAlgebra + ?Sized>(
    alg: &A,
    kind: SpaceKind,
    degrees: &[i64],
    require_coverage: bool,
) -> Result<BilinearMapSpace, SpaceError> {
    assert!(kind != SpaceKind::Custom, "custom spaces have no defining identities");
    let asm = Assembler {
        alg,
        kind,
        by_degree: indices_by_degree(alg),
    };
    let mut basis = Vec::new();
    let mut basis_degrees = Vec::new();
    for &ell in degrees {
        let u = asm.unknowns(ell);
        if u.list.is_empty() {
            continue;
        }
        let (maps, uncovered) = asm.solve_degree(&u);
        if require_coverage {
            if let Some((a, b, c)) = uncovered {
                return Err(SpaceError::WindowTooSmall {
                    unknown: format!("phi({}, {}) -> {}", alg.label(a), alg.label(b), alg.label(c)),
                    degree: ell,
                });
            }
        }
        basis_degrees.extend(std::iter::repeat(ell).take(maps.len()));
        basis.extend(maps);
    }
    Ok(BilinearMapSpace {
        dim: alg.dim(),
        kind,
        basis,
        degrees: Some(basis_degrees),
    })
}

/// `D(L)`: all bilinear maps whose partial maps `phi(x, .)` are derivations.
pub fn d_space(l: &LieAlgebra) -> BilinearMapSpace {
    solve_space(l, SpaceKind::D, &[0], false).expect("finite algebras need no coverage check")
}

/// `D_comm(L)`: the symmetric elements of `D(L)`.
pub fn dcomm_space(l: &LieAlgebra) -> BilinearMapSpace {
    solve_space(l, SpaceKind::Dcomm, &[0], false).expect("finite algebras need no coverage check")
}

/// `C(L)`: bilinear maps with `phi(x, [y, z]) = [phi(x, y), z]`.
pub fn c_space(l: &LieAlgebra) -> BilinearMapSpace {
    solve_space(l, SpaceKind::C, &[0], false).expect("finite algebras need no coverage check")
}

/// `D(A)` for a (commutative associative) algebra: `a(u, vw) = a(u,v) w + v a(u,w)`.
pub fn d_space_assoc(a: &crate::constructions::CommutativeAlgebra) -> BilinearMapSpace {
    solve_space(a, SpaceKind::D, &[0], false).expect("finite algebras need no coverage check")
}

/// Windowed `D_comm` with homogeneous unknowns of degree `|l| <= degree_bound`.
pub fn windowed_dcomm_space<A: PartialAlgebra + ?Sized>(
    w: &A,
    window_bound: usize,
    degree_bound: i64,
) -> Result<BilinearMapSpace, SpaceError> {
    if degree_bound < 0 || degree_bound > 2 * window_bound as i64 {
        return Err(SpaceError::DegreeBoundTooLarge {
            bound: degree_bound,
            window: window_bound,
        });
    }
    let degrees: Vec<i64> = (-degree_bound..=degree_bound).collect();
    solve_space(w, SpaceKind::Dcomm, &degrees, true)
}

/// Sparse serialized form of a map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    pub entries: Vec<(usize, usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub kind: SpaceKind,
    pub ambient_dim: usize,
    pub dim: usize,
    pub basis: Vec<MapJson>,
}

pub fn map_to_json(m: &BilinearMap, degree: Option<i64>) -> MapJson {
    MapJson {
        degree,
        entries: m
            .entries()
            .into_iter()
            .map(|(i, j, k, x)| (i, j, k, format_scalar(&x)))
            .collect(),
    }
}

pub fn space_to_json(s: &BilinearMapSpace) -> SpaceJson {
    SpaceJson {
        kind: s.kind,
        ambient_dim: s.dim,
        dim: s.len(),
        basis: s
            .basis
            .iter()
            .enumerate()
            .map(|(i, m)| map_to_json(m, s.degrees.as_ref().map(|d| d[i])))
            .collect(),
    }
}
