//! The quadratic stage: CPA structures as the points of `D_comm` on which
//! `phi([x,y],z) = phi(x,phi(y,z)) - phi(y,phi(x,z))` holds, certified by
//! Gröbner bases over the coefficient space.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::bilinear::{dcomm_space, map_to_json, windowed_dcomm_space, BilinearMap, BilinearMapSpace, MapJson, SpaceKind};
use crate::constructions::{AlgebraWindow, Extension, ExtensionKind};
use crate::error::CpaError;
use crate::identities::{check_left_commuting, check_linear_identities, check_post_lie_identity, homogeneous_parts, IdentityViolation};
use crate::lie::{LieAlgebra, LinearMap};
use crate::linalg::{format_scalar, solve_linear, Matrix, Scalar, SparseEliminator};
use crate::poly::{
    radical_linear_forms, variety_equals_affine_subspace, variety_is_origin_only, Budget, Monomial, PolyIdeal,
    Polynomial,
};
use crate::structure::PartialAlgebra;

/// Degree bound used on a window of half-width `n` when none is given.
pub fn default_degree_bound(window_bound: usize) -> i64 {
    window_bound as i64
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// Largest `|deg|` of admitted homogeneous components (windows only).
    pub degree_bound: Option<i64>,
    pub budget: Budget,
    /// Expected solution space, tried before the generic certificates.
    pub candidate: Option<Vec<BilinearMap>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    ZeroOnly,
    LinearSpace(Vec<BilinearMap>),
    Inconclusive,
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::ZeroOnly => "ZeroOnly",
            Verdict::LinearSpace(_) => "LinearSpace",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

/// Evidence backing a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `D_comm` is zero.
    NoUnknowns,
    /// Every equation vanishes identically on `D_comm`.
    EmptyIdeal,
    /// Reduced Gröbner basis whose variety is the origin.
    OriginOnly { groebner: Vec<Polynomial> },
    /// The variety is the span of these coefficient vectors: the ideal
    /// vanishes on them and the defining forms lie in its radical.
    Subspace { spanning: Vec<Vec<Scalar>> },
    /// No certificate found; the reduced basis is attached.
    Unresolved { groebner: Vec<Polynomial> },
}

#[derive(Clone, Debug)]
pub struct CpaReport {
    pub dim: usize,
    /// `(window half-width, degree bound)` for windowed solves.
    pub window: Option<(usize, i64)>,
    pub dcomm: BilinearMapSpace,
    pub ideal: PolyIdeal,
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub witnesses: Vec<BilinearMap>,
    pub elapsed: Duration,
}

impl CpaReport {
    pub fn dcomm_dim(&self) -> usize {
        self.dcomm.len()
    }

    pub fn solution_dim(&self) -> usize {
        match &self.verdict {
            Verdict::ZeroOnly => 0,
            Verdict::LinearSpace(b) => b.len(),
            Verdict::Inconclusive => self.witnesses.len(),
        }
    }

    pub fn solution_space(&self) -> Option<BilinearMapSpace> {
        match &self.verdict {
            Verdict::ZeroOnly => Some(BilinearMapSpace::new(self.dim, SpaceKind::Custom, Vec::new())),
            Verdict::LinearSpace(b) => Some(BilinearMapSpace::new(self.dim, SpaceKind::Custom, b.clone())),
            Verdict::Inconclusive => None,
        }
    }
}

/// Evaluation tables of the basis maps: `table[a][i * n + j] = phi_a(b_i, b_j)`.
fn value_tables(space: &BilinearMapSpace) -> Vec<Vec<Vec<(usize, Scalar)>>> {
    let n = space.dim;
    space
        .basis
        .iter()
        .map(|m| {
            let mut t = vec![Vec::new(); n * n];
            for (i, j, k, x) in m.entries() {
                t[i * n + j].push((k, x));
            }
            t
        })
        .collect()
}

fn basis_degrees<A: PartialAlgebra + ?Sized>(alg: &A, space: &BilinearMapSpace) -> Vec<i64> {
    match &space.degrees {
        Some(d) => d.clone(),
        None => space
            .basis
            .iter()
            .map(|m| homogeneous_parts(alg, m).keys().next().copied().unwrap_or(0))
            .collect(),
    }
}

struct QuadraticAssembly<'a, A: PartialAlgebra + ?Sized> {
    alg: &'a A,
    tables: Vec<Vec<Vec<(usize, Scalar)>>>,
    by_degree: BTreeMap<i64, Vec<usize>>,
    degrees: &'a BTreeSet<i64>,
}

impl<A: PartialAlgebra + ?Sized> QuadraticAssembly<'_, A> {
    /// Whether every term of the degree-`m` instance on `(x, y, z)` that an
    /// admitted component could contribute is representable.
    fn exact(&self, x: usize, y: usize, z: usize, m: i64, linear: bool) -> bool {
        let (dx, dy, dz) = (self.alg.degree(x), self.alg.degree(y), self.alg.degree(z));
        if !self.alg.degree_in_range(dx + dy + dz + m) {
            return false;
        }
        if linear && self.degrees.contains(&m) && self.alg.product(x, y).is_none() {
            return false;
        }
        self.degrees.iter().all(|&l| {
            let s = m - l;
            !self.degrees.contains(&s)
                || (self.alg.degree_in_range(dy + dz + s) && self.alg.degree_in_range(dx + dz + l))
        })
    }

    /// `phi([x,y],z) - phi(x,phi(y,z)) + phi(y,phi(x,z))` in degree `m`, one
    /// polynomial per output coordinate; the bracket term only if `linear`.
    fn instance(&self, x: usize, y: usize, z: usize, m: i64, linear: bool, nvars: usize) -> Vec<Polynomial> {
        let n = self.alg.dim();
        let mut out: BTreeMap<usize, BTreeMap<Vec<u32>, Scalar>> = BTreeMap::new();
        let mut add = |k: usize, vars: &[usize], c: Scalar| {
            let mut e = vec![0u32; nvars];
            for v in vars {
                e[*v] += 1;
            }
            let slot = out.entry(k).or_default().entry(e).or_insert_with(Scalar::zero);
            *slot += c;
        };
        if linear {
            if let (Some(xy), Some(list)) = (self.alg.product(x, y), self.by_degree.get(&m)) {
                for &a in list {
                    for (p, c) in xy {
                        for (k, v) in &self.tables[a][p * n + z] {
                            add(*k, &[a], c * v);
                        }
                    }
                }
            }
        }
        for (&s, bs) in &self.by_degree {
            let Some(as_) = self.by_degree.get(&(m - s)) else { continue };
            for &b in bs {
                for &a in as_ {
                    for (p, c) in &self.tables[b][y * n + z] {
                        for (k, v) in &self.tables[a][x * n + p] {
                            add(*k, &[a, b], -(c * v));
                        }
                    }
                    for (p, c) in &self.tables[b][x * n + z] {
                        for (k, v) in &self.tables[a][y * n + p] {
                            add(*k, &[a, b], c * v);
                        }
                    }
                }
            }
        }
        out.into_values()
            .map(|terms| {
                Polynomial::from_terms(
                    nvars,
                    terms
                        .into_iter()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(e, c)| (Monomial::from_exponents(e), c))
                        .collect(),
                )
            })
            .filter(|p| !p.is_zero())
            .collect()
    }
}

fn assemble<A: PartialAlgebra + ?Sized>(
    alg: &A,
    space: &BilinearMapSpace,
    degrees: &BTreeSet<i64>,
    linear: bool,
) -> PolyIdeal {
    let nvars = space.len();
    if nvars == 0 {
        return PolyIdeal::new(0, Vec::new());
    }
    let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (a, d) in basis_degrees(alg, space).into_iter().enumerate() {
        by_degree.entry(d).or_default().push(a);
    }
    let asm = QuadraticAssembly {
        alg,
        tables: value_tables(space),
        by_degree,
        degrees,
    };
    let mut sums: BTreeSet<i64> = degrees.iter().flat_map(|a| degrees.iter().map(move |b| a + b)).collect();
    if linear {
        sums.extend(degrees.iter().copied());
    }
    let n = alg.dim();
    let mut seen: HashSet<Polynomial> = HashSet::new();
    let mut generators = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for &m in &sums {
                    if !asm.exact(x, y, z, m, linear) {
                        continue;
                    }
                    for p in asm.instance(x, y, z, m, linear, nvars) {
                        let p = p.monic();
                        if seen.insert(p.clone()) {
                            generators.push(p);
                        }
                    }
                }
            }
        }
    }
    PolyIdeal::new(nvars, generators)
}

/// Eq. (3) for `phi = sum_a c_a phi_a` over a basis of `D_comm`, imposed on
/// every basis triple and degree where all terms are representable given
/// admitted component degrees `degrees`.
pub fn cpa_quadratic_ideal<A: PartialAlgebra + ?Sized>(
    alg: &A,
    dcomm: &BilinearMapSpace,
    degrees: &BTreeSet<i64>,
) -> PolyIdeal {
    assemble(alg, dcomm, degrees, true)
}

/// `phi(x, phi(y, z)) = phi(y, phi(x, z))` over a basis of `D_comm(L)`.
pub fn left_commuting_ideal(l: &LieAlgebra, dcomm: &BilinearMapSpace) -> PolyIdeal {
    assemble(l, dcomm, &[0].into(), false)
}

/// Checks commutativity, the derivation rule and the post-Lie identity.
/// `degrees` are the admitted component degrees for the exactness test;
/// by default those present in `phi`.
pub fn verify_cpa<A: PartialAlgebra + ?Sized>(
    alg: &A,
    phi: &BilinearMap,
    degrees: Option<&BTreeSet<i64>>,
) -> Result<(), IdentityViolation> {
    if phi.dim() != alg.dim() {
        return Err(IdentityViolation {
            identity: "dimension",
            triple: Vec::new(),
            degree: 0,
            residual: format!("map has dimension {}, algebra {}", phi.dim(), alg.dim()),
        });
    }
    check_linear_identities(alg, phi, SpaceKind::Dcomm)?;
    let present: BTreeSet<i64> = homogeneous_parts(alg, phi).keys().copied().chain([0]).collect();
    check_post_lie_identity(alg, phi, degrees.unwrap_or(&present))
}

fn combination(space: &BilinearMapSpace, coords: &[Scalar]) -> BilinearMap {
    BilinearMap::linear_combination(space.dim, coords, &space.basis)
}

/// Coordinates of `maps` in the basis of `space`, or `None` if some map lies
/// outside it.
fn coordinates(space: &BilinearMapSpace, maps: &[BilinearMap]) -> Option<Vec<Vec<Scalar>>> {
    if space.is_empty() {
        return maps.iter().all(BilinearMap::is_zero).then(Vec::new);
    }
    let columns: Vec<Vec<Scalar>> = space.basis.iter().map(|m| m.flat().to_vec()).collect();
    let a = Matrix::from_columns(space.dim * space.dim * space.dim, &columns);
    maps.iter()
        .map(|m| {
            solve_linear(&a, m.flat())
                .ok()
                .flatten()
                .map(|s| s.particular)
        })
        .collect()
}

/// Basis vectors `e_a` that solve the system, in basis order.
fn basis_solutions(ideal: &PolyIdeal) -> Vec<Vec<Scalar>> {
    let n = ideal.nvars();
    (0..n)
        .map(|a| {
            let mut e = vec![Scalar::zero(); n];
            e[a] = Scalar::one();
            e
        })
        .filter(|e| ideal.generators().iter().all(|g| g.evaluate(e).is_zero()))
        .collect()
}

fn certify(
    ideal: &PolyIdeal,
    candidate: Option<&[Vec<Scalar>]>,
    budget: &Budget,
) -> Result<(Option<Vec<Vec<Scalar>>>, Certificate), CpaError> {
    let n = ideal.nvars();
    if n == 0 {
        return Ok((None, Certificate::NoUnknowns));
    }
    if ideal.is_zero_ideal() {
        let all = (0..n)
            .map(|a| {
                let mut e = vec![Scalar::zero(); n];
                e[a] = Scalar::one();
                e
            })
            .collect();
        return Ok((Some(all), Certificate::EmptyIdeal));
    }
    if let Some(spanning) = candidate {
        if !spanning.is_empty() && variety_equals_affine_subspace(ideal, spanning, budget)? {
            return Ok((Some(spanning.to_vec()), Certificate::Subspace { spanning: spanning.to_vec() }));
        }
    }
    if variety_is_origin_only(ideal, budget)? {
        return Ok((None, Certificate::OriginOnly { groebner: ideal.groebner(budget)?.to_vec() }));
    }
    let forms = radical_linear_forms(ideal, budget)?;
    let mut elim = SparseEliminator::new(n);
    for f in &forms {
        elim.push_dense(f);
    }
    let spanning = elim.kernel_basis();
    if !spanning.is_empty() && variety_equals_affine_subspace(ideal, &spanning, budget)? {
        return Ok((Some(spanning.clone()), Certificate::Subspace { spanning }));
    }
    Ok((None, Certificate::Unresolved { groebner: ideal.groebner(budget)?.to_vec() }))
}

fn solve_on<A: PartialAlgebra + ?Sized>(
    alg: &A,
    dcomm: BilinearMapSpace,
    degrees: BTreeSet<i64>,
    window: Option<(usize, i64)>,
    opts: &SolveOptions,
    start: Instant,
) -> Result<CpaReport, CpaError> {
    let ideal = cpa_quadratic_ideal(alg, &dcomm, &degrees);
    let candidate = match &opts.candidate {
        Some(maps) => coordinates(&dcomm, maps),
        None => None,
    };
    let (solutions, certificate) = certify(&ideal, candidate.as_deref(), &opts.budget)?;
    let (verdict, witnesses) = match (&certificate, solutions) {
        (Certificate::Unresolved { .. }, _) => {
            let w = basis_solutions(&ideal).iter().map(|c| combination(&dcomm, c)).collect();
            (Verdict::Inconclusive, w)
        }
        (_, Some(spanning)) => {
            let maps: Vec<BilinearMap> = spanning.iter().map(|c| combination(&dcomm, c)).collect();
            let basis = BilinearMapSpace::span(alg.dim(), SpaceKind::Custom, &maps).basis;
            (Verdict::LinearSpace(basis.clone()), basis)
        }
        (_, None) => (Verdict::ZeroOnly, Vec::new()),
    };
    for w in &witnesses {
        if let Err(v) = verify_cpa(alg, w, Some(&degrees)) {
            return Err(CpaError::Unverified(v.to_string()));
        }
    }
    Ok(CpaReport {
        dim: alg.dim(),
        window,
        dcomm,
        ideal,
        verdict,
        certificate,
        witnesses,
        elapsed: start.elapsed(),
    })
}

/// Full pipeline on a finite-dimensional Lie algebra.
pub fn cpa_solve(l: &LieAlgebra, opts: &SolveOptions) -> Result<CpaReport, CpaError> {
    let start = Instant::now();
    let dcomm = dcomm_space(l);
    solve_on(l, dcomm, [0].into(), None, opts, start)
}

/// Windowed pipeline: homogeneous components of degree `|l| <= B` with
/// constraints only on exact instances. A `ZeroOnly` verdict rules out
/// nonzero CPA structures of degree at most `B` on the full algebra whose
/// restriction is nonzero on the window.
pub fn cpa_solve_window(w: &AlgebraWindow, opts: &SolveOptions) -> Result<CpaReport, CpaError> {
    let start = Instant::now();
    let b = opts.degree_bound.unwrap_or_else(|| default_degree_bound(w.bound));
    let dcomm = windowed_dcomm_space(w, w.bound, b)?;
    solve_on(w, dcomm, (-b..=b).collect(), Some((w.bound, b)), opts, start)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionC {
    HoldsByCorollary,
    HoldsByDirectCheck,
    Fails(BilinearMap),
    Inconclusive(Vec<Polynomial>),
}

#[derive(Clone, Debug)]
pub struct ConditionCReport {
    pub verdict: ConditionC,
    pub center_dim: usize,
    pub derivation_dim: usize,
    pub inner_derivation_dim: usize,
    pub skew_kernel_dim: usize,
}

/// Condition (C): every `phi` in `D_comm(L)` with `phi(x, phi(y, z)) =
/// phi(y, phi(x, z))` vanishes. Tries the sufficient linear checks first,
/// then the direct quadratic system.
pub fn check_condition_c(l: &LieAlgebra, budget: &Budget) -> Result<ConditionCReport, CpaError> {
    let center_dim = l.center().dim();
    let derivation_dim = l.derivation_space().len();
    let inner_derivation_dim = l.inner_derivation_space().len();
    let skew_kernel_dim = l.skew_invariance_kernel().len();
    let report = |verdict| ConditionCReport {
        verdict,
        center_dim,
        derivation_dim,
        inner_derivation_dim,
        skew_kernel_dim,
    };
    if center_dim == 0 && derivation_dim == inner_derivation_dim && skew_kernel_dim == 0 {
        return Ok(report(ConditionC::HoldsByCorollary));
    }
    let dcomm = dcomm_space(l);
    let ideal = left_commuting_ideal(l, &dcomm);
    if dcomm.is_empty() || variety_is_origin_only(&ideal, budget)? {
        return Ok(report(ConditionC::HoldsByDirectCheck));
    }
    for c in basis_solutions(&ideal) {
        let phi = combination(&dcomm, &c);
        if check_linear_identities(l, &phi, SpaceKind::Dcomm).is_ok() && check_left_commuting(l, &phi).is_ok() {
            return Ok(report(ConditionC::Fails(phi)));
        }
    }
    let (solutions, _) = certify(&ideal, None, budget)?;
    if let Some(spanning) = solutions {
        if let Some(c) = spanning.first() {
            return Ok(report(ConditionC::Fails(combination(&dcomm, c))));
        }
    }
    Ok(report(ConditionC::Inconclusive(ideal.groebner(budget)?.to_vec())))
}

/// `z`-valued symmetric maps vanishing when an argument lies in the span of
/// all products and `z`; the prediction for CPA structures on a nontrivial
/// central extension.
pub fn predicted_central_space<A: PartialAlgebra + ?Sized>(alg: &A, z: usize) -> BilinearMapSpace {
    let n = alg.dim();
    let mut derived = SparseEliminator::new(n);
    derived.push(vec![(z, Scalar::one())]);
    for i in 0..n {
        for j in i + 1..n {
            if let Some(p) = alg.product(i, j) {
                if !p.is_empty() {
                    derived.push(p.to_vec());
                }
            }
        }
    }
    // functionals vanishing on the derived span
    let rows = derived.row_basis();
    let mut annihilator = SparseEliminator::new(n);
    for r in &rows {
        annihilator.push_dense(r);
    }
    let forms = annihilator.kernel_basis();
    let mut basis = Vec::new();
    for (i, f) in forms.iter().enumerate() {
        for g in &forms[i..] {
            let mut m = BilinearMap::zero(n);
            for u in 0..n {
                for v in 0..n {
                    let x = &f[u] * &g[v] + &g[u] * &f[v];
                    if !x.is_zero() {
                        m.set(u, v, z, x);
                    }
                }
            }
            basis.push(m);
        }
    }
    BilinearMapSpace::span(n, SpaceKind::Custom, &basis)
}

/// The predicted CPA space of a central extension `L (+) K z`, after
/// validating the hypotheses: `L` centerless, every CPA structure on `L`
/// zero, the extension nontrivial.
pub fn lemma2_predicted_space(ext: &Extension, opts: &SolveOptions) -> Result<BilinearMapSpace, CpaError> {
    let ExtensionKind::CentralByCocycle(_) = &ext.kind else {
        return Err(CpaError::HypothesisViolated("not a central extension".into()));
    };
    if let Some(v) = ext.base.center().basis().first() {
        return Err(CpaError::HypothesisViolated(format!(
            "base has nonzero center element {}",
            describe_vector(&ext.base, v)
        )));
    }
    let report = cpa_solve(&ext.base, opts)?;
    if report.verdict != Verdict::ZeroOnly {
        return Err(CpaError::HypothesisViolated(format!(
            "base admits CPA structures beyond zero (verdict {})",
            report.verdict.tag()
        )));
    }
    if !ext.nontrivial {
        return Err(CpaError::HypothesisViolated("cocycle is a coboundary".into()));
    }
    Ok(predicted_central_space(&ext.algebra, ext.new_index()))
}

fn describe_vector(l: &LieAlgebra, v: &[Scalar]) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| format!("{}*{}", format_scalar(x), l.label(i)))
        .collect();
    parts.join(" + ")
}

/// A bilinear map on `L (+) K w` split along the direct sum:
/// `Phi(x,y) = phi(x,y) + lambda(x,y) w`, `Phi(x,w) = psi(x) + mu(x) w`,
/// `Phi(w,x) = psi_left(x) + mu_left(x) w`, `Phi(w,w) = a + eta w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDecomposition {
    pub phi: BilinearMap,
    pub lambda: Matrix,
    pub psi: LinearMap,
    pub mu: Vec<Scalar>,
    pub psi_left: LinearMap,
    pub mu_left: Vec<Scalar>,
    pub a: Vec<Scalar>,
    pub eta: Scalar,
}

impl ExtensionDecomposition {
    pub fn reassemble(&self) -> BilinearMap {
        let n = self.phi.dim();
        let w = n;
        let mut out = BilinearMap::zero(n + 1);
        for (i, j, k, x) in self.phi.entries() {
            out.set(i, j, k, x);
        }
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, w, self.lambda[(i, j)].clone());
            }
            for k in 0..n {
                out.set(i, w, k, self.psi.matrix[(k, i)].clone());
                out.set(w, i, k, self.psi_left.matrix[(k, i)].clone());
            }
            out.set(i, w, w, self.mu[i].clone());
            out.set(w, i, w, self.mu_left[i].clone());
            out.set(w, w, i, self.a[i].clone());
        }
        out.set(w, w, w, self.eta.clone());
        out
    }
}

/// Splits `Phi` along `L (+) K w` where `w` is the last basis vector.
pub fn decompose_along_last(phi: &BilinearMap) -> ExtensionDecomposition {
    let n = phi.dim() - 1;
    let w = n;
    let mut base = BilinearMap::zero(n);
    let mut lambda = Matrix::zeros(n, n);
    let mut psi = Matrix::zeros(n, n);
    let mut psi_left = Matrix::zeros(n, n);
    let mut mu = vec![Scalar::zero(); n];
    let mut mu_left = vec![Scalar::zero(); n];
    let mut a = vec![Scalar::zero(); n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                base.set(i, j, k, phi.get(i, j, k).clone());
            }
            lambda[(i, j)] = phi.get(i, j, w).clone();
        }
        for k in 0..n {
            psi[(k, i)] = phi.get(i, w, k).clone();
            psi_left[(k, i)] = phi.get(w, i, k).clone();
        }
        mu[i] = phi.get(i, w, w).clone();
        mu_left[i] = phi.get(w, i, w).clone();
        a[i] = phi.get(w, w, i).clone();
    }
    ExtensionDecomposition {
        phi: base,
        lambda,
        psi: LinearMap::new(psi),
        mu,
        psi_left: LinearMap::new(psi_left),
        mu_left,
        a,
        eta: phi.get(w, w, w).clone(),
    }
}

pub fn decompose_extension_map(phi: &BilinearMap, ext: &Extension) -> ExtensionDecomposition {
    assert_eq!(phi.dim(), ext.algebra.dim(), "map and extension dimensions differ");
    decompose_along_last(phi)
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateJson {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub groebner: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub spanning: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportJson {
    pub verdict: &'static str,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<i64>,
    pub dcomm_dim: usize,
    pub dcomm_per_degree: BTreeMap<i64, usize>,
    pub solution_dim: usize,
    pub solution_basis: Vec<MapJson>,
    pub witnesses: Vec<MapJson>,
    pub ideal: Vec<String>,
    pub certificate: CertificateJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

fn map_json<A: PartialAlgebra + ?Sized>(alg: &A, m: &BilinearMap) -> MapJson {
    let parts = homogeneous_parts(alg, m);
    let degree = if parts.len() == 1 { parts.keys().next().copied() } else { None };
    map_to_json(m, degree)
}

/// JSON view of a report. Timing is included only on request so that
/// identical runs produce identical output.
pub fn report_to_json<A: PartialAlgebra + ?Sized>(alg: &A, report: &CpaReport, include_timing: bool) -> ReportJson {
    let strings = |v: &[Polynomial]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let certificate = match &report.certificate {
        Certificate::NoUnknowns => CertificateJson { kind: "no-unknowns", groebner: vec![], spanning: vec![] },
        Certificate::EmptyIdeal => CertificateJson { kind: "empty-ideal", groebner: vec![], spanning: vec![] },
        Certificate::OriginOnly { groebner } => CertificateJson {
            kind: "origin-only",
            groebner: strings(groebner),
            spanning: vec![],
        },
        Certificate::Subspace { spanning } => CertificateJson {
            kind: "subspace",
            groebner: vec![],
            spanning: spanning.iter().map(|v| v.iter().map(format_scalar).collect()).collect(),
        },
        Certificate::Unresolved { groebner } => CertificateJson {
            kind: "unresolved",
            groebner: strings(groebner),
            spanning: vec![],
        },
    };
    let basis = match &report.verdict {
        Verdict::LinearSpace(b) => b.iter().map(|m| map_json(alg, m)).collect(),
        _ => Vec::new(),
    };
    ReportJson {
        verdict: report.verdict.tag(),
        dim: report.dim,
        window_bound: report.window.map(|w| w.0),
        degree_bound: report.window.map(|w| w.1),
        dcomm_dim: report.dcomm_dim(),
        dcomm_per_degree: report.dcomm.per_degree(),
        solution_dim: report.solution_dim(),
        solution_basis: basis,
        witnesses: report.witnesses.iter().map(|m| map_json(alg, m)).collect(),
        ideal: strings(report.ideal.generators()),
        certificate,
        elapsed_ms: include_timing.then(|| report.elapsed.as_millis()),
    }
}
