//! Multivariate polynomials over `Q` in variables `c1..cm` and a Buchberger
//! Gröbner-basis engine used to certify solution sets of the quadratic
//! CPA systems.
//!
//! The monomial order is degree-lexicographic with `c1 > c2 > ... > cm`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::PolyError;
use crate::linalg::{format_scalar, parse_scalar, Scalar, SparseEliminator};

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(v)` when this is a positive power of the single variable `v`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, e) in self.0.iter().enumerate() {
            if *e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with terms sorted in decreasing monomial order and no zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::from_terms(nvars, vec![(Monomial::one(nvars), c)])
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        Self::from_terms(nvars, vec![(Monomial::var(nvars, v), Scalar::one())])
    }

    /// Collects like terms and sorts.
    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, Scalar)>) -> Self {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial has wrong variable count");
            *acc.entry(m).or_insert_with(Scalar::zero) += c;
        }
        Polynomial {
            nvars,
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Builds `sum linear[v] c_v + sum quadratic[(u,v)] c_u c_v`.
    pub fn from_quadratic(
        nvars: usize,
        linear: &BTreeMap<usize, Scalar>,
        quadratic: &BTreeMap<(usize, usize), Scalar>,
    ) -> Self {
        let mut terms = Vec::with_capacity(linear.len() + quadratic.len());
        for (v, c) in linear {
            terms.push((Monomial::var(nvars, *v), c.clone()));
        }
        for ((u, v), c) in quadratic {
            let mut e = vec![0; nvars];
            e[*u] += 1;
            e[*v] += 1;
            terms.push((Monomial(e), c.clone()));
        }
        Self::from_terms(nvars, terms)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn constant_term(&self) -> Scalar {
        match self.terms.last() {
            Some((m, c)) if m.degree() == 0 => c.clone(),
            _ => Scalar::zero(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, x)| (t.mul(m), x * c)).collect(),
        }
    }

    /// `self - c * m * other`, a sorted merge.
    fn sub_scaled(&self, c: &Scalar, m: &Monomial, other: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(t, x)| (t.mul(m), x * c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (t, x) = b.next().unwrap();
                    out.push((t, -x));
                }
                (Some((ta, _)), Some((tb, _))) => match ta.cmp(tb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (t, x) = b.next().unwrap();
                        out.push((t, -x));
                    }
                    Ordering::Equal => {
                        let (t, xa) = a.next().unwrap();
                        let (_, xb) = b.next().unwrap();
                        let d = xa - xb;
                        if !d.is_zero() {
                            out.push((t.clone(), d));
                        }
                    }
                },
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.sub_scaled(&-Scalar::one(), &Monomial::one(self.nvars), other)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.sub_scaled(&Scalar::one(), &Monomial::one(self.nvars), other)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
        Polynomial::from_terms(self.nvars, terms)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.nvars, Scalar::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in point.iter().zip(&m.0) {
                for _ in 0..*e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `c_v = sum_j images[v][j] * s_j`, giving a polynomial in
    /// `new_nvars` variables.
    pub fn substitute_linear(&self, images: &[Polynomial], new_nvars: usize) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let mut acc = Polynomial::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(new_nvars, c.clone());
            for (v, e) in m.0.iter().enumerate() {
                for _ in 0..*e {
                    t = t.mul(&images[v]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Coefficients of a polynomial of degree at most one with zero
    /// constant term; `None` otherwise.
    pub fn as_linear_form(&self) -> Option<Vec<Scalar>> {
        let mut out = vec![Scalar::zero(); self.nvars];
        for (m, c) in &self.terms {
            match (m.degree(), m.pure_power_of()) {
                (1, Some(v)) => out[v] = c.clone(),
                _ => return None,
            }
        }
        Some(out)
    }

    pub fn from_linear_form(coeffs: &[Scalar]) -> Polynomial {
        let n = coeffs.len();
        Polynomial::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(v, c)| (Monomial::var(n, v), c.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(v, e)| {
                    if *e == 1 {
                        format!("c{}", v + 1)
                    } else {
                        format!("c{}^{}", v + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", format_scalar(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_scalar(&abs), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Parses the canonical text form, e.g. `"3/2*c1^2*c3 - c2"`, in `nvars`
/// variables.
pub fn parse_polynomial(text: &str, nvars: usize) -> Result<Polynomial, PolyError> {
    let err = |msg: &str| PolyError::Parse(format!("{msg} in {text:?}"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty input"));
    }
    let mut chunks: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !current.ends_with('^') {
            chunks.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
        } else if ch == '-' && i == 0 {
            negative = true;
        } else if ch == '+' && i == 0 {
        } else {
            current.push(ch);
        }
    }
    chunks.push((negative, current));
    let mut terms = Vec::new();
    for (neg, chunk) in chunks {
        if chunk.is_empty() {
            return Err(err("empty term"));
        }
        let mut coeff = Scalar::one();
        let mut exps = vec![0u32; nvars];
        for factor in chunk.split('*') {
            if let Some(rest) = factor.strip_prefix('c') {
                let (idx, pow) = match rest.split_once('^') {
                    Some((i, p)) => (i, p.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (rest, 1),
                };
                let idx: usize = idx.parse().map_err(|_| err("bad variable index"))?;
                if idx == 0 || idx > nvars {
                    return Err(err("variable index out of range"));
                }
                exps[idx - 1] += pow;
            } else {
                coeff *= parse_scalar(factor).map_err(|_| err("bad coefficient"))?;
            }
        }
        if neg {
            coeff = -coeff;
        }
        terms.push((Monomial(exps), coeff));
    }
    Ok(Polynomial::from_terms(nvars, terms))
}

impl FromStr for Polynomial {
    type Err = PolyError;

    /// Infers the variable count from the largest index present.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut max = 0usize;
        let bytes: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i] == 'c' {
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if let Ok(v) = bytes[i + 1..j].iter().collect::<String>().parse::<usize>() {
                    max = max.max(v);
                }
                i = j;
            } else {
                i += 1;
            }
        }
        parse_polynomial(s, max)
    }
}

/// Limits on a Buchberger run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_pair_reductions: usize,
    pub max_terms: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pair_reductions: 100_000,
            max_terms: u64::MAX,
        }
    }
}

/// Full reduction of `p` by `basis`; the remainder has no term divisible
/// by any leading monomial of `basis`.
pub fn normal_form(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut rest = p.clone();
    let mut remainder: Vec<(Monomial, Scalar)> = Vec::new();
    while let Some((lm, lc)) = rest.terms.first().cloned() {
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|gl| gl.divides(&lm)));
        match divisor {
            Some(g) => {
                let glm = g.leading_monomial().unwrap();
                let factor = &lc / g.leading_coefficient().unwrap();
                rest = rest.sub_scaled(&factor, &lm.div(glm), g);
            }
            None => {
                remainder.push((lm, lc));
                rest.terms.remove(0);
            }
        }
    }
    Polynomial {
        nvars: p.nvars,
        terms: remainder,
    }
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let lf = f.leading_monomial().unwrap();
    let lg = g.leading_monomial().unwrap();
    let l = lf.lcm(lg);
    let a = f.mul_term(&l.div(lf), &f.leading_coefficient().unwrap().recip());
    let b = g.mul_term(&l.div(lg), &g.leading_coefficient().unwrap().recip());
    a.sub(&b)
}

/// Replaces the generators by an rref basis of their span in monomial
/// coordinates, which is a cheap pre-reduction for large quadratic systems.
fn linear_interreduce(polys: &[Polynomial], nvars: usize) -> Vec<Polynomial> {
    let monomials: BTreeSet<Monomial> = polys
        .iter()
        .flat_map(|p| p.terms.iter().map(|(m, _)| m.clone()))
        .collect();
    // descending order so pivots are leading monomials
    let index: Vec<Monomial> = monomials.into_iter().rev().collect();
    let position: BTreeMap<&Monomial, usize> = index.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut elim = SparseEliminator::new(index.len());
    for p in polys {
        elim.push(p.terms.iter().map(|(m, c)| (position[m], c.clone())).collect());
    }
    elim.row_basis()
        .into_iter()
        .map(|row| {
            Polynomial::from_terms(
                nvars,
                row.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (index[i].clone(), c))
                    .collect(),
            )
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    lcm: Monomial,
    j: usize,
    i: usize,
}

/// Reduced Gröbner basis of the ideal generated by `generators`, sorted by
/// increasing leading monomial, every element monic.
pub fn buchberger(generators: &[Polynomial], nvars: usize, budget: &Budget) -> Result<Vec<Polynomial>, PolyError> {
    for g in generators {
        if g.nvars != nvars {
            return Err(PolyError::VariableMismatch {
                expected: nvars,
                found: g.nvars,
            });
        }
    }
    let mut basis: Vec<Polynomial> = linear_interreduce(generators, nvars)
        .into_iter()
        .map(|p| p.monic())
        .collect();
    if basis.iter().any(Polynomial::is_constant) {
        return Ok(vec![Polynomial::constant(nvars, Scalar::one())]);
    }
    let mut pairs: BTreeSet<PairKey> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert(PairKey {
                lcm: basis[i].leading_monomial().unwrap().lcm(basis[j].leading_monomial().unwrap()),
                j,
                i,
            });
        }
    }
    let mut reductions = 0usize;
    let mut max_terms = basis.iter().map(Polynomial::len).max().unwrap_or(0);
    while let Some(pair) = pairs.pop_first() {
        let (i, j) = (pair.i, pair.j);
        done.insert((i, j));
        let li = basis[i].leading_monomial().unwrap();
        let lj = basis[j].leading_monomial().unwrap();
        if li.coprime(lj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&pair.lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        reductions += 1;
        if reductions > budget.max_pair_reductions || max_terms as u64 > budget.max_terms {
            return Err(PolyError::ResourceLimit {
                pairs_reduced: reductions - 1,
                basis_len: basis.len(),
                max_terms,
            });
        }
        let h = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.is_constant() {
            return Ok(vec![Polynomial::constant(nvars, Scalar::one())]);
        }
        max_terms = max_terms.max(h.len());
        let k = basis.len();
        let lh = h.leading_monomial().unwrap().clone();
        basis.push(h);
        for i in 0..k {
            pairs.insert(PairKey {
                lcm: basis[i].leading_monomial().unwrap().lcm(&lh),
                j: k,
                i,
            });
        }
    }
    Ok(reduce_basis(basis))
}

fn reduce_basis(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    for p in sorted {
        let lm = p.leading_monomial().unwrap();
        if !minimal.iter().any(|q| q.leading_monomial().unwrap().divides(lm)) {
            minimal.push(p);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != idx)
            .map(|(_, q)| q.clone())
            .collect();
        let p = &minimal[idx];
        let head = Polynomial {
            nvars: p.nvars,
            terms: vec![p.terms[0].clone()],
        };
        let tail = Polynomial {
            nvars: p.nvars,
            terms: p.terms[1..].to_vec(),
        };
        reduced.push(head.add(&normal_form(&tail, &others)).monic());
    }
    reduced
}

/// Polynomial ideal with a lazily computed reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct PolyIdeal {
    nvars: usize,
    generators: Vec<Polynomial>,
    reduced: std::sync::OnceLock<Vec<Polynomial>>,
}

impl PolyIdeal {
    pub fn new(nvars: usize, generators: Vec<Polynomial>) -> Self {
        PolyIdeal {
            nvars,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            reduced: std::sync::OnceLock::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn groebner(&self, budget: &Budget) -> Result<&[Polynomial], PolyError> {
        if let Some(b) = self.reduced.get() {
            return Ok(b);
        }
        let b = buchberger(&self.generators, self.nvars, budget)?;
        Ok(self.reduced.get_or_init(|| b))
    }

    pub fn contains(&self, p: &Polynomial, budget: &Budget) -> Result<bool, PolyError> {
        Ok(normal_form(p, self.groebner(budget)?).is_zero())
    }

    pub fn with_generators(&self, extra: &[Polynomial]) -> PolyIdeal {
        let mut g = self.generators.clone();
        g.extend(extra.iter().cloned());
        PolyIdeal::new(self.nvars, g)
    }
}

pub fn ideal_membership(p: &Polynomial, ideal: &PolyIdeal, budget: &Budget) -> Result<bool, PolyError> {
    ideal.contains(p, budget)
}

/// Upper bound on the degree of minimal polynomials explored by the
/// nilpotency test.
const MAX_MINPOLY_DEGREE: usize = 4096;

/// Whether the variable is nilpotent modulo a zero-dimensional ideal with
/// reduced basis `gb`: computes the minimal polynomial of multiplication by
/// `c_v` on the quotient ring and checks it is a power of `t`.
fn variable_is_nilpotent(gb: &[Polynomial], nvars: usize, v: usize) -> Option<bool> {
    let x = Polynomial::var(nvars, v);
    let mut powers: Vec<Polynomial> = vec![normal_form(&Polynomial::constant(nvars, Scalar::one()), gb)];
    for _ in 0..MAX_MINPOLY_DEGREE {
        let next = normal_form(&powers.last().unwrap().mul(&x), gb);
        if next.is_zero() {
            return Some(true);
        }
        powers.push(next);
        // linear dependence among nf(c^0..c^k) gives the minimal polynomial
        let monomials: BTreeSet<Monomial> = powers
            .iter()
            .flat_map(|p| p.terms.iter().map(|(m, _)| m.clone()))
            .collect();
        if monomials.len() >= powers.len() {
            continue;
        }
        let index: BTreeMap<&Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        // columns: powers; kernel vector = minimal polynomial coefficients
        let mut elim = SparseEliminator::new(powers.len());
        let mut rows: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (k, p) in powers.iter().enumerate() {
            for (m, c) in &p.terms {
                rows.entry(index[m]).or_default().push((k, c.clone()));
            }
        }
        for row in rows.into_values() {
            elim.push(row);
        }
        let kernel = elim.kernel_basis();
        if let Some(relation) = kernel.first() {
            // t^r is the minimal polynomial iff only the top coefficient is nonzero
            let nonzero = relation.iter().filter(|c| !c.is_zero()).count();
            return Some(nonzero == 1);
        }
    }
    None
}

/// True iff the common zero set over the algebraic closure is exactly the
/// origin: every variable must have a pure power among the leading
/// monomials (zero-dimensionality) and be nilpotent in the quotient ring.
pub fn variety_is_origin_only(ideal: &PolyIdeal, budget: &Budget) -> Result<bool, PolyError> {
    let n = ideal.nvars();
    if ideal.generators().iter().any(|g| !g.constant_term().is_zero()) {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }
    let gb = ideal.groebner(budget)?;
    let mut has_power = vec![false; n];
    for g in gb {
        if let Some(v) = g.leading_monomial().and_then(Monomial::pure_power_of) {
            has_power[v] = true;
        }
    }
    if has_power.iter().any(|b| !b) {
        return Ok(false);
    }
    for v in 0..n {
        if variable_is_nilpotent(gb, n, v) != Some(true) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest power tried when certifying that a linear form lies in the
/// radical of an ideal.
pub const MAX_RADICAL_POWER: u32 = 8;

/// Whether `form^k` lies in `ideal` for some `k <= MAX_RADICAL_POWER`.
pub fn linear_form_in_radical(form: &Polynomial, ideal: &PolyIdeal, budget: &Budget) -> Result<bool, PolyError> {
    let gb = ideal.groebner(budget)?;
    let mut power = form.clone();
    for _ in 0..MAX_RADICAL_POWER {
        let r = normal_form(&power, gb);
        if r.is_zero() {
            return Ok(true);
        }
        power = r.mul(form);
    }
    Ok(false)
}

/// Linear forms (as coefficient vectors) vanishing exactly on the span of
/// `spanning`.
pub fn defining_forms(nvars: usize, spanning: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut elim = SparseEliminator::new(nvars);
    for v in spanning {
        elim.push_dense(v);
    }
    elim.kernel_basis()
}

/// Decides whether the variety of `ideal` equals the linear subspace spanned
/// by `spanning` (vectors in coefficient space): (a) every generator
/// vanishes identically on the subspace, and (b) every defining linear form
/// of the subspace lies in the radical, certified one form at a time
/// modulo the forms already certified.
pub fn variety_equals_affine_subspace(
    ideal: &PolyIdeal,
    spanning: &[Vec<Scalar>],
    budget: &Budget,
) -> Result<bool, PolyError> {
    let n = ideal.nvars();
    let k = spanning.len();
    let images: Vec<Polynomial> = (0..n)
        .map(|v| {
            Polynomial::from_terms(
                k,
                spanning
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| !s[v].is_zero())
                    .map(|(j, s)| (Monomial::var(k, j), s[v].clone()))
                    .collect(),
            )
        })
        .collect();
    if ideal
        .generators()
        .iter()
        .any(|g| !g.substitute_linear(&images, k).is_zero())
    {
        return Ok(false);
    }
    let mut pending: Vec<Polynomial> = defining_forms(n, spanning)
        .iter()
        .map(|f| Polynomial::from_linear_form(f))
        .collect();
    let mut certified: Vec<Polynomial> = Vec::new();
    while !pending.is_empty() {
        let current = ideal.with_generators(&certified);
        let before = pending.len();
        let mut still = Vec::new();
        for f in pending {
            if linear_form_in_radical(&f, &current, budget)? {
                certified.push(f);
            } else {
                still.push(f);
            }
        }
        pending = still;
        if pending.len() == before {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches for linear forms in the radical of `ideal`: linear elements of
/// the reduced basis and variables with a power in the ideal, iterating
/// modulo the forms found so far. Returns the span of the forms as an rref
/// basis.
pub fn radical_linear_forms(ideal: &PolyIdeal, budget: &Budget) -> Result<Vec<Vec<Scalar>>, PolyError> {
    let n = ideal.nvars();
    let mut forms: Vec<Vec<Scalar>> = Vec::new();
    loop {
        let current = ideal.with_generators(&forms.iter().map(|f| Polynomial::from_linear_form(f)).collect::<Vec<_>>());
        let gb = current.groebner(budget)?.to_vec();
        let mut candidates: Vec<Vec<Scalar>> = gb.iter().filter_map(Polynomial::as_linear_form).collect();
        for v in 0..n {
            let x = Polynomial::var(n, v);
            if normal_form(&x, &gb).is_zero() {
                continue;
            }
            if linear_form_in_radical(&x, &current, budget)? {
                let mut e = vec![Scalar::zero(); n];
                e[v] = Scalar::one();
                candidates.push(e);
            }
        }
        let mut elim = SparseEliminator::new(n);
        for f in &forms {
            elim.push_dense(f);
        }
        let before = elim.rank();
        for c in &candidates {
            elim.push_dense(c);
        }
        if elim.rank() == before {
            return Ok(elim.row_basis());
        }
        forms = elim.row_basis();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    fn ideal(gens: &[&str], n: usize) -> PolyIdeal {
        PolyIdeal::new(n, gens.iter().map(|g| p(g, n)).collect())
    }

    #[test]
    fn deglex_order() {
        let a = Monomial(vec![1, 0]);
        let b = Monomial(vec![0, 2]);
        assert!(b > a);
        assert!(Monomial(vec![2, 0]) > Monomial(vec![1, 1]));
    }

    #[test]
    fn text_round_trip() {
        let q = p("3/2*c1^2*c3 - c2", 3);
        assert_eq!(q.to_string(), "3/2*c1^2*c3 - c2");
        assert_eq!(p("-c1 + 2", 1).to_string(), "-c1 + 2");
        assert_eq!("c1*c2 - c1^2".parse::<Polynomial>().unwrap().to_string(), "-c1^2 + c1*c2");
        assert!(parse_polynomial("c4", 3).is_err());
        assert!(parse_polynomial("", 3).is_err());
    }

    #[test]
    fn single_generator_basis() {
        let gb = buchberger(&[p("c1", 1)], 1, &Budget::default()).unwrap();
        assert_eq!(gb, vec![p("c1", 1)]);
        assert!(buchberger(&[], 2, &Budget::default()).unwrap().is_empty());
    }

    #[test]
    fn two_generator_example() {
        // V = {c1 = 0} u {(1, 0)}
        let i = ideal(&["c1*c2", "c1^2 - c1"], 2);
        let b = Budget::default();
        let gb = i.groebner(&b).unwrap().to_vec();
        for g in &gb {
            assert!(g.evaluate(&[int(0), int(0)]).is_zero());
            assert!(g.evaluate(&[int(1), int(0)]).is_zero());
            assert!(g.evaluate(&[int(0), int(5)]).is_zero());
        }
        assert!(i.contains(&p("c1^2*c2", 2), &b).unwrap());
        assert!(!i.contains(&p("c1", 2), &b).unwrap());
        assert!(!i.contains(&p("c2", 2), &b).unwrap());
    }

    #[test]
    fn membership_examples() {
        let b = Budget::default();
        let i = ideal(&["c1"], 1);
        assert!(i.contains(&p("c1", 1), &b).unwrap());
        assert_eq!(normal_form(&p("1", 1), i.groebner(&b).unwrap()), p("1", 1));
        assert!(i.contains(&p("c1^2", 1), &b).unwrap());
    }

    #[test]
    fn origin_only_examples() {
        let b = Budget::default();
        assert!(variety_is_origin_only(&ideal(&["c1", "c2"], 2), &b).unwrap());
        assert!(!variety_is_origin_only(&ideal(&["c1*c2"], 2), &b).unwrap());
        assert!(variety_is_origin_only(&ideal(&["c1^2", "c2 - c1"], 2), &b).unwrap());
        // zero-dimensional but with the extra point (1, 0)
        assert!(!variety_is_origin_only(&ideal(&["c1^2 - c1", "c2"], 2), &b).unwrap());
    }

    #[test]
    fn subspace_examples() {
        let b = Budget::default();
        let full = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        assert!(variety_equals_affine_subspace(&PolyIdeal::new(2, vec![]), &full, &b).unwrap());
        let line = vec![vec![int(0), int(1)]];
        assert!(variety_equals_affine_subspace(&ideal(&["c1"], 2), &line, &b).unwrap());
        assert!(!variety_equals_affine_subspace(&ideal(&["c1*c2"], 2), &line, &b).unwrap());
        assert!(variety_equals_affine_subspace(&ideal(&["c1^2", "c1*c2"], 2), &line, &b).unwrap());
    }

    #[test]
    fn radical_forms_found() {
        let b = Budget::default();
        let forms = radical_linear_forms(&ideal(&["c1^2", "c1*c2 + c2^2 - c3"], 3), &b).unwrap();
        assert_eq!(forms, vec![vec![int(1), int(0), int(0)]]);
    }

    #[test]
    fn resource_limit_reported() {
        let tight = Budget {
            max_pair_reductions: 0,
            max_terms: u64::MAX,
        };
        let err = buchberger(&[p("c1^2 - c2", 2), p("c1*c2 - 1", 2)], 2, &tight).unwrap_err();
        assert!(matches!(err, PolyError::ResourceLimit { .. }));
    }

    #[test]
    fn basis_is_deterministic() {
        let gens = vec![p("c1^2 - c2*c3", 3), p("c2^2 - c1*c3", 3), p("c1*c2 - c3^2", 3)];
        let a = buchberger(&gens, 3, &Budget::default()).unwrap();
        let b = buchberger(&gens, 3, &Budget::default()).unwrap();
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }
}
