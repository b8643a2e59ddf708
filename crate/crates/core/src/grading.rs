//! Gradings by `Z` or `Z/n`, their validation against the bracket, and the
//! homogeneous decomposition of spaces of bilinear maps.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bilinear::{BilinearMap, BilinearMapSpace};
use crate::error::GradingError;
use crate::lie::LieAlgebra;
use crate::linalg::{span_basis, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GradingGroup {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Zmod")]
    IntegersMod(u32),
}

impl GradingGroup {
    /// Canonical representative: identity on `Z`, the residue in `[0, n)`
    /// on `Z/n`.
    pub fn reduce(&self, g: i64) -> i64 {
        match self {
            GradingGroup::Integers => g,
            GradingGroup::IntegersMod(n) => g.rem_euclid(*n as i64),
        }
    }
}

/// Degree of every basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    pub group: GradingGroup,
    pub degrees: Vec<i64>,
}

impl Grading {
    pub fn new(group: GradingGroup, degrees: Vec<i64>) -> Result<Self, GradingError> {
        if let GradingGroup::IntegersMod(n) = group {
            if n == 0 {
                return Err(GradingError::BadModulus(0));
            }
        }
        Ok(Grading {
            degrees: degrees.into_iter().map(|g| group.reduce(g)).collect(),
            group,
        })
    }

    /// The grading of `Z/1` with a single zero component.
    pub fn trivial(dim: usize) -> Self {
        Grading {
            group: GradingGroup::IntegersMod(1),
            degrees: vec![0; dim],
        }
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn modulus(&self) -> Option<u32> {
        match self.group {
            GradingGroup::IntegersMod(n) => Some(n),
            GradingGroup::Integers => None,
        }
    }

    /// Degree of the coefficient of `b_k` in `phi(b_i, b_j)`.
    pub fn coefficient_degree(&self, i: usize, j: usize, k: usize) -> i64 {
        self.group.reduce(self.degrees[k] - self.degrees[i] - self.degrees[j])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLieAlgebra {
    pub algebra: LieAlgebra,
    pub grading: Grading,
}

/// Validates that every `[b_i, b_j]` lies in degree `deg i + deg j`.
pub fn attach_grading(algebra: LieAlgebra, grading: Grading) -> Result<GradedLieAlgebra, GradingError> {
    let n = algebra.dim();
    if grading.degrees.len() != n {
        return Err(GradingError::WrongLength {
            expected: n,
            found: grading.degrees.len(),
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            let expected = grading.group.reduce(grading.degree(i) + grading.degree(j));
            if let Some((k, _)) = algebra
                .bracket_basis(i, j)
                .iter()
                .find(|(k, _)| grading.degree(*k) != expected)
            {
                return Err(GradingError::GradingIncompatible {
                    left: algebra.label(i).into(),
                    right: algebra.label(j).into(),
                    stray: algebra.label(*k).into(),
                    expected,
                });
            }
        }
    }
    Ok(GradedLieAlgebra { algebra, grading })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapDegree {
    Homogeneous(i64),
    Mixed,
}

/// Degree of a bilinear map; the zero map has degree 0.
pub fn degree_of(map: &BilinearMap, grading: &Grading) -> MapDegree {
    let mut found: Option<i64> = None;
    for (i, j, k, _) in map.entries() {
        let g = grading.coefficient_degree(i, j, k);
        match found {
            None => found = Some(g),
            Some(h) if h != g => return MapDegree::Mixed,
            _ => {}
        }
    }
    MapDegree::Homogeneous(found.unwrap_or(0))
}

/// Splits a map into its homogeneous components.
pub fn homogeneous_components(map: &BilinearMap, grading: &Grading) -> BTreeMap<i64, BilinearMap> {
    let n = map.dim();
    let mut out: BTreeMap<i64, BilinearMap> = BTreeMap::new();
    for (i, j, k, x) in map.entries() {
        out.entry(grading.coefficient_degree(i, j, k))
            .or_insert_with(|| BilinearMap::zero(n))
            .set(i, j, k, x);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousDecomposition {
    pub components: BTreeMap<i64, Vec<BilinearMap>>,
}

impl HomogeneousDecomposition {
    pub fn total_dim(&self) -> usize {
        self.components.values().map(Vec::len).sum()
    }

    /// Union of the component bases.
    pub fn all_maps(&self) -> Vec<BilinearMap> {
        self.components.values().flatten().cloned().collect()
    }
}

/// Re-bases `space` by homogeneous elements. Fails if some homogeneous
/// projection of a basis element escapes the space, i.e. the space is not
/// graded.
pub fn decompose_bilinear_space(
    space: &BilinearMapSpace,
    grading: &Grading,
) -> Result<HomogeneousDecomposition, GradingError> {
    let n = space.dim;
    let mut projections: BTreeMap<i64, Vec<Vec<Scalar>>> = BTreeMap::new();
    for m in &space.basis {
        for (g, part) in homogeneous_components(m, grading) {
            projections.entry(g).or_default().push(part.flat().to_vec());
        }
    }
    let mut components = BTreeMap::new();
    for (g, vectors) in projections {
        let basis: Vec<BilinearMap> = span_basis(&vectors, n * n * n)
            .into_iter()
            .map(|v| BilinearMap::from_flat(n, v))
            .collect();
        if let Some(_escaped) = basis.iter().find(|m| !space.contains(m)) {
            return Err(GradingError::NotGradedSubspace { degree: g });
        }
        components.insert(g, basis);
    }
    let decomposition = HomogeneousDecomposition { components };
    if decomposition.total_dim() != space.len() {
        return Err(GradingError::NotGradedSubspace { degree: 0 });
    }
    Ok(decomposition)
}
