//! JSON formats for algebras, windows and bilinear maps.
//!
//! Algebras: `{"dim": 3, "labels": [...], "brackets": [[i, j, [[k, "p/q"], ...]], ...],
//! "grading": {"group": "Z" | {"Zmod": n}, "degrees": [...]}}` with `i < j`.
//! Windows list undefined brackets explicitly as `[i, j, "Undefined"]`.

use serde::{Deserialize, Serialize};

use crate::bilinear::BilinearMap;
use crate::constructions::{AlgebraWindow, WindowBracket, WindowKind};
use crate::error::FormatError;
use crate::grading::{attach_grading, GradedLieAlgebra, Grading};
use crate::lie::LieAlgebra;
use crate::linalg::{format_scalar, parse_scalar, Scalar, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub labels: Vec<String>,
    pub brackets: Vec<(usize, usize, Vec<(usize, String)>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Grading>,
}

/// Parsed algebra, graded when the input carries a grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedAlgebra {
    Plain(LieAlgebra),
    Graded(GradedLieAlgebra),
}

impl ParsedAlgebra {
    pub fn algebra(&self) -> &LieAlgebra {
        match self {
            ParsedAlgebra::Plain(l) => l,
            ParsedAlgebra::Graded(g) => &g.algebra,
        }
    }
}

fn sparse_to_json(v: &[(usize, Scalar)]) -> Vec<(usize, String)> {
    v.iter().map(|(k, x)| (*k, format_scalar(x))).collect()
}

fn sparse_from_json(v: &[(usize, String)], dim: usize) -> Result<SparseVec, FormatError> {
    v.iter()
        .map(|(k, x)| {
            if *k >= dim {
                return Err(FormatError::Invalid(format!("basis index {k} out of range")));
            }
            Ok((*k, parse_scalar(x)?))
        })
        .collect()
}

pub fn algebra_to_json(l: &LieAlgebra, grading: Option<&Grading>) -> AlgebraJson {
    AlgebraJson {
        dim: l.dim(),
        labels: l.labels().to_vec(),
        brackets: l
            .nonzero_brackets()
            .into_iter()
            .map(|(i, j, v)| (i, j, sparse_to_json(&v)))
            .collect(),
        grading: grading.cloned(),
    }
}

/// Validates antisymmetry (implied by `i < j`), Jacobi and the grading.
pub fn algebra_from_json(text: &str) -> Result<ParsedAlgebra, FormatError> {
    let parsed: AlgebraJson = serde_json::from_str(text)?;
    if parsed.labels.len() != parsed.dim {
        return Err(FormatError::Invalid(format!(
            "{} labels for dimension {}",
            parsed.labels.len(),
            parsed.dim
        )));
    }
    let mut constants = Vec::new();
    for (i, j, v) in &parsed.brackets {
        if i >= j || *j >= parsed.dim {
            return Err(FormatError::Invalid(format!("bracket entry ({i}, {j}) needs i < j < dim")));
        }
        constants.push((*i, *j, sparse_from_json(v, parsed.dim)?));
    }
    let l = LieAlgebra::from_structure_constants(parsed.dim, parsed.labels, &constants)?;
    Ok(match parsed.grading {
        Some(g) => ParsedAlgebra::Graded(attach_grading(l, Grading::new(g.group, g.degrees)?)?),
        None => ParsedAlgebra::Plain(l),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BracketJson {
    Defined(Vec<(usize, String)>),
    Undefined(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowJson {
    pub kind: String,
    pub window_bound: usize,
    pub dim: usize,
    pub labels: Vec<String>,
    pub degrees: Vec<i64>,
    /// Nonzero and undefined brackets with `i < j`.
    pub brackets: Vec<(usize, usize, BracketJson)>,
}

pub fn window_to_json(w: &AlgebraWindow) -> WindowJson {
    let kind = match w.kind {
        WindowKind::Loop { modulus } => format!("loop(Z/{modulus})"),
        WindowKind::Witt { one_sided: true } => "witt(one-sided)".into(),
        WindowKind::Witt { one_sided: false } => "witt(two-sided)".into(),
        WindowKind::KacMoody { modulus } => format!("kac-moody(Z/{modulus})"),
    };
    let n = w.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            match w.bracket(i, j) {
                WindowBracket::Defined(v) if v.is_empty() => {}
                WindowBracket::Defined(v) => brackets.push((i, j, BracketJson::Defined(sparse_to_json(v)))),
                WindowBracket::Undefined => brackets.push((i, j, BracketJson::Undefined("Undefined".into()))),
            }
        }
    }
    WindowJson {
        kind,
        window_bound: w.bound,
        dim: n,
        labels: w.labels().to_vec(),
        degrees: w.degrees().to_vec(),
        brackets,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFileJson {
    pub entries: Vec<(usize, usize, usize, String)>,
}

/// Reads a bilinear map `{"entries": [[i, j, k, "p/q"], ...]}`.
pub fn map_from_json(text: &str, dim: usize) -> Result<BilinearMap, FormatError> {
    let parsed: MapFileJson = serde_json::from_str(text)?;
    let mut entries = Vec::new();
    for (i, j, k, x) in parsed.entries {
        if i >= dim || j >= dim || k >= dim {
            return Err(FormatError::Invalid(format!("entry ({i}, {j}, {k}) out of range for dimension {dim}")));
        }
        entries.push((i, j, k, parse_scalar(&x)?));
    }
    Ok(BilinearMap::from_entries(dim, &entries))
}
