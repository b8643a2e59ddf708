//! Uniform read access to the algebras the solvers work on: full Lie
//! algebras, degree windows of infinite-dimensional graded algebras, and
//! commutative associative algebras.

use crate::linalg::Scalar;

/// A (possibly partially defined) bilinear product on a finite basis whose
/// elements carry integer degrees. A product is defined exactly when the
/// degree of the result lies in the admissible range; for finite algebras
/// every degree is 0 and every product is defined.
pub trait PartialAlgebra {
    fn dim(&self) -> usize;

    fn label(&self, i: usize) -> &str;

    fn degree(&self, i: usize) -> i64;

    /// Whether homogeneous elements of this degree are representable.
    fn degree_in_range(&self, d: i64) -> bool;

    /// `b_i * b_j`; `None` when the result leaves the window.
    fn product(&self, i: usize, j: usize) -> Option<&[(usize, Scalar)]>;

    /// Whether the product is antisymmetric (a Lie bracket).
    fn is_lie(&self) -> bool {
        true
    }
}

impl PartialAlgebra for crate::lie::LieAlgebra {
    fn dim(&self) -> usize {
        crate::lie::LieAlgebra::dim(self)
    }

    fn label(&self, i: usize) -> &str {
        crate::lie::LieAlgebra::label(self, i)
    }

    fn degree(&self, _i: usize) -> i64 {
        0
    }

    fn degree_in_range(&self, d: i64) -> bool {
        d == 0
    }

    fn product(&self, i: usize, j: usize) -> Option<&[(usize, Scalar)]> {
        Some(self.bracket_basis(i, j))
    }
}

/// Basis indices grouped by degree.
pub(crate) fn indices_by_degree<A: PartialAlgebra + ?Sized>(alg: &A) -> std::collections::BTreeMap<i64, Vec<usize>> {
    let mut out: std::collections::BTreeMap<i64, Vec<usize>> = std::collections::BTreeMap::new();
    for i in 0..alg.dim() {
        out.entry(alg.degree(i)).or_default().push(i);
    }
    out
}
