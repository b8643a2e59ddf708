//! Post-hoc verification of the defining identities of `D`, `D_comm`, `C`
//! and of CPA structures, evaluated directly on coordinate vectors.
//!
//! This module deliberately does not reuse the constraint assembler in
//! `bilinear`: every solver output is re-checked here by plain evaluation.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::bilinear::{BilinearMap, SpaceKind};
use crate::linalg::{format_scalar, Scalar};
use crate::structure::PartialAlgebra;

/// First failing instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityViolation {
    pub identity: &'static str,
    pub triple: Vec<String>,
    pub degree: i64,
    pub residual: String,
}

impl std::fmt::Display for IdentityViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} identity fails on ({}) in degree {}: residual {}",
            self.identity,
            self.triple.join(", "),
            self.degree,
            self.residual
        )
    }
}

/// Homogeneous element: coordinates plus degree.
#[derive(Clone)]
struct Hom {
    degree: i64,
    coords: Vec<Scalar>,
}

fn unit<A: PartialAlgebra + ?Sized>(alg: &A, i: usize) -> Hom {
    let mut coords = vec![Scalar::zero(); alg.dim()];
    coords[i] = Scalar::one();
    Hom {
        degree: alg.degree(i),
        coords,
    }
}

/// Product of homogeneous elements, `None` if it leaves the window.
fn mul<A: PartialAlgebra + ?Sized>(alg: &A, u: &Hom, v: &Hom) -> Option<Hom> {
    let degree = u.degree + v.degree;
    if !alg.degree_in_range(degree) {
        return None;
    }
    let mut coords = vec![Scalar::zero(); alg.dim()];
    for (i, a) in u.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        for (j, b) in v.coords.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            let prod = alg.product(i, j)?;
            for (k, c) in prod {
                coords[*k] += a * b * c;
            }
        }
    }
    Some(Hom { degree, coords })
}

fn apply<A: PartialAlgebra + ?Sized>(alg: &A, phi: &BilinearMap, ell: i64, u: &Hom, v: &Hom) -> Option<Hom> {
    let degree = u.degree + v.degree + ell;
    if !alg.degree_in_range(degree) {
        return None;
    }
    Some(Hom {
        degree,
        coords: phi.apply(&u.coords, &v.coords),
    })
}

fn residual<A: PartialAlgebra + ?Sized>(alg: &A, v: &[Scalar]) -> Option<String> {
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    Some(
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| format!("{}*{}", format_scalar(x), alg.label(k)))
            .collect::<Vec<_>>()
            .join(" + "),
    )
}

fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Splits `phi` by degree `deg k - deg i - deg j` of its coefficients.
pub fn homogeneous_parts<A: PartialAlgebra + ?Sized>(alg: &A, phi: &BilinearMap) -> BTreeMap<i64, BilinearMap> {
    let n = alg.dim();
    assert_eq!(phi.dim(), n, "map and algebra dimensions differ");
    let mut parts: BTreeMap<i64, BilinearMap> = BTreeMap::new();
    for (i, j, k, x) in phi.entries() {
        let d = alg.degree(k) - alg.degree(i) - alg.degree(j);
        parts
            .entry(d)
            .or_insert_with(|| BilinearMap::zero(n))
            .set(i, j, k, x);
    }
    parts
}

fn labels<A: PartialAlgebra + ?Sized>(alg: &A, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|i| alg.label(*i).to_string()).collect()
}

/// Checks the linear identities of `kind` on every triple where all terms
/// are representable.
pub fn check_linear_identities<A: PartialAlgebra + ?Sized>(
    alg: &A,
    phi: &BilinearMap,
    kind: SpaceKind,
) -> Result<(), IdentityViolation> {
    let n = alg.dim();
    let parts = homogeneous_parts(alg, phi);
    if kind == SpaceKind::Dcomm {
        for x in 0..n {
            for y in x + 1..n {
                let d = sub(&phi.apply(&unit(alg, x).coords, &unit(alg, y).coords), &phi.apply(&unit(alg, y).coords, &unit(alg, x).coords));
                if let Some(r) = residual(alg, &d) {
                    return Err(IdentityViolation {
                        identity: "commutativity",
                        triple: labels(alg, &[x, y]),
                        degree: 0,
                        residual: r,
                    });
                }
            }
        }
    }
    if kind == SpaceKind::Custom {
        return Ok(());
    }
    for (&ell, part) in &parts {
        for x in 0..n {
            let ex = unit(alg, x);
            for y in 0..n {
                let ey = unit(alg, y);
                for z in 0..n {
                    let ez = unit(alg, z);
                    let Some(yz) = mul(alg, &ey, &ez) else { continue };
                    let Some(lhs) = apply(alg, part, ell, &ex, &yz) else { continue };
                    let Some(pxy) = apply(alg, part, ell, &ex, &ey) else { continue };
                    let Some(first) = mul(alg, &pxy, &ez) else { continue };
                    let rhs = if kind == SpaceKind::C {
                        first.coords
                    } else {
                        let Some(pxz) = apply(alg, part, ell, &ex, &ez) else { continue };
                        let Some(second) = mul(alg, &ey, &pxz) else { continue };
                        add(&first.coords, &second.coords)
                    };
                    if let Some(r) = residual(alg, &sub(&lhs.coords, &rhs)) {
                        return Err(IdentityViolation {
                            identity: if kind == SpaceKind::C { "centroid" } else { "derivation" },
                            triple: labels(alg, &[x, y, z]),
                            degree: ell,
                            residual: r,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Checks `phi([x,y],z) = phi(x,phi(y,z)) - phi(y,phi(x,z))` degree by
/// degree. Components of `phi` in degrees outside `degrees` are taken to be
/// zero; an instance is skipped unless every term that any component in
/// `degrees` could contribute is representable.
pub fn check_post_lie_identity<A: PartialAlgebra + ?Sized>(
    alg: &A,
    phi: &BilinearMap,
    degrees: &BTreeSet<i64>,
) -> Result<(), IdentityViolation> {
    let n = alg.dim();
    let parts = homogeneous_parts(alg, phi);
    if let Some(d) = parts.keys().find(|d| !degrees.contains(d)) {
        return Err(IdentityViolation {
            identity: "degree bound",
            triple: Vec::new(),
            degree: *d,
            residual: "component outside the admitted degrees".into(),
        });
    }
    let zero = BilinearMap::zero(n);
    let part = |d: i64| parts.get(&d).unwrap_or(&zero);
    let sums: BTreeSet<i64> = degrees
        .iter()
        .flat_map(|a| degrees.iter().map(move |b| a + b))
        .chain(degrees.iter().copied())
        .collect();
    for x in 0..n {
        let ex = unit(alg, x);
        for y in 0..n {
            let ey = unit(alg, y);
            for z in 0..n {
                let ez = unit(alg, z);
                'degree: for &m in &sums {
                    let target = ex.degree + ey.degree + ez.degree + m;
                    if !alg.degree_in_range(target) {
                        continue;
                    }
                    let mut total = vec![Scalar::zero(); n];
                    if degrees.contains(&m) {
                        let Some(xy) = mul(alg, &ex, &ey) else { continue };
                        let Some(l) = apply(alg, part(m), m, &xy, &ez) else { continue };
                        total = l.coords;
                    }
                    for &ell in degrees {
                        let s = m - ell;
                        if !degrees.contains(&s) {
                            continue;
                        }
                        let Some(pyz) = apply(alg, part(s), s, &ey, &ez) else { continue 'degree };
                        let Some(pxz) = apply(alg, part(ell), ell, &ex, &ez) else { continue 'degree };
                        let Some(a) = apply(alg, part(ell), ell, &ex, &pyz) else { continue 'degree };
                        let Some(b) = apply(alg, part(s), s, &ey, &pxz) else { continue 'degree };
                        total = add(&sub(&total, &a.coords), &b.coords);
                    }
                    if let Some(r) = residual(alg, &total) {
                        return Err(IdentityViolation {
                            identity: "post-Lie",
                            triple: labels(alg, &[x, y, z]),
                            degree: m,
                            residual: r,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Checks `phi(x, phi(y, z)) = phi(y, phi(x, z))` on a finite algebra.
pub fn check_left_commuting<A: PartialAlgebra + ?Sized>(alg: &A, phi: &BilinearMap) -> Result<(), IdentityViolation> {
    let n = alg.dim();
    for x in 0..n {
        let ex = unit(alg, x);
        for y in 0..n {
            let ey = unit(alg, y);
            for z in 0..n {
                let ez = unit(alg, z);
                let a = phi.apply(&ex.coords, &phi.apply(&ey.coords, &ez.coords));
                let b = phi.apply(&ey.coords, &phi.apply(&ex.coords, &ez.coords));
                if let Some(r) = residual(alg, &sub(&a, &b)) {
                    return Err(IdentityViolation {
                        identity: "left-commuting",
                        triple: labels(alg, &[x, y, z]),
                        degree: 0,
                        residual: r,
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::sl_n;
    use crate::lie::LieAlgebra;
    use crate::linalg::int;

    #[test]
    fn bracket_fails_commutativity() {
        let s = sl_n(2);
        let err = check_linear_identities(&s, &BilinearMap::from_bracket(&s), SpaceKind::Dcomm).unwrap_err();
        assert_eq!(err.identity, "commutativity");
    }

    #[test]
    fn bracket_is_in_d() {
        let s = sl_n(2);
        check_linear_identities(&s, &BilinearMap::from_bracket(&s), SpaceKind::D).unwrap();
    }

    #[test]
    fn zero_map_passes_everything() {
        let s = sl_n(2);
        let z = BilinearMap::zero(3);
        check_linear_identities(&s, &z, SpaceKind::Dcomm).unwrap();
        check_post_lie_identity(&s, &z, &[0].into()).unwrap();
    }

    #[test]
    fn projection_on_abelian_line() {
        let a = LieAlgebra::abelian(1);
        let phi = BilinearMap::from_entries(1, &[(0, 0, 0, int(1))]);
        check_post_lie_identity(&a, &phi, &[0].into()).unwrap();
        check_left_commuting(&a, &phi).unwrap();
    }
}
