use num_traits::{One, Zero};
use proptest::prelude::*;

use cpa_core::bilinear::{c_space, d_space, dcomm_space, BilinearMap, BilinearMapSpace, SpaceKind};
use cpa_core::constructions::{
    builtin, builtin_algebra, central_extension, current_algebra, euler_derivation, loop_window,
    semidirect_by_derivation, truncated_polynomial_algebra, truncated_polynomial_algebra_in, witt_window, WindowBracket,
};
use cpa_core::cpa::{cpa_solve, decompose_extension_map, report_to_json, verify_cpa, SolveOptions, Verdict};
use cpa_core::grading::decompose_bilinear_space;
use cpa_core::linalg::{frac, int, Scalar};
use cpa_core::poly::{buchberger, Budget, Polynomial};
use cpa_core::{LieAlgebra, LinearMap, Matrix};

const GRADED: [&str; 4] = ["sl2_z1", "sl3_z1", "sl2_z2", "sl2_root"];

fn combination(coeffs: &[i64], vectors: &[Vec<Scalar>], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (c, v) in coeffs.iter().zip(vectors) {
        for (o, x) in out.iter_mut().zip(v) {
            *o += int(*c) * x;
        }
    }
    out
}

fn partial_map(phi: &BilinearMap, x: usize) -> LinearMap {
    let n = phi.dim();
    let mut m = Matrix::zeros(n, n);
    for y in 0..n {
        for k in 0..n {
            m[(k, y)] = phi.get(x, y, k).clone();
        }
    }
    LinearMap::new(m)
}

fn any_builtin() -> impl Strategy<Value = LieAlgebra> {
    prop::sample::select(vec!["sl2", "sl3", "heisenberg", "r2", "abelian2", "sl2_z2", "sl2_root"])
        .prop_map(|n| builtin_algebra(n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalars_stay_in_lowest_terms(p in -50i64..50, q in 1i64..50, r in -50i64..50, s in 1i64..50) {
        let x = frac(p, q) + frac(r, s) * frac(p, s);
        let g = num_integer::Integer::gcd(x.numer(), x.denom());
        prop_assert!(x.denom() > &Zero::zero());
        prop_assert!(g.is_one() || x.is_zero());
    }

    #[test]
    fn builtins_are_antisymmetric_and_satisfy_jacobi(l in any_builtin()) {
        let n = l.dim();
        let e = |i: usize| l.basis_vector(i);
        for i in 0..n {
            for j in 0..n {
                let a = l.bracket(&e(i), &e(j));
                let b = l.bracket(&e(j), &e(i));
                prop_assert!(a.iter().zip(&b).all(|(x, y)| (x + y).is_zero()));
                for k in 0..n {
                    let t1 = l.bracket(&e(i), &l.bracket(&e(j), &e(k)));
                    let t2 = l.bracket(&e(j), &l.bracket(&e(k), &e(i)));
                    let t3 = l.bracket(&e(k), &l.bracket(&e(i), &e(j)));
                    prop_assert!((0..n).all(|c| (&t1[c] + &t2[c] + &t3[c]).is_zero()));
                }
            }
        }
    }

    #[test]
    fn cocycle_combinations_satisfy_the_cocycle_identity(
        name in prop::sample::select(vec!["heisenberg", "r2", "abelian3", "sl2"]),
        coeffs in prop::collection::vec(-3i64..4, 6),
    ) {
        let l = builtin_algebra(name).unwrap();
        let n = l.dim();
        let basis: Vec<Vec<Scalar>> = l.two_cocycles().iter().map(|c| c.flatten()).collect();
        let xi = cpa_core::Cocycle2::from_flat(n, &combination(&coeffs, &basis, n * n));
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(xi.value(i, j), &-xi.value(j, i).clone());
                for k in 0..n {
                    let (x, y, z) = (l.basis_vector(i), l.basis_vector(j), l.basis_vector(k));
                    let s = xi.evaluate(&l.bracket(&x, &y), &z)
                        + xi.evaluate(&l.bracket(&y, &z), &x)
                        + xi.evaluate(&l.bracket(&z, &x), &y);
                    prop_assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn gradings_are_compatible(name in prop::sample::select(GRADED.to_vec())) {
        let g = builtin(name).unwrap().graded();
        let n = g.algebra.dim();
        for i in 0..n {
            for j in 0..n {
                for (k, _) in g.algebra.bracket_basis(i, j) {
                    prop_assert_eq!(
                        g.grading.group.reduce(g.grading.degrees[*k]),
                        g.grading.group.reduce(g.grading.degrees[i] + g.grading.degrees[j])
                    );
                }
            }
        }
    }

    #[test]
    fn homogeneous_components_of_elements_stay_in_the_space(
        name in prop::sample::select(GRADED.to_vec()),
        kind in 0usize..3,
        coeffs in prop::collection::vec(-3i64..4, 40),
    ) {
        let g = builtin(name).unwrap().graded();
        let space = match kind {
            0 => d_space(&g.algebra),
            1 => dcomm_space(&g.algebra),
            _ => c_space(&g.algebra),
        };
        let dec = decompose_bilinear_space(&space, &g.grading).unwrap();
        prop_assert_eq!(dec.total_dim(), space.len());
        let coeffs: Vec<Scalar> = (0..space.len()).map(|i| int(coeffs[i % coeffs.len()])).collect();
        let m = BilinearMap::linear_combination(space.dim, &coeffs, &space.basis);
        let mut sum = BilinearMap::zero(space.dim);
        for (deg, part) in cpa_core::grading::homogeneous_components(&m, &g.grading) {
            let inside = dec
                .components
                .get(&deg)
                .is_some_and(|c| BilinearMapSpace::span(space.dim, SpaceKind::Custom, c).contains(&part));
            prop_assert!(inside);
            sum.add_scaled(&Scalar::one(), &part);
        }
        prop_assert_eq!(sum, m);
    }

    #[test]
    fn d_space_partial_maps_are_derivations(l in any_builtin(), pick in 0usize..64) {
        let space = d_space(&l);
        let phi = &space.basis[pick % space.len()];
        for x in 0..l.dim() {
            prop_assert!(l.is_derivation(&partial_map(phi, x)));
        }
        let dc = dcomm_space(&l);
        prop_assert!(dc.basis.iter().all(BilinearMap::is_symmetric));
        prop_assert!(dc.is_subspace_of(&space));
    }

    #[test]
    fn truncated_algebras_are_commutative_associative_unital(
        nvars in 1usize..3,
        order in 1u32..4,
        a in prop::collection::vec(-3i64..4, 10),
        b in prop::collection::vec(-3i64..4, 10),
        c in prop::collection::vec(-3i64..4, 10),
    ) {
        let alg = truncated_polynomial_algebra_in(nvars, order).unwrap();
        let m = alg.dim();
        let v = |s: &[i64]| -> Vec<Scalar> { (0..m).map(|i| int(s[i % s.len()])).collect() };
        let (x, y, z) = (v(&a), v(&b), v(&c));
        prop_assert_eq!(alg.mul(&x, &y), alg.mul(&y, &x));
        prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
        prop_assert_eq!(alg.mul(alg.unit(), &x), x);
    }

    #[test]
    fn loop_window_agrees_with_the_loop_algebra(
        name in prop::sample::select(vec!["sl2_z1", "sl2_z2"]),
        bound in 1usize..4,
        picks in (0usize..3, -3i64..4, 0usize..3, -3i64..4),
    ) {
        let g = builtin(name).unwrap().graded();
        let w = loop_window(&g, bound).unwrap();
        let (x, i, y, j) = picks;
        let (Some(a), Some(b)) = (w.loop_element(x, i), w.loop_element(y, j)) else {
            return Ok(());
        };
        match w.bracket(a, b) {
            WindowBracket::Undefined => prop_assert!((i + j).unsigned_abs() as usize > bound),
            WindowBracket::Defined(v) => {
                prop_assert!((i + j).unsigned_abs() as usize <= bound);
                let expected: Vec<(usize, Scalar)> = g
                    .algebra
                    .bracket_basis(x, y)
                    .iter()
                    .map(|(k, c)| (w.loop_element(*k, i + j).unwrap(), c.clone()))
                    .collect();
                let mut got = v.to_vec();
                let mut expected = expected;
                got.sort_by_key(|e| e.0);
                expected.sort_by_key(|e| e.0);
                prop_assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn witt_window_agrees_with_the_witt_algebra(bound in 2usize..6, one_sided: bool, i in -6i64..7, j in -6i64..7) {
        let w = witt_window(bound, one_sided).unwrap();
        let find = |d: i64| (0..w.dim()).find(|&a| w.degrees()[a] == d);
        let (Some(a), Some(b)) = (find(i), find(j)) else { return Ok(()) };
        match (w.bracket(a, b), find(i + j)) {
            (WindowBracket::Undefined, None) => {}
            (WindowBracket::Defined(v), Some(k)) => {
                let expected: Vec<(usize, Scalar)> =
                    if i == j { Vec::new() } else { vec![(k, int(j - i))] };
                prop_assert_eq!(v.to_vec(), expected);
            }
            (WindowBracket::Defined(v), None) => prop_assert!(v.is_empty() && i == j),
            (WindowBracket::Undefined, Some(_)) => prop_assert!(false, "in-window bracket marked undefined"),
        }
    }

    #[test]
    fn extensions_validate_their_data(name in prop::sample::select(vec!["heisenberg", "r2", "abelian2", "abelian3"]), pick in 0usize..8) {
        let l = builtin_algebra(name).unwrap();
        let cocycles = l.two_cocycles();
        if !cocycles.is_empty() {
            let xi = &cocycles[pick % cocycles.len()];
            let ext = central_extension(&l, xi, "z").unwrap();
            prop_assert_eq!(ext.nontrivial, !l.is_coboundary(xi));
            prop_assert_eq!(ext.algebra.dim(), l.dim() + 1);
        }
        let ders = l.derivation_space();
        let d = &ders[pick % ders.len()];
        let ext = semidirect_by_derivation(&l, d, "D").unwrap();
        prop_assert_eq!(ext.nontrivial, !l.is_inner(d));
    }

    #[test]
    fn extension_decomposition_reassembles(entries in prop::collection::vec((0usize..10, 0usize..10, 0usize..10, -3i64..4), 0..30)) {
        let s = builtin_algebra("sl2").unwrap();
        let l = current_algebra(&s, &truncated_polynomial_algebra(3).unwrap()).unwrap();
        let ext = semidirect_by_derivation(&l, &euler_derivation(3, 3), "d").unwrap();
        let entries: Vec<(usize, usize, usize, Scalar)> =
            entries.into_iter().map(|(i, j, k, c)| (i, j, k, int(c))).collect();
        let phi = BilinearMap::from_entries(10, &entries);
        prop_assert_eq!(decompose_extension_map(&phi, &ext).reassemble(), phi);
    }

    #[test]
    fn polynomials_are_canonical(terms in prop::collection::vec((0u32..3, 0u32..3, -2i64..3), 0..8)) {
        let p: Polynomial = terms
            .iter()
            .map(|&(a, b, c)| {
                Polynomial::var(2, 0).pow(a).mul(&Polynomial::var(2, 1).pow(b)).scale(&int(c))
            })
            .fold(Polynomial::zero(2), |acc, t| acc.add(&t));
        prop_assert!(p.terms().iter().all(|(_, c)| !c.is_zero()));
        prop_assert!(p.terms().windows(2).all(|w| w[0].0 > w[1].0) || p.terms().windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn reduced_groebner_basis_is_unique(
        gens in prop::collection::vec(prop::collection::vec((0u32..3, 0u32..3, -2i64..3), 1..4), 1..4),
        rotate in 0usize..4,
    ) {
        let polys: Vec<Polynomial> = gens
            .iter()
            .map(|terms| {
                terms.iter().fold(Polynomial::zero(2), |acc, &(a, b, c)| {
                    acc.add(&Polynomial::var(2, 0).pow(a).mul(&Polynomial::var(2, 1).pow(b)).scale(&int(c)))
                })
            })
            .collect();
        let mut other = polys.clone();
        other.rotate_left(rotate % polys.len());
        other.reverse();
        let budget = Budget::default();
        prop_assert_eq!(buchberger(&polys, 2, &budget).unwrap(), buchberger(&other, 2, &budget).unwrap());
    }

    #[test]
    fn solver_outputs_verify_and_serialize_deterministically(
        name in prop::sample::select(vec!["heisenberg", "r2", "abelian1", "abelian2", "sl2"]),
    ) {
        let l = builtin_algebra(name).unwrap();
        let rep = cpa_solve(&l, &SolveOptions::default()).unwrap();
        let mut maps = rep.witnesses.clone();
        if let Verdict::LinearSpace(b) = &rep.verdict {
            maps.extend(b.iter().cloned());
        }
        for m in &maps {
            prop_assert!(verify_cpa(&l, m, None).is_ok());
        }
        let again = cpa_solve(&l, &SolveOptions::default()).unwrap();
        let a = serde_json::to_string(&report_to_json(&l, &rep, false)).unwrap();
        let b = serde_json::to_string(&report_to_json(&l, &again, false)).unwrap();
        prop_assert_eq!(a, b);
    }
}
