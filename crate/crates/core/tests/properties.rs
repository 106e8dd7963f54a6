mod common;

use common::*;
use gkz::homogenize::face_invariants_preserved;
use gkz::lattice::{kernel_lattice_basis, IntegerMatrix};
use gkz::number::{GQ, Q};
use gkz::series::{apply_weyl_monomial, hadamard_product, series_antiderivative, MixedSeries};
use gkz::strata::{build_arrangement, stratum_index};
use gkz::toric::{initial_ideal, standard_pairs, toric_generators, weight_groebner_basis};
use gkz::triangulation::{inhomogeneous_triangulation, regular_triangulation};
use proptest::prelude::*;

fn homogeneous_matrix() -> impl Strategy<Value = IntegerMatrix> {
    (proptest::collection::vec(0i64..4, 4), proptest::collection::vec(0i64..3, 4)).prop_filter_map(
        "rank 3",
        |(r1, r2)| IntegerMatrix::new(vec![vec![1; 4], r1, r2]).ok(),
    )
}

fn positive_weight(n: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec((1i64..20, 1i64..5), n)
        .prop_map(|v| v.into_iter().map(|(a, b)| Q::new(a.into(), b.into())).collect())
}

fn rational() -> impl Strategy<Value = GQ> {
    (-30i64..30, 1i64..8).prop_map(|(a, b)| gr(a, b))
}

/// A series on three variables with non-integer base and logarithms.
fn mixed_series() -> impl Strategy<Value = MixedSeries> {
    let base = proptest::collection::vec((-6i64..6).prop_map(|a| gr(3 * a + 1, 3)), 3);
    let term = (
        proptest::collection::vec(-2i64..3, 3),
        proptest::collection::vec(0u32..3, 3),
        rational(),
    );
    (base, proptest::collection::vec(term, 1..6)).prop_map(|(base, terms)| {
        let mut s = MixedSeries::new(base, qs(&[1, 2, 3]), Q::from_integer(40.into()));
        for (u, d, c) in terms {
            s.add_term(u, d, &c);
        }
        s
    })
}

fn log_free_series() -> impl Strategy<Value = MixedSeries> {
    mixed_series().prop_map(|s| {
        let mut out = MixedSeries::new(s.base.clone(), s.weight.clone(), s.truncation.clone());
        for ((u, _), c) in &s.terms {
            out.add_term(u.clone(), vec![0; 3], c);
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn toric_generators_lie_in_the_kernel(a in homogeneous_matrix()) {
        for b in toric_generators(&a) {
            prop_assert_eq!(a.mul_vec(&b.u_plus), a.mul_vec(&b.u_minus));
            prop_assert!(b.u_plus.iter().chain(&b.u_minus).all(|&x| x >= 0));
        }
    }

    #[test]
    fn kernel_basis_spans_the_kernel(a in homogeneous_matrix(), nu in proptest::collection::vec(-4i64..5, 1)) {
        let kb = kernel_lattice_basis(&a);
        prop_assert_eq!(kb.m(), 1);
        let u = kb.combine(&nu);
        prop_assert!(a.mul_vec(&u).iter().all(|&x| x == 0));
        prop_assert_eq!(kb.coordinates(&u), Some(nu));
    }

    #[test]
    fn groebner_leading_terms_are_heavier(w in positive_weight(4)) {
        let gens = toric_generators(&gauss_matrix());
        if let Ok(gb) = weight_groebner_basis(&gens, &w) {
            for b in gb {
                let wt = |v: &[i64]| v.iter().zip(&w).map(|(&x, y)| y * Q::from_integer(x.into())).sum::<Q>();
                prop_assert!(wt(&b.u_plus) > wt(&b.u_minus));
            }
        }
    }

    #[test]
    fn initial_ideal_is_invariant_under_scaling(w in positive_weight(3), num in 1i64..9, den in 1i64..9) {
        let gens = toric_generators(&conic());
        let c = Q::new(num.into(), den.into());
        let scaled: Vec<Q> = w.iter().map(|x| x * &c).collect();
        let i1 = initial_ideal(&gens, &w).ok();
        let i2 = initial_ideal(&gens, &scaled).ok();
        prop_assert_eq!(i1, i2);
    }

    #[test]
    fn standard_pairs_cover_the_standard_monomials(
        w in positive_weight(4),
        v in proptest::collection::vec(0i64..5, 4),
    ) {
        let gens = toric_generators(&gauss_matrix());
        if let Ok(m) = initial_ideal(&gens, &w) {
            let pairs = standard_pairs(&m);
            let covered = pairs.iter().any(|p| p.covers(&v));
            prop_assert_eq!(covered, !m.contains(&v));
        }
    }

    #[test]
    fn triangulation_is_invariant_under_scaling_and_linear_shift(
        w in positive_weight(4),
        num in 1i64..9,
        y in proptest::collection::vec(-3i64..4, 3),
    ) {
        let a = gauss_matrix();
        let shift = a.transpose();
        let moved: Vec<Q> = w
            .iter()
            .zip(&shift)
            .map(|(x, col)| {
                let l: i64 = col.iter().zip(&y).map(|(p, q)| p * q).sum();
                x * Q::from_integer(num.into()) + Q::from_integer(l.into())
            })
            .collect();
        let t1 = regular_triangulation(&a, &w).map(|t| t.maximal_simplices).ok();
        let t2 = regular_triangulation(&a, &moved).map(|t| t.maximal_simplices).ok();
        prop_assert_eq!(t1, t2);
    }

    #[test]
    fn strata_are_periodic(
        w in positive_weight(4),
        beta in proptest::collection::vec((-4i64..5, 1i64..4), 3),
        k in proptest::collection::vec(-5i64..6, 3),
    ) {
        if let Ok(t) = regular_triangulation(&gauss_matrix(), &w) {
            let arr = build_arrangement(&t);
            let b: Vec<GQ> = beta.iter().map(|&(p, q)| gr(p, q)).collect();
            let shifted: Vec<GQ> = b.iter().zip(&k).map(|(x, &m)| x + &GQ::from_int(m)).collect();
            prop_assert_eq!(stratum_index(&b, &arr).unwrap(), stratum_index(&shifted, &arr).unwrap());
        }
    }

    #[test]
    fn inhomogeneous_strata_are_periodic(
        w in positive_weight(3),
        beta in (-9i64..9, 1i64..5),
        k in -5i64..6,
    ) {
        let a = mat(&[&[1, 2, 3]]);
        if let Ok(t) = inhomogeneous_triangulation(&a, &w) {
            let arr = build_arrangement(&t);
            let b = vec![gr(beta.0, beta.1)];
            let s = vec![&b[0] + &GQ::from_int(k)];
            prop_assert_eq!(stratum_index(&b, &arr).unwrap().index, stratum_index(&s, &arr).unwrap().index);
        }
    }

    #[test]
    fn derivative_undoes_antiderivative(s in mixed_series(), j in 0usize..3) {
        let anti = series_antiderivative(&s, j).unwrap();
        let mut e = vec![0i64; 3];
        e[j] = 1;
        let back = apply_weyl_monomial(&anti, &[0, 0, 0], &e).rebase(&s.base).unwrap();
        prop_assert_eq!(back.terms, s.terms);
    }

    #[test]
    fn hadamard_product_is_commutative(s1 in log_free_series(), s2 in log_free_series()) {
        let s2 = MixedSeries { base: s1.base.clone(), ..s2 };
        let p = hadamard_product(&s1, &s2).unwrap();
        let r = hadamard_product(&s2, &s1).unwrap();
        prop_assert_eq!(p.terms, r.terms);
    }

    #[test]
    fn homogenization_preserves_face_invariants(
        cols in proptest::collection::vec(proptest::collection::vec(-3i64..4, 2), 4),
        mask in 0u8..16,
    ) {
        let rows = vec![cols.iter().map(|c| c[0]).collect(), cols.iter().map(|c| c[1]).collect()];
        if let Ok(a) = IntegerMatrix::new(rows) {
            let face: Vec<usize> = (0..4).filter(|j| mask & (1 << j) != 0).collect();
            prop_assert!(face_invariants_preserved(&a, &face).preserved());
        }
    }
}
