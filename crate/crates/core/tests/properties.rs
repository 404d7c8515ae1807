use gensudoku::problem::{first_duplicate_group, groups_are_permutations};
use gensudoku::{
    gsgn, pairwise_sign_sum, reconstruct, sign_sum_closed_form, verify_solution, Assignment,
    ConstraintMatrix, DifferenceMatrix, Error, Partition, Permutation, ProblemSpec, SignVector,
};
use proptest::prelude::*;

fn perm_of(k: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=k).collect::<Vec<_>>()).prop_shuffle()
}

fn values_perm(n: usize) -> impl Strategy<Value = Vec<i64>> {
    Just((1..=n as i64).collect::<Vec<_>>()).prop_shuffle()
}

/// `n` together with a random permutation of `{1, ..., n²}`.
fn sized_perm(lo: usize, hi: usize) -> impl Strategy<Value = (usize, Permutation)> {
    (lo..=hi).prop_flat_map(|n| {
        perm_of(n * n).prop_map(move |im| (n, Permutation::from_images(&im).unwrap()))
    })
}

/// Partition into `n` random groups of `n` cells.
fn partition(lo: usize, hi: usize) -> impl Strategy<Value = Partition> {
    (lo..=hi).prop_flat_map(|n| {
        perm_of(n * n).prop_map(move |cells| {
            Partition::new(n, cells.chunks(n).map(<[usize]>::to_vec).collect()).unwrap()
        })
    })
}

#[test]
fn row_counts_and_kernel() {
    for n in 1..=12 {
        let a = DifferenceMatrix::new(n).unwrap();
        assert_eq!(a.row_count(), gensudoku::triangular_sum(n).unwrap());
        assert!(a.apply(&vec![1; n]).unwrap().iter().all(|&v| v == 0));
    }
}

#[test]
fn rank_is_n_minus_one() {
    for n in 2..=12 {
        assert_eq!(DifferenceMatrix::new(n).unwrap().rank(), n - 1);
    }
}

#[test]
fn row_pairs_biject_onto_ordered_pairs() {
    for n in 1..=12 {
        let rows: Vec<(usize, usize)> = DifferenceMatrix::new(n)
            .unwrap()
            .rows()
            .iter()
            .map(|r| (r.plus, r.minus))
            .collect();
        let mut expected = Vec::new();
        for p in 1..=n {
            for m in p + 1..=n {
                expected.push((p, m));
            }
        }
        let mut sorted = rows.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), rows.len());
        assert_eq!(sorted, expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sparse_matches_dense(
        (n, perm, x, y) in (2usize..=9).prop_flat_map(|n| {
            let rows = n * n * (n - 1) / 2;
            (
                Just(n),
                perm_of(n * n),
                prop::collection::vec(-100i64..=100, n * n),
                prop::collection::vec(-100i64..=100, rows),
            )
        })
    ) {
        let c = ConstraintMatrix::new(n, Permutation::from_images(&perm).unwrap()).unwrap();
        let dense = c.to_dense();
        prop_assert_eq!(c.apply(&x).unwrap(), dense.mul_vec(&x).unwrap());
        prop_assert_eq!(c.transpose_product(&y).unwrap(), dense.transpose_mul_vec(&y).unwrap());
        let a = DifferenceMatrix::new(n).unwrap();
        let ad = a.to_dense();
        prop_assert_eq!(a.apply(&x[..n]).unwrap(), ad.mul_vec(&x[..n]).unwrap());
        let s = n * (n - 1) / 2;
        prop_assert_eq!(a.apply_transpose(&y[..s]).unwrap(), ad.transpose_mul_vec(&y[..s]).unwrap());
    }

    #[test]
    fn nonvanishing_iff_distinct(x in (2usize..=12).prop_flat_map(|n| prop::collection::vec(-50i64..=50, n))) {
        let a = DifferenceMatrix::new(x.len()).unwrap();
        let no_zero = a.apply(&x).unwrap().iter().all(|&v| v != 0);
        let mut s = x.clone();
        s.sort_unstable();
        s.dedup();
        prop_assert_eq!(no_zero, s.len() == x.len());
    }

    #[test]
    fn apply_then_inverse_is_identity(im in (1usize..=30).prop_flat_map(perm_of), seed in any::<u64>()) {
        let p = Permutation::from_images(&im).unwrap();
        let x: Vec<u64> = (0..im.len() as u64).map(|i| i.wrapping_mul(seed)).collect();
        prop_assert_eq!(p.inverse().apply_to_vector(&p.apply_to_vector(&x).unwrap()).unwrap(), x);
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
        prop_assert_eq!(Permutation::identity(1).apply_to_vector(&[7]).unwrap(), vec![7]);
    }

    #[test]
    fn permuted_matrix_is_block_matrix_on_inverse_permuted_vector(
        ((n, perm), x, signs) in sized_perm(2, 4).prop_flat_map(|(n, p)| {
            (
                Just((n, p)),
                prop::collection::vec(-50i64..=50, n * n),
                prop::collection::vec(prop::bool::ANY, n * n * (n - 1) / 2),
            )
        })
    ) {
        let base = ConstraintMatrix::block_diagonal(n).unwrap();
        let c = ConstraintMatrix::new(n, perm.clone()).unwrap();
        prop_assert_eq!(
            c.apply(&x).unwrap(),
            base.apply(&perm.inverse().apply_to_vector(&x).unwrap()).unwrap()
        );
        let lam = SignVector::new(signs.iter().map(|&b| if b { 1 } else { -1 }).collect()).unwrap();
        prop_assert_eq!(
            c.apply_transpose(&lam).unwrap(),
            perm.apply_to_vector(&base.apply_transpose(&lam).unwrap()).unwrap()
        );
    }

    #[test]
    fn partition_rows_stay_inside_groups(part in partition(2, 6)) {
        let c = ConstraintMatrix::new(part.n(), part.to_permutation()).unwrap();
        let group_of = |cell: usize| part.groups().iter().position(|g| g.contains(&cell)).unwrap();
        for (i, r) in c.row_pairs().iter().enumerate() {
            let g = group_of(r.plus);
            prop_assert_eq!(g, group_of(r.minus));
            prop_assert_eq!(g, i / (part.n() * (part.n() - 1) / 2));
        }
    }

    #[test]
    fn sign_sum_equals_matrix_route(x in (2usize..=10).prop_flat_map(|n| {
        prop::collection::hash_set(-1000i64..=1000, n).prop_map(|s| s.into_iter().collect::<Vec<_>>())
    })) {
        let a = DifferenceMatrix::new(x.len()).unwrap();
        let lam = gsgn(&a.apply(&x).unwrap()).unwrap();
        let t = a.apply_transpose(lam.entries()).unwrap();
        for i in 1..=x.len() {
            prop_assert_eq!(t[i - 1], pairwise_sign_sum(&x, i).unwrap());
        }
    }

    #[test]
    fn sign_sum_closed_form_on_permutations(x in (1usize..=10).prop_flat_map(values_perm)) {
        let n = x.len() as i64;
        for i in 1..=x.len() {
            prop_assert_eq!(pairwise_sign_sum(&x, i).unwrap(), sign_sum_closed_form(x[i - 1], n));
        }
    }

    #[test]
    fn reconstruction_recovers_block_valid_vectors(
        ((n, perm), blocks) in sized_perm(2, 9).prop_flat_map(|(n, p)| {
            (Just((n, p)), prop::collection::vec(values_perm(n), n))
        })
    ) {
        let y: Vec<i64> = blocks.concat();
        let x = Assignment::new(n, perm.apply_to_vector(&y).unwrap()).unwrap();
        let c = ConstraintMatrix::new(n, perm).unwrap();
        prop_assert_eq!(reconstruct(&c, &x).unwrap(), x.cells);
    }

    #[test]
    fn reconstruction_ignores_group_and_row_order(
        ((n, perm), blocks, reorder) in sized_perm(2, 6).prop_flat_map(|(n, p)| {
            let distinct = prop::collection::hash_set(-50i64..=50, n).prop_map(|s| s.into_iter().collect::<Vec<_>>());
            (Just((n, p)), prop::collection::vec(distinct, n), perm_of(n).prop_flat_map(move |order| {
                prop::collection::vec(perm_of(n), n).prop_map(move |inner| (order.clone(), inner))
            }))
        })
    ) {
        let x = Assignment::new(n, perm.apply_to_vector(&blocks.concat()).unwrap()).unwrap();
        let (order, inner) = reorder;
        // Block b of the reordered matrix is block order[b] of the original,
        // its cells visited in order inner[b].
        let images: Vec<usize> = (0..n)
            .flat_map(|b| {
                let src = order[b] - 1;
                inner[b].iter().map(move |&k| src * n + k).collect::<Vec<_>>()
            })
            .collect();
        let sigma = Permutation::from_images(&images).unwrap();
        let c = ConstraintMatrix::new(n, perm.clone()).unwrap();
        let d = ConstraintMatrix::new(n, perm.compose(&sigma).unwrap()).unwrap();
        prop_assert_eq!(reconstruct(&c, &x).unwrap(), reconstruct(&d, &x).unwrap());
    }

    #[test]
    fn sign_fails_exactly_on_group_duplicates(
        ((n, perm), vals) in sized_perm(2, 5).prop_flat_map(|(n, p)| {
            (Just((n, p)), prop::collection::vec(1i64..=n as i64, n * n))
        })
    ) {
        let c = ConstraintMatrix::new(n, perm).unwrap();
        let s = gsgn(&c.apply(&vals).unwrap());
        let dup = first_duplicate_group(&c, &vals);
        prop_assert_eq!(s.is_err(), dup.is_some());
        if let Err(Error::NotApplicable { index }) = s {
            let s_n = n * (n - 1) / 2;
            prop_assert_eq!((index - 1) / s_n + 1, dup.unwrap());
        }
    }

    #[test]
    fn halving_is_always_exact(
        ((n, perm), vals) in sized_perm(2, 6).prop_flat_map(|(n, p)| {
            (Just((n, p)), prop::collection::vec(-20i64..=20, n * n))
        })
    ) {
        let c = ConstraintMatrix::new(n, perm).unwrap();
        let x = Assignment::new(n, vals).unwrap();
        match reconstruct(&c, &x) {
            Ok(_) | Err(Error::NotApplicable { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn range_and_nonvanishing_iff_groups_are_permutations(
        (n, vals) in (2usize..=3).prop_flat_map(|n| (Just(n), prop::collection::vec(1i64..=n as i64 + 1, n * n)))
    ) {
        let p = ProblemSpec::latin(n, vec![]).unwrap();
        let x = Assignment::new(n, vals).unwrap();
        prop_assert_eq!(verify_solution(&p, &x).is_ok(), groups_are_permutations(&p, &x.cells));
    }
}
