//! Property tests over random exact inputs.

mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use schurlab_core::bounds::{bound_e1, bound_e2};
use schurlab_core::catalog::{enumerate, CatalogEntry};
use schurlab_core::dsl::{parse_presentation, to_dsl};
use schurlab_core::free::FreeNilpotentAlgebra;
use schurlab_core::linalg::{kernel_basis, rref, EchelonBuilder};
use schurlab_core::multiplier::MultiplierReport;
use schurlab_core::{Execution, Matrix, Scalar, Subspace};

fn rational() -> impl Strategy<Value = Scalar> {
    (
        -4i64..=4,
        prop_oneof![Just(1i64), Just(1), Just(2), Just(3)],
    )
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Random matrices with a bias towards rank deficiency (some rows are combinations).
fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        (
            prop::collection::vec(prop::collection::vec(rational(), c), r),
            prop::collection::vec((0..r, 0..r, rational()), 0..r),
        )
            .prop_map(move |(mut rows, mixes)| {
                for (dst, src, f) in mixes {
                    if dst != src {
                        let add: Vec<Scalar> = rows[src].iter().map(|v| v * &f).collect();
                        rows[dst] = add;
                    }
                }
                Matrix::from_rows(c, rows).unwrap()
            })
    })
}

fn subspace(ambient: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(prop::collection::vec(rational(), ambient), 0..=ambient)
        .prop_map(move |rows| Subspace::from_dense_rows(ambient, &rows).unwrap())
}

fn echelon_rank(m: &Matrix) -> usize {
    let mut b = EchelonBuilder::new(m.cols());
    for row in m.sparse_rows() {
        b.insert(&row);
    }
    b.dim()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_routes_agree(m in matrix(6)) {
        let (r, rank) = rref(&m);
        prop_assert_eq!(rank, echelon_rank(&m));
        prop_assert_eq!(rank, common::rank(m.row_vectors()));
        prop_assert_eq!(r.rank(), rank);
    }

    #[test]
    fn kernel_and_rank_fill_columns(m in matrix(6)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.dim() + m.rank(), m.cols());
        for v in k.rows() {
            let image = m.mul_vec(&v.to_dense(m.cols())).unwrap();
            prop_assert!(image.iter().all(|x| *x == Scalar::from_integer(0.into())));
        }
    }

    #[test]
    fn grassmann_identity((a, b) in (1usize..=6).prop_flat_map(|n| (subspace(n), subspace(n)))) {
        let sum = a.sum(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(a.dim() + b.dim(), sum.dim() + meet.dim());
        prop_assert!(meet.is_subspace_of(&a).unwrap() && meet.is_subspace_of(&b).unwrap());
    }

    #[test]
    fn canonical_form_ignores_spanning_set(
        (s, mix) in (1usize..=5).prop_flat_map(|n| (subspace(n), prop::collection::vec(rational(), 0..25)))
    ) {
        // Respan with invertible combinations of the basis rows.
        let rows = s.rows().to_vec();
        let mut respanned = rows.clone();
        let k = rows.len();
        for (t, f) in mix.iter().enumerate() {
            if k > 1 {
                let (dst, src) = (t % k, (t + 1) % k);
                let add = respanned[src].clone();
                respanned[dst].add_scaled(f, &add);
            }
        }
        respanned.extend(rows.iter().cloned());
        let rebuilt = Subspace::from_spanning(s.ambient(), respanned);
        prop_assert_eq!(rebuilt, s);
    }

    #[test]
    fn e2_is_monotone_in_class(n in 4usize..=12, m_off in 0usize..10, c_off in 0usize..10) {
        let m = 1 + m_off % (n - 2);
        let c = 2 + c_off % (n - 2);
        prop_assert!(bound_e2(n, m, c).unwrap() <= bound_e1(n, m).unwrap());
        if c + 1 < n {
            prop_assert!(bound_e2(n, m, c + 1).unwrap() <= bound_e2(n, m, c).unwrap());
        }
    }
}

fn free(d: usize, s: usize) -> FreeNilpotentAlgebra {
    FreeNilpotentAlgebra::new(d, s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn collection_is_antisymmetric(d in 2usize..=3, s in 2usize..=5, a in 0usize..200, b in 0usize..200) {
        let f = free(d, s);
        let (a, b) = (a % f.dim(), b % f.dim());
        prop_assert_eq!(f.collect(a, b), f.collect(b, a).negated());
        if a == b {
            prop_assert!(f.collect(a, b).is_zero());
        }
    }
}

fn catalog() -> Vec<CatalogEntry> {
    enumerate(6).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn basis_change_preserves_series(index in 0usize..1000, seed in any::<u64>()) {
        let entries = catalog();
        let e = &entries[index % entries.len()];
        let p = common::BasisChanges::new(seed).next(e.algebra.dim());
        let moved = e.algebra.change_basis(&p).unwrap();
        prop_assert!(moved.validate().is_ok());
        let (a, b) = (e.algebra.series().unwrap().report(), moved.series().unwrap().report());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn multiplier_matches_oracle_after_basis_change(index in 0usize..1000, seed in any::<u64>()) {
        let entries = catalog();
        let e = &entries[index % entries.len()];
        let p = common::BasisChanges::new(seed).next(e.algebra.dim());
        let moved = e.algebra.change_basis(&p).unwrap();
        let r = MultiplierReport::compute_with(&moved, Execution::Sequential).unwrap();
        prop_assert_eq!(r.dim_m, common::multiplier_dim(&moved));
        prop_assert_eq!(r.dim_exterior_center, common::exterior_center_dim(&moved));
    }

    #[test]
    fn presentation_text_round_trips(index in 0usize..1000, seed in any::<u64>()) {
        let entries = catalog();
        let e = &entries[index % entries.len()];
        let p = common::BasisChanges::new(seed).next(e.algebra.dim());
        let moved = e.algebra.change_basis(&p).unwrap();
        let text = to_dsl(&moved);
        let parsed = parse_presentation(&text).unwrap();
        prop_assert_eq!(parsed.structure_constants(), moved.structure_constants());
        prop_assert_eq!(to_dsl(&parsed), text);
    }

    #[test]
    fn direct_sums_add_series(i in 0usize..1000, j in 0usize..1000) {
        let entries = enumerate(4).unwrap();
        let (a, b) = (&entries[i % entries.len()].algebra, &entries[j % entries.len()].algebra);
        let (ra, rb) = (a.series().unwrap().report(), b.series().unwrap().report());
        let rs = a.direct_sum(b).series().unwrap().report();
        let len = ra.gamma_dims.len().max(rb.gamma_dims.len());
        for k in 0..len {
            let g = |v: &Vec<usize>| v.get(k).copied().unwrap_or(0);
            prop_assert_eq!(g(&rs.gamma_dims), g(&ra.gamma_dims) + g(&rb.gamma_dims));
        }
        prop_assert_eq!(rs.center_dim, ra.center_dim + rb.center_dim);
    }
}
