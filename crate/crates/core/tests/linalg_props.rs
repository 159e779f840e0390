//! Property tests for the exact linear algebra layer.

use framelink::matrix::{bigvec, IntegerMatrix};
use framelink::smith::{cokernel_structure, smith_normal_form, solve_diophantine, verify_smith};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c).prop_map(move |entries| {
            IntegerMatrix::from_fn(r, c, |i, j| BigInt::from(entries[i * c + j]))
        })
    })
}

proptest! {
    #[test]
    fn smith_invariants_hold(a in small_matrix()) {
        let snf = smith_normal_form(&a);
        prop_assert!(verify_smith(&a, &snf).is_ok(), "{:?}", verify_smith(&a, &snf));
    }

    #[test]
    fn smith_is_deterministic(a in small_matrix()) {
        prop_assert_eq!(smith_normal_form(&a), smith_normal_form(&a));
    }

    #[test]
    fn invariant_factor_product_is_det(entries in proptest::collection::vec(-9i64..=9, 9)) {
        let a = IntegerMatrix::from_fn(3, 3, |i, j| BigInt::from(entries[i * 3 + j]));
        let det = a.determinant().abs();
        if !det.is_zero() {
            let snf = smith_normal_form(&a);
            let prod: BigInt = snf.invariant_factors().iter().product();
            prop_assert_eq!(prod, det);
        }
    }

    #[test]
    fn solve_finds_constructed_solutions(
        entries in proptest::collection::vec(-9i64..=9, 12),
        x0 in proptest::collection::vec(-9i64..=9, 4),
    ) {
        let a = IntegerMatrix::from_fn(3, 4, |i, j| BigInt::from(entries[i * 4 + j]));
        let b = a.mul_vec(&bigvec(&x0));
        let x = solve_diophantine(&a, &b).unwrap();
        let x = x.expect("constructed system must be solvable");
        prop_assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn solutions_returned_actually_solve(
        entries in proptest::collection::vec(-9i64..=9, 12),
        b in proptest::collection::vec(-30i64..=30, 3),
    ) {
        let a = IntegerMatrix::from_fn(3, 4, |i, j| BigInt::from(entries[i * 4 + j]));
        if let Some(x) = solve_diophantine(&a, &bigvec(&b)).unwrap() {
            prop_assert_eq!(a.mul_vec(&x), bigvec(&b));
        }
    }

    #[test]
    fn cokernel_invariant_under_unimodular_factors(
        a in small_matrix(),
        row_ops in proptest::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..8),
        col_ops in proptest::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..8),
    ) {
        let mut left = IntegerMatrix::identity(a.rows());
        for &(i, j, q) in &row_ops {
            let (i, j) = (i % a.rows(), j % a.rows());
            if i != j {
                left.add_row_multiple(i, j, &BigInt::from(q));
            }
        }
        let mut right = IntegerMatrix::identity(a.cols());
        for &(i, j, q) in &col_ops {
            let (i, j) = (i % a.cols(), j % a.cols());
            if i != j {
                right.add_col_multiple(i, j, &BigInt::from(q));
            }
        }
        prop_assert_eq!(left.determinant().abs(), BigInt::from(1));
        prop_assert_eq!(right.determinant().abs(), BigInt::from(1));
        let transformed = left.mul(&a).mul(&right);
        prop_assert_eq!(cokernel_structure(&a), cokernel_structure(&transformed));
    }
}
