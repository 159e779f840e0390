//! Property tests for the classification formulas and the Euler-class
//! calculus.

use framelink::matrix::{bigvec, IntegerMatrix};
use framelink::{
    divisibility, euler_class, fiber, steenrod_subgroup, CobordismExpression, HomologyClass,
    ImmersedSurface, Piece,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Random torsion moduli forming a divisibility chain, each in 2..=9.
fn torsion_chain() -> impl Strategy<Value = Vec<BigInt>> {
    prop_oneof![
        Just(vec![]),
        (2i64..=9).prop_map(|t| vec![BigInt::from(t)]),
        (2i64..=3, 1i64..=3).prop_map(|(t, m)| {
            let t2 = t * m;
            vec![BigInt::from(t), BigInt::from(t2)]
        }),
    ]
}

fn random_class() -> impl Strategy<Value = HomologyClass> {
    (0usize..=4, torsion_chain()).prop_flat_map(|(rank, moduli)| {
        let res_bound = 9i64;
        (
            proptest::collection::vec(-30i64..=30, rank),
            proptest::collection::vec(0i64..=res_bound, moduli.len()),
            Just(moduli),
        )
            .prop_map(|(free, torsion, moduli)| {
                HomologyClass::from_parts(bigvec(&free), bigvec(&torsion), moduli).unwrap()
            })
    })
}

/// Brute force per the definition: the largest d (bounded by the largest
/// coordinate) for which the free projection is d times another vector.
fn divisibility_bruteforce(alpha: &HomologyClass) -> BigInt {
    let max = alpha
        .free_part()
        .iter()
        .map(|a| a.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let mut d = max.clone();
    while d > BigInt::zero() {
        if alpha.free_part().iter().all(|a| (a % &d).is_zero()) {
            return d;
        }
        d -= 1;
    }
    BigInt::zero()
}

proptest! {
    #[test]
    fn divisibility_equals_bruteforce(alpha in random_class()) {
        prop_assert_eq!(divisibility(&alpha), divisibility_bruteforce(&alpha));
    }

    #[test]
    fn steenrod_subgroup_is_twice_divisibility(alpha in random_class()) {
        prop_assert_eq!(steenrod_subgroup(&alpha), divisibility(&alpha) * 2);
    }

    #[test]
    fn fiber_scales_on_torsion_free_classes(
        free in proptest::collection::vec(-10i64..=10, 1..=4),
        k in -6i64..=6,
    ) {
        let alpha = HomologyClass::free_class(bigvec(&free));
        let scaled = alpha.scale(&BigInt::from(k));
        let expected: BigInt = divisibility(&alpha) * 2 * k.abs();
        prop_assert_eq!(fiber(&scaled).modulus().clone(), expected);
    }

    #[test]
    fn euler_class_parity(
        coords in proptest::collection::vec(-6i64..=6, 3),
        diag in proptest::collection::vec(-4i64..=4, 3),
        sigma in -10i64..=10,
    ) {
        let q = IntegerMatrix::diagonal(&diag);
        let s = ImmersedSurface::closed4(bigvec(&coords), q.clone(), sigma);
        let e = euler_class(&s).unwrap();
        let pairing: BigInt = bigvec(&coords)
            .iter()
            .zip(q.mul_vec(&bigvec(&coords)))
            .map(|(a, b)| a * b)
            .sum();
        prop_assert_eq!(e.mod_floor(&BigInt::from(2)), pairing.mod_floor(&BigInt::from(2)));
    }

    #[test]
    fn even_forms_give_even_euler_classes(
        coords in proptest::collection::vec(-6i64..=6, 2),
        off_diag in -4i64..=4,
        sigma in -10i64..=10,
    ) {
        // hyperbolic-style even form [[0, b], [b, 0]]
        let q = IntegerMatrix::from_rows(&[vec![0, off_diag], vec![off_diag, 0]]);
        let s = ImmersedSurface::closed4(bigvec(&coords), q, sigma);
        let e = euler_class(&s).unwrap();
        prop_assert!((e % BigInt::from(2)).is_zero());
    }

    #[test]
    fn stacked_euler_class_is_a_sum(values in proptest::collection::vec(-50i64..=50, 0..10)) {
        let pieces: Vec<Piece> = values
            .iter()
            .enumerate()
            .map(|(i, &v)| Piece::given(format!("p{i}"), v))
            .collect();
        let expr = CobordismExpression::of(pieces);
        let expected: BigInt = values.iter().map(|&v| BigInt::from(v)).sum();
        prop_assert_eq!(expr.euler_total(), expected.clone());
        prop_assert_eq!(expr.reflect().euler_total(), -expected);
        prop_assert_eq!(expr.reflect().reflect(), expr);
    }

    #[test]
    fn stacking_splits_arbitrarily(
        values in proptest::collection::vec(-50i64..=50, 1..10),
        cut in 0usize..10,
    ) {
        let cut = cut % values.len();
        let piece = |(i, &v): (usize, &i64)| Piece::given(format!("p{i}"), v);
        let left = CobordismExpression::of(values.iter().enumerate().take(cut).map(piece).collect());
        let right = CobordismExpression::of(values.iter().enumerate().skip(cut).map(piece).collect());
        let whole = CobordismExpression::of(values.iter().enumerate().map(piece).collect());
        prop_assert_eq!(left.stack(&right), whole.clone());
        prop_assert_eq!(
            left.euler_total() + right.euler_total(),
            whole.euler_total()
        );
    }
}
