//! End-to-end consistency: classification tables against the link
//! calculus, and the link calculus against the Euler-class replays.

use std::sync::OnceLock;

use framelink::matrix::bigvec;
use framelink::{
    classify, divisibility, fiber, ingest_geometric, replay_injectivity, torus_classification,
    FramedLinkClass, HomologyClass, Manifold,
};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn t3() -> &'static Manifold {
    static T3: OnceLock<Manifold> = OnceLock::new();
    T3.get_or_init(Manifold::torus3)
}

#[test]
fn torus_formula_agrees_with_full_pipeline() {
    let table = classify(t3());
    for p in -3i64..=3 {
        for q in -3i64..=3 {
            for r in -3i64..=3 {
                let alpha = table.h1().class(bigvec(&[p, q, r]), vec![]).unwrap();
                let through_pipeline = table.fiber_of(&alpha).unwrap();
                let closed_form = torus_classification(p, q, r).fiber;
                assert_eq!(through_pipeline, closed_form, "({p},{q},{r})");
            }
        }
    }
}

#[test]
fn geometric_loop_through_the_whole_stack() {
    let t3 = t3();
    // x-direction coordinate loop with three framing twists
    let vid = |x: usize| (x % 3) * 9;
    let loop_edges: Vec<(usize, i64)> = (0..3)
        .map(|s| {
            let (a, b) = (vid(s), vid(s + 1));
            (t3.edge_index(a, b).unwrap(), if a < b { 1 } else { -1 })
        })
        .collect();
    let link = ingest_geometric(t3, &[loop_edges], &[BigInt::from(3)]).unwrap();
    assert_eq!(divisibility(link.degree()), BigInt::from(1));
    // d = 1, so h = 3 mod 2 = 1
    assert_eq!(link.h_invariant(), BigInt::from(1));
    assert_eq!(fiber(link.degree()).to_string(), "Z_2");
}

#[test]
fn framed_cobordance_is_an_equivalence_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let table = classify(&Manifold::s1_x_s2());
    let mut sample = Vec::new();
    for _ in 0..40 {
        let k = rng.gen_range(-3i64..=3);
        let t = rng.gen_range(-12i64..=12);
        let alpha = table.h1().class(bigvec(&[k]), vec![]).unwrap();
        sample.push(FramedLinkClass::new(alpha, t));
    }
    for a in &sample {
        assert!(a.framed_cobordant(a).unwrap());
        for b in &sample {
            assert_eq!(
                a.framed_cobordant(b).unwrap(),
                b.framed_cobordant(a).unwrap()
            );
            for c in &sample {
                if a.framed_cobordant(b).unwrap() && b.framed_cobordant(c).unwrap() {
                    assert!(a.framed_cobordant(c).unwrap());
                }
            }
        }
    }
}

#[test]
fn fiber_counts_match_the_quotient() {
    // over S^1 x S^2, the class k has d = |k| and the twists 0..2|k|
    // represent pairwise non-cobordant links, exhausting the fiber
    let table = classify(&Manifold::s1_x_s2());
    for k in 1i64..=5 {
        let alpha = table.h1().class(bigvec(&[k]), vec![]).unwrap();
        let d = divisibility(&alpha);
        let links: Vec<FramedLinkClass> = (0..2 * k)
            .map(|t| FramedLinkClass::new(alpha.clone(), t))
            .collect();
        let mut distinct = 0;
        for (i, a) in links.iter().enumerate() {
            if links[..i].iter().all(|b| !a.framed_cobordant(b).unwrap()) {
                distinct += 1;
            }
        }
        assert_eq!(BigInt::from(distinct), 2 * d);
    }
}

#[test]
fn degree_is_surjective_over_builtins() {
    for m in [
        &Manifold::sphere3(),
        &Manifold::s1_x_s2(),
        &Manifold::lens(5, 1).unwrap(),
    ] {
        let table = classify(m);
        for alpha in table.enumerate_classes(3) {
            let link = FramedLinkClass::new(alpha.clone(), 0);
            assert_eq!(link.degree(), &alpha);
        }
    }
}

#[test]
fn cobordance_agrees_with_injectivity_replay() {
    // t = t' (mod 2d) iff the replay accepts the difference (one twist
    // corresponds to one unit of h, hence of the Euler class)
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let table = classify(t3());
    for _ in 0..300 {
        let coords: Vec<i64> = (0..3).map(|_| rng.gen_range(-4i64..=4)).collect();
        let alpha = table.h1().class(bigvec(&coords), vec![]).unwrap();
        let d = divisibility(&alpha);
        let t1 = BigInt::from(rng.gen_range(-30i64..=30));
        let t2 = BigInt::from(rng.gen_range(-30i64..=30));
        let l1 = FramedLinkClass::new(alpha.clone(), t1.clone());
        let l2 = FramedLinkClass::new(alpha.clone(), t2.clone());
        let by_links = l1.framed_cobordant(&l2).unwrap();
        let by_replay = replay_injectivity(&d, &(&t1 - &t2)).is_ok();
        assert_eq!(by_links, by_replay, "alpha={alpha} t1={t1} t2={t2}");
    }
}

#[test]
fn h_invariant_shifts_by_twists() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..200 {
        let coords: Vec<i64> = (0..3).map(|_| rng.gen_range(-6i64..=6)).collect();
        let alpha = HomologyClass::free_class(bigvec(&coords));
        let t = rng.gen_range(-50i64..=50);
        let k = BigInt::from(rng.gen_range(-50i64..=50));
        let link = FramedLinkClass::new(alpha.clone(), t);
        let turned = link.twisted(&k);
        assert_eq!(turned.degree(), link.degree());
        let modulus: BigInt = divisibility(&alpha) * 2;
        let shift = turned.h_invariant() - link.h_invariant();
        if modulus.is_zero() {
            assert_eq!(shift, k);
        } else {
            use num_integer::Integer;
            assert_eq!(shift.mod_floor(&modulus), k.mod_floor(&modulus));
        }
    }
}
