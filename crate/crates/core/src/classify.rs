//! Classification of framed links by homology class.
//!
//! Over a class `alpha` in `H_1(M; Z)` the framed-cobordism classes with
//! degree `alpha` form a `Z_{2d(alpha)}`, where `d(alpha)` is the
//! divisibility of the projection of `alpha` to the free part of `H_1`
//! (gcd of the free coordinates, zero for the zero projection). This
//! module computes `d`, the fiber groups, whole classification tables
//! with bounded enumeration, the closed-form torus answer, the dual
//! description `Z / 2(alpha . H_2)` via functional evaluation, and the
//! stable-range (Pontryagin–Steenrod–Wu) bijectivity criterion.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::complex::Manifold;
use crate::homology::{HomologyClass, HomologyError, HomologyGroup};
use crate::matrix::gcd_all;

/// `Z_m` with the convention that `m = 0` means `Z`.
///
/// Fibers of the degree map always have even (or zero) modulus `2d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiberGroup {
    modulus: BigInt,
}

impl FiberGroup {
    fn new(modulus: BigInt) -> FiberGroup {
        debug_assert!(!modulus.is_negative());
        debug_assert!((&modulus % 2u8).is_zero());
        FiberGroup { modulus }
    }

    /// `2 d(alpha)`; zero encodes the infinite cyclic group.
    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn is_infinite(&self) -> bool {
        self.modulus.is_zero()
    }
}

impl fmt::Display for FiberGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "Z")
        } else {
            write!(f, "Z_{}", self.modulus)
        }
    }
}

/// Divisibility of the projection of `alpha` to the free part of its
/// group: the gcd of the free coordinates, with `d(0) = 0`.
///
/// The torsion part is discarded before taking the gcd; a torsion class
/// has divisibility zero even when it is divisible inside the torsion
/// subgroup.
pub fn divisibility(alpha: &HomologyClass) -> BigInt {
    gcd_all(alpha.free_part())
}

/// The fiber of the degree map over `alpha`: `Z_{2 d(alpha)}`.
pub fn fiber(alpha: &HomologyClass) -> FiberGroup {
    FiberGroup::new(divisibility(alpha) * 2)
}

/// Generator index of the subgroup `2 (alpha . H_2(M; Z))` of `Z`.
///
/// Computed without geometric intersections: the pairing values of
/// `alpha` against `H_2` are exactly the values `phi(alpha)` of the
/// integral functionals `phi: H_1 -> Z`, which are spanned by the dual
/// basis of the free part (torsion is killed by every functional). The
/// subgroup they generate is `g Z` for `g` the gcd of the dual-basis
/// evaluations, and the answer is `2g`.
pub fn steenrod_subgroup(alpha: &HomologyClass) -> BigInt {
    let mut generator = BigInt::zero();
    for i in 0..alpha.free_part().len() {
        // dual basis functional e_i^* evaluated on alpha
        let value = alpha.free_part()[i].clone();
        generator = num_integer::Integer::gcd(&generator, &value);
    }
    generator.abs() * 2
}

/// Classification table of a manifold: `H_1` plus fiber queries and a
/// bounded enumerator over normal forms `(alpha, t)`.
pub struct ClassificationTable {
    manifold: String,
    h1: HomologyGroup,
}

/// Build the classification table for a validated manifold.
pub fn classify(m: &Manifold) -> ClassificationTable {
    ClassificationTable {
        manifold: m.label().to_string(),
        h1: m.h1().clone(),
    }
}

impl ClassificationTable {
    pub fn manifold(&self) -> &str {
        &self.manifold
    }

    pub fn h1(&self) -> &HomologyGroup {
        &self.h1
    }

    /// Fiber group over a class of this manifold.
    pub fn fiber_of(&self, alpha: &HomologyClass) -> Result<FiberGroup, HomologyError> {
        if alpha.free_part().len() != self.h1.free_rank()
            || alpha.torsion_moduli() != self.h1.torsion()
        {
            return Err(HomologyError::ShapeMismatch(format!(
                "class {alpha} does not live in H_1 = {}",
                self.h1.describe()
            )));
        }
        Ok(fiber(alpha))
    }

    /// Every class with free coordinates in `[-bound, bound]` (torsion
    /// coordinates ranging over their full residue systems), in
    /// deterministic odometer order.
    pub fn enumerate_classes(&self, bound: i64) -> Vec<HomologyClass> {
        assert!(bound >= 0, "bound must be nonnegative");
        let r = self.h1.free_rank();
        let moduli = self.h1.torsion();
        let free_width = 2 * bound + 1;
        let mut out = Vec::new();
        let mut counters = vec![0i64; r + moduli.len()];
        loop {
            let free: Vec<BigInt> = counters[..r]
                .iter()
                .map(|&c| BigInt::from(c - bound))
                .collect();
            let torsion: Vec<BigInt> = counters[r..].iter().map(|&c| BigInt::from(c)).collect();
            out.push(
                HomologyClass::from_parts(free, torsion, moduli.to_vec())
                    .expect("coordinates are in range"),
            );
            // advance the odometer
            let mut pos = counters.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                let limit = if pos < r {
                    free_width
                } else {
                    use num_traits::ToPrimitive;
                    moduli[pos - r].to_i64().expect("torsion modulus fits i64")
                };
                counters[pos] += 1;
                if counters[pos] < limit {
                    break;
                }
                counters[pos] = 0;
            }
        }
    }

    /// Bounded enumeration of normal forms `(alpha, t)`: each pair occurs
    /// exactly once, with `t` ranging over `[0, 2d(alpha))` when
    /// `d(alpha) > 0` and over `[-bound, bound]` when the fiber is `Z`.
    pub fn enumerate_pairs(&self, bound: i64) -> Vec<(HomologyClass, BigInt)> {
        let mut out = Vec::new();
        for alpha in self.enumerate_classes(bound) {
            let modulus = fiber(&alpha).modulus().clone();
            if modulus.is_zero() {
                for t in -bound..=bound {
                    out.push((alpha.clone(), BigInt::from(t)));
                }
            } else {
                let mut t = BigInt::zero();
                while t < modulus {
                    out.push((alpha.clone(), t.clone()));
                    t += 1;
                }
            }
        }
        out
    }
}

/// Outcome of the torus tuple formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusClassification {
    pub fiber: FiberGroup,
    pub description: String,
}

/// Maps `T^3 -> S^2` up to homotopy: 4-tuples `(p, q, r, t)` with `p, q,
/// r` the degrees of the restrictions to the three coordinate 2-subtori
/// and `t` in `Z` when `p = q = r = 0`, in `Z_{2 gcd(p,q,r)}` otherwise.
pub fn torus_classification(p: i64, q: i64, r: i64) -> TorusClassification {
    let alpha = HomologyClass::free_class(vec![BigInt::from(p), BigInt::from(q), BigInt::from(r)]);
    let fiber = fiber(&alpha);
    let description = format!(
        "4-tuples (p,q,r,t): p,q,r are the degrees of the restrictions to the \
         three coordinate 2-subtori; here (p,q,r)=({p},{q},{r}) and t ranges over {fiber}"
    );
    TorusClassification { fiber, description }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum W2Error {
    #[error("w2 evaluation entries must be 0 or 1, found {0}")]
    BadEntry(u8),
}

/// Evaluations of `rho_2(beta) . w_2(M)` on a basis of mod-2 second
/// homology, one bit per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct W2Pairings {
    h2_mod2_rank: usize,
    evaluations: Vec<u8>,
}

impl W2Pairings {
    pub fn new(evaluations: Vec<u8>) -> Result<W2Pairings, W2Error> {
        if let Some(&bad) = evaluations.iter().find(|&&e| e > 1) {
            return Err(W2Error::BadEntry(bad));
        }
        Ok(W2Pairings {
            h2_mod2_rank: evaluations.len(),
            evaluations,
        })
    }

    pub fn h2_mod2_rank(&self) -> usize {
        self.h2_mod2_rank
    }

    pub fn evaluations(&self) -> &[u8] {
        &self.evaluations
    }
}

/// Behavior of the degree map in the stable range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeMapBehavior {
    Bijective,
    TwoToOne,
}

impl fmt::Display for DegreeMapBehavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeMapBehavior::Bijective => write!(f, "bijective"),
            DegreeMapBehavior::TwoToOne => write!(f, "2-to-1"),
        }
    }
}

/// Stable-range criterion (Pontryagin–Steenrod–Wu): for closed oriented
/// `n`-manifolds with `n >= 4` the degree map is a bijection exactly when
/// some class pairs with `w_2` to 1 mod 2 — over `Z_2` a combination of
/// the given evaluations hits 1 iff some entry is 1. Otherwise the map is
/// 2-to-1. The `n >= 4` context is the caller's responsibility; the input
/// here is purely algebraic.
pub fn degree_map_behavior(pairings: &W2Pairings) -> DegreeMapBehavior {
    if pairings.evaluations().contains(&1) {
        DegreeMapBehavior::Bijective
    } else {
        DegreeMapBehavior::TwoToOne
    }
}
