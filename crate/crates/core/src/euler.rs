//! Symbolic calculus of normal and relative normal Euler classes.
//!
//! For a connected oriented surface immersed in a closed oriented
//! 4-manifold, the normal Euler class satisfies `e(L) = [L]·[L] - 2σ`,
//! where `σ` is the signed self-intersection count; over a product
//! `N³ × I` the pairing term vanishes and `e(L) = -2σ`. On stacked
//! cobordisms `e` is additive, reversing the ambient orientation flips
//! its sign, framed and product pieces contribute zero, and eliminating a
//! self-intersection point changes `e` by ∓2 according to the point's
//! sign.
//!
//! Those facts are enough to replay, purely arithmetically, the two
//! verifications behind the classification of framed links: that the
//! twist invariant `h` is independent of the chosen cobordism
//! ([`replay_well_definedness`]) and that `h`-equality forces framed
//! cobordance ([`replay_injectivity`]). Both produce an auditable
//! transcript of `(step, rule, e-before, e-after)` lines.
//!
//! The class `e` is the complete obstruction to extending a boundary
//! framing over the surface; the calculus takes `e = 0 => frameable` as
//! an axiom rather than reproving it, and no general-position geometry
//! (computing `σ` from an actual immersion) is attempted.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::matrix::IntegerMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EulerError {
    #[error("class vector has length {found}, intersection form is {rows}x{rows}")]
    DimensionMismatch { found: usize, rows: usize },
    #[error("intersection form is not symmetric")]
    AsymmetricForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("equality chain broken: assembled e(K) = {assembled} but 2·[pK]·alpha = {stated}")]
    ChainBroken { assembled: BigInt, stated: BigInt },
    #[error("pairing value {pairing} is not a multiple of d = {d}")]
    PairingNotMultiple { pairing: BigInt, d: BigInt },
    #[error("e-difference {e_diff} is not divisible by 2d = {modulus}")]
    NotDivisible { e_diff: BigInt, modulus: BigInt },
    #[error("divisibility d must be nonnegative, got {0}")]
    NegativeDivisibility(BigInt),
}

/// Where an immersed surface lives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceAmbient {
    /// Closed oriented 4-manifold with intersection form `Q` and surface
    /// class coordinates `a`, contributing the pairing term `aᵀ Q a`.
    Closed4 {
        class_coords: Vec<BigInt>,
        intersection_form: IntegerMatrix,
    },
    /// `N³ × I`: the pairing term vanishes identically.
    ProductWithInterval,
}

/// An immersed surface datum: ambient kind plus the signed
/// self-intersection count `σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImmersedSurface {
    pub ambient: SurfaceAmbient,
    pub sigma: BigInt,
}

impl ImmersedSurface {
    pub fn closed4(
        class_coords: Vec<BigInt>,
        intersection_form: IntegerMatrix,
        sigma: impl Into<BigInt>,
    ) -> ImmersedSurface {
        ImmersedSurface {
            ambient: SurfaceAmbient::Closed4 {
                class_coords,
                intersection_form,
            },
            sigma: sigma.into(),
        }
    }

    pub fn product(sigma: impl Into<BigInt>) -> ImmersedSurface {
        ImmersedSurface {
            ambient: SurfaceAmbient::ProductWithInterval,
            sigma: sigma.into(),
        }
    }
}

/// Normal Euler class: `aᵀ Q a - 2σ` in a closed 4-manifold, `-2σ` over a
/// product `N³ × I`.
pub fn euler_class(surface: &ImmersedSurface) -> Result<BigInt, EulerError> {
    let pairing = match &surface.ambient {
        SurfaceAmbient::ProductWithInterval => BigInt::zero(),
        SurfaceAmbient::Closed4 {
            class_coords,
            intersection_form,
        } => {
            if !intersection_form.is_symmetric() {
                return Err(EulerError::AsymmetricForm);
            }
            if class_coords.len() != intersection_form.rows() {
                return Err(EulerError::DimensionMismatch {
                    found: class_coords.len(),
                    rows: intersection_form.rows(),
                });
            }
            let qa = intersection_form.mul_vec(class_coords);
            class_coords
                .iter()
                .zip(&qa)
                .map(|(a, b)| a * b)
                .sum::<BigInt>()
        }
    };
    Ok(pairing - 2 * &surface.sigma)
}

/// Provenance tag of a cobordism piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PieceTag {
    /// a piece with an externally supplied Euler class
    Given,
    /// mirror image of a given piece; carries the negated class
    Reflected,
    /// a framed cobordism: `e = 0` identically
    Framed,
    /// a product cylinder over a framed link: `e = 0` identically
    Product,
}

/// One labeled layer of a stacked cobordism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    tag: PieceTag,
    euler: BigInt,
    label: String,
}

impl Piece {
    pub fn given(label: impl Into<String>, euler: impl Into<BigInt>) -> Piece {
        Piece {
            tag: PieceTag::Given,
            euler: euler.into(),
            label: label.into(),
        }
    }

    pub fn framed(label: impl Into<String>) -> Piece {
        Piece {
            tag: PieceTag::Framed,
            euler: BigInt::zero(),
            label: label.into(),
        }
    }

    pub fn product(label: impl Into<String>) -> Piece {
        Piece {
            tag: PieceTag::Product,
            euler: BigInt::zero(),
            label: label.into(),
        }
    }

    pub fn tag(&self) -> PieceTag {
        self.tag
    }

    pub fn euler(&self) -> &BigInt {
        &self.euler
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Mirror image: the ambient orientation reverses, so the Euler class
    /// changes sign. Framed and product pieces stay framed (zero class).
    /// An involution.
    pub fn reflect(&self) -> Piece {
        let tag = match self.tag {
            PieceTag::Given => PieceTag::Reflected,
            PieceTag::Reflected => PieceTag::Given,
            keep @ (PieceTag::Framed | PieceTag::Product) => keep,
        };
        let label = match self
            .label
            .strip_prefix("-(")
            .and_then(|s| s.strip_suffix(')'))
        {
            Some(inner) => inner.to_string(),
            None => format!("-({})", self.label),
        };
        Piece {
            tag,
            euler: -&self.euler,
            label,
        }
    }
}

/// A formal stack of cobordism pieces; its Euler class is the sum of the
/// pieces' classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CobordismExpression {
    pieces: Vec<Piece>,
}

impl CobordismExpression {
    pub fn new() -> CobordismExpression {
        CobordismExpression::default()
    }

    pub fn of(pieces: Vec<Piece>) -> CobordismExpression {
        CobordismExpression { pieces }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn euler_total(&self) -> BigInt {
        self.pieces.iter().map(|p| p.euler.clone()).sum()
    }

    /// Stack another expression on top: `e(a ∪ b) = e(a) + e(b)`.
    pub fn stack(&self, other: &CobordismExpression) -> CobordismExpression {
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        CobordismExpression { pieces }
    }

    /// Reverse the ambient orientation: every piece reflects and the
    /// stacking order turns upside down. An involution on annotations.
    pub fn reflect(&self) -> CobordismExpression {
        CobordismExpression {
            pieces: self.pieces.iter().rev().map(Piece::reflect).collect(),
        }
    }
}

/// One audited rewriting step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub step: usize,
    pub rule: String,
    pub before: BigInt,
    pub after: BigInt,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step={} rule=\"{}\" before={} after={}",
            self.step, self.rule, self.before, self.after
        )
    }
}

struct Trace {
    steps: Vec<TraceStep>,
    current: BigInt,
}

impl Trace {
    fn start() -> Trace {
        Trace {
            steps: Vec::new(),
            current: BigInt::zero(),
        }
    }

    fn apply(&mut self, rule: impl Into<String>, after: BigInt) {
        self.steps.push(TraceStep {
            step: self.steps.len() + 1,
            rule: rule.into(),
            before: self.current.clone(),
            after: after.clone(),
        });
        self.current = after;
    }

    fn note(&mut self, rule: impl Into<String>) {
        let cur = self.current.clone();
        self.apply(rule, cur);
    }
}

/// Result of a run of surgery moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryOutcome {
    pub steps: Vec<TraceStep>,
    pub final_euler: BigInt,
}

/// Eliminate `sigma` signed self-intersection points, one move per point:
/// removing a positive point lowers the Euler class by 2, removing a
/// negative point raises it by 2. Ends at `e_value - 2 * sigma`.
pub fn eliminate_self_intersections(e_value: &BigInt, sigma: &BigInt) -> SurgeryOutcome {
    let mut trace = Trace::start();
    trace.apply("initial Euler class", e_value.clone());
    let positive = sigma.is_positive();
    let mut remaining = sigma.abs();
    while remaining.is_positive() {
        let (rule, delta) = if positive {
            ("remove positive self-intersection point (e -= 2)", -2)
        } else {
            ("remove negative self-intersection point (e += 2)", 2)
        };
        let next = &trace.current + delta;
        trace.apply(rule, next);
        remaining -= 1;
    }
    debug_assert_eq!(trace.current, e_value - 2 * sigma);
    SurgeryOutcome {
        final_euler: trace.current.clone(),
        steps: trace.steps,
    }
}

/// Verdict of the well-definedness replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellDefinednessReport {
    /// Euler class of the assembled comparison cobordism `K`.
    pub euler_k: BigInt,
    /// its signed self-intersection count, `-e(K) / 2`
    pub sigma: BigInt,
    /// `2d`
    pub modulus: BigInt,
    pub trace: Vec<TraceStep>,
}

/// Replay the arithmetic showing the twist invariant does not depend on
/// the chosen cobordism.
///
/// Given two cobordisms from the base circle to the same link, with Euler
/// classes `e_l` and `e_lprime`, the comparison cobordism
///
/// `K = (-L') ∪ L ∪ Δ ∪ (L₁' × [-1,1]) ∪ (-Δ)`
///
/// is assembled symbolically (the closing pieces are framed or products,
/// so they contribute zero) giving `e(K) = e_l - e_lprime`. The replay
/// checks that against the supplied pairing value: `e(K) = -2σ =
/// 2 [pK]·alpha`, and that the pairing is a multiple of `d` — every
/// intersection value against `alpha` is — whence
/// `e_l = e_lprime (mod 2d)`. Inputs breaking either equality are
/// rejected as counterexamples.
pub fn replay_well_definedness(
    d: &BigInt,
    e_l: &BigInt,
    e_lprime: &BigInt,
    pk_dot_alpha: &BigInt,
) -> Result<WellDefinednessReport, ReplayError> {
    if d.is_negative() {
        return Err(ReplayError::NegativeDivisibility(d.clone()));
    }
    let mut trace = Trace::start();

    let k = CobordismExpression::of(vec![Piece::given("L'", e_lprime.clone())])
        .reflect()
        .stack(&CobordismExpression::of(vec![
            Piece::given("L", e_l.clone()),
            Piece::framed("Delta"),
            Piece::product("L1' x [-1,1]"),
            Piece::framed("Delta").reflect(),
        ]));
    for piece in k.pieces() {
        let next = &trace.current + piece.euler();
        trace.apply(
            format!("stack {} (e += {})", piece.label(), piece.euler()),
            next,
        );
    }
    let euler_k = k.euler_total();
    debug_assert_eq!(trace.current, euler_k);
    debug_assert_eq!(euler_k, e_l - e_lprime);

    let stated = 2 * pk_dot_alpha;
    if euler_k != stated {
        return Err(ReplayError::ChainBroken {
            assembled: euler_k,
            stated,
        });
    }
    trace.note(format!(
        "e(K) = -2σ = 2 K∩(L1''×R) = 2[pK]·alpha = {stated}"
    ));

    // Every pairing against alpha is a multiple of d; for d = 0 the
    // pairing subgroup is trivial.
    let divisible = if d.is_zero() {
        pk_dot_alpha.is_zero()
    } else {
        pk_dot_alpha.mod_floor(d).is_zero()
    };
    if !divisible {
        return Err(ReplayError::PairingNotMultiple {
            pairing: pk_dot_alpha.clone(),
            d: d.clone(),
        });
    }
    let modulus: BigInt = d * 2;
    trace.note(format!("[pK]·alpha = {pk_dot_alpha} lies in d·Z (d = {d})"));

    // The conclusion, re-checked arithmetically.
    let diff = e_l - e_lprime;
    let congruent = if modulus.is_zero() {
        diff.is_zero()
    } else {
        diff.mod_floor(&modulus).is_zero()
    };
    assert!(congruent, "congruence must follow from the verified chain");
    trace.note(format!("conclude e(L) = e(L') (mod {modulus})"));

    Ok(WellDefinednessReport {
        sigma: -(&euler_k) / 2,
        euler_k,
        modulus,
        trace: trace.steps,
    })
}

/// Verdict of the injectivity replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityReport {
    /// `e_diff / 2d`
    pub y: BigInt,
    /// number of elimination moves performed, `|d·y|`
    pub moves: usize,
    pub final_euler: BigInt,
    pub trace: Vec<TraceStep>,
}

/// Replay the arithmetic showing `h`-equality forces framed cobordance.
///
/// The hypothesis `h(L2) = h(L2')` means the Euler-class difference of
/// the two comparison cobordisms is `2 d y` for some integer `y` (zero,
/// and the difference zero, when `d = 0`). Summing with a surface
/// realizing `y·beta` — closed, so its own class contributes nothing —
/// produces `d·y` signed self-intersection points; eliminating them one
/// by one drains the Euler class to exactly zero, so the resulting
/// cobordism can be framed.
pub fn replay_injectivity(d: &BigInt, e_diff: &BigInt) -> Result<InjectivityReport, ReplayError> {
    if d.is_negative() {
        return Err(ReplayError::NegativeDivisibility(d.clone()));
    }
    let modulus: BigInt = d * 2;
    let y = if modulus.is_zero() {
        if !e_diff.is_zero() {
            return Err(ReplayError::NotDivisible {
                e_diff: e_diff.clone(),
                modulus,
            });
        }
        BigInt::zero()
    } else {
        let (q, r) = e_diff.div_rem(&modulus);
        if !r.is_zero() {
            return Err(ReplayError::NotDivisible {
                e_diff: e_diff.clone(),
                modulus,
            });
        }
        q
    };

    let mut trace = Trace::start();
    trace.apply("e(-L' ∪ L) = 2dy", e_diff.clone());
    trace.note(format!(
        "connected sum with K realizing y·beta: e(K) = 0, y = {y}"
    ));

    let sigma = d * &y; // signed count y·beta ∩ alpha = d·y
    let surgery = eliminate_self_intersections(e_diff, &sigma);
    let moves = surgery.steps.len().saturating_sub(1);
    for step in &surgery.steps[1..] {
        let after = step.after.clone();
        trace.apply(step.rule.clone(), after);
    }
    assert!(
        surgery.final_euler.is_zero(),
        "elimination must end at zero"
    );
    trace.note("e = 0: the cobordism can be framed");

    Ok(InjectivityReport {
        y,
        moves,
        final_euler: surgery.final_euler,
        trace: trace.steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::bigvec;

    #[test]
    fn euler_class_formula() {
        let s = ImmersedSurface::closed4(bigvec(&[1]), IntegerMatrix::diagonal(&[1]), 0);
        assert_eq!(euler_class(&s).unwrap(), BigInt::from(1));

        let p = ImmersedSurface::product(3);
        assert_eq!(euler_class(&p).unwrap(), BigInt::from(-6));

        let s = ImmersedSurface::closed4(bigvec(&[2, 1]), IntegerMatrix::diagonal(&[1, -1]), 1);
        assert_eq!(euler_class(&s).unwrap(), BigInt::from(1)); // 4 - 1 - 2
    }

    #[test]
    fn euler_class_rejects_bad_input() {
        let s = ImmersedSurface::closed4(bigvec(&[1, 2]), IntegerMatrix::diagonal(&[1]), 0);
        assert!(matches!(
            euler_class(&s),
            Err(EulerError::DimensionMismatch { .. })
        ));
        let asym = IntegerMatrix::from_rows(&[vec![0, 1], vec![2, 0]]);
        let s = ImmersedSurface::closed4(bigvec(&[1, 1]), asym, 0);
        assert_eq!(euler_class(&s), Err(EulerError::AsymmetricForm));
    }

    #[test]
    fn stacking_adds() {
        let a = CobordismExpression::of(vec![Piece::given("a", 5)]);
        let b = CobordismExpression::of(vec![Piece::given("b", -2)]);
        assert_eq!(a.stack(&b).euler_total(), BigInt::from(3));
        // framed pieces contribute nothing
        let f = CobordismExpression::of(vec![Piece::framed("f")]);
        assert_eq!(a.stack(&f).euler_total(), a.euler_total());
        // associative on annotations
        let c = CobordismExpression::of(vec![Piece::given("c", 7)]);
        assert_eq!(
            a.stack(&b).stack(&c).euler_total(),
            a.stack(&b.stack(&c)).euler_total()
        );
    }

    #[test]
    fn reflection_negates_and_involutes() {
        let e = CobordismExpression::of(vec![Piece::given("x", 4)]);
        assert_eq!(e.reflect().euler_total(), BigInt::from(-4));
        let zero = CobordismExpression::of(vec![Piece::given("z", 0)]);
        assert_eq!(zero.reflect().euler_total(), BigInt::zero());
        let mixed = CobordismExpression::of(vec![
            Piece::given("x", 4),
            Piece::framed("f"),
            Piece::given("y", -9),
        ]);
        assert_eq!(mixed.reflect().reflect(), mixed);
        assert_eq!(mixed.reflect().euler_total(), -mixed.euler_total());
    }

    #[test]
    fn elimination_moves() {
        let run = eliminate_self_intersections(&BigInt::from(4), &BigInt::from(2));
        assert_eq!(run.final_euler, BigInt::zero());
        assert_eq!(run.steps.len(), 3); // initial + two moves
        let run = eliminate_self_intersections(&BigInt::from(-2), &BigInt::from(-1));
        assert_eq!(run.final_euler, BigInt::zero());
        let run = eliminate_self_intersections(&BigInt::from(7), &BigInt::zero());
        assert_eq!(run.final_euler, BigInt::from(7));
        assert_eq!(run.steps.len(), 1);
    }

    #[test]
    fn well_definedness_consistent_example() {
        let report = replay_well_definedness(
            &BigInt::from(2),
            &BigInt::from(7),
            &BigInt::from(3),
            &BigInt::from(2),
        )
        .unwrap();
        assert_eq!(report.euler_k, BigInt::from(4));
        assert_eq!(report.sigma, BigInt::from(-2));
        assert_eq!(report.modulus, BigInt::from(4));
        assert!(!report.trace.is_empty());
    }

    #[test]
    fn well_definedness_torsion_case() {
        // d = 0: the pairing subgroup is trivial, so e_l must equal e_lprime
        let ok = replay_well_definedness(
            &BigInt::zero(),
            &BigInt::from(5),
            &BigInt::from(5),
            &BigInt::zero(),
        );
        assert!(ok.is_ok());
        // chain holds with pairing 1, but 1 is not in 0·Z
        let err = replay_well_definedness(
            &BigInt::zero(),
            &BigInt::from(5),
            &BigInt::from(3),
            &BigInt::from(1),
        )
        .unwrap_err();
        assert!(matches!(err, ReplayError::PairingNotMultiple { .. }));
        let err = replay_well_definedness(
            &BigInt::zero(),
            &BigInt::from(5),
            &BigInt::from(3),
            &BigInt::zero(),
        )
        .unwrap_err();
        assert!(matches!(err, ReplayError::ChainBroken { .. }));
    }

    #[test]
    fn well_definedness_rejects_broken_chain() {
        // e(K) = 4 but stated pairing gives 6
        let err = replay_well_definedness(
            &BigInt::from(2),
            &BigInt::from(7),
            &BigInt::from(3),
            &BigInt::from(3),
        )
        .unwrap_err();
        assert!(matches!(err, ReplayError::ChainBroken { .. }));
        // chain holds but the pairing is not a multiple of d
        let err = replay_well_definedness(
            &BigInt::from(2),
            &BigInt::from(7),
            &BigInt::from(1),
            &BigInt::from(3),
        )
        .unwrap_err();
        assert!(matches!(err, ReplayError::PairingNotMultiple { .. }));
    }

    #[test]
    fn well_definedness_trivial_case() {
        let report = replay_well_definedness(
            &BigInt::from(4),
            &BigInt::from(9),
            &BigInt::from(9),
            &BigInt::zero(),
        )
        .unwrap();
        assert_eq!(report.euler_k, BigInt::zero());
        assert_eq!(report.sigma, BigInt::zero());
    }

    #[test]
    fn injectivity_consistent_example() {
        let report = replay_injectivity(&BigInt::from(3), &BigInt::from(12)).unwrap();
        assert_eq!(report.y, BigInt::from(2));
        assert_eq!(report.moves, 6);
        assert_eq!(report.final_euler, BigInt::zero());
    }

    #[test]
    fn injectivity_zero_difference() {
        let report = replay_injectivity(&BigInt::from(1), &BigInt::zero()).unwrap();
        assert_eq!(report.y, BigInt::zero());
        assert_eq!(report.moves, 0);
        assert_eq!(report.final_euler, BigInt::zero());
    }

    #[test]
    fn injectivity_rejects_indivisible_difference() {
        let err = replay_injectivity(&BigInt::from(2), &BigInt::from(2)).unwrap_err();
        assert_eq!(
            err,
            ReplayError::NotDivisible {
                e_diff: BigInt::from(2),
                modulus: BigInt::from(4),
            }
        );
        let err = replay_injectivity(&BigInt::zero(), &BigInt::from(2)).unwrap_err();
        assert!(matches!(err, ReplayError::NotDivisible { .. }));
    }

    #[test]
    fn injectivity_negative_y() {
        let report = replay_injectivity(&BigInt::from(2), &BigInt::from(-8)).unwrap();
        assert_eq!(report.y, BigInt::from(-2));
        assert_eq!(report.moves, 4);
        assert_eq!(report.final_euler, BigInt::zero());
    }
}
