//! Framed links in closed oriented 3-manifolds, classified up to framed
//! cobordism.
//!
//! For such a manifold `M` the set of framed links up to framed cobordism
//! maps onto `H_1(M; Z)` by taking homology classes, and the fiber over a
//! class `alpha` is in bijection with `Z_{2d(alpha)}`, where `d(alpha)` is
//! the divisibility of the projection of `alpha` to the free part of `H_1`
//! (with `d(0) = 0` and `Z_0 = Z`). Equivalently, this classifies homotopy
//! classes of maps `M -> S^2`.
//!
//! The crate makes that classification computable for manifolds given
//! combinatorially, and mechanically replays the normal-Euler-class
//! arithmetic that underpins it:
//!
//! - [`matrix`] / [`smith`] — exact big-integer matrices, Smith normal
//!   form with transforms, cokernel structure, Diophantine solving;
//! - [`complex`] — manifold presentations (oriented triangulations or
//!   direct chain complexes), hypothesis validation, built-in manifolds;
//! - [`homology`] — integral homology with canonical `Z^r + sum Z_ti`
//!   coordinates and the cycle-to-class map;
//! - [`classify`](mod@classify) — divisibility, fiber groups `Z_{2d}`, classification
//!   tables and enumeration, the torus tuple formula, the dual
//!   (Steenrod-style) subgroup cross-check, and the stable-range
//!   Pontryagin–Steenrod–Wu criterion;
//! - [`links`] — framed-link normal forms `(alpha, t)`: degree, the
//!   `h`-invariant, twisting, and the framed-cobordance decision;
//! - [`euler`] — symbolic normal-Euler-class calculus: the
//!   `[L]·[L] - 2σ` formula, stacking, reflection, surgery moves, and
//!   replayable verifications of the well-definedness and injectivity
//!   arithmetic.
//!
//! ```
//! use framelink::{classify, divisibility, Manifold};
//!
//! // maps T^3 -> S^2 over the class with coordinates (2,4,6)
//! let t3 = Manifold::torus3();
//! let table = classify(&t3);
//! let alpha = table
//!     .h1()
//!     .class(vec![2.into(), 4.into(), 6.into()], vec![])
//!     .unwrap();
//! assert_eq!(divisibility(&alpha), 2.into());
//! assert_eq!(table.fiber_of(&alpha).unwrap().to_string(), "Z_4");
//! ```

#![forbid(unsafe_code)]

pub mod classify;
pub mod complex;
pub mod euler;
pub mod homology;
pub mod links;
pub mod matrix;
pub mod smith;
pub mod textio;

pub use classify::{
    classify, degree_map_behavior, divisibility, fiber, steenrod_subgroup, torus_classification,
    ClassificationTable, DegreeMapBehavior, FiberGroup, TorusClassification, W2Pairings,
};
pub use complex::{validate, Manifold, ManifoldPresentation, ValidationError, ValidationReport};
pub use euler::{
    eliminate_self_intersections, euler_class, replay_injectivity, replay_well_definedness,
    CobordismExpression, EulerError, ImmersedSurface, InjectivityReport, Piece, PieceTag,
    ReplayError, SurfaceAmbient, SurgeryOutcome, TraceStep, WellDefinednessReport,
};
pub use homology::{HomologyClass, HomologyError, HomologyGroup};
pub use links::{ingest_geometric, FramedLinkClass, LinkError, LinkFile};
pub use matrix::IntegerMatrix;
pub use smith::{
    cokernel_structure, smith_normal_form, solve_diophantine, LinalgError, SmithDecomposition,
};
