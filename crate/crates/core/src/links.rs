//! Normal forms of framed links and the framed-cobordance decision.
//!
//! A framed link over a fixed manifold is represented as `(alpha, t)`:
//! its homology class and a framing twist relative to a fixed base framed
//! circle of the same degree (the base is declared to have `t = 0`, so
//! the twist invariant `h` is relative to that choice, just as the
//! classification's bijection is). Two normal forms represent
//! framed-cobordant links exactly when their classes agree and their
//! twists agree modulo `2 d(alpha)`, integer equality when `d = 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::classify::divisibility;
use crate::complex::Manifold;
use crate::homology::{HomologyClass, HomologyError};
use crate::textio::{LineReader, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("classes live over different manifolds (group shapes differ)")]
    ManifoldMismatch,
    #[error("component {component}: {source}")]
    BadComponent {
        component: usize,
        source: HomologyError,
    },
    #[error("{count} loops given with {twists} twists")]
    ComponentCountMismatch { count: usize, twists: usize },
}

/// Normal form `(alpha, t)` of a framed link.
///
/// The twist is stored unreduced; equality of the underlying links is
/// decided by [`FramedLinkClass::framed_cobordant`], which reduces modulo
/// `2 d(alpha)`.
///
/// ```
/// use framelink::{FramedLinkClass, HomologyClass};
/// use num_bigint::BigInt;
///
/// // degree (3, 0) has d = 3: twists agree mod 6
/// let alpha = HomologyClass::free_class(vec![3.into(), 0.into()]);
/// let l = FramedLinkClass::new(alpha, 1);
/// assert!(l.framed_cobordant(&l.twisted(&BigInt::from(6))).unwrap());
/// assert!(!l.framed_cobordant(&l.twisted(&BigInt::from(3))).unwrap());
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedLinkClass {
    alpha: HomologyClass,
    twist: BigInt,
}

impl FramedLinkClass {
    pub fn new(alpha: HomologyClass, twist: impl Into<BigInt>) -> FramedLinkClass {
        FramedLinkClass {
            alpha,
            twist: twist.into(),
        }
    }

    /// The homology class of the link; invariant under twisting.
    pub fn degree(&self) -> &HomologyClass {
        &self.alpha
    }

    pub fn twist(&self) -> &BigInt {
        &self.twist
    }

    /// The twist invariant in `Z_{2 d(alpha)}`: the residue of `t` in
    /// `[0, 2d)` when `d > 0`, the integer `t` itself when the fiber is
    /// `Z`.
    ///
    /// For a null-homologous degree this integer plays the role of the
    /// classical Hopf invariant (relative to the base circle's framing);
    /// no geometric Hopf computation is attempted here.
    pub fn h_invariant(&self) -> BigInt {
        let modulus: BigInt = divisibility(&self.alpha) * 2;
        if modulus.is_zero() {
            self.twist.clone()
        } else {
            self.twist.mod_floor(&modulus)
        }
    }

    /// Apply `k` extra framing twists.
    pub fn twisted(&self, k: &BigInt) -> FramedLinkClass {
        FramedLinkClass {
            alpha: self.alpha.clone(),
            twist: &self.twist + k,
        }
    }

    /// Decide framed cobordance of two normal forms over the same
    /// manifold: equal degrees and `t1 = t2 (mod 2 d(alpha))`, exact
    /// equality when `d = 0`.
    pub fn framed_cobordant(&self, other: &FramedLinkClass) -> Result<bool, LinkError> {
        if !self.alpha.same_shape(&other.alpha) {
            return Err(LinkError::ManifoldMismatch);
        }
        if self.alpha != other.alpha {
            return Ok(false);
        }
        let modulus: BigInt = divisibility(&self.alpha) * 2;
        if modulus.is_zero() {
            Ok(self.twist == other.twist)
        } else {
            Ok((&self.twist - &other.twist).mod_floor(&modulus).is_zero())
        }
    }
}

/// Build a normal form from geometric data: edge loops in the manifold's
/// 1-skeleton and one framing-twist integer per component (relative to a
/// global parallelization, which exists for every orientable 3-manifold).
///
/// The degree is the sum of the component classes. The twist of the
/// normal form is the sum of the component twists — a modeling
/// convention for multi-component links, consistent with single-circle
/// twisting but not forced by anything deeper.
pub fn ingest_geometric(
    manifold: &Manifold,
    loops: &[Vec<(usize, i64)>],
    twists: &[BigInt],
) -> Result<FramedLinkClass, LinkError> {
    if loops.len() != twists.len() {
        return Err(LinkError::ComponentCountMismatch {
            count: loops.len(),
            twists: twists.len(),
        });
    }
    let mut alpha = manifold.h1().zero_class();
    for (i, signed_edges) in loops.iter().enumerate() {
        let chain =
            manifold
                .chain_from_edges(signed_edges)
                .map_err(|source| LinkError::BadComponent {
                    component: i,
                    source,
                })?;
        let class = manifold
            .cycle_class(&chain)
            .map_err(|source| LinkError::BadComponent {
                component: i,
                source,
            })?;
        alpha = alpha.checked_add(&class).expect("same group");
    }
    let twist = twists.iter().sum::<BigInt>();
    Ok(FramedLinkClass::new(alpha, twist))
}

/// Parsed contents of a link file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkFile {
    pub components: Vec<LinkComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkComponent {
    /// signed edge multiset `(edge index, coefficient)`
    pub cycle: Vec<(usize, i64)>,
    pub twist: BigInt,
}

impl LinkFile {
    /// Parse the link file format:
    ///
    /// ```text
    /// link components N
    /// cycle: e+0 e-2 e+5
    /// twist: 3
    /// ...            (N cycle/twist pairs)
    /// ```
    pub fn parse(text: &str) -> Result<LinkFile, ParseError> {
        let mut reader = LineReader::new(text);
        let (ln, header) = reader.next_content_line("`link components N` header")?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let count: usize = match parts[..] {
            ["link", "components", n] => n
                .parse()
                .map_err(|_| ParseError::new(ln, "invalid component count"))?,
            _ => return Err(ParseError::new(ln, "expected `link components N`")),
        };
        let mut components = Vec::with_capacity(count);
        for _ in 0..count {
            let (ln, line) = reader.next_content_line("`cycle:` line")?;
            let rest = line
                .strip_prefix("cycle:")
                .ok_or_else(|| ParseError::new(ln, "expected `cycle: e±i ...`"))?;
            let mut cycle = Vec::new();
            for token in rest.split_whitespace() {
                cycle.push(parse_edge_token(token, ln)?);
            }
            let (ln, line) = reader.next_content_line("`twist:` line")?;
            let rest = line
                .strip_prefix("twist:")
                .ok_or_else(|| ParseError::new(ln, "expected `twist: k`"))?;
            let twist: BigInt = rest
                .trim()
                .parse()
                .map_err(|_| ParseError::new(ln, format!("invalid twist `{}`", rest.trim())))?;
            components.push(LinkComponent { cycle, twist });
        }
        reader.expect_end()?;
        Ok(LinkFile { components })
    }

    /// Run the components through [`ingest_geometric`].
    pub fn ingest(&self, manifold: &Manifold) -> Result<FramedLinkClass, LinkError> {
        let loops: Vec<Vec<(usize, i64)>> =
            self.components.iter().map(|c| c.cycle.clone()).collect();
        let twists: Vec<BigInt> = self.components.iter().map(|c| c.twist.clone()).collect();
        ingest_geometric(manifold, &loops, &twists)
    }
}

/// `e+7`, `e-3`, or bare `e7` (taken as positive).
fn parse_edge_token(token: &str, line: usize) -> Result<(usize, i64), ParseError> {
    let body = token
        .strip_prefix('e')
        .ok_or_else(|| ParseError::new(line, format!("invalid edge token `{token}`")))?;
    let (sign, digits) = match body.as_bytes().first() {
        Some(b'+') => (1, &body[1..]),
        Some(b'-') => (-1, &body[1..]),
        _ => (1, body),
    };
    let index: usize = digits
        .parse()
        .map_err(|_| ParseError::new(line, format!("invalid edge index in `{token}`")))?;
    Ok((index, sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::HomologyClass;
    use crate::matrix::bigvec;

    fn link(free: &[i64], twist: i64) -> FramedLinkClass {
        FramedLinkClass::new(HomologyClass::free_class(bigvec(free)), twist)
    }

    #[test]
    fn degree_ignores_twist() {
        let l = link(&[1, 0, 0], 0);
        assert_eq!(l.degree(), l.twisted(&BigInt::from(17)).degree());
    }

    #[test]
    fn h_invariant_reduces_mod_2d() {
        // base circle
        assert_eq!(link(&[2, 4], 0).h_invariant(), BigInt::zero());
        // d = 2: twist 5 has h = 1 mod 4
        assert_eq!(link(&[2, 4], 5).h_invariant(), BigInt::from(1));
        // fiber Z: the integer itself
        assert_eq!(link(&[0], 7).h_invariant(), BigInt::from(7));
        assert_eq!(link(&[0], -7).h_invariant(), BigInt::from(-7));
    }

    #[test]
    fn twisting_is_additive() {
        let l = link(&[2, 4], 0);
        let a = BigInt::from(3);
        let b = BigInt::from(-8);
        assert_eq!(l.twisted(&a).twisted(&b), l.twisted(&(a + b)));
        assert_eq!(
            link(&[2, 4], 0).twisted(&BigInt::from(1)).h_invariant(),
            BigInt::from(1)
        );
    }

    #[test]
    fn twist_by_fiber_order_is_trivial() {
        let l = link(&[3, 0], 3); // d = 3, fiber Z_6
        let turned = l.twisted(&BigInt::from(6));
        assert!(l.framed_cobordant(&turned).unwrap());
        assert_eq!(l.h_invariant(), turned.h_invariant());
    }

    #[test]
    fn cobordance_examples() {
        // d = 3: twists 3 and 9 agree mod 6
        assert!(link(&[3], 3).framed_cobordant(&link(&[3], 9)).unwrap());
        // distinct degrees never cobordant
        assert!(!link(&[1, 0], 0)
            .framed_cobordant(&link(&[0, 1], 0))
            .unwrap());
        // fiber Z distinguishes every integer twist
        assert!(!link(&[0], 1).framed_cobordant(&link(&[0], -1)).unwrap());
        assert!(link(&[0], 4).framed_cobordant(&link(&[0], 4)).unwrap());
    }

    #[test]
    fn cobordance_requires_matching_manifold() {
        let a = link(&[1], 0);
        let b = link(&[1, 0], 0);
        assert_eq!(a.framed_cobordant(&b), Err(LinkError::ManifoldMismatch));
    }

    #[test]
    fn ingest_null_homologous_loop() {
        let s3 = Manifold::sphere3();
        // boundary of triangle (0,1,2): edges 01 + 12 - 02
        let loop_chain = vec![
            (s3.edge_index(0, 1).unwrap(), 1),
            (s3.edge_index(1, 2).unwrap(), 1),
            (s3.edge_index(0, 2).unwrap(), -1),
        ];
        let l = ingest_geometric(&s3, &[loop_chain], &[BigInt::zero()]).unwrap();
        assert!(l.degree().is_zero());
        assert_eq!(l.twist(), &BigInt::zero());
    }

    #[test]
    fn ingest_cancelling_components() {
        let s3 = Manifold::sphere3();
        let tri = vec![
            (s3.edge_index(0, 1).unwrap(), 1),
            (s3.edge_index(1, 2).unwrap(), 1),
            (s3.edge_index(0, 2).unwrap(), -1),
        ];
        let anti: Vec<(usize, i64)> = tri.iter().map(|&(e, c)| (e, -c)).collect();
        let l = ingest_geometric(&s3, &[tri, anti], &[BigInt::zero(), BigInt::zero()]).unwrap();
        assert!(l.degree().is_zero());
    }

    #[test]
    fn ingest_rejects_mismatched_component_counts() {
        let s3 = Manifold::sphere3();
        let tri = vec![
            (s3.edge_index(0, 1).unwrap(), 1),
            (s3.edge_index(1, 2).unwrap(), 1),
            (s3.edge_index(0, 2).unwrap(), -1),
        ];
        let err = ingest_geometric(&s3, &[tri], &[]).unwrap_err();
        assert_eq!(
            err,
            LinkError::ComponentCountMismatch {
                count: 1,
                twists: 0
            }
        );
    }

    #[test]
    fn ingest_rejects_non_cycles() {
        let s3 = Manifold::sphere3();
        let not_a_cycle = vec![(s3.edge_index(0, 1).unwrap(), 1)];
        let err = ingest_geometric(&s3, &[not_a_cycle], &[BigInt::zero()]).unwrap_err();
        assert!(matches!(
            err,
            LinkError::BadComponent {
                component: 0,
                source: HomologyError::NotACycle(_)
            }
        ));
    }

    #[test]
    fn link_file_parses() {
        let text = "link components 2\ncycle: e+0 e-2 e5\ntwist: 3\ncycle: e+1\ntwist: -4\n";
        let file = LinkFile::parse(text).unwrap();
        assert_eq!(file.components.len(), 2);
        assert_eq!(file.components[0].cycle, vec![(0, 1), (2, -1), (5, 1)]);
        assert_eq!(file.components[0].twist, BigInt::from(3));
        assert_eq!(file.components[1].twist, BigInt::from(-4));
        assert!(LinkFile::parse("link components 1\ncycle: x3\ntwist: 0\n").is_err());
        assert!(LinkFile::parse("link components 1\ncycle: e1\n").is_err());
    }
}
