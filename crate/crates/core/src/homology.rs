//! Integral homology with canonical coordinates.
//!
//! `H_k = ker d_k / im d_{k+1}` is computed from two Smith decompositions:
//! one of `d_k`, whose transform exhibits an integral basis of the kernel,
//! and one of the image of `d_{k+1}` expressed in that kernel basis. The
//! result is a presentation `Z^r + Z_{t1} + ... + Z_{tm}` with `t1 | t2 |
//! ...`, together with matrices that convert any cycle into its canonical
//! coordinates and reconstruct a representative cycle from them.
//!
//! The canonical basis is the one induced by the Smith transforms, free
//! generators listed before torsion generators, ties broken by the column
//! order of the transformation matrices; it is deterministic for a fixed
//! presentation, which keeps golden tests stable.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::IntegerMatrix;
use crate::smith::smith_with_inverses;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("homology degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("chain is not a cycle: boundary is nonzero at index {0}")]
    NotACycle(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// A homology group in canonical coordinates.
#[derive(Clone)]
pub struct HomologyGroup {
    degree: usize,
    free_rank: usize,
    torsion: Vec<BigInt>,
    /// integer chains realizing the canonical generators, free ones first
    cycle_basis: Vec<Vec<BigInt>>,
    /// `d_k`, kept for the cycle test
    boundary: IntegerMatrix,
    /// bottom rows of `V1^{-1}`: cycle -> kernel coordinates
    kernel_coords: IntegerMatrix,
    /// `U2`: kernel coordinates -> canonical coordinates
    to_canonical: IntegerMatrix,
    /// positions of nontrivial invariant factors in the canonical vector
    torsion_positions: Vec<usize>,
    /// first free position in the canonical vector
    free_offset: usize,
}

impl HomologyGroup {
    /// Compute `ker d_k / im d_next` with canonical coordinates.
    ///
    /// `d_k` maps `C_k -> C_{k-1}` and `d_next` maps `C_{k+1} -> C_k`, so
    /// `d_k.cols() == d_next.rows()`; use zero-row / zero-column matrices
    /// at the ends of the complex.
    pub fn from_boundaries(
        degree: usize,
        d_k: &IntegerMatrix,
        d_next: &IntegerMatrix,
    ) -> HomologyGroup {
        assert_eq!(
            d_k.cols(),
            d_next.rows(),
            "boundary maps are not composable"
        );
        assert!(
            d_k.mul(d_next).is_zero(),
            "d_{degree} composed with d_{} is nonzero",
            degree + 1
        );
        let n_k = d_k.cols();

        // Kernel of d_k: the last z columns of V1 form an integral basis.
        let snf1 = smith_with_inverses(d_k);
        let r1 = snf1.rank();
        let z = n_k - r1;
        let kernel_basis = snf1.v.cols_from(r1); // n_k x z
        let kernel_coords = snf1.v_inv.rows_from(r1); // z x n_k

        // Image of d_next in kernel coordinates.
        let b = kernel_coords.mul(d_next); // z x n_{k+1}
        let snf2 = smith_with_inverses(&b);
        let rho = snf2.rank();
        let diag = snf2.s.diagonal_entries();
        let torsion_positions: Vec<usize> = (0..rho).filter(|&i| !diag[i].is_one()).collect();
        let torsion: Vec<BigInt> = torsion_positions.iter().map(|&i| diag[i].clone()).collect();
        let free_rank = z - rho;

        // Generator chains: kernel_basis * (columns of U2^{-1}).
        let mut cycle_basis = Vec::with_capacity(free_rank + torsion.len());
        for i in (rho..z).chain(torsion_positions.iter().copied()) {
            cycle_basis.push(kernel_basis.mul_vec(&snf2.u_inv.column(i)));
        }

        HomologyGroup {
            degree,
            free_rank,
            torsion,
            cycle_basis,
            boundary: d_k.clone(),
            kernel_coords,
            to_canonical: snf2.u,
            torsion_positions,
            free_offset: rho,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Torsion coefficients `t1 | t2 | ...`, all greater than one.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of elements, when finite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            None
        } else {
            Some(self.torsion.iter().product())
        }
    }

    /// Chains realizing the canonical generators, free generators first.
    pub fn cycle_basis(&self) -> &[Vec<BigInt>] {
        &self.cycle_basis
    }

    /// Rank of the chain group the cycles live in.
    pub fn chain_length(&self) -> usize {
        self.boundary.cols()
    }

    /// The zero class.
    pub fn zero_class(&self) -> HomologyClass {
        HomologyClass {
            free: vec![BigInt::zero(); self.free_rank],
            torsion: vec![BigInt::zero(); self.torsion.len()],
            moduli: self.torsion.clone(),
        }
    }

    /// Class with the given canonical coordinates; torsion entries are
    /// reduced into `[0, ti)`.
    pub fn class(
        &self,
        free: Vec<BigInt>,
        torsion: Vec<BigInt>,
    ) -> Result<HomologyClass, HomologyError> {
        if free.len() != self.free_rank {
            return Err(HomologyError::ShapeMismatch(format!(
                "expected {} free coordinates, got {}",
                self.free_rank,
                free.len()
            )));
        }
        if torsion.len() != self.torsion.len() {
            return Err(HomologyError::ShapeMismatch(format!(
                "expected {} torsion coordinates, got {}",
                self.torsion.len(),
                torsion.len()
            )));
        }
        HomologyClass::from_parts(free, torsion, self.torsion.clone())
    }

    /// Canonical coordinates of a cycle.
    pub fn class_of_cycle(&self, chain: &[BigInt]) -> Result<HomologyClass, HomologyError> {
        if chain.len() != self.chain_length() {
            return Err(HomologyError::ShapeMismatch(format!(
                "chain has length {}, expected {}",
                chain.len(),
                self.chain_length()
            )));
        }
        let image = self.boundary.mul_vec(chain);
        if let Some(idx) = image.iter().position(|v| !v.is_zero()) {
            return Err(HomologyError::NotACycle(idx));
        }
        let y = self.kernel_coords.mul_vec(chain);
        let w = self.to_canonical.mul_vec(&y);
        let free = w[self.free_offset..].to_vec();
        let torsion = self
            .torsion_positions
            .iter()
            .zip(&self.torsion)
            .map(|(&i, t)| w[i].mod_floor(t))
            .collect();
        Ok(HomologyClass {
            free,
            torsion,
            moduli: self.torsion.clone(),
        })
    }

    /// `Z^r + Z_t1 + ...` presentation string, `0` when trivial.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z_{t}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Debug for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomologyGroup(H_{} = {})", self.degree, self.describe())
    }
}

/// An element of a homology group, in canonical coordinates.
///
/// Carries its torsion moduli so classes remain self-contained values;
/// two classes are compatible when their shapes (free length and moduli)
/// agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
    moduli: Vec<BigInt>,
}

impl HomologyClass {
    /// Build a class from raw coordinates; torsion entries are reduced
    /// into the canonical range `[0, ti)`. Moduli must each exceed one.
    pub fn from_parts(
        free: Vec<BigInt>,
        torsion: Vec<BigInt>,
        moduli: Vec<BigInt>,
    ) -> Result<HomologyClass, HomologyError> {
        if torsion.len() != moduli.len() {
            return Err(HomologyError::ShapeMismatch(format!(
                "{} torsion coordinates for {} moduli",
                torsion.len(),
                moduli.len()
            )));
        }
        if let Some(bad) = moduli.iter().find(|m| **m <= BigInt::one()) {
            return Err(HomologyError::ShapeMismatch(format!(
                "torsion modulus {bad} must exceed 1"
            )));
        }
        let torsion = torsion
            .into_iter()
            .zip(&moduli)
            .map(|(v, m)| v.mod_floor(m))
            .collect();
        Ok(HomologyClass {
            free,
            torsion,
            moduli,
        })
    }

    /// Purely free class (no torsion part).
    pub fn free_class(free: Vec<BigInt>) -> HomologyClass {
        HomologyClass {
            free,
            torsion: vec![],
            moduli: vec![],
        }
    }

    pub fn free_part(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion_part(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn torsion_moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }

    pub fn zero_like(&self) -> HomologyClass {
        HomologyClass {
            free: vec![BigInt::zero(); self.free.len()],
            torsion: vec![BigInt::zero(); self.torsion.len()],
            moduli: self.moduli.clone(),
        }
    }

    /// Same ambient group shape (free rank and torsion moduli).
    pub fn same_shape(&self, other: &HomologyClass) -> bool {
        self.free.len() == other.free.len() && self.moduli == other.moduli
    }

    pub fn checked_add(&self, other: &HomologyClass) -> Result<HomologyClass, HomologyError> {
        if !self.same_shape(other) {
            return Err(HomologyError::ShapeMismatch(
                "classes from different groups".into(),
            ));
        }
        let free = self
            .free
            .iter()
            .zip(&other.free)
            .map(|(a, b)| a + b)
            .collect();
        let torsion = self
            .torsion
            .iter()
            .zip(&other.torsion)
            .zip(&self.moduli)
            .map(|((a, b), m)| (a + b).mod_floor(m))
            .collect();
        Ok(HomologyClass {
            free,
            torsion,
            moduli: self.moduli.clone(),
        })
    }

    pub fn neg(&self) -> HomologyClass {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> HomologyClass {
        HomologyClass {
            free: self.free.iter().map(|a| a * k).collect(),
            torsion: self
                .torsion
                .iter()
                .zip(&self.moduli)
                .map(|(a, m)| (a * k).mod_floor(m))
                .collect(),
            moduli: self.moduli.clone(),
        }
    }
}

impl fmt::Display for HomologyClass {
    /// `2,4,6`, `2,4,6/t:1`, `/t:3`, or `0` for the trivial-group class.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.free.is_empty() && self.torsion.is_empty() {
            return write!(f, "0");
        }
        let free: Vec<String> = self.free.iter().map(BigInt::to_string).collect();
        write!(f, "{}", free.join(","))?;
        if !self.torsion.is_empty() {
            let tor: Vec<String> = self.torsion.iter().map(BigInt::to_string).collect();
            write!(f, "/t:{}", tor.join(","))?;
        }
        Ok(())
    }
}
