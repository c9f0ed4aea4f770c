//! Homeomorphism-level data of a closed 4-manifold with `b₁ = 0`, together
//! with its Seiberg-Witten basic classes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result, Violation};
use crate::lattice::{IntegerLattice, LatticeVector};

/// A characteristic class with nonzero Seiberg-Witten value.
///
/// The value is the sum over all Spin^c structures sharing this first Chern
/// class modulo torsion.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasicClass {
    pub k: LatticeVector,
    pub sw: BigInt,
}

impl BasicClass {
    pub fn new(k: LatticeVector, sw: impl Into<BigInt>) -> Result<Self> {
        let sw = sw.into();
        if sw.is_zero() {
            return Err(Error::Rejected(format!("basic class {k} has zero SW value")));
        }
        Ok(BasicClass { k, sw })
    }
}

/// An embedded surface: its homology class, genus, and optionally a class
/// pairing to one with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceEmbedding {
    pub surface_class: LatticeVector,
    pub genus: u32,
    pub dual_class: Option<LatticeVector>,
}

impl SurfaceEmbedding {
    pub fn new(surface_class: LatticeVector, genus: u32, dual_class: Option<LatticeVector>) -> Self {
        SurfaceEmbedding { surface_class, genus, dual_class }
    }

    /// `2g - 2`, the extremal value of `κ · Σ`.
    pub fn extremal_pairing(&self) -> BigInt {
        BigInt::from(2 * i64::from(self.genus) - 2)
    }

    pub fn self_intersection(&self, lattice: &IntegerLattice) -> Result<BigInt> {
        lattice.square(&self.surface_class)
    }

    /// Checks the surface against `lattice`.
    pub fn validate(&self, lattice: &IntegerLattice) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = lattice.rank();
        if self.surface_class.len() != n {
            out.push(Violation::error(
                "dimension",
                format!("surface class has length {}, lattice rank is {n}", self.surface_class.len()),
            ));
            return out;
        }
        if self.genus < 1 {
            out.push(Violation::error("genus", "surface genus must be at least 1"));
        }
        if self.surface_class.is_zero() {
            out.push(Violation::error("torsion-surface", "surface class is zero"));
        }
        if let Some(d) = &self.dual_class {
            if d.len() != n {
                out.push(Violation::error(
                    "dimension",
                    format!("dual class has length {}, lattice rank is {n}", d.len()),
                ));
            } else if !lattice.pair_unchecked(d, &self.surface_class).is_one() {
                out.push(Violation::error("dual-pairing", "dual class does not pair to 1 with the surface"));
            }
        }
        out
    }
}

/// A closed oriented 4-manifold with `b₁ = 0`, described by its Euler
/// characteristic, signature, intersection lattice and basic classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourManifold {
    pub name: String,
    pub chi: i64,
    pub sigma: i64,
    pub lattice: IntegerLattice,
    pub basic_classes: Vec<BasicClass>,
    pub simple_type: bool,
}

impl FourManifold {
    /// `2χ + 3σ`, the square of every basic class.
    pub fn canonical_square(&self) -> BigInt {
        BigInt::from(2 * self.chi + 3 * self.sigma)
    }

    pub fn b2(&self) -> usize {
        self.lattice.rank()
    }

    /// All invariant checks. An empty list, or one holding only warnings,
    /// means the description is usable.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let rank = self.lattice.rank() as i64;
        if rank != self.chi - 2 {
            out.push(Violation::error(
                "b2-mismatch",
                format!("lattice rank {rank} differs from chi - 2 = {}", self.chi - 2),
            ));
        }
        if !self.lattice.is_unimodular() {
            out.push(Violation::error(
                "unimodular",
                format!("|det| of the intersection form is {}, expected 1", self.lattice.determinant()),
            ));
        }
        let inertia = self.lattice.inertia();
        if inertia.signature() != self.sigma {
            out.push(Violation::error(
                "signature",
                format!("form has signature {}, declared sigma is {}", inertia.signature(), self.sigma),
            ));
        }
        if inertia.positive <= 1 || inertia.positive % 2 == 0 {
            out.push(Violation::warning(
                "b-plus",
                format!("b+ = {} but the theory assumes b+ > 1 and odd", inertia.positive),
            ));
        }

        let target = self.canonical_square();
        let mut seen = BTreeSet::new();
        for (i, class) in self.basic_classes.iter().enumerate() {
            let k = &class.k;
            if k.len() != self.lattice.rank() {
                out.push(Violation::error(
                    "dimension",
                    format!("basic class #{i} has length {}, lattice rank is {rank}", k.len()),
                ));
                continue;
            }
            if class.sw.is_zero() {
                out.push(Violation::error("zero-sw", format!("basic class #{i} has SW value 0")));
            }
            if !self.lattice.is_characteristic(k).unwrap_or(false) {
                out.push(Violation::error("characteristic", format!("basic class #{i} {k} is not characteristic")));
            }
            let sq = self.lattice.pair_unchecked(k, k);
            if sq != target {
                out.push(Violation::error(
                    "square-condition",
                    format!("basic class #{i} has square {sq}, expected 2chi+3sigma = {target}"),
                ));
            }
            if !seen.insert(k.clone()) {
                out.push(Violation::error("duplicate-class", format!("basic class #{i} {k} is listed twice")));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().iter().all(|v| !v.is_error())
    }

    /// Fails with the error-level violations, if any.
    pub fn ensure_valid(&self) -> Result<()> {
        let errors: Vec<Violation> = self.validate().into_iter().filter(Violation::is_error).collect();
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(errors))
        }
    }

    /// `d = (c₁² - 2χ - 3σ) / 4` for a characteristic `c₁`.
    pub fn expected_dimension(&self, c1: &LatticeVector) -> Result<BigInt> {
        if !self.lattice.is_characteristic(c1)? {
            return Err(Error::Rejected(format!("{c1} is not characteristic")));
        }
        let numerator = self.lattice.pair_unchecked(c1, c1) - self.canonical_square();
        let (d, r) = numerator.div_rem(&BigInt::from(4));
        if !r.is_zero() {
            return Err(Error::Inconsistency(format!(
                "c1^2 - 2chi - 3sigma = {numerator} is not divisible by 4; is the form unimodular?"
            )));
        }
        Ok(d)
    }

    /// Characteristic with expected dimension zero.
    pub fn is_basic_candidate(&self, c1: &LatticeVector) -> bool {
        matches!(self.expected_dimension(c1), Ok(d) if d.is_zero())
    }
}
