//! Boundary data on `Y = Σ × S¹`: restriction of a class to the neck, the
//! pull-back condition, and the translation-invariant moduli space.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{IntegerLattice, LatticeVector};
use crate::manifold::SurfaceEmbedding;
use crate::surgery::GluedLatticePresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuliKind {
    Empty,
    /// `s^k(Σ)`, the k-th symmetric product of the surface.
    SymmetricProduct,
    /// Jacobian of degree `g - 1` line bundles; the reducible locus at `c·Σ = 0`.
    JacobianReducible,
    /// `s^{g-1}(Σ)`, what a small perturbation leaves at `c·Σ = 0`.
    PerturbedSymmetricProduct,
}

impl fmt::Display for ModuliKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModuliKind::Empty => "Empty",
            ModuliKind::SymmetricProduct => "SymmetricProduct",
            ModuliKind::JacobianReducible => "JacobianReducible",
            ModuliKind::PerturbedSymmetricProduct => "PerturbedSymmetricProduct",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliDescriptor {
    pub kind: ModuliKind,
    /// `((2g - 2) - |c·Σ|) / 2`; the symmetric power when nonnegative.
    pub k: i64,
    pub genus: u32,
    /// Complex dimension of the space described by `kind` (0 when empty).
    pub complex_dimension: i64,
    /// At `c·Σ = 0`, the unperturbed reducible picture kept alongside.
    pub unperturbed: Option<(ModuliKind, i64)>,
}

impl fmt::Display for ModuliDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ModuliKind::Empty => write!(f, "Empty k={}", self.k),
            ModuliKind::SymmetricProduct if self.k == 0 => write!(f, "SymmetricProduct k=0 (point)"),
            _ => {
                write!(f, "{} k={} (complex dimension {})", self.kind, self.k, self.complex_dimension)?;
                if let Some((kind, dim)) = self.unperturbed {
                    write!(f, "; unperturbed {kind} (complex dimension {dim})")?;
                }
                Ok(())
            }
        }
    }
}

/// `c · Σ`. Callers halve it after checking parity.
pub fn restriction_pairing(lattice: &IntegerLattice, s: &SurfaceEmbedding, c: &LatticeVector) -> Result<BigInt> {
    if !lattice.square(&s.surface_class)?.is_zero() {
        return Err(Error::HypothesisNotMet("surface must have self-intersection zero".into()));
    }
    lattice.pair(c, &s.surface_class)
}

/// Whether `c` vanishes on every torus `γ × S¹` of the neck.
pub fn pullback_condition(presentation: &GluedLatticePresentation, c: &LatticeVector) -> Result<bool> {
    let lattice = &presentation.lattice;
    for t in presentation.tori() {
        if !lattice.pair(c, &t)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Moduli space of translation-invariant solutions on `Σ × S¹` for a class
/// with the given pairing against `Σ`.
pub fn moduli_descriptor(genus: u32, c_dot_sigma: &BigInt) -> Result<ModuliDescriptor> {
    if genus < 1 {
        return Err(Error::Rejected("genus must be at least 1".into()));
    }
    if c_dot_sigma.is_odd() {
        return Err(Error::Rejected(format!("pairing {c_dot_sigma} is odd")));
    }
    let two_k = BigInt::from(2 * i64::from(genus) - 2) - c_dot_sigma.abs();
    let k = (two_k / BigInt::from(2)).to_i64().unwrap_or(i64::MIN);
    let g = i64::from(genus);
    let descriptor = if k < 0 {
        ModuliDescriptor { kind: ModuliKind::Empty, k, genus, complex_dimension: 0, unperturbed: None }
    } else if !c_dot_sigma.is_zero() {
        ModuliDescriptor { kind: ModuliKind::SymmetricProduct, k, genus, complex_dimension: k, unperturbed: None }
    } else {
        ModuliDescriptor {
            kind: ModuliKind::PerturbedSymmetricProduct,
            k,
            genus,
            complex_dimension: g - 1,
            unperturbed: Some((ModuliKind::JacobianReducible, g)),
        }
    };
    Ok(descriptor)
}

/// Total rank of the boundary homology in the extremal case `k = 0`, where
/// the moduli space is a point.
pub fn floer_total_rank_extremal(genus: u32, k: i64) -> Result<u64> {
    if genus < 1 {
        return Err(Error::Rejected("genus must be at least 1".into()));
    }
    match k {
        0 => Ok(1),
        k if k > 0 => Err(Error::Unsupported(format!(
            "homology of the symmetric product s^{k} is not modelled; only k = 0 is supported"
        ))),
        _ => Err(Error::Rejected(format!("k = {k} describes an empty moduli space"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::surgery;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn descriptor_examples() {
        let point = moduli_descriptor(2, &b(2)).unwrap();
        assert_eq!((point.kind, point.k, point.complex_dimension), (ModuliKind::SymmetricProduct, 0, 0));
        assert_eq!(point.to_string(), "SymmetricProduct k=0 (point)");

        let empty = moduli_descriptor(2, &b(4)).unwrap();
        assert_eq!((empty.kind, empty.k), (ModuliKind::Empty, -1));

        let m0 = moduli_descriptor(3, &b(0)).unwrap();
        assert_eq!(m0.kind, ModuliKind::PerturbedSymmetricProduct);
        assert_eq!((m0.k, m0.complex_dimension), (2, 2));
        assert_eq!(m0.unperturbed, Some((ModuliKind::JacobianReducible, 3)));

        assert!(matches!(moduli_descriptor(2, &b(3)), Err(Error::Rejected(_))));
        assert!(matches!(moduli_descriptor(0, &b(0)), Err(Error::Rejected(_))));
    }

    #[test]
    fn descriptor_sign_invariant() {
        for g in 1..6u32 {
            for m in (-12..=12).step_by(2) {
                assert_eq!(moduli_descriptor(g, &b(m)).unwrap(), moduli_descriptor(g, &b(-m)).unwrap());
            }
        }
    }

    #[test]
    fn extremal_rank() {
        assert_eq!(floer_total_rank_extremal(2, 0).unwrap(), 1);
        assert_eq!(floer_total_rank_extremal(5, 0).unwrap(), 1);
        assert!(matches!(floer_total_rank_extremal(2, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn restriction_and_pullback() {
        let file = catalog::x0_file();
        let x0 = &file.manifold;
        let s = &file.surfaces[0].1;
        let kappa = x0.basic_classes.iter().map(|c| &c.k).max().unwrap();
        assert_eq!(restriction_pairing(&x0.lattice, s, kappa).unwrap(), b(2));
        assert_eq!(restriction_pairing(&x0.lattice, s, &s.surface_class).unwrap(), b(0));

        let fs = surgery::fiber_sum(x0, s, x0, s).unwrap();
        let p = &fs.presentation;
        for c in &fs.manifold.basic_classes {
            assert!(pullback_condition(p, &c.k).unwrap());
        }
        // D(b1) pairs to 1 with T(a1)
        assert!(!pullback_condition(p, &p.spheres()[1]).unwrap());
        assert!(pullback_condition(p, &p.surface_sigma()).unwrap());
    }

    #[test]
    fn characteristic_pairings_are_even() {
        let file = catalog::x0_file();
        let s = &file.surfaces[0].1;
        let fs = surgery::fiber_sum(&file.manifold, s, &file.manifold, s).unwrap();
        let l = &fs.manifold.lattice;
        let k = l.characteristic_representative().unwrap();
        assert!(restriction_pairing(l, &fs.surface, &k).unwrap().is_even());
    }
}
