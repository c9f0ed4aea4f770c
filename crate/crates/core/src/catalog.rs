//! Bundled example manifolds.
//!
//! * `k3.mfd`: the K3 form `3H ⊕ 2(-E8)`, χ = 24, σ = -16, single basic
//!   class 0, plus an elliptic fiber `F` of genus 1.
//! * `x0.mfd`: synthetic `3H` with χ = 8, σ = 0 (basis e₁,f₁,e₂,f₂,e₃,f₃),
//!   basic classes `±(2e₁+2f₁+2e₂+2f₂+2f₃)` and a genus-2 surface `S = e₃`
//!   with dual `f₃`.
//! * `nonprimitive.mfd`: the same form with the divisible surface `S = 2e₃`,
//!   for which no dual class exists.

use crate::format::ManifoldFile;
use crate::lattice::{IntegerLattice, LatticeVector};
use crate::manifold::{BasicClass, FourManifold, SurfaceEmbedding};

pub const K3_MFD: &str = include_str!("../catalog/k3.mfd");
pub const X0_MFD: &str = include_str!("../catalog/x0.mfd");
pub const NONPRIMITIVE_MFD: &str = include_str!("../catalog/nonprimitive.mfd");

pub const FILES: [(&str, &str); 3] =
    [("k3.mfd", K3_MFD), ("x0.mfd", X0_MFD), ("nonprimitive.mfd", NONPRIMITIVE_MFD)];

fn three_h() -> IntegerLattice {
    let h = IntegerLattice::hyperbolic();
    h.direct_sum(&h).direct_sum(&h)
}

fn v(c: &[i64]) -> LatticeVector {
    LatticeVector::from_i64s(c)
}

pub fn k3_file() -> ManifoldFile {
    let e8 = IntegerLattice::negative_e8();
    let lattice = three_h().direct_sum(&e8).direct_sum(&e8);
    let manifold = FourManifold {
        name: "k3".into(),
        chi: 24,
        sigma: -16,
        lattice,
        basic_classes: vec![BasicClass { k: LatticeVector::zero(22), sw: 1.into() }],
        simple_type: true,
    };
    let fiber = SurfaceEmbedding::new(LatticeVector::basis(22, 0), 1, Some(LatticeVector::basis(22, 1)));
    ManifoldFile::new(manifold, vec![("F".into(), fiber)])
}

pub fn x0_file() -> ManifoldFile {
    let kappa = v(&[2, 2, 2, 2, 0, 2]);
    let manifold = FourManifold {
        name: "x0".into(),
        chi: 8,
        sigma: 0,
        lattice: three_h(),
        basic_classes: vec![BasicClass { k: kappa.neg(), sw: 1.into() }, BasicClass { k: kappa, sw: 1.into() }],
        simple_type: true,
    };
    let s = SurfaceEmbedding::new(v(&[0, 0, 0, 0, 1, 0]), 2, Some(v(&[0, 0, 0, 0, 0, 1])));
    ManifoldFile::new(manifold, vec![("S".into(), s)])
}

pub fn nonprimitive_file() -> ManifoldFile {
    let manifold = FourManifold {
        name: "x0-nonprimitive".into(),
        chi: 8,
        sigma: 0,
        lattice: three_h(),
        basic_classes: vec![BasicClass { k: v(&[2, 2, 2, 2, 0, 0]), sw: 1.into() }],
        simple_type: true,
    };
    let s = SurfaceEmbedding::new(v(&[0, 0, 0, 0, 2, 0]), 2, None);
    ManifoldFile::new(manifold, vec![("S".into(), s)])
}

pub fn k3() -> FourManifold {
    k3_file().manifold
}

pub fn x0() -> FourManifold {
    x0_file().manifold
}

pub fn nonprimitive_parts() -> (FourManifold, SurfaceEmbedding) {
    let f = nonprimitive_file();
    let s = f.surfaces[0].1.clone();
    (f.manifold, s)
}
