#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use swsurg_core::{
    surgery, BasicClass, FourManifold, IntMatrix, IntegerLattice, LatticeVector, SurfaceEmbedding,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn random_vector(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> LatticeVector {
    LatticeVector::new((0..len).map(|_| big(rng.gen_range(-bound..=bound))).collect())
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> =
        (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    IntMatrix::from_rows(&data)
}

/// A random unimodular `P` and its inverse, built from elementary moves.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, moves: usize) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(n);
    let mut p_inv = IntMatrix::identity(n);
    if n < 2 {
        return (p, p_inv);
    }
    for _ in 0..moves {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        if rng.gen_bool(0.2) {
            p.swap_cols(a, b);
            p_inv.swap_rows(a, b);
        } else {
            let f = big(*[-2i64, -1, 1, 2].get(rng.gen_range(0..4)).unwrap());
            p.add_col_multiple(a, b, &f);
            p_inv.add_row_multiple(b, a, &-f);
        }
    }
    (p, p_inv)
}

/// Rewrites a manifold and surface in the basis given by the columns of `p`.
pub fn change_basis(
    x: &FourManifold,
    s: &SurfaceEmbedding,
    p: &IntMatrix,
    p_inv: &IntMatrix,
) -> (FourManifold, SurfaceEmbedding) {
    let gram = &(&p.transpose() * x.lattice.gram()) * p;
    let tr = |v: &LatticeVector| LatticeVector::new(p_inv.mul_vec(v.coords()));
    let manifold = FourManifold {
        lattice: IntegerLattice::new(gram).expect("congruent gram stays symmetric"),
        basic_classes: {
            let mut cs: Vec<BasicClass> =
                x.basic_classes.iter().map(|c| BasicClass { k: tr(&c.k), sw: c.sw.clone() }).collect();
            cs.sort();
            cs
        },
        ..x.clone()
    };
    let surface = SurfaceEmbedding::new(tr(&s.surface_class), s.genus, s.dual_class.as_ref().map(tr));
    (manifold, surface)
}

/// `3H ⊕ 2m·H` with the genus-`g` surface `Σ = e₃ + n·f₃` (so `Σ² = 2n`),
/// dual `f₃`, and the extremal class
/// `κ = 2(e₁+f₁+e₂+f₂) + (2g-2)f₃ + Σ_j 2(e'_j+f'_j)` over the first of each
/// extra pair of summands. χ and σ are chosen so that `κ² = 2χ + 3σ`.
pub fn x0_variant(genus: u32, extra_pairs: usize, self_int_half: i64, with_conjugate: bool, sw: i64) -> (FourManifold, SurfaceEmbedding) {
    let h = IntegerLattice::hyperbolic();
    let mut lattice = h.clone();
    let summands = 3 + 2 * extra_pairs;
    for _ in 1..summands {
        lattice = lattice.direct_sum(&h);
    }
    let n = 2 * summands;
    let mut k = vec![big(0); n];
    for c in k.iter_mut().take(4) {
        *c = big(2);
    }
    k[5] = big(2 * i64::from(genus) - 2);
    for j in 0..extra_pairs {
        let base = 6 + 4 * j;
        k[base] = big(2);
        k[base + 1] = big(2);
    }
    let kappa = LatticeVector::new(k);
    let mut classes = vec![BasicClass::new(kappa.clone(), sw).unwrap()];
    if with_conjugate {
        classes.push(BasicClass::new(kappa.neg(), sw).unwrap());
    }
    classes.sort();
    let b2 = n as i64;
    let manifold = FourManifold {
        name: format!("x0-g{genus}-m{extra_pairs}"),
        chi: b2 + 2,
        sigma: 0,
        lattice,
        basic_classes: classes,
        simple_type: true,
    };
    let mut sigma = vec![big(0); n];
    sigma[4] = big(1);
    sigma[5] = big(self_int_half);
    let surface = SurfaceEmbedding::new(LatticeVector::new(sigma), genus, Some(LatticeVector::basis(n, 5)));
    (manifold, surface)
}

/// A random valid summand for a genus-`g` fiber sum: an `x0_variant` in a
/// scrambled basis, possibly blown up away from the surface.
pub fn random_side(rng: &mut ChaCha8Rng, genus: u32) -> (FourManifold, SurfaceEmbedding) {
    let extra = rng.gen_range(0..=1);
    let self_int_half = rng.gen_range(0..=1);
    let sw = *[-3i64, -1, 1, 2].get(rng.gen_range(0..4)).unwrap();
    let (x, s) = x0_variant(genus, extra, self_int_half, rng.gen_bool(0.5), sw);
    let (p, p_inv) = random_unimodular(rng, x.lattice.rank(), 12);
    let (mut x, mut s) = change_basis(&x, &s, &p, &p_inv);
    for _ in 0..rng.gen_range(0..=1) {
        x = surgery::blow_up(&x).unwrap();
        s = surgery::pad_surface(&s, 1);
    }
    (x, s)
}

/// A normalized random pair ready for `fiber_sum`.
pub fn random_pair(
    rng: &mut ChaCha8Rng,
) -> ((FourManifold, SurfaceEmbedding), (FourManifold, SurfaceEmbedding)) {
    let genus = rng.gen_range(2..=4);
    let (x1, s1) = random_side(rng, genus);
    let (x2, s2) = random_side(rng, genus);
    surgery::normalize_pair(&x1, &s1, &x2, &s2).unwrap()
}

/// `w + 2x` for a random `x`, where `w` is some characteristic vector.
pub fn random_characteristic(rng: &mut ChaCha8Rng, lattice: &IntegerLattice, bound: i64) -> LatticeVector {
    let w = lattice.characteristic_representative().expect("unimodular lattices have characteristic vectors");
    w.add(&random_vector(rng, lattice.rank(), bound).scaled(&big(2)))
}
