//! Blow-ups and connected sums along embedded surfaces, with the
//! bookkeeping that carries basic classes through them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{IntegerLattice, LatticeVector, SublatticeBasis};
use crate::manifold::{BasicClass, FourManifold, SurfaceEmbedding};
use crate::matrix::{self, IntMatrix};

/// Where a basis vector of a surgery output comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisRole {
    /// Basis vector `i` of the input manifold, unchanged.
    Inherited(usize),
    /// Exceptional class of the `i`-th blow-up (0-based).
    Exceptional(usize),
    /// Torus `γ × S¹` for the `i`-th symplectic basis curve `a₁, b₁, a₂, …`.
    Torus(usize),
    /// The (-2)-sphere built over the `i`-th symplectic basis curve.
    Sphere(usize),
    /// Basis vector `i` of the complement of `⟨Σ₁, D₁⟩` in the first summand.
    FromX1(usize),
    /// Basis vector `i` of the complement of `⟨Σ₂, D₂⟩` in the second summand.
    FromX2(usize),
    DualD,
    SurfaceSigma,
}

fn curve_name(i: usize) -> String {
    let letter = if i % 2 == 0 { 'a' } else { 'b' };
    format!("{letter}{}", i / 2 + 1)
}

impl fmt::Display for BasisRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisRole::Inherited(i) => write!(f, "inherited[{i}]"),
            BasisRole::Exceptional(i) => write!(f, "exceptional E{}", i + 1),
            BasisRole::Torus(i) => write!(f, "torus T({})", curve_name(*i)),
            BasisRole::Sphere(i) => write!(f, "sphere D({})", curve_name(*i)),
            BasisRole::FromX1(i) => write!(f, "X1 complement[{i}]"),
            BasisRole::FromX2(i) => write!(f, "X2 complement[{i}]"),
            BasisRole::DualD => write!(f, "dual D"),
            BasisRole::SurfaceSigma => write!(f, "surface Sigma"),
        }
    }
}

/// `⟨β, γ⟩` on `H₁(Σ)` in the basis `a₁, b₁, …, a_g, b_g` with `⟨aᵢ, bᵢ⟩ = 1`.
fn symplectic_form(beta: usize, gamma: usize) -> i64 {
    if beta / 2 != gamma / 2 || beta == gamma {
        0
    } else if beta % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Named basis and Gram matrix of the lattice of a fiber sum.
///
/// Basis order: `2g` tori, `2g` spheres, the complement of `⟨Σ₁, D₁⟩`, the
/// complement of `⟨Σ₂, D₂⟩`, then `D` and `Σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluedLatticePresentation {
    pub genus: u32,
    pub roles: Vec<BasisRole>,
    pub lattice: IntegerLattice,
    /// Complement of `⟨Σ₁, D₁⟩` in the first summand's coordinates.
    pub complement1: SublatticeBasis,
    /// Complement of `⟨Σ₂, D₂⟩` in the second summand's coordinates.
    pub complement2: SublatticeBasis,
}

impl GluedLatticePresentation {
    pub fn rank(&self) -> usize {
        self.roles.len()
    }

    fn two_g(&self) -> usize {
        2 * self.genus as usize
    }

    pub fn torus_indices(&self) -> std::ops::Range<usize> {
        0..self.two_g()
    }

    pub fn sphere_indices(&self) -> std::ops::Range<usize> {
        self.two_g()..2 * self.two_g()
    }

    pub fn x1_indices(&self) -> std::ops::Range<usize> {
        let start = 2 * self.two_g();
        start..start + self.complement1.rank()
    }

    pub fn x2_indices(&self) -> std::ops::Range<usize> {
        let start = self.x1_indices().end;
        start..start + self.complement2.rank()
    }

    pub fn dual_index(&self) -> usize {
        self.rank() - 2
    }

    pub fn sigma_index(&self) -> usize {
        self.rank() - 1
    }

    pub fn basis_vector(&self, i: usize) -> LatticeVector {
        LatticeVector::basis(self.rank(), i)
    }

    pub fn surface_sigma(&self) -> LatticeVector {
        self.basis_vector(self.sigma_index())
    }

    pub fn dual_d(&self) -> LatticeVector {
        self.basis_vector(self.dual_index())
    }

    pub fn tori(&self) -> Vec<LatticeVector> {
        self.torus_indices().map(|i| self.basis_vector(i)).collect()
    }

    pub fn spheres(&self) -> Vec<LatticeVector> {
        self.sphere_indices().map(|i| self.basis_vector(i)).collect()
    }

    /// Assembles the presentation from the two complements and `D₁² + D₂²`.
    fn assemble(
        genus: u32,
        x1: &IntegerLattice,
        complement1: SublatticeBasis,
        x2: &IntegerLattice,
        complement2: SublatticeBasis,
        dual_square: BigInt,
    ) -> Result<Self> {
        let two_g = 2 * genus as usize;
        let mut roles: Vec<BasisRole> = (0..two_g).map(BasisRole::Torus).collect();
        roles.extend((0..two_g).map(BasisRole::Sphere));
        roles.extend((0..complement1.rank()).map(BasisRole::FromX1));
        roles.extend((0..complement2.rank()).map(BasisRole::FromX2));
        roles.push(BasisRole::DualD);
        roles.push(BasisRole::SurfaceSigma);

        let n = roles.len();
        let mut gram = IntMatrix::zeros(n, n);
        for s in 0..two_g {
            let si = two_g + s;
            gram[(si, si)] = BigInt::from(-2);
            for t in 0..two_g {
                let value = BigInt::from(symplectic_form(t, s));
                gram[(si, t)] = value.clone();
                gram[(t, si)] = value;
            }
        }
        let g1 = x1.restricted_gram(&complement1)?;
        let off1 = 2 * two_g;
        let g2 = x2.restricted_gram(&complement2)?;
        let off2 = off1 + complement1.rank();
        for (offset, block) in [(off1, &g1), (off2, &g2)] {
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    gram[(offset + i, offset + j)] = block[(i, j)].clone();
                }
            }
        }
        let (d, s) = (n - 2, n - 1);
        gram[(d, d)] = dual_square;
        gram[(d, s)] = BigInt::one();
        gram[(s, d)] = BigInt::one();

        Ok(GluedLatticePresentation {
            genus,
            roles,
            lattice: IntegerLattice::new(gram)?,
            complement1,
            complement2,
        })
    }

    /// Image of a complement vector of summand `side` (1 or 2) in the glued basis.
    fn embed(&self, side: u8, coords: &[BigInt]) -> LatticeVector {
        let range = if side == 1 { self.x1_indices() } else { self.x2_indices() };
        let mut v = vec![BigInt::zero(); self.rank()];
        for (slot, c) in range.zip(coords) {
            v[slot] = c.clone();
        }
        LatticeVector::new(v)
    }
}

fn sort_classes(classes: &mut [BasicClass]) {
    classes.sort();
}

/// Blow-up at one point: adds a `⟨-1⟩` summand with exceptional class `E`
/// as the new last basis vector and replaces every basic class `K` by
/// `K + E` and `K - E`.
///
/// Both children inherit the SW value of `K`.
pub fn blow_up(x: &FourManifold) -> Result<FourManifold> {
    x.ensure_valid()?;
    if !x.simple_type {
        return Err(Error::HypothesisNotMet(format!(
            "blow-up formula needs a simple-type manifold; '{}' is not marked simple type",
            x.name
        )));
    }
    let n = x.lattice.rank();
    let e = LatticeVector::basis(n + 1, n);
    let mut classes = Vec::with_capacity(2 * x.basic_classes.len());
    for class in &x.basic_classes {
        let k = class.k.padded(1);
        classes.push(BasicClass { k: k.add(&e), sw: class.sw.clone() });
        classes.push(BasicClass { k: k.sub(&e), sw: class.sw.clone() });
    }
    sort_classes(&mut classes);
    Ok(FourManifold {
        name: format!("{}#-CP2", x.name),
        chi: x.chi + 1,
        sigma: x.sigma - 1,
        lattice: x.lattice.direct_sum(&IntegerLattice::diagonal_one(-1)),
        basic_classes: classes,
        simple_type: true,
    })
}

/// Extends a surface of `x` to the blow-up, unchanged.
pub fn pad_surface(s: &SurfaceEmbedding, extra: usize) -> SurfaceEmbedding {
    SurfaceEmbedding {
        surface_class: s.surface_class.padded(extra),
        genus: s.genus,
        dual_class: s.dual_class.as_ref().map(|d| d.padded(extra)),
    }
}

/// Blows up `times` points on the surface, replacing `Σ` by its proper
/// transform `Σ - E₁ - … - E_times`.
pub fn blow_up_on_surface(
    x: &FourManifold,
    s: &SurfaceEmbedding,
    times: usize,
) -> Result<(FourManifold, SurfaceEmbedding)> {
    if s.surface_class.len() != x.lattice.rank() {
        return Err(Error::DimensionMismatch { expected: x.lattice.rank(), found: s.surface_class.len() });
    }
    let mut current = x.clone();
    let mut surface = s.clone();
    for _ in 0..times {
        current = blow_up(&current)?;
        let n = current.lattice.rank();
        let padded = pad_surface(&surface, 1);
        surface = SurfaceEmbedding {
            surface_class: padded.surface_class.sub(&LatticeVector::basis(n, n - 1)),
            ..padded
        };
    }
    Ok((current, surface))
}

/// Blows up each side on its surface until both self-intersections are zero.
/// Only non-negative self-intersections are supported.
pub fn normalize_pair(
    x1: &FourManifold,
    s1: &SurfaceEmbedding,
    x2: &FourManifold,
    s2: &SurfaceEmbedding,
) -> Result<((FourManifold, SurfaceEmbedding), (FourManifold, SurfaceEmbedding))> {
    let n1 = s1.self_intersection(&x1.lattice)?;
    let n2 = s2.self_intersection(&x2.lattice)?;
    if n1.is_negative() || n2.is_negative() {
        return Err(Error::Unsupported(format!(
            "surface self-intersections ({n1}, {n2}) must both be non-negative"
        )));
    }
    let times = |n: &BigInt| -> Result<usize> {
        usize::try_from(n).map_err(|_| Error::Unsupported(format!("self-intersection {n} is too large")))
    };
    let side1 = blow_up_on_surface(x1, s1, times(&n1)?)?;
    let side2 = blow_up_on_surface(x2, s2, times(&n2)?)?;
    Ok((side1, side2))
}

/// Whether `(a1, a2)` lies in the pairing group: `a1 · Σ₁ = a2 · Σ₂`.
pub fn pairing_group_check(
    x1: &FourManifold,
    s1: &SurfaceEmbedding,
    x2: &FourManifold,
    s2: &SurfaceEmbedding,
    a1: &LatticeVector,
    a2: &LatticeVector,
) -> Result<bool> {
    Ok(x1.lattice.pair(a1, &s1.surface_class)? == x2.lattice.pair(a2, &s2.surface_class)?)
}

/// Order of the cokernel of the restriction map, for surfaces of
/// divisibility `m1` and `m2`: `m1·m2 / lcm(m1, m2) = gcd(m1, m2)`.
///
/// Cross-checked against the Smith form of the presentation `(m1, -m2)`.
pub fn cokernel_of_pi(m1: &BigInt, m2: &BigInt) -> Result<BigInt> {
    if m1.is_zero() || m2.is_zero() {
        return Err(Error::HypothesisNotMet(
            "zero divisibility: the surface class pairs trivially with everything".into(),
        ));
    }
    if m1.is_negative() || m2.is_negative() {
        return Err(Error::Rejected(format!("divisibilities must be positive, got ({m1}, {m2})")));
    }
    let d = (m1 * m2) / m1.lcm(m2);
    let presentation = IntMatrix::from_rows(&[vec![m1.clone(), -m2.clone()]]);
    let snf = matrix::smith_normal_form(&presentation);
    let factors = snf.invariant_factors();
    if factors.len() != 1 || factors[0] != d {
        return Err(Error::Inconsistency(format!(
            "cokernel order {d} disagrees with Smith form {factors:?}"
        )));
    }
    Ok(d)
}

/// A pair of input classes in the pairing group whose surface pairing is
/// non-extremal; the gluing theory does not determine what they produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndeterminedPair {
    pub index1: usize,
    pub index2: usize,
    pub class1: BasicClass,
    pub class2: BasicClass,
    pub dot_sigma: BigInt,
}

impl UndeterminedPair {
    pub const REASON: &'static str = "undetermined by paper";
}

/// Glued classes plus the pairs that could not be resolved.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GluingOutcome {
    pub classes: Vec<BasicClass>,
    pub undetermined: Vec<UndeterminedPair>,
}

/// Result of [`fiber_sum`].
#[derive(Debug, Clone)]
pub struct FiberSum {
    pub manifold: FourManifold,
    pub presentation: GluedLatticePresentation,
    pub surface: SurfaceEmbedding,
    pub undetermined: Vec<UndeterminedPair>,
}

fn check_fiber_sum_side(x: &FourManifold, s: &SurfaceEmbedding, side: u8) -> Result<LatticeVector> {
    x.ensure_valid()?;
    let surface_issues = s.validate(&x.lattice);
    if !surface_issues.is_empty() {
        return Err(Error::Invalid(surface_issues));
    }
    if !x.simple_type {
        return Err(Error::HypothesisNotMet(format!("summand {side} ('{}') is not simple type", x.name)));
    }
    if !s.self_intersection(&x.lattice)?.is_zero() {
        return Err(Error::HypothesisNotMet(format!(
            "surface in summand {side} has nonzero self-intersection; normalize first"
        )));
    }
    if !x.lattice.is_primitive(&s.surface_class)? {
        return Err(Error::HypothesisNotMet(format!(
            "surface class in summand {side} is not primitive; no dual class exists"
        )));
    }
    s.dual_class.clone().ok_or_else(|| {
        Error::HypothesisNotMet(format!("surface in summand {side} has no dual class D with D·Σ = 1"))
    })
}

/// Connected sum of two manifolds along square-zero genus-`g` surfaces.
pub fn fiber_sum(
    x1: &FourManifold,
    s1: &SurfaceEmbedding,
    x2: &FourManifold,
    s2: &SurfaceEmbedding,
) -> Result<FiberSum> {
    if s1.genus != s2.genus {
        return Err(Error::HypothesisNotMet(format!("genus mismatch: {} vs {}", s1.genus, s2.genus)));
    }
    let genus = s1.genus;
    if genus < 2 {
        return Err(Error::HypothesisNotMet(format!("gluing formula needs genus >= 2, got {genus}")));
    }
    let d1 = check_fiber_sum_side(x1, s1, 1)?;
    let d2 = check_fiber_sum_side(x2, s2, 2)?;

    let w1 = SublatticeBasis::new("W1", vec![s1.surface_class.clone(), d1.clone()]);
    let w2 = SublatticeBasis::new("W2", vec![s2.surface_class.clone(), d2.clone()]);
    let complement1 = x1.lattice.orthogonal_complement(&w1)?;
    let complement2 = x2.lattice.orthogonal_complement(&w2)?;
    for (c, x) in [(&complement1, x1), (&complement2, x2)] {
        if c.rank() + 2 != x.lattice.rank() {
            return Err(Error::Inconsistency(format!(
                "complement of <Sigma, D> in '{}' has rank {}, expected {}",
                x.name,
                c.rank(),
                x.lattice.rank() - 2
            )));
        }
    }
    let dual_square = x1.lattice.pair_unchecked(&d1, &d1) + x2.lattice.pair_unchecked(&d2, &d2);
    let presentation =
        GluedLatticePresentation::assemble(genus, &x1.lattice, complement1, &x2.lattice, complement2, dual_square)?;

    let mut manifold = FourManifold {
        name: format!("{} #[g={genus}] {}", x1.name, x2.name),
        chi: x1.chi + x2.chi + 4 * i64::from(genus) - 4,
        sigma: x1.sigma + x2.sigma,
        lattice: presentation.lattice.clone(),
        basic_classes: Vec::new(),
        simple_type: true,
    };
    let outcome = glue_basic_classes(x1, s1, x2, s2, &presentation)?;
    manifold.basic_classes = outcome.classes;

    if !manifold.lattice.is_unimodular() {
        return Err(Error::Inconsistency("assembled intersection form is not unimodular".into()));
    }
    let surface = SurfaceEmbedding::new(presentation.surface_sigma(), genus, Some(presentation.dual_d()));
    Ok(FiberSum { manifold, presentation, surface, undetermined: outcome.undetermined })
}

/// Basic classes of the fiber sum coming from pairs of extremal classes,
/// `κᵢ · Σᵢ = ±(2g - 2)` with matching sign.
///
/// Writing `κᵢ = αᵢ ± (2g-2)·Dᵢ + rᵢ·Σᵢ` with `αᵢ ⟂ ⟨Σᵢ, Dᵢ⟩`, the glued
/// class is `α₁ + α₂ ± (2g-2)·D + s·Σ` with `s = r₁ + r₂ ± 2`; `s` is also
/// solved independently from `κ² = 2χ + 3σ` and the two must agree. The SW
/// value is the product of the two input values.
pub fn glue_basic_classes(
    x1: &FourManifold,
    s1: &SurfaceEmbedding,
    x2: &FourManifold,
    s2: &SurfaceEmbedding,
    presentation: &GluedLatticePresentation,
) -> Result<GluingOutcome> {
    let d1 = s1.dual_class.as_ref().ok_or_else(|| Error::HypothesisNotMet("summand 1 lacks a dual class".into()))?;
    let d2 = s2.dual_class.as_ref().ok_or_else(|| Error::HypothesisNotMet("summand 2 lacks a dual class".into()))?;
    let extremal = s1.extremal_pairing();
    let target = BigInt::from(
        2 * (x1.chi + x2.chi + 4 * i64::from(presentation.genus) - 4) + 3 * (x1.sigma + x2.sigma),
    );
    let glued = &presentation.lattice;
    let sigma = presentation.surface_sigma();
    let dual = presentation.dual_d();

    let dots1: Vec<BigInt> =
        x1.basic_classes.iter().map(|c| x1.lattice.pair(&c.k, &s1.surface_class)).collect::<Result<_>>()?;
    let dots2: Vec<BigInt> =
        x2.basic_classes.iter().map(|c| x2.lattice.pair(&c.k, &s2.surface_class)).collect::<Result<_>>()?;

    let mut outcome = GluingOutcome::default();
    for (i, c1) in x1.basic_classes.iter().enumerate() {
        for (j, c2) in x2.basic_classes.iter().enumerate() {
            if dots1[i] != dots2[j] {
                continue;
            }
            let dot = &dots1[i];
            if dot.abs() < extremal {
                outcome.undetermined.push(UndeterminedPair {
                    index1: i,
                    index2: j,
                    class1: c1.clone(),
                    class2: c2.clone(),
                    dot_sigma: dot.clone(),
                });
                continue;
            }
            if dot.abs() > extremal {
                // Excluded by the adjunction-type bound; nothing to glue.
                continue;
            }
            let sign = if dot.is_positive() { BigInt::one() } else { -BigInt::one() };
            let coeff = &sign * &extremal;
            let (alpha1, r1) = decompose(&x1.lattice, &c1.k, s1, d1, &coeff, &presentation.complement1, 1)?;
            let (alpha2, r2) = decompose(&x2.lattice, &c2.k, s2, d2, &coeff, &presentation.complement2, 2)?;

            let base = presentation.embed(1, &alpha1).add(&presentation.embed(2, &alpha2)).add(&dual.scaled(&coeff));
            let by_formula = &r1 + &r2 + BigInt::from(2) * &sign;
            let by_square = solve_sigma_coefficient(glued, &base, &sigma, &target)?;
            if by_formula != by_square {
                return Err(Error::Inconsistency(format!(
                    "Sigma coefficient from decomposition ({by_formula}) differs from square condition ({by_square})"
                )));
            }
            let k = base.add(&sigma.scaled(&by_formula));
            audit_glued_class(presentation, &k, &target, &coeff)?;
            outcome.classes.push(BasicClass { k, sw: &c1.sw * &c2.sw });
        }
    }
    sort_classes(&mut outcome.classes);
    if outcome.classes.windows(2).any(|w| w[0].k == w[1].k) {
        return Err(Error::Inconsistency("two input pairs glued to the same class".into()));
    }
    Ok(outcome)
}

/// Splits `κ = α + coeff·D + r·Σ` and returns the coordinates of `α` in the
/// complement basis together with `r`.
fn decompose(
    lattice: &IntegerLattice,
    k: &LatticeVector,
    s: &SurfaceEmbedding,
    d: &LatticeVector,
    coeff: &BigInt,
    complement: &SublatticeBasis,
    side: u8,
) -> Result<(Vec<BigInt>, BigInt)> {
    let r = lattice.pair(k, d)? - coeff * lattice.pair_unchecked(d, d);
    let alpha = k.sub(&d.scaled(coeff)).sub(&s.surface_class.scaled(&r));
    if !lattice.pair_unchecked(&alpha, &s.surface_class).is_zero() || !lattice.pair_unchecked(&alpha, d).is_zero() {
        return Err(Error::Inconsistency(format!("projection of {k} in summand {side} is not orthogonal to <Sigma, D>")));
    }
    let coords = complement.coordinates_of(&alpha).ok_or_else(|| {
        Error::Inconsistency(format!("projection of {k} in summand {side} is outside the complement lattice"))
    })?;
    Ok((coords, r))
}

/// The unique `s` with `(base + s·Σ)² = target`, given `Σ² = 0` and
/// `base · Σ ≠ 0`.
pub fn solve_sigma_coefficient(
    lattice: &IntegerLattice,
    base: &LatticeVector,
    sigma: &LatticeVector,
    target: &BigInt,
) -> Result<BigInt> {
    let slope = BigInt::from(2) * lattice.pair(base, sigma)?;
    if slope.is_zero() {
        return Err(Error::Inconsistency("base class is orthogonal to Sigma; Sigma coefficient is ambiguous".into()));
    }
    if !lattice.square(sigma)?.is_zero() {
        return Err(Error::HypothesisNotMet("Sigma must have square zero".into()));
    }
    let (s, rem) = (target - lattice.pair_unchecked(base, base)).div_rem(&slope);
    if !rem.is_zero() {
        return Err(Error::Inconsistency(format!("no integral Sigma coefficient reaches square {target}")));
    }
    Ok(s)
}

fn audit_glued_class(
    presentation: &GluedLatticePresentation,
    k: &LatticeVector,
    target: &BigInt,
    dot_sigma: &BigInt,
) -> Result<()> {
    let lattice = &presentation.lattice;
    let fail = |what: &str| Err(Error::Inconsistency(format!("glued class {k} fails {what}")));
    if &lattice.pair_unchecked(k, k) != target {
        return fail("the square condition");
    }
    if !lattice.is_characteristic(k)? {
        return fail("the characteristic check");
    }
    if &lattice.pair_unchecked(k, &presentation.surface_sigma()) != dot_sigma {
        return fail("the surface pairing check");
    }
    let vanishes = presentation
        .tori()
        .iter()
        .chain(presentation.spheres().iter())
        .all(|t| lattice.pair_unchecked(k, t).is_zero());
    if !vanishes {
        return fail("vanishing on tori and spheres");
    }
    Ok(())
}

/// Necessary condition on a basic class of a manifold containing a
/// square-zero genus-`g` surface: `c · Σ` even with `|c · Σ| ≤ 2g - 2`, and,
/// for a fiber sum, `c · T_γ = 0` on every torus.
pub fn surface_bound_filter(
    lattice: &IntegerLattice,
    s: &SurfaceEmbedding,
    c: &LatticeVector,
    presentation: Option<&GluedLatticePresentation>,
) -> Result<bool> {
    if !lattice.square(&s.surface_class)?.is_zero() {
        return Err(Error::HypothesisNotMet("surface must have self-intersection zero".into()));
    }
    let dot = lattice.pair(c, &s.surface_class)?;
    if dot.is_odd() || dot.abs() > s.extremal_pairing() {
        return Ok(false);
    }
    if let Some(p) = presentation {
        if p.lattice.rank() != lattice.rank() {
            return Err(Error::DimensionMismatch { expected: lattice.rank(), found: p.lattice.rank() });
        }
        if !p.tori().iter().all(|t| lattice.pair_unchecked(c, t).is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Predicted total SW value over the fiber of glued classes above an
/// extremal pair: `sw(κ₁) · sw(κ₂)`.
pub fn product_formula(
    x1: &FourManifold,
    s1: &SurfaceEmbedding,
    x2: &FourManifold,
    s2: &SurfaceEmbedding,
    k1: &BasicClass,
    k2: &BasicClass,
) -> Result<BigInt> {
    if !x1.simple_type || !x2.simple_type {
        return Err(Error::HypothesisNotMet("both summands must be simple type".into()));
    }
    if s1.genus != s2.genus || s1.genus < 2 {
        return Err(Error::HypothesisNotMet(format!(
            "surfaces must share a genus >= 2, got {} and {}",
            s1.genus, s2.genus
        )));
    }
    if !pairing_group_check(x1, s1, x2, s2, &k1.k, &k2.k)? {
        return Err(Error::HypothesisNotMet("classes pair differently with their surfaces".into()));
    }
    let dot = x1.lattice.pair_unchecked(&k1.k, &s1.surface_class);
    if dot.abs() != s1.extremal_pairing() {
        return Err(Error::HypothesisNotMet(format!(
            "classes pair to {dot} with the surface, not ±{}",
            s1.extremal_pairing()
        )));
    }
    Ok(&k1.sw * &k2.sw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    fn x0_surface() -> SurfaceEmbedding {
        catalog::x0_file().surfaces[0].1.clone()
    }

    #[test]
    fn blow_up_with_generic_class() {
        let x0 = catalog::x0();
        let out = blow_up(&x0).unwrap();
        assert_eq!(out.chi, 9);
        assert_eq!(out.sigma, -1);
        assert_eq!(out.basic_classes.len(), 4);
        let e = LatticeVector::basis(7, 6);
        for class in &x0.basic_classes {
            let k = class.k.padded(1);
            for child in [k.add(&e), k.sub(&e)] {
                let found = out.basic_classes.iter().find(|c| c.k == child).unwrap();
                assert_eq!(found.sw, class.sw);
            }
        }
        for c in &out.basic_classes {
            assert_eq!(out.lattice.square(&c.k).unwrap(), out.canonical_square());
            assert!(out.lattice.is_characteristic(&c.k).unwrap());
        }
    }

    #[test]
    fn blow_up_k3() {
        let out = blow_up(&catalog::k3()).unwrap();
        let e = LatticeVector::basis(23, 22);
        let ks: Vec<_> = out.basic_classes.iter().map(|c| c.k.clone()).collect();
        assert_eq!(ks, vec![e.neg(), e]);
        assert!(out.basic_classes.iter().all(|c| c.sw == BigInt::one()));
    }

    #[test]
    fn blow_up_requires_simple_type() {
        let mut x = catalog::k3();
        x.simple_type = false;
        assert!(matches!(blow_up(&x), Err(Error::HypothesisNotMet(_))));
        let mut bad = catalog::k3();
        bad.chi = 23;
        assert!(matches!(blow_up(&bad), Err(Error::Invalid(_))));
    }

    fn x0_with_square(n: i64) -> (FourManifold, SurfaceEmbedding) {
        // Σ = e3 + n·f3 / 2 is not integral for odd n; use Σ = e3 + k·f3 with Σ² = 2k.
        let x0 = catalog::x0();
        let s = SurfaceEmbedding::new(v(&[0, 0, 0, 0, 1, n]), 2, Some(v(&[0, 0, 0, 0, 0, 1])));
        (x0, s)
    }

    #[test]
    fn proper_transform_lowers_square() {
        let (x, s) = x0_with_square(0);
        let (same, s_same) = blow_up_on_surface(&x, &s, 0).unwrap();
        assert_eq!(same, x);
        assert_eq!(s_same, s);

        let (x, s) = x0_with_square(1);
        assert_eq!(s.self_intersection(&x.lattice).unwrap(), BigInt::from(2));
        let (x1, s1) = blow_up_on_surface(&x, &s, 1).unwrap();
        assert_eq!(s1.self_intersection(&x1.lattice).unwrap(), BigInt::one());
        let (x2, s2) = blow_up_on_surface(&x, &s, 2).unwrap();
        assert_eq!(s2.self_intersection(&x2.lattice).unwrap(), BigInt::zero());
        assert_eq!(x2.b2(), x.b2() + 2);
        // dual still pairs to one
        assert!(s2.validate(&x2.lattice).is_empty());
    }

    #[test]
    fn repeated_blow_up_matches_singles() {
        // Σ² = 3 needs an odd lattice: blow up x0 once and use Σ = e3 + 2f3 - E
        // (square 4 - 1 = 3).
        let x = blow_up(&catalog::x0()).unwrap();
        let s = SurfaceEmbedding::new(v(&[0, 0, 0, 0, 1, 2, -1]), 2, Some(v(&[0, 0, 0, 0, 0, 1, 0])));
        assert_eq!(s.self_intersection(&x.lattice).unwrap(), BigInt::from(3));
        let (x3, s3) = blow_up_on_surface(&x, &s, 3).unwrap();
        let mut xs = x.clone();
        let mut ss = s.clone();
        for _ in 0..3 {
            let (a, b) = blow_up_on_surface(&xs, &ss, 1).unwrap();
            xs = a;
            ss = b;
        }
        assert_eq!(x3, xs);
        assert_eq!(s3, ss);
        assert_eq!(s3.self_intersection(&x3.lattice).unwrap(), BigInt::zero());
        assert_eq!(x3.b2(), x.b2() + 3);
    }

    #[test]
    fn normalize_examples() {
        let (x, s) = x0_with_square(0);
        let ((a, sa), (b, sb)) = normalize_pair(&x, &s, &x, &s).unwrap();
        assert_eq!((a.b2(), b.b2()), (6, 6));
        assert_eq!((sa, sb), (s.clone(), s.clone()));

        let (y, t) = x0_with_square(1);
        let ((a, sa), (b, sb)) = normalize_pair(&y, &t, &x, &s).unwrap();
        assert_eq!((a.b2(), b.b2()), (8, 6));
        assert!(sa.self_intersection(&a.lattice).unwrap().is_zero());
        assert!(sb.self_intersection(&b.lattice).unwrap().is_zero());

        let (z, u) = x0_with_square(-1);
        assert!(matches!(normalize_pair(&z, &u, &x, &s), Err(Error::Unsupported(_))));
    }

    #[test]
    fn pairing_group_examples() {
        let x0 = catalog::x0();
        let s = x0_surface();
        let d = s.dual_class.clone().unwrap();
        assert!(pairing_group_check(&x0, &s, &x0, &s, &d, &d).unwrap());
        let two = v(&[0, 0, 0, 0, 0, 2]);
        let zero = v(&[1, 0, 0, 0, 0, 0]);
        assert!(!pairing_group_check(&x0, &s, &x0, &s, &two, &zero).unwrap());
        let k = x0.basic_classes.iter().find(|c| x0.lattice.pair(&c.k, &s.surface_class).unwrap() == BigInt::from(2)).unwrap();
        assert!(pairing_group_check(&x0, &s, &x0, &s, &k.k, &k.k).unwrap());
        assert!(pairing_group_check(&x0, &s, &x0, &s, &v(&[1]), &d).is_err());
    }

    #[test]
    fn cokernel_examples() {
        let b = |x: i64| BigInt::from(x);
        assert_eq!(cokernel_of_pi(&b(2), &b(3)).unwrap(), b(1));
        assert_eq!(cokernel_of_pi(&b(2), &b(4)).unwrap(), b(2));
        assert_eq!(cokernel_of_pi(&b(1), &b(1)).unwrap(), b(1));
        assert!(matches!(cokernel_of_pi(&b(0), &b(3)), Err(Error::HypothesisNotMet(_))));
        assert!(matches!(cokernel_of_pi(&b(-2), &b(3)), Err(Error::Rejected(_))));
    }

    #[test]
    fn x0_fiber_sum_worked_example() {
        let x0 = catalog::x0();
        let s = x0_surface();
        let fs = fiber_sum(&x0, &s, &x0, &s).unwrap();
        assert_eq!(fs.manifold.chi, 20);
        assert_eq!(fs.manifold.sigma, 0);
        assert_eq!(fs.manifold.b2(), 18);
        assert!(fs.undetermined.is_empty());
        assert!(fs.manifold.validate().is_empty(), "{:?}", fs.manifold.validate());

        // tori 0..4, spheres 4..8, X1 complement 8..12, X2 complement 12..16, D, Σ
        let mut plus = vec![0i64; 18];
        plus[8..16].fill(2);
        plus[16] = 2;
        plus[17] = 2;
        let plus = v(&plus);
        let ks: Vec<_> = fs.manifold.basic_classes.iter().map(|c| c.k.clone()).collect();
        assert_eq!(ks, vec![plus.neg(), plus.clone()]);
        assert_eq!(fs.manifold.lattice.square(&plus).unwrap(), BigInt::from(40));
        assert_eq!(fs.manifold.lattice.pair(&plus, &fs.surface.surface_class).unwrap(), BigInt::from(2));
    }

    #[test]
    fn presentation_gram_blocks() {
        let x0 = catalog::x0();
        let s = x0_surface();
        let p = fiber_sum(&x0, &s, &x0, &s).unwrap().presentation;
        let l = &p.lattice;
        let t = p.tori();
        let d = p.spheres();
        for a in &t {
            for b in &t {
                assert!(l.pair(a, b).unwrap().is_zero());
            }
        }
        // D(b1) · T(a1) = <a1, b1> = 1
        assert_eq!(l.pair(&d[1], &t[0]).unwrap(), BigInt::one());
        assert_eq!(l.pair(&d[0], &t[1]).unwrap(), BigInt::from(-1));
        assert_eq!(l.pair(&d[0], &t[2]).unwrap(), BigInt::zero());
        for sphere in &d {
            assert_eq!(l.square(sphere).unwrap(), BigInt::from(-2));
        }
        assert_eq!(l.pair(&p.dual_d(), &p.surface_sigma()).unwrap(), BigInt::one());
        assert!(l.square(&p.surface_sigma()).unwrap().is_zero());
        assert_eq!(p.complement1.generators.len(), 4);
        assert_eq!(p.roles[16], BasisRole::DualD);
        assert_eq!(p.roles[4].to_string(), "sphere D(a1)");
    }

    #[test]
    fn fiber_sum_rejections() {
        let x0 = catalog::x0();
        let s = x0_surface();
        let g3 = SurfaceEmbedding { genus: 3, ..s.clone() };
        assert!(matches!(fiber_sum(&x0, &s, &x0, &g3), Err(Error::HypothesisNotMet(_))));
        let g1 = SurfaceEmbedding { genus: 1, ..s.clone() };
        assert!(matches!(fiber_sum(&x0, &g1, &x0, &g1), Err(Error::HypothesisNotMet(_))));
        let no_dual = SurfaceEmbedding { dual_class: None, ..s.clone() };
        assert!(matches!(fiber_sum(&x0, &no_dual, &x0, &s), Err(Error::HypothesisNotMet(_))));
        let (np, nps) = catalog::nonprimitive_parts();
        assert!(matches!(fiber_sum(&np, &nps, &x0, &s), Err(Error::HypothesisNotMet(_))));
        let (y, t) = x0_with_square(1);
        assert!(matches!(fiber_sum(&y, &t, &x0, &s), Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn non_extremal_pairs_are_reported() {
        let (np, _) = catalog::nonprimitive_parts();
        // same classes as the non-primitive example but with a primitive surface
        let s = x0_surface();
        let fs = fiber_sum(&np, &s, &np, &s).unwrap();
        assert!(fs.manifold.basic_classes.is_empty());
        assert_eq!(fs.undetermined.len(), 1);
        assert!(fs.undetermined[0].dot_sigma.is_zero());
    }

    #[test]
    fn surface_bound_examples() {
        let x0 = catalog::x0();
        let s = x0_surface();
        let allowed: Vec<i64> = (-6..=6)
            .filter(|&n| surface_bound_filter(&x0.lattice, &s, &v(&[0, 0, 0, 0, 0, n]), None).unwrap())
            .collect();
        assert_eq!(allowed, vec![-2, 0, 2]);
        assert!(surface_bound_filter(&x0.lattice, &s, &s.surface_class, None).unwrap());
        let (y, t) = x0_with_square(1);
        assert!(surface_bound_filter(&y.lattice, &t, &t.surface_class, None).is_err());
    }

    #[test]
    fn surface_bound_sees_tori() {
        let x0 = catalog::x0();
        let s = x0_surface();
        let fs = fiber_sum(&x0, &s, &x0, &s).unwrap();
        let p = &fs.presentation;
        let l = &fs.manifold.lattice;
        for c in &fs.manifold.basic_classes {
            assert!(surface_bound_filter(l, &fs.surface, &c.k, Some(p)).unwrap());
        }
        let sphere = p.spheres()[1].scaled(&BigInt::from(2));
        assert!(surface_bound_filter(l, &fs.surface, &sphere, None).unwrap());
        assert!(!surface_bound_filter(l, &fs.surface, &sphere, Some(p)).unwrap());
    }

    #[test]
    fn product_formula_examples() {
        let x0 = catalog::x0();
        let s = x0_surface();
        let kplus = x0.basic_classes.iter().find(|c| x0.lattice.pair(&c.k, &s.surface_class).unwrap().is_positive()).unwrap();
        assert_eq!(product_formula(&x0, &s, &x0, &s, kplus, kplus).unwrap(), BigInt::one());

        let two = BasicClass { sw: BigInt::from(2), ..kplus.clone() };
        let minus_three = BasicClass { sw: BigInt::from(-3), ..kplus.clone() };
        assert_eq!(product_formula(&x0, &s, &x0, &s, &two, &minus_three).unwrap(), BigInt::from(-6));

        let kminus = x0.basic_classes.iter().find(|c| c.k != kplus.k).unwrap();
        assert!(matches!(product_formula(&x0, &s, &x0, &s, kplus, kminus), Err(Error::HypothesisNotMet(_))));

        let mut weighted = x0.clone();
        for c in &mut weighted.basic_classes {
            c.sw = BigInt::from(5);
        }
        let fs = fiber_sum(&weighted, &s, &x0, &s).unwrap();
        assert!(fs.manifold.basic_classes.iter().all(|c| c.sw == BigInt::from(5)));
    }
}
