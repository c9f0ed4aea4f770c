//! Integral symmetric bilinear forms and the lattice operations the surgery
//! calculus is built from.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{self, IntMatrix};

/// Coordinates of a lattice element relative to the ambient basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(len: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); len])
    }

    /// The `i`-th standard basis vector of length `len`.
    pub fn basis(len: usize, i: usize) -> Self {
        let mut v = Self::zero(len);
        v.0[i] = BigInt::one();
        v
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// gcd of the coordinates; zero for the zero vector.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn scaled(&self, factor: &BigInt) -> Self {
        LatticeVector(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }

    /// Appends `extra` zero coordinates.
    pub fn padded(&self, extra: usize) -> Self {
        let mut c = self.0.clone();
        c.extend(std::iter::repeat(BigInt::zero()).take(extra));
        LatticeVector(c)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A set of independent lattice vectors with a provenance label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SublatticeBasis {
    pub generators: Vec<LatticeVector>,
    pub label: String,
}

impl SublatticeBasis {
    pub fn new(label: impl Into<String>, generators: Vec<LatticeVector>) -> Self {
        SublatticeBasis { generators, label: label.into() }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Coordinates of `v` in terms of the generators, if `v` lies in their
    /// integral span.
    pub fn coordinates_of(&self, v: &LatticeVector) -> Option<Vec<BigInt>> {
        if self.generators.is_empty() {
            return v.is_zero().then(Vec::new);
        }
        let cols: Vec<Vec<BigInt>> = self.generators.iter().map(|g| g.coords().to_vec()).collect();
        let m = IntMatrix::from_columns(v.len(), &cols);
        matrix::solve_integer(&m, v.coords())
    }
}

/// Counts of positive, negative and zero directions of a form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub null: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// A free lattice with an integral symmetric bilinear form, given by its
/// Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    gram: IntMatrix,
}

impl IntegerLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Invalid(vec![crate::error::Violation::error(
                "shape",
                format!("gram matrix is {}x{}, expected square", gram.rows(), gram.cols()),
            )]));
        }
        if !gram.is_symmetric() {
            return Err(Error::Invalid(vec![crate::error::Violation::error(
                "symmetry",
                "gram matrix is not symmetric",
            )]));
        }
        Ok(IntegerLattice { gram })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows))
    }

    /// The hyperbolic plane `[[0,1],[1,0]]`.
    pub fn hyperbolic() -> Self {
        IntegerLattice { gram: IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]) }
    }

    /// The rank-one lattice `<value>`.
    pub fn diagonal_one(value: i64) -> Self {
        IntegerLattice { gram: IntMatrix::from_rows(&[vec![value]]) }
    }

    /// The negative-definite E8 lattice.
    pub fn negative_e8() -> Self {
        // Dynkin chain 0-1-2-3-4-5-6 with node 7 attached to node 4.
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
        let mut g = IntMatrix::zeros(8, 8);
        for i in 0..8 {
            g[(i, i)] = BigInt::from(-2);
        }
        for (a, b) in edges {
            g[(a, b)] = BigInt::one();
            g[(b, a)] = BigInt::one();
        }
        IntegerLattice { gram: g }
    }

    pub fn direct_sum(&self, other: &IntegerLattice) -> Self {
        IntegerLattice { gram: self.gram.direct_sum(&other.gram) }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    fn check_len(&self, v: &LatticeVector) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: v.len() });
        }
        Ok(())
    }

    /// `xᵀ · gram · y`.
    pub fn pair(&self, x: &LatticeVector, y: &LatticeVector) -> Result<BigInt> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.pair_unchecked(x, y))
    }

    pub(crate) fn pair_unchecked(&self, x: &LatticeVector, y: &LatticeVector) -> BigInt {
        let gy = self.gram.mul_vec(y.coords());
        x.coords().iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    pub fn square(&self, x: &LatticeVector) -> Result<BigInt> {
        self.pair(x, x)
    }

    /// Wu criterion: `k · x ≡ x · x (mod 2)` for every `x`. Checking basis
    /// vectors suffices since both sides are additive mod 2.
    pub fn is_characteristic(&self, k: &LatticeVector) -> Result<bool> {
        self.check_len(k)?;
        let gk = self.gram.mul_vec(k.coords());
        Ok((0..self.rank()).all(|i| (&gk[i] - &self.gram[(i, i)]).is_even()))
    }

    /// Whether every vector has even square.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    /// Some characteristic vector, found by solving `gram · k ≡ diag (mod 2)`.
    pub fn characteristic_representative(&self) -> Option<LatticeVector> {
        let n = self.rank();
        let bit = |x: &BigInt| x.is_odd();
        let mut rows: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                let mut r: Vec<bool> = self.gram.row(i).iter().map(bit).collect();
                r.push(bit(&self.gram[(i, i)]));
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..n).find(|&i| rows[i][c]) else { continue };
            rows.swap(r, p);
            for i in 0..n {
                if i != r && rows[i][c] {
                    let pivot_row = rows[r].clone();
                    rows[i].iter_mut().zip(&pivot_row).for_each(|(a, b)| *a ^= *b);
                }
            }
            pivots.push(c);
            r += 1;
        }
        if rows[r..].iter().any(|row| row[n]) {
            return None;
        }
        let mut k = vec![BigInt::zero(); n];
        for (row, &c) in pivots.iter().enumerate() {
            if rows[row][n] {
                k[c] = BigInt::one();
            }
        }
        Some(LatticeVector(k))
    }

    /// gcd of the pairings of `s` with the basis: the least positive value of
    /// `s · x`, or zero if `s` pairs trivially with everything.
    pub fn divisibility(&self, s: &LatticeVector) -> Result<BigInt> {
        self.check_len(s)?;
        Ok(self.gram.mul_vec(s.coords()).iter().fold(BigInt::zero(), |g, c| g.gcd(c)))
    }

    /// Basis of the saturated sublattice orthogonal to every generator of
    /// `sub`, returned in Hermite normal form.
    pub fn orthogonal_complement(&self, sub: &SublatticeBasis) -> Result<SublatticeBasis> {
        for g in &sub.generators {
            self.check_len(g)?;
        }
        let label = format!("{}-perp", sub.label);
        if sub.generators.is_empty() {
            let basis = (0..self.rank()).map(|i| LatticeVector::basis(self.rank(), i)).collect();
            return Ok(SublatticeBasis::new(label, basis));
        }
        let rows: Vec<Vec<BigInt>> =
            sub.generators.iter().map(|g| self.gram.mul_vec(g.coords())).collect();
        let constraints = IntMatrix::from_rows(&rows);
        let kernel = matrix::integer_kernel(&constraints);
        if kernel.is_empty() {
            return Ok(SublatticeBasis::new(label, Vec::new()));
        }
        let hnf = matrix::hermite_normal_form(&IntMatrix::from_rows(&kernel));
        let basis = hnf.to_rows().into_iter().map(LatticeVector).collect();
        Ok(SublatticeBasis::new(label, basis))
    }

    /// Whether `s` is indivisible (coordinate gcd 1). The zero vector is
    /// rejected.
    pub fn is_primitive(&self, s: &LatticeVector) -> Result<bool> {
        self.check_len(s)?;
        if s.is_zero() {
            return Err(Error::Rejected("primitivity of the zero vector is undefined".into()));
        }
        Ok(s.content().is_one())
    }

    /// Gram matrix of the form restricted to `sub`.
    pub fn restricted_gram(&self, sub: &SublatticeBasis) -> Result<IntMatrix> {
        let k = sub.rank();
        let mut g = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                g[(i, j)] = self.pair(&sub.generators[i], &sub.generators[j])?;
            }
        }
        Ok(g)
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant()
    }

    /// `|det gram| = 1`, decided from the Smith form.
    pub fn is_unimodular(&self) -> bool {
        let snf = matrix::smith_normal_form(&self.gram);
        snf.rank() == self.rank() && snf.invariant_factors().iter().all(One::is_one)
    }

    /// Inertia by exact symmetric elimination over the rationals.
    pub fn inertia(&self) -> Inertia {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| self.gram.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        let mut inertia = Inertia { positive: 0, negative: 0, null: 0 };
        for i in 0..n {
            if a[i][i].is_zero() {
                if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                    a.swap(i, j);
                    for row in a.iter_mut() {
                        row.swap(i, j);
                    }
                } else if let Some(j) = (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                    // x_i += x_j makes the diagonal 2·a_ij, nonzero.
                    for k in 0..n {
                        let v = a[j][k].clone();
                        a[i][k] += v;
                    }
                    for row in a.iter_mut() {
                        let v = row[j].clone();
                        row[i] += v;
                    }
                } else {
                    inertia.null += 1;
                    continue;
                }
            }
            let pivot = a[i][i].clone();
            if pivot.is_positive() {
                inertia.positive += 1;
            } else {
                inertia.negative += 1;
            }
            for r in i + 1..n {
                if a[r][i].is_zero() {
                    continue;
                }
                let factor = &a[r][i] / &pivot;
                for c in i..n {
                    let delta = &factor * &a[i][c];
                    a[r][c] -= delta;
                }
                // Symmetric column operation on row i's partner entries.
                for row in a.iter_mut().skip(i) {
                    let delta = &factor * &row[i];
                    row[r] -= delta;
                }
            }
        }
        inertia
    }

    pub fn signature(&self) -> i64 {
        self.inertia().signature()
    }
}
