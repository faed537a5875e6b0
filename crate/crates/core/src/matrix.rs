//! Dense complex matrices and validated density matrices.
//!
//! Everything here is sized for few-qubit work (dimension ≤ 16): storage is a
//! flat row-major `Vec<Complex64>` and every operation is the naive loop.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};

/// Default tolerance used when validating a [`DensityMatrix`].
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from rows. Fails unless every row has as many entries
    /// as there are rows and every entry is finite.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Dimension("matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries in a {dim}-row matrix",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Self::from_vec(dim, entries)
    }

    /// Real-valued convenience constructor.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn from_vec(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "{} entries cannot form a square matrix of dimension {dim}",
                entries.len()
            )));
        }
        if let Some(k) = entries
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: k / dim,
                col: k % dim,
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let dim = values.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, &v) in values.iter().enumerate() {
            entries[i * dim + i] = Complex64::new(v, 0.0);
        }
        Self::from_vec(dim, entries)
    }

    /// Rank-one projector |v⟩⟨v| (not normalized).
    pub fn outer(v: &[Complex64]) -> Result<Self> {
        let dim = v.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for a in v {
            for b in v {
                entries.push(a * b.conj());
            }
        }
        Self::from_vec(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// U M U†.
    pub fn conjugate_by(&self, unitary: &Self) -> Result<Self> {
        unitary.matmul(self)?.matmul(&unitary.adjoint())
    }

    /// Largest entrywise modulus of `M - M†`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!(
                "dimension mismatch: {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Kronecker product `a ⊗ b`, with `a`'s indices major.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Sorted (ascending) list of real eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Sorts `values` ascending. NaNs are rejected.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("spectrum values must be finite".into()));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.0.first().copied().unwrap_or(f64::NAN)
    }

    /// Largest entrywise gap against another spectrum of the same length.
    pub fn max_gap(&self, other: &Spectrum) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "spectra of length {} and {} cannot be compared",
                self.len(),
                other.len()
            )));
        }
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

/// A Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    tolerance: f64,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(matrix: ComplexMatrix, tolerance: f64) -> Result<Self> {
        let deviation = matrix.hermitian_deviation();
        if deviation > tolerance {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace - 1.0).norm() > tolerance {
            return Err(Error::Trace { trace: trace.re });
        }
        let lowest = hermitian_eigenvalues(&matrix)?.min();
        if lowest < -tolerance {
            return Err(Error::NotPositive { value: lowest });
        }
        Ok(Self { matrix, tolerance })
    }

    /// Wraps a matrix already known to be a state (convex combinations and
    /// tensor products of states).
    pub(crate) fn trusted(matrix: ComplexMatrix, tolerance: f64) -> Self {
        Self { matrix, tolerance }
    }

    /// Normalized `A A†`; full rank with probability one for random `A`.
    pub fn from_gram(a: &ComplexMatrix) -> Result<Self> {
        let g = a.matmul(&a.adjoint())?;
        let tr = g.trace().re;
        if tr <= 0.0 {
            return Err(Error::Domain("A A^dagger has zero trace".into()));
        }
        Self::new(g.scale(1.0 / tr))
    }

    /// Normalized projector onto `psi`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm_sq: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 || !norm_sq.is_finite() {
            return Err(Error::Domain(
                "state vector must have positive finite norm".into(),
            ));
        }
        Self::new(ComplexMatrix::outer(psi)?.scale(1.0 / norm_sq))
    }

    /// (|01⟩ + |10⟩)/√2, the two-detector initial state.
    pub fn singlet() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        let psi = [z, Complex64::new(h, 0.0), Complex64::new(h, 0.0), z];
        Self::pure(&psi).expect("singlet is a valid state")
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn eigenvalues(&self) -> Result<Spectrum> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// U ρ U†.
    pub fn conjugate_by(&self, unitary: &ComplexMatrix) -> Result<Self> {
        Ok(Self::trusted(
            self.matrix.conjugate_by(unitary)?,
            self.tolerance,
        ))
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        Self::trusted(
            tensor_product(&self.matrix, &other.matrix),
            self.tolerance.max(other.tolerance),
        )
    }

    /// Reduced state on subsystem `keep` of a register with subsystem
    /// dimensions `dims`.
    pub fn partial_trace(&self, keep: usize, dims: &[usize]) -> Result<DensityMatrix> {
        partial_trace(self, keep, dims)
    }

    /// Swaps the two factors of a bipartite state with subsystem dimensions `dims`.
    pub fn swap_subsystems(&self, dims: [usize; 2]) -> Result<DensityMatrix> {
        let [da, db] = dims;
        if da * db != self.dim() {
            return Err(Error::Dimension(format!(
                "subsystem dimensions {da}x{db} do not match state dimension {}",
                self.dim()
            )));
        }
        let mut out = ComplexMatrix::zeros(self.dim());
        for a in 0..da {
            for b in 0..db {
                for a2 in 0..da {
                    for b2 in 0..db {
                        out[(b * da + a, b2 * da + a2)] = self.matrix[(a * db + b, a2 * db + b2)];
                    }
                }
            }
        }
        Ok(Self::trusted(out, self.tolerance))
    }
}

/// `I/d`.
pub fn maximally_mixed(d: usize) -> Result<DensityMatrix> {
    if d == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    Ok(DensityMatrix::trusted(
        ComplexMatrix::identity(d).scale(1.0 / d as f64),
        DEFAULT_TOLERANCE,
    ))
}

/// The midpoint state `(a + b)/2`.
pub fn equal_mixture(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let sum = a.matrix.add(&b.matrix)?;
    Ok(DensityMatrix::trusted(
        sum.scale(0.5),
        a.tolerance.max(b.tolerance),
    ))
}

/// Traces out every subsystem except `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: usize, dims: &[usize]) -> Result<DensityMatrix> {
    let total: usize = dims.iter().product();
    if dims.is_empty() || dims.contains(&0) || total != rho.dim() {
        return Err(Error::Dimension(format!(
            "subsystem dimensions {dims:?} do not multiply to state dimension {}",
            rho.dim()
        )));
    }
    if keep >= dims.len() {
        return Err(Error::Dimension(format!(
            "subsystem index {keep} out of range for {} subsystems",
            dims.len()
        )));
    }
    // index = (outer * d_keep + k) * inner + r
    let d_keep = dims[keep];
    let outer: usize = dims[..keep].iter().product();
    let inner: usize = dims[keep + 1..].iter().product();
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(d_keep);
    for i in 0..d_keep {
        for j in 0..d_keep {
            let mut acc = Complex64::new(0.0, 0.0);
            for o in 0..outer {
                for r in 0..inner {
                    let row = (o * d_keep + i) * inner + r;
                    let col = (o * d_keep + j) * inner + r;
                    acc += m[(row, col)];
                }
            }
            out[(i, j)] = acc;
        }
    }
    Ok(DensityMatrix::trusted(out, rho.tolerance))
}
