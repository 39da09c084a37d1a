//! Dense complex linear algebra helpers shared by every module.
//!
//! Matrices are `nalgebra::DMatrix<Complex<f64>>`. Rank and null-space
//! decisions go through [`Tolerance`] so every cut in the crate is made
//! against the same configurable thresholds.

use nalgebra::{Complex, DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Numerical thresholds.
///
/// `rank` is relative: an eigenvalue of a Hermitian PSD operator (Gram matrix,
/// commutator normal operator) counts as zero when it is at most
/// `rank * largest eigenvalue`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerance {
    pub rank: f64,
    /// Absolute residual allowed for closure and invariant checks.
    pub residual: f64,
    /// Absolute gap used to group eigenvalues of a unit-norm Hermitian element.
    pub grouping: f64,
    /// Spectrum entries at or below this are dropped.
    pub spectrum: f64,
    /// Distance to the nearest integer accepted for block ranks and multiplicities.
    pub integer: f64,
    /// Allowed deviation between the GNS and Wedderburn spectra.
    pub oracle: f64,
    /// Looser cut for state validity (normalization, positivity).
    pub state: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rank: 1e-10,
            residual: 1e-10,
            grouping: 1e-8,
            spectrum: 1e-12,
            integer: 1e-6,
            oracle: 1e-8,
            state: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn with_rank(mut self, rank: f64) -> Self {
        self.rank = rank;
        self
    }
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn dagger(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

/// Hilbert–Schmidt pairing `trace(a† b)`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn hs_norm(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn trace(a: &CMatrix) -> C64 {
    a.diagonal().iter().sum()
}

pub fn ensure_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare(m.nrows(), m.ncols()));
    }
    Ok(m.nrows())
}

pub fn ensure_finite(m: &CMatrix) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * r(0.5)
}

/// Largest entry of `m - m†`.
pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    (m - m.adjoint()).camax()
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// The input is symmetrized first; columns of the returned matrix are the
/// orthonormal eigenvectors in the same order as the eigenvalues.
pub fn eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let eig = hermitian_part(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

pub fn eigvalsh(m: &CMatrix) -> Vec<f64> {
    eigh(m).0
}

/// Splits a PSD Hermitian matrix into null and range eigenpairs using the
/// relative cut `rel * max eigenvalue`. A zero matrix is entirely null.
///
/// [`with_scale`](Self::with_scale) floors the reference eigenvalue, for
/// operators that can be identically zero up to rounding.
pub struct PsdSplit {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
    /// Number of leading (smallest) eigenpairs that fall below the cut.
    pub null_dim: usize,
}

impl PsdSplit {
    pub fn new(m: &CMatrix, rel: f64) -> Self {
        Self::with_scale(m, rel, 0.0)
    }

    /// Cut at `rel * max(max eigenvalue, scale)`.
    pub fn with_scale(m: &CMatrix, rel: f64, scale: f64) -> Self {
        let (values, vectors) = eigh(m);
        let top = values.last().copied().unwrap_or(0.0).max(0.0).max(scale);
        let cut = rel * top;
        let null_dim = if top <= f64::MIN_POSITIVE {
            values.len()
        } else {
            values.iter().take_while(|&&v| v <= cut).count()
        };
        Self {
            values,
            vectors,
            null_dim,
        }
    }

    pub fn rank(&self) -> usize {
        self.values.len() - self.null_dim
    }

    pub fn null_vectors(&self) -> impl Iterator<Item = CVector> + '_ {
        (0..self.null_dim).map(|k| self.vectors.column(k).into_owned())
    }

    /// Range eigenpairs, ascending.
    pub fn range(&self) -> impl Iterator<Item = (f64, CVector)> + '_ {
        (self.null_dim..self.values.len())
            .map(|k| (self.values[k], self.vectors.column(k).into_owned()))
    }

    pub fn min_value(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Column-stacking vectorization.
pub fn vec_of(m: &CMatrix) -> CVector {
    CVector::from_iterator(m.len(), m.iter().copied())
}

pub fn unvec(v: &CVector, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_iterator(rows, cols, v.iter().copied())
}

/// Groups ascending values into runs whose consecutive gaps are at most `tol`.
pub fn group_sorted(values: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut groups = Vec::new();
    let mut start = 0;
    for k in 1..=values.len() {
        if k == values.len() || values[k] - values[k - 1] > tol {
            if k > start {
                groups.push(start..k);
            }
            start = k;
        }
    }
    groups
}

/// Orthonormal basis (as columns) of the range of an orthogonal projection.
pub fn projection_range(p: &CMatrix) -> CMatrix {
    let (values, vectors) = eigh(p);
    let cols: Vec<usize> = (0..values.len()).filter(|&k| values[k] > 0.5).collect();
    let mut out = CMatrix::zeros(p.nrows(), cols.len());
    for (dst, &src) in cols.iter().enumerate() {
        out.set_column(dst, &vectors.column(src));
    }
    out
}

/// `exp(i h)` for Hermitian `h`.
pub fn expi_hermitian(h: &CMatrix) -> CMatrix {
    let (values, vectors) = eigh(h);
    let phases = CMatrix::from_diagonal(&CVector::from_iterator(
        values.len(),
        values.iter().map(|&v| C64::from_polar(1.0, v)),
    ));
    &vectors * phases * vectors.adjoint()
}

pub fn unitarity_residual(u: &CMatrix) -> f64 {
    (u.adjoint() * u - identity(u.nrows())).camax()
}

pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    hermitian_part(&random_matrix(n, n, rng))
}

pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CVector {
    let v = CVector::from_fn(n, |_, _| random_complex(rng));
    let norm = v.norm();
    v / r(norm)
}

/// Haar-ish random unitary from the QR factor of a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let qr = random_matrix(n, n, rng).qr();
    let (q, rr) = (qr.q(), qr.r());
    let phases = CMatrix::from_diagonal(&CVector::from_iterator(
        n,
        (0..n).map(|k| {
            let d = rr[(k, k)];
            if d.norm() > 0.0 {
                d / r(d.norm())
            } else {
                ONE
            }
        }),
    ));
    q * phases
}

/// Random density matrix of the given rank.
pub fn random_density<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> CMatrix {
    let g = random_matrix(n, rank.max(1), rng);
    let rho = &g * g.adjoint();
    let t = trace(&rho).re;
    rho / r(t)
}
