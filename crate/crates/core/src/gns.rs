//! GNS construction for a state on an operator span.
//!
//! The algebra `A₀` is treated as a vector space with the (possibly
//! degenerate) inner product `⟨α|β⟩ = ω(α* β)`. Diagonalizing the Gram matrix
//! splits coefficient space into the null ideal and an orthonormal quotient
//! basis; left multiplication, expressed through structure constants,
//! descends to the representation `π_ω` on the quotient.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::algebra::{commutant, wedderburn, OperatorSpan};
use crate::entropy::{LogBase, SpectralState};
use crate::error::{Error, Result};
use crate::linalg::{
    c, eigh, eigvalsh, group_sorted, hermiticity_residual, hs_norm, projection_range, r, CMatrix,
    CVector, PsdSplit, Tolerance, C64, ZERO,
};

const MAX_DRAWS: usize = 16;

#[derive(Debug, Clone)]
pub enum StateBacking {
    Vector(CVector),
    Density(CMatrix),
}

/// Positive normalized functional `ω(α) = ⟨ψ|α|ψ⟩` or `trace(ρ α)` on `ℂ^D`.
#[derive(Debug, Clone)]
pub struct AlgebraState {
    backing: StateBacking,
}

impl AlgebraState {
    pub fn pure(psi: CVector, tol: &Tolerance) -> Result<Self> {
        if psi.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm2 = psi.norm_squared();
        if (norm2 - 1.0).abs() > tol.state {
            return Err(Error::InvalidState(format!(
                "vector norm² = {norm2}, expected 1"
            )));
        }
        Ok(Self {
            backing: StateBacking::Vector(psi),
        })
    }

    /// Normalizes `psi` before wrapping it.
    pub fn pure_normalized(psi: CVector, tol: &Tolerance) -> Result<Self> {
        let norm = psi.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("zero or non-finite vector".into()));
        }
        Self::pure(psi / r(norm), tol)
    }

    pub fn mixed(rho: CMatrix, tol: &Tolerance) -> Result<Self> {
        crate::linalg::ensure_square(&rho)?;
        crate::linalg::ensure_finite(&rho)?;
        if hermiticity_residual(&rho) > tol.state {
            return Err(Error::InvalidState(
                "density matrix is not Hermitian".into(),
            ));
        }
        let t = crate::linalg::trace(&rho).re;
        if (t - 1.0).abs() > tol.state {
            return Err(Error::InvalidState(format!(
                "density trace = {t}, expected 1"
            )));
        }
        let lo = eigvalsh(&rho).first().copied().unwrap_or(0.0);
        if lo < -tol.state {
            return Err(Error::InvalidState(format!(
                "density has negative eigenvalue {lo:.3e}"
            )));
        }
        Ok(Self {
            backing: StateBacking::Density(rho),
        })
    }

    pub fn backing(&self) -> &StateBacking {
        &self.backing
    }

    pub fn dim(&self) -> usize {
        match &self.backing {
            StateBacking::Vector(v) => v.len(),
            StateBacking::Density(m) => m.nrows(),
        }
    }

    pub fn is_vector(&self) -> bool {
        matches!(self.backing, StateBacking::Vector(_))
    }

    pub fn evaluate(&self, x: &CMatrix) -> C64 {
        match &self.backing {
            StateBacking::Vector(psi) => psi.dotc(&(x * psi)),
            StateBacking::Density(rho) => (rho * x).trace(),
        }
    }

    pub fn density_matrix(&self) -> CMatrix {
        match &self.backing {
            StateBacking::Vector(psi) => psi * psi.adjoint(),
            StateBacking::Density(rho) => rho.clone(),
        }
    }

    /// `G_ab = ω(x_a* x_b)` over an arbitrary list of elements.
    pub fn gram(&self, elements: &[CMatrix]) -> CMatrix {
        let n = elements.len();
        let mut g = CMatrix::zeros(n, n);
        match &self.backing {
            StateBacking::Vector(psi) => {
                let images: Vec<CVector> = elements.iter().map(|x| x * psi).collect();
                for a in 0..n {
                    for b in a..n {
                        let v = images[a].dotc(&images[b]);
                        g[(a, b)] = v;
                        g[(b, a)] = v.conj();
                    }
                }
            }
            StateBacking::Density(rho) => {
                for a in 0..n {
                    for b in a..n {
                        let v = (rho * elements[a].adjoint() * &elements[b]).trace();
                        g[(a, b)] = v;
                        g[(b, a)] = v.conj();
                    }
                }
            }
        }
        g
    }

    /// The state `x ↦ ω(U† x U)`, i.e. the backing conjugated by `U`.
    pub fn conjugated(&self, u: &CMatrix) -> Self {
        let backing = match &self.backing {
            StateBacking::Vector(psi) => StateBacking::Vector(u * psi),
            StateBacking::Density(rho) => StateBacking::Density(u * rho * u.adjoint()),
        };
        Self { backing }
    }
}

fn check_dims(a0: &OperatorSpan, omega: &AlgebraState) -> Result<()> {
    if a0.ambient_dim() != omega.dim() {
        return Err(Error::DimensionMismatch {
            expected: a0.ambient_dim(),
            found: omega.dim(),
        });
    }
    Ok(())
}

/// Gram matrix of the span basis. Fails when it is not PSD within tolerance.
pub fn gram_matrix(a0: &OperatorSpan, omega: &AlgebraState, tol: &Tolerance) -> Result<CMatrix> {
    check_dims(a0, omega)?;
    let g = omega.gram(a0.basis());
    let values = eigvalsh(&g);
    let top = values.last().copied().unwrap_or(0.0).max(1.0);
    if let Some(&lo) = values.first() {
        if lo < -tol.state * top {
            return Err(Error::Numerical(format!(
                "Gram matrix has negative eigenvalue {lo:.3e}"
            )));
        }
    }
    Ok(g)
}

/// Quotient Hilbert space `Â₀ / N_ω` with the GNS representation.
#[derive(Debug, Clone)]
pub struct GnsSpace {
    algebra: OperatorSpan,
    state: AlgebraState,
    gram: CMatrix,
    null_vectors: Vec<CVector>,
    /// Coordinates (in the algebra basis) of the orthonormal quotient representatives.
    quotient_basis: Vec<CVector>,
    /// Maps algebra coordinates to quotient coordinates: `[x] = T c`.
    to_quotient: CMatrix,
    /// `left_mult[a]` is left multiplication by `B_a` on coefficient space.
    left_mult: Vec<CMatrix>,
    rep_matrices: Vec<CMatrix>,
    cyclic_vector: CVector,
    retained: Vec<f64>,
}

/// Runs the GNS construction for `(A₀, ω)`.
pub fn build_gns(a0: &OperatorSpan, omega: &AlgebraState, tol: &Tolerance) -> Result<GnsSpace> {
    let unit = a0.unit_coords().ok_or(Error::NotUnital)?.clone();
    let gram = gram_matrix(a0, omega, tol)?;
    let n = a0.len();

    let (consts, residual) = a0.structure_constants();
    if residual > tol.residual * (n as f64).max(1.0) {
        return Err(Error::NotClosed(residual));
    }
    let left_mult: Vec<CMatrix> = consts
        .iter()
        .map(|row| {
            let mut l = CMatrix::zeros(n, n);
            for (b, coords) in row.iter().enumerate() {
                l.set_column(b, coords);
            }
            l
        })
        .collect();

    let split = PsdSplit::new(&gram, tol.rank);
    let null_vectors: Vec<CVector> = split.null_vectors().collect();
    // largest Gram eigenvalues first so the quotient basis order is stable
    let mut range: Vec<(f64, CVector)> = split.range().collect();
    range.reverse();
    let rank = range.len();
    let mut to_quotient = CMatrix::zeros(rank, n);
    let mut quotient_basis = Vec::with_capacity(rank);
    for (k, (lambda, v)) in range.iter().enumerate() {
        let s = lambda.sqrt();
        to_quotient.set_row(k, &(v.adjoint() * r(s)));
        quotient_basis.push(v / r(s));
    }
    let mut q = CMatrix::zeros(n, rank);
    for (k, qb) in quotient_basis.iter().enumerate() {
        q.set_column(k, qb);
    }
    let rep_matrices = left_mult.iter().map(|l| &to_quotient * l * &q).collect();
    let cyclic_vector = &to_quotient * unit;

    Ok(GnsSpace {
        algebra: a0.clone(),
        state: omega.clone(),
        gram,
        null_vectors,
        quotient_basis,
        to_quotient,
        left_mult,
        rep_matrices,
        cyclic_vector,
        retained: range.iter().map(|(l, _)| *l).collect(),
    })
}

impl GnsSpace {
    pub fn algebra(&self) -> &OperatorSpan {
        &self.algebra
    }

    pub fn state(&self) -> &AlgebraState {
        &self.state
    }

    pub fn gram(&self) -> &CMatrix {
        &self.gram
    }

    /// Dimension of the GNS Hilbert space.
    pub fn dim(&self) -> usize {
        self.quotient_basis.len()
    }

    pub fn null_dim(&self) -> usize {
        self.null_vectors.len()
    }

    /// Orthonormal basis of the null ideal, in algebra coordinates.
    pub fn null_vectors(&self) -> &[CVector] {
        &self.null_vectors
    }

    pub fn quotient_basis(&self) -> &[CVector] {
        &self.quotient_basis
    }

    /// `π(B_a)` for each algebra basis element.
    pub fn rep_matrices(&self) -> &[CMatrix] {
        &self.rep_matrices
    }

    /// `|[1]⟩` in quotient coordinates.
    pub fn cyclic_vector(&self) -> &CVector {
        &self.cyclic_vector
    }

    /// Quotient coordinates of the class of the element with algebra coordinates `coords`.
    pub fn class_of(&self, coords: &CVector) -> CVector {
        &self.to_quotient * coords
    }

    /// `π(x)` for the element with algebra coordinates `coords`.
    pub fn represent(&self, coords: &CVector) -> CMatrix {
        let d = self.dim();
        let mut out = CMatrix::zeros(d, d);
        for (p, &w) in self.rep_matrices.iter().zip(coords.iter()) {
            if w != ZERO {
                out += p * w;
            }
        }
        out
    }

    /// Largest quotient norm of `B_a · n` over basis elements and null vectors.
    pub fn left_ideal_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for l in &self.left_mult {
            for nv in &self.null_vectors {
                worst = worst.max((&self.to_quotient * (l * nv)).norm());
            }
        }
        worst
    }

    /// `max_a |ω(B_a) − ⟨[1]|π(B_a)|[1]⟩|`.
    pub fn state_recovery_residual(&self) -> f64 {
        let y = &self.cyclic_vector;
        self.algebra
            .basis()
            .iter()
            .zip(&self.rep_matrices)
            .map(|(b, p)| (self.state.evaluate(b) - y.dotc(&(p * y))).norm())
            .fold(0.0, f64::max)
    }

    /// Worst violation of `π(B_a)π(B_b) = π(B_a B_b)` and `π(B_a*) = π(B_a)†`.
    pub fn star_hom_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let n = self.algebra.len();
        for a in 0..n {
            let pa = &self.rep_matrices[a];
            for b in 0..n {
                let prod_coords = self.left_mult[a].column(b).into_owned();
                let lhs = pa * &self.rep_matrices[b];
                worst = worst.max((lhs - self.represent(&prod_coords)).camax());
            }
            let adj = self.algebra.coords(&self.algebra.basis()[a].adjoint());
            worst = worst.max((self.represent(&adj) - pa.adjoint()).camax());
        }
        worst
    }

    /// Smallest Gram eigenvalue kept in the quotient.
    pub fn smallest_retained_gram_eigenvalue(&self) -> f64 {
        self.retained.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// One isotypic component `ℂ^n ⊗ ℂ^m` of the GNS representation.
#[derive(Debug, Clone, Serialize)]
pub struct IsotypicComponent {
    #[serde(skip)]
    pub projection: CMatrix,
    pub irrep_dim: usize,
    pub multiplicity: usize,
    /// `‖P_k |[1]⟩‖²`.
    pub weight: f64,
    /// Schmidt weights of `P_k|[1]⟩` across the multiplicity space; sums to `weight`.
    pub refined_weights: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsotypicDecomposition {
    pub components: Vec<IsotypicComponent>,
    pub commutant_dim: usize,
}

impl IsotypicDecomposition {
    pub fn total_weight(&self) -> f64 {
        self.components.iter().map(|k| k.weight).sum()
    }

    /// Irreducible exactly when the commutant is the scalars.
    pub fn is_irreducible(&self) -> bool {
        self.commutant_dim == 1
    }
}

/// Splits the GNS space into isotypic components and refines the weights
/// inside components of multiplicity greater than one.
pub fn isotypic_decompose(
    g: &GnsSpace,
    seed: u64,
    tol: &Tolerance,
) -> Result<IsotypicDecomposition> {
    let d = g.dim();
    let comm = commutant(d, g.rep_matrices(), tol)?;
    let blocks = wedderburn(&comm, seed, tol)?;
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1));
    let y = g.cyclic_vector();
    let mut components = Vec::with_capacity(blocks.len());
    for block in blocks.blocks {
        let p = block.projection;
        let py = &p * y;
        let weight = py.norm_squared();
        // commutant block M_m acts on the multiplicity factor
        let multiplicity = block.block_rank;
        let irrep_dim = block.multiplicity;
        let refined_weights = if multiplicity == 1 {
            vec![weight]
        } else {
            schmidt_weights(&comm, &p, irrep_dim, multiplicity, y, &mut rng, tol)?
        };
        components.push(IsotypicComponent {
            projection: p,
            irrep_dim,
            multiplicity,
            weight,
            refined_weights,
        });
    }
    Ok(IsotypicDecomposition {
        components,
        commutant_dim: comm.len(),
    })
}

/// Eigenvalues of `W_ij = ⟨y|E_ij|y⟩` for matrix units `E_ij` of the
/// commutant block on `range(p) ≅ ℂ^n ⊗ ℂ^m`.
fn schmidt_weights(
    comm: &OperatorSpan,
    p: &CMatrix,
    irrep_dim: usize,
    multiplicity: usize,
    y: &CVector,
    rng: &mut ChaCha8Rng,
    tol: &Tolerance,
) -> Result<Vec<f64>> {
    let u = projection_range(p);
    let block: Vec<CMatrix> = comm.basis().iter().map(|x| u.adjoint() * x * &u).collect();
    let yk = u.adjoint() * y;
    let size = u.ncols();

    'draw: for _ in 0..MAX_DRAWS {
        let mut h = CMatrix::zeros(size, size);
        for x in &block {
            let a: f64 = StandardNormal.sample(rng);
            let b: f64 = StandardNormal.sample(rng);
            h += (x + x.adjoint()) * r(0.5 * a) + (x - x.adjoint()) * c(0.0, -0.5 * b);
        }
        let norm = hs_norm(&h);
        if norm == 0.0 {
            continue;
        }
        h /= r(norm);
        let (values, vectors) = eigh(&h);
        let groups = group_sorted(&values, tol.grouping);
        if groups.len() != multiplicity || groups.iter().any(|gr| gr.len() != irrep_dim) {
            continue;
        }
        let minimal: Vec<CMatrix> = groups
            .iter()
            .map(|gr| {
                let cols = vectors.columns(gr.start, gr.len());
                cols * cols.adjoint()
            })
            .collect();

        let mut x = CMatrix::zeros(size, size);
        for b in &block {
            x += b * crate::linalg::random_complex(rng);
        }
        // partial isometries E_i1 from F_1 to F_i
        let mut units = Vec::with_capacity(multiplicity);
        for f in &minimal {
            let e = f * &x * &minimal[0];
            let scale = hs_norm(&e).powi(2) / irrep_dim as f64;
            if scale < tol.grouping {
                continue 'draw;
            }
            units.push(e / r(scale.sqrt()));
        }
        let images: Vec<CVector> = units.iter().map(|e| e.adjoint() * &yk).collect();
        let mut w = CMatrix::zeros(multiplicity, multiplicity);
        for i in 0..multiplicity {
            for j in 0..multiplicity {
                // ⟨y|E_i1 E_j1†|y⟩
                w[(i, j)] = images[i].dotc(&images[j]);
            }
        }
        return Ok(eigvalsh(&w).into_iter().rev().collect());
    }
    Err(Error::RetryExhausted(MAX_DRAWS))
}

/// Spectrum of `ρ_ω = Σ μ_i² |[χ_i]⟩⟨[χ_i]|`: the refined weights with
/// negligible entries removed.
pub fn gns_density(iso: &IsotypicDecomposition, tol: &Tolerance) -> SpectralState {
    let weights = iso
        .components
        .iter()
        .flat_map(|k| k.refined_weights.iter().copied())
        .filter(|&w| w > tol.spectrum)
        .collect();
    SpectralState::new(weights, LogBase::Natural)
}
