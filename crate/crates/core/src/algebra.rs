//! Finite-dimensional *-algebras as concrete spans of complex matrices.
//!
//! An [`OperatorSpan`] keeps an orthonormal basis under the Hilbert–Schmidt
//! pairing `⟨X, Y⟩ = trace(X† Y)`, so coordinates of an element are plain
//! inner products. Structural data (center, commutant, Wedderburn blocks)
//! is computed from null spaces of Hermitian PSD operators built on top of
//! that basis.

use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{
    eigh, ensure_finite, ensure_square, group_sorted, hermitian_part, hs_inner, hs_norm, identity,
    kron, r, trace, unvec, CMatrix, CVector, PsdSplit, Tolerance, C64, I, ZERO,
};

const MAX_DRAWS: usize = 16;

/// Linear span of `D×D` matrices with a Hilbert–Schmidt orthonormal basis.
#[derive(Debug, Clone)]
pub struct OperatorSpan {
    dim: usize,
    basis: Vec<CMatrix>,
    unit_coords: Option<CVector>,
    structure: OnceLock<(Vec<Vec<CVector>>, f64)>,
}

impl OperatorSpan {
    /// Wraps a basis that is already orthonormal. Detects whether the
    /// ambient identity lies in the span.
    pub fn from_orthonormal(dim: usize, basis: Vec<CMatrix>, tol: &Tolerance) -> Result<Self> {
        for b in &basis {
            if b.nrows() != dim || b.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: b.nrows(),
                });
            }
        }
        let mut span = Self {
            dim,
            basis,
            unit_coords: None,
            structure: OnceLock::new(),
        };
        let id = identity(dim);
        let coords = span.coords(&id);
        if span.residual(&id) < tol.residual.max(1e-12) * (dim as f64).sqrt() {
            span.unit_coords = Some(coords);
        }
        Ok(span)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    pub fn has_unit(&self) -> bool {
        self.unit_coords.is_some()
    }

    pub fn unit_coords(&self) -> Option<&CVector> {
        self.unit_coords.as_ref()
    }

    /// Coordinates `c_a = ⟨B_a, x⟩` of the orthogonal projection of `x` onto the span.
    pub fn coords(&self, x: &CMatrix) -> CVector {
        CVector::from_iterator(self.len(), self.basis.iter().map(|b| hs_inner(b, x)))
    }

    pub fn element(&self, coords: &CVector) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (b, &w) in self.basis.iter().zip(coords.iter()) {
            if w != ZERO {
                out += b * w;
            }
        }
        out
    }

    /// HS distance from `x` to the span.
    pub fn residual(&self, x: &CMatrix) -> f64 {
        hs_norm(&(x - self.element(&self.coords(x))))
    }

    pub fn contains(&self, x: &CMatrix, tol: &Tolerance) -> bool {
        self.residual(x) <= tol.residual * hs_norm(x).max(1.0)
    }

    /// Largest entry of `Gram(basis) - I`.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, x) in self.basis.iter().enumerate() {
            for (b, y) in self.basis.iter().enumerate() {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((hs_inner(x, y) - r(target)).norm());
            }
        }
        worst
    }

    /// Largest HS residual of a basis product or adjoint re-expanded in the span.
    pub fn closure_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in &self.basis {
            worst = worst.max(self.residual(&a.adjoint()));
            for b in &self.basis {
                worst = worst.max(self.residual(&(a * b)));
            }
        }
        worst
    }

    /// Structure constants: `consts[a][b]` holds the coordinates of `B_a B_b`
    /// together with the worst re-expansion residual. Computed once per span.
    pub fn structure_constants(&self) -> (&[Vec<CVector>], f64) {
        let (consts, worst) = self.structure.get_or_init(|| self.compute_structure());
        (consts, *worst)
    }

    fn compute_structure(&self) -> (Vec<Vec<CVector>>, f64) {
        let mut worst: f64 = 0.0;
        let consts = self
            .basis
            .iter()
            .map(|a| {
                self.basis
                    .iter()
                    .map(|b| {
                        let p = a * b;
                        let coords = self.coords(&p);
                        worst = worst.max(hs_norm(&(&p - self.element(&coords))));
                        coords
                    })
                    .collect()
            })
            .collect();
        (consts, worst)
    }

    /// Matrix mapping coordinates of `x` to coordinates of `x†` composed with
    /// complex conjugation: `coords(x†) = S · conj(coords(x))`.
    pub fn adjoint_coords(&self) -> CMatrix {
        let n = self.len();
        let mut s = CMatrix::zeros(n, n);
        for (b, basis_b) in self.basis.iter().enumerate() {
            s.set_column(b, &self.coords(&basis_b.adjoint()));
        }
        s
    }

    /// Orthonormal basis of the same span consisting of Hermitian matrices.
    /// Requires the span to be *-closed.
    ///
    /// Takes the `len()` dominant directions of the real Gram matrix of all
    /// Hermitian and anti-Hermitian parts, so the count is exact even when
    /// the span is only approximately *-closed. Returns fewer elements if the
    /// parts span less than `len()` real dimensions.
    pub fn hermitian_basis(&self, tol: &Tolerance) -> Vec<CMatrix> {
        let parts: Vec<CMatrix> = self
            .basis
            .iter()
            .flat_map(|b| [(b + b.adjoint()) * r(0.5), (b - b.adjoint()) * (-I * 0.5)])
            .collect();
        let m = parts.len();
        let mut gram = CMatrix::zeros(m, m);
        for i in 0..m {
            for j in i..m {
                let v = r(hs_inner(&parts[i], &parts[j]).re);
                gram[(i, j)] = v;
                gram[(j, i)] = v;
            }
        }
        let (values, vectors) = eigh(&gram);
        let top = values.last().copied().unwrap_or(0.0);
        let mut out = Vec::with_capacity(self.len());
        for k in (0..m).rev().take(self.len()) {
            if values[k] <= tol.rank * top {
                break;
            }
            let mut h = CMatrix::zeros(self.dim, self.dim);
            for (i, p) in parts.iter().enumerate() {
                h += p * r(vectors[(i, k)].re);
            }
            h /= r(values[k].sqrt());
            out.push(hermitian_part(&h));
        }
        out
    }

    /// The span `{U B U† : B}` for a unitary `U`.
    pub fn conjugated(&self, u: &CMatrix, tol: &Tolerance) -> Result<Self> {
        let basis = self.basis.iter().map(|b| u * b * u.adjoint()).collect();
        Self::from_orthonormal(self.dim, basis, tol)
    }
}

/// Modified Gram–Schmidt under the HS pairing with one re-orthogonalization pass.
pub(crate) struct GramSchmidt {
    dim: usize,
    rel_tol: f64,
    basis: Vec<CMatrix>,
}

impl GramSchmidt {
    pub(crate) fn new(dim: usize, rel_tol: f64) -> Self {
        Self {
            dim,
            rel_tol,
            basis: Vec::new(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.basis.len()
    }

    pub(crate) fn get(&self, k: usize) -> &CMatrix {
        &self.basis[k]
    }

    /// Adds the normalized component of `x` orthogonal to the current basis.
    /// Returns whether the basis grew.
    pub(crate) fn push(&mut self, x: &CMatrix) -> bool {
        self.push_scaled(x, hs_norm(x))
    }

    /// As [`push`](Self::push), with the rank cut taken relative to `scale`
    /// instead of `‖x‖`. Products of unit-norm elements use scale 1, so a
    /// product that vanishes up to rounding is not promoted to a new direction.
    pub(crate) fn push_scaled(&mut self, x: &CMatrix, scale: f64) -> bool {
        let norm0 = hs_norm(x).max(scale);
        if norm0 == 0.0 || self.basis.len() >= self.dim * self.dim {
            return false;
        }
        let mut v = x.clone();
        for _ in 0..2 {
            for b in &self.basis {
                let p = hs_inner(b, &v);
                v -= b * p;
            }
        }
        let norm = hs_norm(&v);
        if norm <= self.rel_tol * norm0 {
            return false;
        }
        v /= r(norm);
        self.basis.push(v);
        true
    }

    pub(crate) fn into_basis(self) -> Vec<CMatrix> {
        self.basis
    }
}

/// Smallest *-closed (and, if requested, unital) span containing the generators.
///
/// Basis order: generators (in input order), the identity, then adjoints and
/// products in the order they are enumerated round by round.
pub fn span_closure(
    dim: usize,
    generators: &[CMatrix],
    include_unit: bool,
    tol: &Tolerance,
) -> Result<OperatorSpan> {
    if dim == 0 {
        return Err(Error::OutOfRange(
            "ambient dimension must be positive".into(),
        ));
    }
    for g in generators {
        let n = ensure_square(g)?;
        if n != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: n,
            });
        }
        ensure_finite(g)?;
    }
    let mut gs = GramSchmidt::new(dim, tol.rank);
    for g in generators {
        gs.push(g);
    }
    if include_unit {
        gs.push(&identity(dim));
    }

    let full = dim * dim;
    let mut done = 0;
    let mut rounds = 0;
    while done < gs.len() && gs.len() < full {
        rounds += 1;
        if rounds > full {
            return Err(Error::ClosureDidNotStabilize(rounds - 1));
        }
        let n = gs.len();
        for i in done..n {
            let adj = gs.get(i).adjoint();
            gs.push_scaled(&adj, 1.0);
        }
        for i in 0..n {
            for j in 0..n {
                if i < done && j < done {
                    continue;
                }
                let p = gs.get(i) * gs.get(j);
                gs.push_scaled(&p, 1.0);
            }
        }
        done = n;
    }
    OperatorSpan::from_orthonormal(dim, gs.into_basis(), tol)
}

/// Center `{x ∈ A : [x, a] = 0 ∀ a ∈ A}`, from the null space of the
/// commutator map on coefficient space.
pub fn center(a: &OperatorSpan, tol: &Tolerance) -> Result<OperatorSpan> {
    let n = a.len();
    let basis = a.basis();
    // q[i][k] = Σ_j ⟨[B_i, B_j], [B_k, B_j]⟩
    let comms: Vec<Vec<CMatrix>> = basis
        .iter()
        .map(|bi| basis.iter().map(|bj| bi * bj - bj * bi).collect())
        .collect();
    let mut q = CMatrix::zeros(n, n);
    for i in 0..n {
        for k in i..n {
            let v: C64 = (0..n).map(|j| hs_inner(&comms[i][j], &comms[k][j])).sum();
            q[(i, k)] = v;
            q[(k, i)] = v.conj();
        }
    }
    // commutators of unit-norm elements are O(1) unless they vanish
    let split = PsdSplit::with_scale(&q, tol.rank, 1.0);
    let elements = split.null_vectors().map(|v| a.element(&v)).collect();
    OperatorSpan::from_orthonormal(a.ambient_dim(), elements, tol)
}

/// Commutant `{X : X R = R X ∀ R}` of a set of `n×n` matrices.
///
/// Uses the normal operator `Σ L_R† L_R` with `L_R = I⊗R − Rᵀ⊗I` acting on
/// column-stacked `vec(X)`, assembled blockwise without forming the `L_R`.
pub fn commutant(n: usize, reps: &[CMatrix], tol: &Tolerance) -> Result<OperatorSpan> {
    for rep in reps {
        if rep.nrows() != n || rep.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rep.nrows(),
            });
        }
    }
    let id = identity(n);
    let mut s1 = CMatrix::zeros(n, n);
    let mut s2 = CMatrix::zeros(n, n);
    let mut q = CMatrix::zeros(n * n, n * n);
    for rep in reps {
        s1 += rep.adjoint() * rep;
        s2 += rep.conjugate() * rep.transpose();
        q -= kron(&rep.transpose(), &rep.adjoint());
        q -= kron(&rep.conjugate(), rep);
    }
    q += kron(&id, &s1);
    q += kron(&s2, &id);
    let scale: f64 = reps.iter().map(|r| hs_norm(r).powi(2)).sum();
    let split = PsdSplit::with_scale(&q, tol.rank, scale);
    let elements = split.null_vectors().map(|v| unvec(&v, n, n)).collect();
    OperatorSpan::from_orthonormal(n, elements, tol)
}

/// One simple summand `M_n ⊗ 1_m` of a *-algebra.
#[derive(Debug, Clone)]
pub struct WedderburnBlock {
    /// Minimal central projection `z`.
    pub projection: CMatrix,
    /// `n` with `z A ≅ M_n(ℂ)`.
    pub block_rank: usize,
    /// Ambient multiplicity `m = trace(z) / n`.
    pub multiplicity: usize,
}

impl WedderburnBlock {
    pub fn block_dim(&self) -> usize {
        self.block_rank * self.block_rank
    }
}

#[derive(Debug, Clone)]
pub struct WedderburnData {
    pub blocks: Vec<WedderburnBlock>,
}

impl WedderburnData {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `Σ n_k²`.
    pub fn algebra_dim(&self) -> usize {
        self.blocks.iter().map(WedderburnBlock::block_dim).sum()
    }

    /// `(n_k, m_k)` in block order.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        self.blocks
            .iter()
            .map(|b| (b.block_rank, b.multiplicity))
            .collect()
    }

    /// Block trace `Σ_k trace(z_k x) / m_k`, counting each simple block once.
    pub fn block_trace(&self, x: &CMatrix) -> C64 {
        self.blocks
            .iter()
            .map(|b| trace(&(&b.projection * x)) / r(b.multiplicity as f64))
            .sum()
    }

    /// Worst violation of `z† = z`, `z² = z`, `z_j z_k = 0` and `Σ z = 1`.
    pub fn projection_residual(&self) -> f64 {
        let Some(first) = self.blocks.first() else {
            return 0.0;
        };
        let dim = first.projection.nrows();
        let mut worst: f64 = 0.0;
        let mut sum = CMatrix::zeros(dim, dim);
        for (j, bj) in self.blocks.iter().enumerate() {
            let z = &bj.projection;
            worst = worst.max((z - z.adjoint()).camax());
            worst = worst.max((z * z - z).camax());
            for bk in &self.blocks[j + 1..] {
                worst = worst.max((z * &bk.projection).camax());
            }
            sum += z;
        }
        worst.max((sum - identity(dim)).camax())
    }
}

/// Wedderburn decomposition of a unital *-closed span.
///
/// Minimal central projections are the spectral projections of a seeded
/// random Hermitian central element; a draw with fewer distinct eigenvalues
/// than `dim(center)` is discarded and redrawn. Blocks are sorted by
/// `(n, m)` descending, ties broken by the position of their support.
pub fn wedderburn(a: &OperatorSpan, seed: u64, tol: &Tolerance) -> Result<WedderburnData> {
    if !a.has_unit() {
        return Err(Error::NotUnital);
    }
    let z = center(a, tol)?;
    let herm = z.hermitian_basis(tol);
    if herm.len() != z.len() || herm.is_empty() {
        return Err(Error::NotClosed(z.len() as f64 - herm.len() as f64));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_DRAWS {
        let mut h = CMatrix::zeros(a.ambient_dim(), a.ambient_dim());
        for e in &herm {
            let x: f64 = StandardNormal.sample(&mut rng);
            h += e * r(x);
        }
        let norm = hs_norm(&h);
        if norm == 0.0 {
            continue;
        }
        h /= r(norm);
        let (values, vectors) = eigh(&h);
        let groups = group_sorted(&values, tol.grouping);
        if groups.len() != z.len() {
            continue;
        }
        let mut blocks = Vec::with_capacity(groups.len());
        for g in groups {
            let cols = vectors.columns(g.start, g.len());
            let proj = cols * cols.adjoint();
            blocks.push(block_from_projection(a, proj, tol)?);
        }
        sort_blocks(&mut blocks);
        return Ok(WedderburnData { blocks });
    }
    Err(Error::RetryExhausted(MAX_DRAWS))
}

fn block_from_projection(
    a: &OperatorSpan,
    proj: CMatrix,
    tol: &Tolerance,
) -> Result<WedderburnBlock> {
    let projected: Vec<CMatrix> = a.basis().iter().map(|b| &proj * b).collect();
    let n = projected.len();
    let mut gram = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = hs_inner(&projected[i], &projected[j]);
            gram[(i, j)] = v;
            gram[(j, i)] = v.conj();
        }
    }
    let dim = PsdSplit::with_scale(&gram, tol.rank, 1.0).rank();
    let block_rank = (dim as f64).sqrt().round() as usize;
    if block_rank == 0 || block_rank * block_rank != dim {
        return Err(Error::NotIntegral {
            what: "block rank sqrt(dim z A)",
            value: (dim as f64).sqrt(),
        });
    }
    let mult = trace(&proj).re / block_rank as f64;
    let multiplicity = mult.round() as usize;
    if multiplicity == 0 || (mult - multiplicity as f64).abs() > tol.integer {
        return Err(Error::NotIntegral {
            what: "multiplicity trace(z)/n",
            value: mult,
        });
    }
    Ok(WedderburnBlock {
        projection: proj,
        block_rank,
        multiplicity,
    })
}

fn support_position(p: &CMatrix) -> f64 {
    let t = trace(p).re;
    p.diagonal()
        .iter()
        .enumerate()
        .map(|(i, d)| i as f64 * d.re)
        .sum::<f64>()
        / t
}

fn sort_blocks(blocks: &mut [WedderburnBlock]) {
    blocks.sort_by(|x, y| {
        y.block_rank
            .cmp(&x.block_rank)
            .then(y.multiplicity.cmp(&x.multiplicity))
            .then(support_position(&x.projection).total_cmp(&support_position(&y.projection)))
    });
}
