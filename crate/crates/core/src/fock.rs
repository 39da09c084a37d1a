//! Second-quantized operator spaces: fermionic ladder operators on Fock
//! space, antisymmetric and symmetric multi-particle sectors inside the
//! tensor power `(ℂ^d)^{⊗k}`, and the coproduct lift of one-particle
//! operators to those sectors.

use crate::error::{Error, Result};
use crate::linalg::{
    identity, kron, r, unitarity_residual, CMatrix, CVector, Tolerance, C64, ONE, ZERO,
};

/// Largest tensor-power dimension a sector may be embedded in.
const MAX_TENSOR_DIM: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    Fermionic,
    Bosonic,
}

/// A `k`-particle sector of the Fock space over `ℂ^d`.
///
/// Labels are 0-based mode tuples: strictly increasing for fermions,
/// non-decreasing for bosons. Columns of `embedding` are the orthonormal
/// sector vectors in `(ℂ^d)^{⊗k}`, with the first tensor factor most
/// significant in the flat index.
#[derive(Debug, Clone)]
pub struct FockContext {
    single_particle_dim: usize,
    statistics: Statistics,
    particles: usize,
    labels: Vec<Vec<usize>>,
    embedding: CMatrix,
}

impl FockContext {
    pub fn new(d: usize, statistics: Statistics, k: usize) -> Result<Self> {
        if d == 0 || k == 0 {
            return Err(Error::OutOfRange(
                "single-particle dimension and particle number must be positive".into(),
            ));
        }
        if statistics == Statistics::Bosonic && k > 2 {
            return Err(Error::OutOfRange(
                "bosonic sectors are supported up to two particles".into(),
            ));
        }
        if statistics == Statistics::Fermionic && k > d {
            return Err(Error::OutOfRange(format!(
                "{k} fermions do not fit in {d} modes"
            )));
        }
        let tensor_dim = d.checked_pow(k as u32).filter(|&n| n <= MAX_TENSOR_DIM);
        let Some(tensor_dim) = tensor_dim else {
            return Err(Error::OutOfRange(format!("tensor power {d}^{k} too large")));
        };

        let labels = match statistics {
            Statistics::Fermionic => increasing_tuples(d, k, true),
            Statistics::Bosonic => increasing_tuples(d, k, false),
        };
        let mut embedding = CMatrix::zeros(tensor_dim, labels.len());
        for (col, label) in labels.iter().enumerate() {
            let v = match statistics {
                Statistics::Fermionic => wedge_vector(d, label),
                Statistics::Bosonic => symmetric_pair_vector(d, label),
            };
            embedding.set_column(col, &v);
        }
        Ok(Self {
            single_particle_dim: d,
            statistics,
            particles: k,
            labels,
            embedding,
        })
    }

    pub fn single_particle_dim(&self) -> usize {
        self.single_particle_dim
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    pub fn embedding(&self) -> &CMatrix {
        &self.embedding
    }

    /// Sector index of a 0-based label.
    pub fn index_of(&self, label: &[usize]) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Sector basis vector for a 0-based label.
    pub fn basis_vector(&self, label: &[usize]) -> Option<CVector> {
        let k = self.index_of(label)?;
        Some(CVector::from_fn(self.dim(), |i, _| {
            if i == k {
                ONE
            } else {
                ZERO
            }
        }))
    }

    /// Maps a sector vector into `(ℂ^d)^{⊗k}`.
    pub fn to_tensor(&self, v: &CVector) -> CVector {
        &self.embedding * v
    }

    fn compress(&self, op: &CMatrix) -> CMatrix {
        self.embedding.adjoint() * op * &self.embedding
    }
}

fn increasing_tuples(d: usize, k: usize, strict: bool) -> Vec<Vec<usize>> {
    fn rec(
        d: usize,
        k: usize,
        start: usize,
        strict: bool,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(d, k, if strict { i + 1 } else { i }, strict, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, k, 0, strict, &mut Vec::with_capacity(k), &mut out);
    out
}

fn tensor_index(d: usize, modes: &[usize]) -> usize {
    modes.iter().fold(0, |acc, &m| acc * d + m)
}

/// Heap's algorithm; yields every permutation with its sign.
fn permutations(k: usize) -> Vec<(Vec<usize>, f64)> {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut out = vec![(perm.clone(), 1.0)];
    let mut c = vec![0; k];
    let mut sign = 1.0;
    let mut i = 1;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            out.push((perm.clone(), sign));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `e_{i1} ∧ … ∧ e_{ik} = (1/√k!) Σ_σ sgn(σ) e_{iσ1} ⊗ … ⊗ e_{iσk}`.
fn wedge_vector(d: usize, label: &[usize]) -> CVector {
    let k = label.len();
    let perms = permutations(k);
    let norm = (perms.len() as f64).sqrt();
    let mut v = CVector::zeros(d.pow(k as u32));
    for (p, sign) in perms {
        let modes: Vec<usize> = p.iter().map(|&j| label[j]).collect();
        v[tensor_index(d, &modes)] += r(sign / norm);
    }
    v
}

/// `e_i ∨ e_j`: `(e_i⊗e_j + e_j⊗e_i)/√2` for `i ≠ j`, `e_i⊗e_i` otherwise.
fn symmetric_pair_vector(d: usize, label: &[usize]) -> CVector {
    let mut v = CVector::zeros(d.pow(label.len() as u32));
    match label {
        [i] => v[*i] = ONE,
        [i, j] if i == j => v[tensor_index(d, &[*i, *i])] = ONE,
        [i, j] => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            v[tensor_index(d, &[*i, *j])] = r(s);
            v[tensor_index(d, &[*j, *i])] = r(s);
        }
        _ => unreachable!("bosonic sectors limited to two particles"),
    }
    v
}

/// `A^(k) = Σ_j 1^{⊗(j−1)} ⊗ A ⊗ 1^{⊗(k−j)}` compressed to the sector.
pub fn coproduct_embed(a: &CMatrix, ctx: &FockContext) -> Result<CMatrix> {
    let d = ctx.single_particle_dim;
    if a.nrows() != d || a.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: a.nrows(),
        });
    }
    let k = ctx.particles;
    let mut total = CMatrix::zeros(d.pow(k as u32), d.pow(k as u32));
    for slot in 0..k {
        let left = identity(d.pow(slot as u32));
        let right = identity(d.pow((k - slot - 1) as u32));
        total += kron(&kron(&left, a), &right);
    }
    Ok(ctx.compress(&total))
}

/// `U^{⊗k}` compressed to the sector.
pub fn group_embed(u: &CMatrix, ctx: &FockContext, tol: &Tolerance) -> Result<CMatrix> {
    let d = ctx.single_particle_dim;
    if u.nrows() != d || u.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: u.nrows(),
        });
    }
    let res = unitarity_residual(u);
    if res > tol.state {
        return Err(Error::NonUnitary(res));
    }
    let mut total = CMatrix::identity(1, 1);
    for _ in 0..ctx.particles {
        total = kron(&total, u);
    }
    Ok(ctx.compress(&total))
}

/// Fermionic creation and annihilation operators on the `2^d`-dimensional
/// Fock space. Occupation of mode `i` is bit `i` of the basis index; the
/// Jordan–Wigner sign is `(−1)^{Σ_{j<i} n_j}`.
#[derive(Debug, Clone)]
pub struct LadderSet {
    modes: usize,
    annihilators: Vec<CMatrix>,
}

pub const MAX_MODES: usize = 12;

pub fn car_ladders(d: usize) -> Result<LadderSet> {
    if d == 0 || d > MAX_MODES {
        return Err(Error::OutOfRange(format!(
            "mode count {d} outside 1..={MAX_MODES}"
        )));
    }
    let size = 1usize << d;
    let annihilators = (0..d)
        .map(|i| {
            let mut a = CMatrix::zeros(size, size);
            for state in 0..size {
                if state & (1 << i) != 0 {
                    let below = (state & ((1 << i) - 1)).count_ones();
                    let sign = if below % 2 == 0 { 1.0 } else { -1.0 };
                    a[(state ^ (1 << i), state)] = r(sign);
                }
            }
            a
        })
        .collect();
    Ok(LadderSet {
        modes: d,
        annihilators,
    })
}

impl LadderSet {
    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn fock_dim(&self) -> usize {
        1 << self.modes
    }

    pub fn annihilation(&self, i: usize) -> &CMatrix {
        &self.annihilators[i]
    }

    pub fn creation(&self, i: usize) -> CMatrix {
        self.annihilators[i].adjoint()
    }

    pub fn vacuum(&self) -> CVector {
        CVector::from_fn(self.fock_dim(), |i, _| if i == 0 { ONE } else { ZERO })
    }

    pub fn number_operator(&self) -> CMatrix {
        let n = self.fock_dim();
        self.annihilators
            .iter()
            .fold(CMatrix::zeros(n, n), |acc, a| acc + a.adjoint() * a)
    }

    /// `a_{i1}† … a_{ik}† |Ω⟩`, the rightmost operator applied first.
    pub fn create(&self, modes: &[usize]) -> CVector {
        modes
            .iter()
            .rev()
            .fold(self.vacuum(), |v, &m| self.creation(m) * v)
    }

    /// Worst residual of `{a_i, a_j†} = δ_ij` and `{a_i, a_j} = 0`.
    ///
    /// Evaluated column by column on the stored matrices, which have at most
    /// one nonzero per column; dense products are the fallback.
    pub fn car_residual(&self) -> f64 {
        let Some(cols) = self
            .annihilators
            .iter()
            .map(monomial_columns)
            .collect::<Option<Vec<_>>>()
        else {
            return self.car_residual_dense();
        };
        let adj: Vec<Vec<Option<(usize, C64)>>> = cols.iter().map(monomial_adjoint).collect();
        let n = self.fock_dim();
        let mut worst: f64 = 0.0;
        for i in 0..self.modes {
            for j in 0..self.modes {
                for s in 0..n {
                    let target = if i == j { Some((s, ONE)) } else { None };
                    worst = worst.max(anticommutator_residual(&cols[i], &adj[j], s, target));
                    worst = worst.max(anticommutator_residual(&cols[i], &cols[j], s, None));
                }
            }
        }
        worst
    }

    fn car_residual_dense(&self) -> f64 {
        let n = self.fock_dim();
        let id = identity(n);
        let mut worst: f64 = 0.0;
        for (i, ai) in self.annihilators.iter().enumerate() {
            for (j, aj) in self.annihilators.iter().enumerate() {
                let ajd = aj.adjoint();
                let target = if i == j {
                    id.clone()
                } else {
                    CMatrix::zeros(n, n)
                };
                worst = worst.max((ai * &ajd + &ajd * ai - target).camax());
                worst = worst.max((ai * aj + aj * ai).camax());
            }
        }
        worst
    }

    /// Columns `a_{i1}† … a_{ik}† |Ω⟩` for the sector labels of `ctx` (fermionic).
    pub fn sector_isometry(&self, ctx: &FockContext) -> Result<CMatrix> {
        if ctx.statistics != Statistics::Fermionic || ctx.single_particle_dim != self.modes {
            return Err(Error::DimensionMismatch {
                expected: self.modes,
                found: ctx.single_particle_dim,
            });
        }
        let mut v = CMatrix::zeros(self.fock_dim(), ctx.dim());
        for (col, label) in ctx.labels.iter().enumerate() {
            v.set_column(col, &self.create(label));
        }
        Ok(v)
    }

    /// `Σ_ij A_ij a_i† a_j` on the full Fock space.
    pub fn second_quantize(&self, a: &CMatrix) -> Result<CMatrix> {
        if a.nrows() != self.modes || a.ncols() != self.modes {
            return Err(Error::DimensionMismatch {
                expected: self.modes,
                found: a.nrows(),
            });
        }
        let n = self.fock_dim();
        let mut out = CMatrix::zeros(n, n);
        for i in 0..self.modes {
            let ci = self.creation(i);
            for j in 0..self.modes {
                if a[(i, j)] != ZERO {
                    out += &ci * &self.annihilators[j] * a[(i, j)];
                }
            }
        }
        Ok(out)
    }
}

type Monomial = Vec<Option<(usize, C64)>>;

/// `(row, value)` of the single nonzero in each column, or `None` if some
/// column has more than one.
fn monomial_columns(m: &CMatrix) -> Option<Monomial> {
    let mut out = Vec::with_capacity(m.ncols());
    for col in m.column_iter() {
        let mut entry = None;
        for (row, &v) in col.iter().enumerate() {
            if v != ZERO {
                if entry.is_some() {
                    return None;
                }
                entry = Some((row, v));
            }
        }
        out.push(entry);
    }
    Some(out)
}

fn monomial_adjoint(cols: &Monomial) -> Monomial {
    let mut out = vec![None; cols.len()];
    for (s, e) in cols.iter().enumerate() {
        if let Some((t, v)) = e {
            out[*t] = Some((s, v.conj()));
        }
    }
    out
}

fn apply(cols: &Monomial, e: Option<(usize, C64)>) -> Option<(usize, C64)> {
    let (s, v) = e?;
    cols[s].map(|(t, w)| (t, w * v))
}

/// `max |({A, B} − T) e_s|` for monomial `A`, `B` and a target column with at most one entry.
fn anticommutator_residual(
    a: &Monomial,
    b: &Monomial,
    s: usize,
    target: Option<(usize, C64)>,
) -> f64 {
    let start = Some((s, ONE));
    let mut acc: Vec<(usize, C64)> = Vec::with_capacity(3);
    let mut add = |e: Option<(usize, C64)>, sign: f64| {
        if let Some((row, v)) = e {
            match acc.iter_mut().find(|(r, _)| *r == row) {
                Some((_, w)) => *w += v * sign,
                None => acc.push((row, v * sign)),
            }
        }
    };
    add(apply(a, apply(b, start)), 1.0);
    add(apply(b, apply(a, start)), 1.0);
    add(target, -1.0);
    acc.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max)
}
