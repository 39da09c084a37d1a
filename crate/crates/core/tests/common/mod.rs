#![allow(dead_code)]

use gns_entropy::linalg::{
    random_density, random_unit_vector, random_unitary, CMatrix, CVector, ONE,
};
use gns_entropy::{span_closure, AlgebraState, OperatorSpan, Tolerance};
use rand::Rng;

/// `⊕_k M_{n_k} ⊗ 1_{m_k}` on `Σ n_k m_k` dimensions, block `k` occupying a
/// contiguous range with local index `i·m_k + j`.
pub fn block_generators(shape: &[(usize, usize)]) -> (usize, Vec<CMatrix>) {
    let dim: usize = shape.iter().map(|(n, m)| n * m).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for &(n, m) in shape {
        for i in 0..n {
            for j in 0..n {
                let mut g = CMatrix::zeros(dim, dim);
                for k in 0..m {
                    g[(offset + i * m + k, offset + j * m + k)] = ONE;
                }
                gens.push(g);
            }
        }
        offset += n * m;
    }
    (dim, gens)
}

/// Random block shape with ambient dimension at most `max_dim`.
pub fn random_shape<R: Rng>(max_dim: usize, rng: &mut R) -> Vec<(usize, usize)> {
    loop {
        let blocks = rng.random_range(1..=3);
        let mut shape = Vec::new();
        let mut used = 0;
        for _ in 0..blocks {
            let n = rng.random_range(1..=3);
            let m = rng.random_range(1..=2);
            if used + n * m <= max_dim {
                shape.push((n, m));
                used += n * m;
            }
        }
        if !shape.is_empty() && used >= 2 {
            return shape;
        }
    }
}

pub struct RandomCase {
    pub shape: Vec<(usize, usize)>,
    pub unitary: CMatrix,
    pub algebra: OperatorSpan,
    pub state: AlgebraState,
    /// Built as a product vector inside a single block, so pure on the algebra.
    pub constructed_pure: bool,
}

/// A block algebra conjugated by a Haar-ish unitary, with a random state.
///
/// Every fourth case uses `U (v ⊗ w)` inside one block, which restricts to a
/// pure state; the rest draw a vector or a density of random rank.
pub fn random_case<R: Rng>(
    max_dim: usize,
    index: usize,
    rng: &mut R,
    tol: &Tolerance,
) -> RandomCase {
    let shape = random_shape(max_dim, rng);
    let (dim, gens) = block_generators(&shape);
    let u = random_unitary(dim, rng);
    let gens: Vec<CMatrix> = gens.iter().map(|g| &u * g * u.adjoint()).collect();
    let algebra = span_closure(dim, &gens, true, tol).expect("block algebra closes");
    let (state, constructed_pure) = match index % 4 {
        0 => {
            let k = rng.random_range(0..shape.len());
            let offset: usize = shape[..k].iter().map(|(n, m)| n * m).sum();
            let (n, m) = shape[k];
            let v = random_unit_vector(n, rng);
            let w = random_unit_vector(m, rng);
            let mut phi = CVector::zeros(dim);
            for i in 0..n {
                for j in 0..m {
                    phi[offset + i * m + j] = v[i] * w[j];
                }
            }
            (AlgebraState::pure(&u * phi, tol).unwrap(), true)
        }
        1 => (
            AlgebraState::pure(random_unit_vector(dim, rng), tol).unwrap(),
            false,
        ),
        _ => {
            let rank = rng.random_range(1..=dim);
            (
                AlgebraState::mixed(random_density(dim, rank, rng), tol).unwrap(),
                false,
            )
        }
    };
    RandomCase {
        shape,
        unitary: u,
        algebra,
        state,
        constructed_pure,
    }
}
