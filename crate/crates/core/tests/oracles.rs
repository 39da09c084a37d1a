//! Restricted entropies checked against routes that never touch the GNS code:
//! partial traces, Schmidt decompositions and block projections.

mod common;

use gns_entropy::entropy::entropy_of_density;
use gns_entropy::linalg::{random_density, random_unit_vector, random_unitary, CMatrix, CVector};
use gns_entropy::scenario::shannon;
use gns_entropy::{
    example_generators, partial_trace, restriction_entropy, span_closure, AlgebraState,
    FockContext, Method, Preset, Statistics, Subsystem, Tolerance,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn squared_singular_values(c: CMatrix) -> Vec<f64> {
    c.singular_values().iter().map(|s| s * s).collect()
}

fn entropy(a0: &gns_entropy::OperatorSpan, omega: &AlgebraState) -> f64 {
    restriction_entropy(a0, omega, Method::Both, 3, &Tolerance::default())
        .unwrap()
        .entropy_nats
}

#[test]
fn local_algebra_matches_partial_trace() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for (da, db) in [(2, 2), (2, 3), (3, 2)] {
        let (_, left) = common::block_generators(&[(da, db)]);
        let a_left = span_closure(da * db, &left, true, &tol).unwrap();
        // 1 ⊗ M_db is M_db ⊗ 1_da after swapping the factors
        let right: Vec<CMatrix> = (0..db)
            .flat_map(|i| (0..db).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut e = CMatrix::zeros(db, db);
                e[(i, j)] = gns_entropy::linalg::ONE;
                CMatrix::identity(da, da).kronecker(&e)
            })
            .collect();
        let a_right = span_closure(da * db, &right, true, &tol).unwrap();
        for k in 0..4 {
            let omega = if k % 2 == 0 {
                AlgebraState::pure(random_unit_vector(da * db, &mut rng), &tol).unwrap()
            } else {
                AlgebraState::mixed(random_density(da * db, 1 + k, &mut rng), &tol).unwrap()
            };
            let rho_a = partial_trace(&omega, (da, db), Subsystem::A).unwrap();
            let rho_b = partial_trace(&omega, (da, db), Subsystem::B).unwrap();
            assert!((entropy(&a_left, &omega) - entropy_of_density(&rho_a, &tol)).abs() < 1e-9);
            assert!((entropy(&a_right, &omega) - entropy_of_density(&rho_b, &tol)).abs() < 1e-9);
        }
    }
}

#[test]
fn left_location_matches_sector_schmidt_decomposition() {
    // On two fermions in (a₁, a₂, b₁, b₂) the left algebra sees the a-occupation
    // sectors separately and, inside N_a = 1, the a-mode of a distinguishable pair.
    let tol = Tolerance::default();
    let s = example_generators(Preset::Ex4Left, &tol).unwrap();
    let ctx = FockContext::new(4, Statistics::Fermionic, 2).unwrap();
    let idx = |l: [usize; 2]| ctx.index_of(&l).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..20 {
        let psi = random_unit_vector(6, &mut rng);
        let c = CMatrix::from_fn(2, 2, |i, j| psi[idx([i, 2 + j])]);
        let mut p = squared_singular_values(c);
        p.push(psi[idx([0, 1])].norm_sqr());
        p.push(psi[idx([2, 3])].norm_sqr());
        let omega = AlgebraState::pure(psi, &tol).unwrap();
        assert!((entropy(&s.algebra, &omega) - shannon(&p)).abs() < 1e-9);
    }
}

#[test]
fn boson_blocks_match_projection_weights() {
    let tol = Tolerance::default();
    let s = example_generators(Preset::Ex5Bosons, &tol).unwrap();
    let ctx = FockContext::new(3, Statistics::Bosonic, 2).unwrap();
    let blocks: [&[[usize; 2]]; 3] = [&[[0, 0], [0, 1], [1, 1]], &[[0, 2], [1, 2]], &[[2, 2]]];
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..20 {
        let psi = random_unit_vector(6, &mut rng);
        let p: Vec<f64> = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|l| psi[ctx.index_of(l).unwrap()].norm_sqr())
                    .sum()
            })
            .collect();
        let omega = AlgebraState::pure(psi, &tol).unwrap();
        assert!((entropy(&s.algebra, &omega) - shannon(&p)).abs() < 1e-9);
    }
}

#[test]
fn choice2_matches_projection_weights() {
    let tol = Tolerance::default();
    let s = example_generators(Preset::Ex3Choice2, &tol).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    for _ in 0..20 {
        // components along f¹ = e₂∧e₃, f² = −e₁∧e₃, f³ = e₁∧e₂
        let psi = random_unit_vector(3, &mut rng);
        let p = [psi[2].norm_sqr() + psi[1].norm_sqr(), psi[0].norm_sqr()];
        let omega = AlgebraState::pure(psi, &tol).unwrap();
        assert!((entropy(&s.algebra, &omega) - shannon(&p)).abs() < 1e-9);
    }
}

#[test]
fn slater_states_have_ln2_partial_trace_but_zero_restricted_entropy() {
    let tol = Tolerance::default();
    let full = example_generators(Preset::Ex3Choice1, &tol).unwrap();
    let ctx = FockContext::new(3, Statistics::Fermionic, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for _ in 0..10 {
        let v = random_unit_vector(3, &mut rng);
        let omega = AlgebraState::pure(v.clone(), &tol).unwrap();
        assert!(entropy(&full.algebra, &omega) < 1e-9);
        let tensor = AlgebraState::pure(ctx.to_tensor(&v), &tol).unwrap();
        let rho = partial_trace(&tensor, (3, 3), Subsystem::B).unwrap();
        assert!((entropy_of_density(&rho, &tol) - std::f64::consts::LN_2).abs() < 1e-9);
    }
}

#[test]
fn entropy_is_unitarily_invariant() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(67);
    for preset in Preset::ALL {
        let s = example_generators(preset, &tol).unwrap();
        let omega = s.state(&Default::default(), &tol).unwrap();
        let u = random_unitary(preset.ambient_dim(), &mut rng);
        let rotated = s.algebra.conjugated(&u, &tol).unwrap();
        let before = entropy(&s.algebra, &omega);
        let after = entropy(&rotated, &omega.conjugated(&u));
        assert!(
            (before - after).abs() < 1e-9,
            "{preset}: {before} vs {after}"
        );
    }
}

#[test]
fn full_matrix_algebra_sees_the_global_state() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let (_, gens) = common::block_generators(&[(4, 1)]);
    let a = span_closure(4, &gens, true, &tol).unwrap();
    let rho = random_density(4, 3, &mut rng);
    let omega = AlgebraState::mixed(rho.clone(), &tol).unwrap();
    assert!((entropy(&a, &omega) - entropy_of_density(&rho, &tol)).abs() < 1e-9);
    let psi: CVector = random_unit_vector(4, &mut rng);
    assert!(entropy(&a, &AlgebraState::pure(psi, &tol).unwrap()) < 1e-9);
}
