//! Ready-made (subalgebra, state family) pairs for the worked examples.
//!
//! | preset        | ambient space              | subalgebra                                   | state family         |
//! |---------------|----------------------------|----------------------------------------------|----------------------|
//! | `ex1_m2`      | `ℂ²`                       | all of `M₂(ℂ)`                               | `diag(λ, 1−λ)`        |
//! | `ex2_bell`    | `ℂ² ⊗ ℂ²`                  | `σ_μ ⊗ 1`                                    | singlet              |
//! | `ex3_choice1` | `Λ²ℂ³`                     | coproduct image of `M₃(ℂ)`                   | `cos θ f¹ + sin θ f³` |
//! | `ex3_choice2` | `Λ²ℂ³`                     | `|f^i⟩⟨f^j|`, `i, j ∈ {1, 2}`, plus unit     | `cos θ f¹ + sin θ f³` |
//! | `ex4_left`    | `Λ²ℂ⁴`, modes `(a₁,a₂,b₁,b₂)` | `1, T₁, T₂, T₃, n₁₂, N_a`                  | `cos θ a₁†b₂† + sin θ a₂†b₁†` |
//! | `ex5_bosons`  | `Sym²ℂ³`                   | block matrices on `3 ⊕ 2 ⊕ 1`                | `(sin θ cos φ, sin θ sin φ, cos θ)` |

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{span_closure, OperatorSpan};
use crate::error::{Error, Result};
use crate::fock::{car_ladders, coproduct_embed, FockContext, Statistics};
use crate::gns::AlgebraState;
use crate::linalg::{c, r, CMatrix, CVector, Tolerance, ONE, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Preset {
    Ex1M2,
    Ex2Bell,
    Ex3Choice1,
    Ex3Choice2,
    Ex4Left,
    Ex5Bosons,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::Ex1M2,
        Preset::Ex2Bell,
        Preset::Ex3Choice1,
        Preset::Ex3Choice2,
        Preset::Ex4Left,
        Preset::Ex5Bosons,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Ex1M2 => "ex1_m2",
            Preset::Ex2Bell => "ex2_bell",
            Preset::Ex3Choice1 => "ex3_choice1",
            Preset::Ex3Choice2 => "ex3_choice2",
            Preset::Ex4Left => "ex4_left",
            Preset::Ex5Bosons => "ex5_bosons",
        }
    }

    /// Parameters of the state family with their default values.
    pub fn parameters(self) -> &'static [(&'static str, f64)] {
        match self {
            Preset::Ex1M2 => &[("lambda", 0.3)],
            Preset::Ex2Bell => &[],
            Preset::Ex3Choice1 | Preset::Ex3Choice2 | Preset::Ex4Left => &[("theta", 0.6)],
            Preset::Ex5Bosons => &[("theta", 1.1), ("phi", 0.4)],
        }
    }

    pub fn ambient_dim(self) -> usize {
        match self {
            Preset::Ex1M2 => 2,
            Preset::Ex2Bell => 4,
            Preset::Ex3Choice1 | Preset::Ex3Choice2 => 3,
            Preset::Ex4Left | Preset::Ex5Bosons => 6,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

/// Parameter values keyed by name; missing names take the preset default.
pub type Params = BTreeMap<String, f64>;

/// A preset's subalgebra together with its state family.
#[derive(Debug, Clone)]
pub struct PresetScenario {
    pub preset: Preset,
    pub generators: Vec<CMatrix>,
    pub algebra: OperatorSpan,
}

impl PresetScenario {
    /// Resolves `params` against the preset defaults, rejecting unknown names.
    pub fn resolve(&self, params: &Params) -> Result<Params> {
        let known = self.preset.parameters();
        for name in params.keys() {
            if !known.iter().any(|(k, _)| k == name) {
                return Err(Error::UnknownParameter(name.clone()));
            }
        }
        Ok(known
            .iter()
            .map(|&(k, v)| (k.to_string(), params.get(k).copied().unwrap_or(v)))
            .collect())
    }

    pub fn state(&self, params: &Params, tol: &Tolerance) -> Result<AlgebraState> {
        let p = self.resolve(params)?;
        let get = |k: &str| p[k];
        match self.preset {
            Preset::Ex1M2 => {
                let lambda = get("lambda");
                if !(0.0..=1.0).contains(&lambda) {
                    return Err(Error::OutOfRange(format!(
                        "lambda = {lambda} not in [0, 1]"
                    )));
                }
                let rho =
                    CMatrix::from_diagonal(&CVector::from_vec(vec![r(lambda), r(1.0 - lambda)]));
                AlgebraState::mixed(rho, tol)
            }
            Preset::Ex2Bell => AlgebraState::pure(bell_singlet(), tol),
            Preset::Ex3Choice1 | Preset::Ex3Choice2 => {
                let theta = get("theta");
                AlgebraState::pure(
                    f_vector(1) * r(theta.cos()) + f_vector(3) * r(theta.sin()),
                    tol,
                )
            }
            Preset::Ex4Left => {
                let theta = get("theta");
                let ctx = FockContext::new(4, Statistics::Fermionic, 2)?;
                // a₁† b₂† = modes (1, 4); a₂† b₁† = modes (2, 3)
                let psi = ctx.basis_vector(&[0, 3]).expect("label") * r(theta.cos())
                    + ctx.basis_vector(&[1, 2]).expect("label") * r(theta.sin());
                AlgebraState::pure(psi, tol)
            }
            Preset::Ex5Bosons => {
                let (theta, phi) = (get("theta"), get("phi"));
                let [x, y, z] = boson_amplitudes(theta, phi);
                let ctx = boson_context();
                let psi = ctx.basis_vector(&[0, 1]).expect("label") * r(x)
                    + ctx.basis_vector(&[0, 2]).expect("label") * r(y)
                    + ctx.basis_vector(&[2, 2]).expect("label") * r(z);
                AlgebraState::pure(psi, tol)
            }
        }
    }
}

/// Amplitudes of `e₁∨e₂`, `e₁∨e₃`, `e₃∨e₃` for the two-boson family.
pub fn boson_amplitudes(theta: f64, phi: f64) -> [f64; 3] {
    [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ]
}

fn boson_context() -> FockContext {
    FockContext::new(3, Statistics::Bosonic, 2).expect("fixed sector")
}

/// `(|+−⟩ − |−+⟩)/√2` on `ℂ²⊗ℂ²`, index `2i + j`.
pub fn bell_singlet() -> CVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CVector::from_vec(vec![ZERO, r(s), r(-s), ZERO])
}

/// `f^k = e_i ∧ e_j` with `(i, j, k)` a cyclic permutation of `(1, 2, 3)`,
/// as a vector in the wedge basis `(e₁∧e₂, e₁∧e₃, e₂∧e₃)`.
pub fn f_vector(k: usize) -> CVector {
    match k {
        1 => CVector::from_vec(vec![ZERO, ZERO, ONE]),
        2 => CVector::from_vec(vec![ZERO, -ONE, ZERO]),
        3 => CVector::from_vec(vec![ONE, ZERO, ZERO]),
        _ => panic!("f-basis index must be 1, 2 or 3"),
    }
}

fn outer(u: &CVector, v: &CVector) -> CMatrix {
    u * v.adjoint()
}

fn matrix_unit(dim: usize, i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim, dim);
    m[(i, j)] = ONE;
    m
}

fn pauli() -> [CMatrix; 4] {
    [
        CMatrix::identity(2, 2),
        CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        CMatrix::from_row_slice(2, 2, &[ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]),
        CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
    ]
}

/// `σ_μ ⊗ 1₂` for `μ = 0..3`.
pub fn local_paulis() -> Vec<CMatrix> {
    pauli()
        .iter()
        .map(|s| s.kronecker(&CMatrix::identity(2, 2)))
        .collect()
}

/// Left-location one-particle observables `1, T₁, T₂, T₃, n₁₂, N_a` on the
/// two-fermion sector of modes `(a₁, a₂, b₁, b₂)`.
pub fn left_observables() -> Result<Vec<CMatrix>> {
    let ladders = car_ladders(4)?;
    let ctx = FockContext::new(4, Statistics::Fermionic, 2)?;
    let iso = ladders.sector_isometry(&ctx)?;
    let compress = |x: CMatrix| iso.adjoint() * x * &iso;
    let (a1, a2) = (ladders.annihilation(0), ladders.annihilation(1));
    let (a1d, a2d) = (ladders.creation(0), ladders.creation(1));
    let hop12 = &a1d * a2;
    let hop21 = &a2d * a1;
    let n1 = &a1d * a1;
    let n2 = &a2d * a2;
    let t1 = (&hop12 + &hop21) * r(0.5);
    let t2 = (&hop12 - &hop21) * c(0.0, -0.5);
    let t3 = (&n1 - &n2) * r(0.5);
    let n12 = &n1 * &n2;
    let na = &n1 + &n2;
    Ok(vec![
        CMatrix::identity(6, 6),
        compress(t1),
        compress(t2),
        compress(t3),
        compress(n12),
        compress(na),
    ])
}

/// `|u⟩⟨v|` for `u, v` in the same summand of `Sym²ℂ³ = 3 ⊕ 2 ⊕ 1`.
pub fn boson_block_generators() -> Vec<CMatrix> {
    let ctx = boson_context();
    let blocks: [&[[usize; 2]]; 3] = [&[[0, 0], [0, 1], [1, 1]], &[[0, 2], [1, 2]], &[[2, 2]]];
    let mut gens = Vec::new();
    for block in blocks {
        for u in block {
            for v in block {
                let bu = ctx.basis_vector(u).expect("label");
                let bv = ctx.basis_vector(v).expect("label");
                gens.push(outer(&bu, &bv));
            }
        }
    }
    gens
}

/// The exact generator set and closed span of a preset.
pub fn example_generators(preset: Preset, tol: &Tolerance) -> Result<PresetScenario> {
    let (dim, generators, include_unit) = match preset {
        Preset::Ex1M2 => {
            // order e11, e12, e21, e22
            let g = (0..2)
                .flat_map(|i| (0..2).map(move |j| matrix_unit(2, i, j)))
                .collect();
            (2, g, true)
        }
        Preset::Ex2Bell => (4, local_paulis(), true),
        Preset::Ex3Choice1 => {
            let ctx = FockContext::new(3, Statistics::Fermionic, 2)?;
            let mut g = Vec::new();
            for i in 0..3 {
                for j in 0..3 {
                    g.push(coproduct_embed(&matrix_unit(3, i, j), &ctx)?);
                }
            }
            (3, g, true)
        }
        Preset::Ex3Choice2 => {
            let mut g = Vec::new();
            for i in 1..=2 {
                for j in 1..=2 {
                    g.push(outer(&f_vector(i), &f_vector(j)));
                }
            }
            (3, g, true)
        }
        Preset::Ex4Left => (6, left_observables()?, true),
        Preset::Ex5Bosons => (6, boson_block_generators(), true),
    };
    let algebra = span_closure(dim, &generators, include_unit, tol)?;
    Ok(PresetScenario {
        preset,
        generators,
        algebra,
    })
}
