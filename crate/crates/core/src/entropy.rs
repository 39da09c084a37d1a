//! Entropy of restricted states.
//!
//! Two independent routes produce the spectrum of the restriction `ω|A₀`:
//! the GNS route (isotypic weights, see [`crate::gns`]) and the Wedderburn
//! route implemented here, which solves for the density element `D ∈ A₀`
//! with `Tr_W(D α) = ω(α)` and reads off its block spectra.

use serde::{Deserialize, Serialize};

use crate::algebra::{wedderburn, OperatorSpan, WedderburnData};
use crate::error::{Error, Result};
use crate::gns::{build_gns, gns_density, isotypic_decompose, AlgebraState, IsotypicComponent};
use crate::linalg::{
    eigvalsh, hermitian_part, hermiticity_residual, projection_range, CMatrix, CVector, Tolerance,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    Natural,
    Two,
}

impl LogBase {
    /// Converts an entropy in nats to this base.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            LogBase::Natural => nats,
            LogBase::Two => nats / std::f64::consts::LN_2,
        }
    }
}

/// Nonnegative weights of a density operator's spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralState {
    weights: Vec<f64>,
    log_base: LogBase,
}

impl SpectralState {
    /// Weights are sorted descending; nonpositive entries are discarded.
    pub fn new(mut weights: Vec<f64>, log_base: LogBase) -> Self {
        weights.retain(|&w| w > 0.0);
        weights.sort_by(|a, b| b.total_cmp(a));
        Self { weights, log_base }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn log_base(&self) -> LogBase {
        self.log_base
    }

    pub fn in_base(mut self, log_base: LogBase) -> Self {
        self.log_base = log_base;
        self
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// `−Σ λ log λ` in the spectrum's log base, with `0 log 0 = 0`.
pub fn von_neumann_entropy(s: &SpectralState) -> f64 {
    let nats: f64 = s
        .weights
        .iter()
        .filter(|&&w| w > 0.0)
        .map(|&w| -w * w.ln())
        .sum();
    s.log_base.from_nats(nats.max(0.0))
}

/// Largest elementwise deviation between two spectra compared as sorted
/// multisets, the shorter one padded with zeros.
pub fn spectrum_distance(a: &[f64], b: &[f64]) -> f64 {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(|p, q| q.total_cmp(p));
    y.sort_by(|p, q| q.total_cmp(p));
    let n = x.len().max(y.len());
    x.resize(n, 0.0);
    y.resize(n, 0.0);
    x.iter()
        .zip(&y)
        .map(|(p, q)| (p - q).abs())
        .fold(0.0, f64::max)
}

/// Eigenvalues of the restricted state inside one Wedderburn block.
#[derive(Debug, Clone, Serialize)]
pub struct BlockSpectrum {
    pub block_rank: usize,
    pub multiplicity: usize,
    /// `n_k` eigenvalues, descending; ambient multiplicity divided out.
    pub eigenvalues: Vec<f64>,
}

impl BlockSpectrum {
    pub fn weight(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

/// Hermitian `D ∈ A₀` representing the restricted state under the block trace.
#[derive(Debug, Clone)]
pub struct DensityElement {
    pub matrix: CMatrix,
    pub coords: CVector,
    pub blocks: Vec<BlockSpectrum>,
}

impl DensityElement {
    pub fn spectrum(&self, tol: &Tolerance) -> SpectralState {
        let weights = self
            .blocks
            .iter()
            .flat_map(|b| b.eigenvalues.iter().copied())
            .filter(|&w| w > tol.spectrum)
            .collect();
        SpectralState::new(weights, LogBase::Natural)
    }

    /// `max_a |Tr_W(D B_a) − ω(B_a)|`.
    pub fn trace_residual(
        &self,
        a0: &OperatorSpan,
        w: &WedderburnData,
        omega: &AlgebraState,
    ) -> f64 {
        a0.basis()
            .iter()
            .map(|b| (w.block_trace(&(&self.matrix * b)) - omega.evaluate(b)).norm())
            .fold(0.0, f64::max)
    }

    /// GNS dimension implied by the block spectra: `Σ_k n_k · rank(D_k)`.
    pub fn implied_gns_dim(&self, tol: &Tolerance) -> usize {
        self.blocks
            .iter()
            .map(|b| b.block_rank * b.eigenvalues.iter().filter(|&&e| e > tol.spectrum).count())
            .sum()
    }
}

/// Solves `Tr_W(B_a† D) = ω(B_a†)` for `D` in the span and splits its spectrum by block.
pub fn density_element(
    a0: &OperatorSpan,
    w: &WedderburnData,
    omega: &AlgebraState,
    tol: &Tolerance,
) -> Result<DensityElement> {
    if a0.ambient_dim() != omega.dim() {
        return Err(Error::DimensionMismatch {
            expected: a0.ambient_dim(),
            found: omega.dim(),
        });
    }
    let basis = a0.basis();
    let n = basis.len();
    let mut m = CMatrix::zeros(n, n);
    for a in 0..n {
        let adj = basis[a].adjoint();
        for b in 0..n {
            m[(a, b)] = w.block_trace(&(&adj * &basis[b]));
        }
    }
    let rhs = CVector::from_iterator(n, basis.iter().map(|b| omega.evaluate(b).conj()));
    let pivot = eigvalsh(&m).first().copied().unwrap_or(0.0);
    let top = eigvalsh(&m).last().copied().unwrap_or(0.0);
    if pivot <= tol.rank * top.max(f64::MIN_POSITIVE) {
        return Err(Error::SingularSystem(pivot));
    }
    let coords = m.lu().solve(&rhs).ok_or(Error::SingularSystem(pivot))?;
    let raw = a0.element(&coords);
    if hermiticity_residual(&raw) > tol.state {
        return Err(Error::Numerical(format!(
            "density element is not Hermitian (residual {:.3e})",
            hermiticity_residual(&raw)
        )));
    }
    let matrix = hermitian_part(&raw);

    let mut blocks = Vec::with_capacity(w.len());
    for block in &w.blocks {
        let u = projection_range(&block.projection);
        let local = u.adjoint() * &matrix * &u;
        let mut values = eigvalsh(&local);
        values.reverse();
        let mult = block.multiplicity;
        if !values.len().is_multiple_of(mult) {
            return Err(Error::NotIntegral {
                what: "block eigenvalue count / multiplicity",
                value: values.len() as f64 / mult as f64,
            });
        }
        let mut eigenvalues = Vec::with_capacity(values.len() / mult);
        for chunk in values.chunks(mult) {
            let mean = chunk.iter().sum::<f64>() / mult as f64;
            let spread = chunk.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
            if spread > tol.oracle {
                return Err(Error::NotIntegral {
                    what: "eigenvalue multiplicity within block",
                    value: spread,
                });
            }
            if mean < -tol.state {
                return Err(Error::Numerical(format!(
                    "density element has eigenvalue {mean:.3e}"
                )));
            }
            eigenvalues.push(mean);
        }
        blocks.push(BlockSpectrum {
            block_rank: block.block_rank,
            multiplicity: mult,
            eigenvalues,
        });
    }
    Ok(DensityElement {
        matrix,
        coords,
        blocks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Reduced density matrix on the kept subsystem of `ℂ^{dA} ⊗ ℂ^{dB}`.
/// Basis index of `|i⟩⊗|j⟩` is `i·dB + j`.
pub fn partial_trace(
    state: &AlgebraState,
    dims: (usize, usize),
    keep: Subsystem,
) -> Result<CMatrix> {
    let (da, db) = dims;
    if da * db != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: da * db,
            found: state.dim(),
        });
    }
    let rho = state.density_matrix();
    let out = match keep {
        Subsystem::A => CMatrix::from_fn(da, da, |i, k| {
            (0..db).map(|j| rho[(i * db + j, k * db + j)]).sum()
        }),
        Subsystem::B => CMatrix::from_fn(db, db, |j, l| {
            (0..da).map(|i| rho[(i * db + j, i * db + l)]).sum()
        }),
    };
    Ok(out)
}

/// Entropy of a density matrix from its eigenvalues, dropping `|λ| ≤ tol.spectrum`.
pub fn density_spectrum(rho: &CMatrix, tol: &Tolerance) -> SpectralState {
    let weights = eigvalsh(rho)
        .into_iter()
        .filter(|&v| v > tol.spectrum)
        .collect();
    SpectralState::new(weights, LogBase::Natural)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Gns,
    Wedderburn,
    #[default]
    Both,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gns" => Ok(Method::Gns),
            "wedderburn" => Ok(Method::Wedderburn),
            "both" => Ok(Method::Both),
            other => Err(Error::Scenario(format!("unknown method `{other}`"))),
        }
    }
}

/// Outcome of restricting a state to a subalgebra.
#[derive(Debug, Clone, Serialize)]
pub struct RestrictionReport {
    pub method: Method,
    pub entropy_nats: f64,
    pub entropy_bits: f64,
    /// Spectrum of the restricted state (GNS route when it ran).
    pub spectrum: Vec<f64>,
    pub algebra_dim: usize,
    pub gns_dim: usize,
    pub null_dim: usize,
    pub pure: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutant_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<IsotypicComponent>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<BlockSpectrum>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wedderburn_spectrum: Option<Vec<f64>>,
    /// Max deviation between the two spectra when both routes ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_deviation: Option<f64>,
    /// True when both routes ran and agreed; absent for a single route.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub methods_agree: Option<bool>,
}

/// Entropy of `ω|A₀` by the requested route(s).
///
/// With [`Method::Both`] the two spectra must agree within `tol.oracle`,
/// otherwise [`Error::OracleDisagreement`] is returned.
pub fn restriction_entropy(
    a0: &OperatorSpan,
    omega: &AlgebraState,
    method: Method,
    seed: u64,
    tol: &Tolerance,
) -> Result<RestrictionReport> {
    restriction_entropy_with(a0, None, omega, method, seed, tol)
}

/// As [`restriction_entropy`], reusing a precomputed Wedderburn decomposition of `a0`.
pub fn restriction_entropy_with(
    a0: &OperatorSpan,
    blocks: Option<&WedderburnData>,
    omega: &AlgebraState,
    method: Method,
    seed: u64,
    tol: &Tolerance,
) -> Result<RestrictionReport> {
    let mut report = RestrictionReport {
        method,
        entropy_nats: 0.0,
        entropy_bits: 0.0,
        spectrum: Vec::new(),
        algebra_dim: a0.len(),
        gns_dim: 0,
        null_dim: 0,
        pure: false,
        commutant_dim: None,
        components: None,
        blocks: None,
        wedderburn_spectrum: None,
        oracle_deviation: None,
        methods_agree: None,
    };

    let gns_spectrum = if matches!(method, Method::Gns | Method::Both) {
        let space = build_gns(a0, omega, tol)?;
        let iso = isotypic_decompose(&space, seed, tol)?;
        report.gns_dim = space.dim();
        report.null_dim = space.null_dim();
        report.commutant_dim = Some(iso.commutant_dim);
        let spec = gns_density(&iso, tol);
        report.components = Some(iso.components);
        Some(spec)
    } else {
        None
    };

    let wedderburn_spectrum = if matches!(method, Method::Wedderburn | Method::Both) {
        let owned;
        let w = match blocks {
            Some(w) => w,
            None => {
                owned = wedderburn(a0, seed, tol)?;
                &owned
            }
        };
        let d = density_element(a0, w, omega, tol)?;
        if gns_spectrum.is_none() {
            report.gns_dim = d.implied_gns_dim(tol);
            report.null_dim = a0.len() - report.gns_dim;
        }
        let spec = d.spectrum(tol);
        report.blocks = Some(d.blocks);
        Some(spec)
    } else {
        None
    };

    if let (Some(g), Some(wd)) = (&gns_spectrum, &wedderburn_spectrum) {
        let dev = spectrum_distance(g.weights(), wd.weights());
        report.oracle_deviation = Some(dev);
        report.methods_agree = Some(dev <= tol.oracle);
        if dev > tol.oracle {
            return Err(Error::OracleDisagreement(dev));
        }
    }

    let spec = gns_spectrum
        .clone()
        .or_else(|| wedderburn_spectrum.clone())
        .expect("at least one route ran");
    report.entropy_nats = von_neumann_entropy(&spec);
    report.entropy_bits = LogBase::Two.from_nats(report.entropy_nats);
    report.pure = report.entropy_nats < tol.state;
    report.spectrum = spec.weights().to_vec();
    if gns_spectrum.is_some() {
        report.wedderburn_spectrum = wedderburn_spectrum.map(|s| s.weights().to_vec());
    }
    Ok(report)
}

/// Convenience: spectrum of a reduced density matrix as an entropy in nats.
pub fn entropy_of_density(rho: &CMatrix, tol: &Tolerance) -> f64 {
    von_neumann_entropy(&density_spectrum(rho, tol))
}
