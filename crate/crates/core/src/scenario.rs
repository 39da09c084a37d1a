//! Scenario files, reports, sweeps and the two-boson entropy landscape.
//!
//! A scenario is JSON:
//!
//! ```json
//! {
//!   "ambient_dim": 3,
//!   "algebra": { "preset": "ex3_choice2" },
//!   "state": { "theta": 0.3 },
//!   "method": "both",
//!   "tolerance": { "rank": 1e-10 },
//!   "seed": 7
//! }
//! ```
//!
//! `algebra` holds either `preset` or `generators` (row-major matrices of
//! `[re, im]` pairs, optionally with `"include_unit": false`). `state` holds
//! `vector`, `density`, or preset parameters.

use std::collections::BTreeMap;
use std::f64::consts::LN_2;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{span_closure, wedderburn, OperatorSpan, WedderburnData};
use crate::entropy::{restriction_entropy_with, LogBase, Method, RestrictionReport};
use crate::error::{Error, Result};
use crate::gns::AlgebraState;
use crate::linalg::{c, CMatrix, CVector, Tolerance};
use crate::presets::{boson_amplitudes, example_generators, Params, Preset, PresetScenario};

/// `[re, im]`.
pub type ComplexPair = [f64; 2];

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct AlgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<Vec<ComplexPair>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub include_unit: Option<bool>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct StateSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<ComplexPair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<Vec<Vec<ComplexPair>>>,
    /// Preset parameters such as `theta`, `phi`, `lambda`.
    #[serde(flatten)]
    pub params: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ScenarioSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_dim: Option<usize>,
    pub algebra: AlgebraSpec,
    #[serde(default)]
    pub state: StateSpec,
    #[serde(default)]
    pub method: Method,
    #[serde(default)]
    pub tolerance: Tolerance,
    #[serde(default)]
    pub seed: u64,
}

impl ScenarioSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn for_preset(preset: Preset, params: Params) -> Self {
        Self {
            ambient_dim: Some(preset.ambient_dim()),
            algebra: AlgebraSpec {
                preset: Some(preset.name().to_string()),
                ..Default::default()
            },
            state: StateSpec {
                params,
                ..Default::default()
            },
            ..Default::default()
        }
    }

    pub fn preset(&self) -> Result<Option<Preset>> {
        self.algebra.preset.as_deref().map(str::parse).transpose()
    }
}

/// CLI-level overrides applied on top of a scenario file.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub method: Option<Method>,
    pub seed: Option<u64>,
    /// Replaces the relative rank cut.
    pub rank_tol: Option<f64>,
    pub log_base: LogBase,
}

impl RunOptions {
    fn apply(&self, spec: &ScenarioSpec) -> (Method, u64, Tolerance) {
        let mut tol = spec.tolerance;
        if let Some(rank) = self.rank_tol {
            tol.rank = rank;
        }
        (
            self.method.unwrap_or(spec.method),
            self.seed.unwrap_or(spec.seed),
            tol,
        )
    }
}

/// One row of the Wedderburn block table.
#[derive(Debug, Clone, Serialize)]
pub struct BlockRow {
    pub n: usize,
    pub m: usize,
    pub eigenvalues: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntropyReport {
    pub algebra: String,
    pub method: Method,
    pub seed: u64,
    pub log_base: LogBase,
    /// Entropy in `log_base`.
    pub entropy: f64,
    pub entropy_nats: f64,
    pub entropy_bits: f64,
    pub spectrum: Vec<f64>,
    pub blocks: Vec<BlockRow>,
    pub algebra_dim: usize,
    pub gns_dim: usize,
    pub null_dim: usize,
    pub pure: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutant_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub methods_agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_deviation: Option<f64>,
}

impl EntropyReport {
    fn new(algebra: String, seed: u64, log_base: LogBase, r: RestrictionReport) -> Self {
        let blocks = r
            .blocks
            .unwrap_or_default()
            .into_iter()
            .map(|b| BlockRow {
                n: b.block_rank,
                m: b.multiplicity,
                eigenvalues: b.eigenvalues,
            })
            .collect();
        Self {
            algebra,
            method: r.method,
            seed,
            log_base,
            entropy: log_base.from_nats(r.entropy_nats),
            entropy_nats: r.entropy_nats,
            entropy_bits: r.entropy_bits,
            spectrum: r.spectrum,
            blocks,
            algebra_dim: r.algebra_dim,
            gns_dim: r.gns_dim,
            null_dim: r.null_dim,
            pure: r.pure,
            commutant_dim: r.commutant_dim,
            methods_agree: r.methods_agree,
            oracle_deviation: r.oracle_deviation,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn matrix_from_pairs(rows: &[Vec<ComplexPair>], dim: usize, what: &str) -> Result<CMatrix> {
    if rows.len() != dim || rows.iter().any(|row| row.len() != dim) {
        return Err(Error::Scenario(format!("{what} must be {dim}x{dim}")));
    }
    Ok(CMatrix::from_fn(dim, dim, |i, j| {
        c(rows[i][j][0], rows[i][j][1])
    }))
}

fn vector_from_pairs(v: &[ComplexPair], dim: usize) -> Result<CVector> {
    if v.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: v.len(),
        });
    }
    Ok(CVector::from_iterator(dim, v.iter().map(|p| c(p[0], p[1]))))
}

/// A scenario with its algebra built, ready to evaluate states on.
#[derive(Debug, Clone)]
pub struct Prepared {
    label: String,
    preset: Option<PresetScenario>,
    algebra: OperatorSpan,
    blocks: Option<WedderburnData>,
    method: Method,
    seed: u64,
    tol: Tolerance,
    log_base: LogBase,
}

impl Prepared {
    pub fn new(spec: &ScenarioSpec, opts: &RunOptions) -> Result<Self> {
        let (method, seed, tol) = opts.apply(spec);
        let a = &spec.algebra;
        let (label, preset, algebra) = match (&a.preset, &a.generators) {
            (Some(_), Some(_)) | (None, None) => {
                return Err(Error::Scenario(
                    "algebra needs exactly one of `preset` and `generators`".into(),
                ))
            }
            (Some(name), None) => {
                let p: Preset = name.parse()?;
                if let Some(d) = spec.ambient_dim {
                    if d != p.ambient_dim() {
                        return Err(Error::DimensionMismatch {
                            expected: p.ambient_dim(),
                            found: d,
                        });
                    }
                }
                if a.include_unit == Some(false) {
                    return Err(Error::Scenario("presets always include the unit".into()));
                }
                let ps = example_generators(p, &tol)?;
                let algebra = ps.algebra.clone();
                (p.name().to_string(), Some(ps), algebra)
            }
            (None, Some(gens)) => {
                let dim = spec.ambient_dim.ok_or_else(|| {
                    Error::Scenario("`ambient_dim` is required with explicit generators".into())
                })?;
                let mats = gens
                    .iter()
                    .enumerate()
                    .map(|(k, g)| matrix_from_pairs(g, dim, &format!("generator {k}")))
                    .collect::<Result<Vec<_>>>()?;
                let algebra = span_closure(dim, &mats, a.include_unit.unwrap_or(true), &tol)?;
                ("custom".to_string(), None, algebra)
            }
        };
        let blocks = match method {
            Method::Gns => None,
            Method::Wedderburn | Method::Both => Some(wedderburn(&algebra, seed, &tol)?),
        };
        Ok(Self {
            label,
            preset,
            algebra,
            blocks,
            method,
            seed,
            tol,
            log_base: opts.log_base,
        })
    }

    pub fn algebra(&self) -> &OperatorSpan {
        &self.algebra
    }

    pub fn blocks(&self) -> Option<&WedderburnData> {
        self.blocks.as_ref()
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    pub fn preset(&self) -> Option<Preset> {
        self.preset.as_ref().map(|p| p.preset)
    }

    /// Builds the state described by `state`.
    pub fn state(&self, state: &StateSpec) -> Result<AlgebraState> {
        let dim = self.algebra.ambient_dim();
        let explicit = state.vector.is_some() as usize + state.density.is_some() as usize;
        if explicit > 1 || (explicit == 1 && !state.params.is_empty()) {
            return Err(Error::Scenario(
                "state needs exactly one of `vector`, `density` or parameters".into(),
            ));
        }
        if let Some(v) = &state.vector {
            return AlgebraState::pure(vector_from_pairs(v, dim)?, &self.tol);
        }
        if let Some(rho) = &state.density {
            return AlgebraState::mixed(matrix_from_pairs(rho, dim, "density")?, &self.tol);
        }
        match &self.preset {
            Some(p) => p.state(&state.params, &self.tol),
            None => Err(Error::Scenario(
                "explicit generators need a `vector` or `density` state".into(),
            )),
        }
    }

    pub fn evaluate(&self, omega: &AlgebraState) -> Result<EntropyReport> {
        let r = restriction_entropy_with(
            &self.algebra,
            self.blocks.as_ref(),
            omega,
            self.method,
            self.seed,
            &self.tol,
        )?;
        Ok(EntropyReport::new(
            self.label.clone(),
            self.seed,
            self.log_base,
            r,
        ))
    }

    pub fn evaluate_params(&self, params: &Params) -> Result<EntropyReport> {
        let state = StateSpec {
            params: params.clone(),
            ..Default::default()
        };
        self.evaluate(&self.state(&state)?)
    }
}

pub fn run(spec: &ScenarioSpec, opts: &RunOptions) -> Result<EntropyReport> {
    let prepared = Prepared::new(spec, opts)?;
    prepared.evaluate(&prepared.state(&spec.state)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub param: f64,
    pub entropy_nats: f64,
    pub entropy_bits: f64,
    pub gns_dim: usize,
    pub null_dim: usize,
}

/// `steps` evenly spaced points from `from` to `to`, both included.
/// A zero-width range gives a single point.
pub fn linspace(from: f64, to: f64, steps: usize) -> Vec<f64> {
    if from == to || steps == 1 {
        return vec![from];
    }
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                to
            } else {
                from + (to - from) * (i as f64 / last)
            }
        })
        .collect()
}

/// Varies one preset parameter, holding the others at their scenario values.
pub fn sweep(
    spec: &ScenarioSpec,
    opts: &RunOptions,
    param: &str,
    from: f64,
    to: f64,
    steps: usize,
) -> Result<Vec<SweepRow>> {
    if steps == 0 {
        return Err(Error::OutOfRange("sweep needs at least one step".into()));
    }
    if !from.is_finite() || !to.is_finite() {
        return Err(Error::OutOfRange("sweep bounds must be finite".into()));
    }
    let prepared = Prepared::new(spec, opts)?;
    let preset = prepared
        .preset()
        .ok_or_else(|| Error::Scenario("sweeps need a preset algebra".into()))?;
    if !preset.parameters().iter().any(|(k, _)| *k == param) {
        return Err(Error::UnknownParameter(param.to_string()));
    }
    if spec.state.vector.is_some() || spec.state.density.is_some() {
        return Err(Error::Scenario(
            "sweeps take the state from preset parameters".into(),
        ));
    }
    linspace(from, to, steps)
        .into_par_iter()
        .map(|x| {
            let mut params = spec.state.params.clone();
            params.insert(param.to_string(), x);
            let r = prepared.evaluate_params(&params)?;
            Ok(SweepRow {
                param: x,
                entropy_nats: r.entropy_nats,
                entropy_bits: r.entropy_bits,
                gns_dim: r.gns_dim,
                null_dim: r.null_dim,
            })
        })
        .collect()
}

pub fn sweep_csv(param: &str, rows: &[SweepRow]) -> String {
    let mut out = format!("{param},entropy_nats,entropy_bits,gns_dim,null_dim\n");
    for r in rows {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{},{}",
            r.param, r.entropy_nats, r.entropy_bits, r.gns_dim, r.null_dim
        )
        .unwrap();
    }
    out
}

/// Inverse stereographic projection from the north pole `(0, 0, 1)`.
pub fn sphere_point(x: f64, y: f64) -> [f64; 3] {
    let r2 = x * x + y * y;
    [
        2.0 * x / (1.0 + r2),
        2.0 * y / (1.0 + r2),
        (r2 - 1.0) / (r2 + 1.0),
    ]
}

/// `(θ, φ)` of a unit vector.
pub fn sphere_angles(p: [f64; 3]) -> (f64, f64) {
    (p[2].clamp(-1.0, 1.0).acos(), p[1].atan2(p[0]))
}

/// Stereographic image `(sinθ cosφ, sinθ sinφ) / (1 − cosθ)`.
pub fn stereographic(theta: f64, phi: f64) -> (f64, f64) {
    let d = 1.0 - theta.cos();
    (theta.sin() * phi.cos() / d, theta.sin() * phi.sin() / d)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridRow {
    pub x: f64,
    pub y: f64,
    pub entropy: f64,
}

/// Two-boson entropy on a `resolution × resolution` grid over `[−extent, extent]²`.
/// Rows run over `y` fastest.
pub fn grid(resolution: usize, extent: f64, opts: &RunOptions) -> Result<Vec<GridRow>> {
    if resolution < 2 {
        return Err(Error::OutOfRange(format!(
            "grid resolution {resolution} < 2"
        )));
    }
    if !(extent.is_finite() && extent > 0.0) {
        return Err(Error::OutOfRange(format!(
            "grid extent {extent} must be positive"
        )));
    }
    let spec = ScenarioSpec::for_preset(Preset::Ex5Bosons, Params::new());
    let prepared = Prepared::new(&spec, opts)?;
    let axis = linspace(-extent, extent, resolution);
    let points: Vec<(f64, f64)> = axis
        .iter()
        .flat_map(|&x| axis.iter().map(move |&y| (x, y)))
        .collect();
    points
        .into_par_iter()
        .map(|(x, y)| {
            let (theta, phi) = sphere_angles(sphere_point(x, y));
            let params = Params::from([("theta".to_string(), theta), ("phi".to_string(), phi)]);
            let r = prepared.evaluate_params(&params)?;
            Ok(GridRow {
                x,
                y,
                entropy: r.entropy,
            })
        })
        .collect()
}

pub fn grid_csv(rows: &[GridRow]) -> String {
    let mut out = String::from("x,y,entropy\n");
    for r in rows {
        writeln!(out, "{:.16e},{:.16e},{:.16e}", r.x, r.y, r.entropy).unwrap();
    }
    out
}

/// Interior grid points whose entropy is strictly below all eight neighbours.
pub fn grid_local_minima(rows: &[GridRow], resolution: usize) -> Vec<GridRow> {
    let at = |i: usize, j: usize| rows[i * resolution + j].entropy;
    let mut out = Vec::new();
    for i in 1..resolution - 1 {
        for j in 1..resolution - 1 {
            let e = at(i, j);
            let lowest = (i - 1..=i + 1)
                .flat_map(|a| (j - 1..=j + 1).map(move |b| (a, b)))
                .filter(|&(a, b)| (a, b) != (i, j))
                .all(|(a, b)| e < at(a, b));
            if lowest {
                out.push(rows[i * resolution + j]);
            }
        }
    }
    out
}

/// `−Σ p ln p` over the given probabilities, skipping zeros.
pub fn shannon(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum()
}

/// Closed-form entropy of the two-boson family.
pub fn boson_entropy(theta: f64, phi: f64) -> f64 {
    let a = boson_amplitudes(theta, phi);
    shannon(&a.map(|x| x * x))
}

/// Closed-form entropy `−cos²θ ln cos²θ − sin²θ ln sin²θ`.
pub fn two_level_entropy(theta: f64) -> f64 {
    let c2 = theta.cos().powi(2);
    shannon(&[c2, 1.0 - c2])
}

/// One golden assertion of an [`example`] run.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn close(name: impl Into<String>, got: f64, want: f64, tol: f64) -> Self {
        let dev = (got - want).abs();
        Self {
            name: name.into(),
            pass: dev <= tol,
            detail: format!("got {got:.12e}, want {want:.12e}"),
        }
    }

    fn equal<T: PartialEq + std::fmt::Debug>(name: impl Into<String>, got: T, want: T) -> Self {
        Self {
            name: name.into(),
            pass: got == want,
            detail: format!("got {got:?}, want {want:?}"),
        }
    }

    fn holds(name: impl Into<String>, pass: bool, detail: String) -> Self {
        Self {
            name: name.into(),
            pass,
            detail,
        }
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExampleOutcome {
    pub example: u8,
    pub checks: Vec<Check>,
    pub reports: Vec<EntropyReport>,
}

impl ExampleOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

const ENTROPY_TOL: f64 = 1e-9;

fn params(pairs: &[(&str, f64)]) -> Params {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

/// Runs the canonical parameter set of worked example `n` against embedded golden values.
pub fn example(n: u8, opts: &RunOptions) -> Result<ExampleOutcome> {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
    let prep = |p: Preset| Prepared::new(&ScenarioSpec::for_preset(p, Params::new()), opts);
    let mut checks = Vec::new();
    let mut reports = Vec::new();
    match n {
        1 => {
            let p = prep(Preset::Ex1M2)?;
            for i in 0..=10 {
                let lambda = i as f64 / 10.0;
                let r = p.evaluate_params(&params(&[("lambda", lambda)]))?;
                let edge = i == 0 || i == 10;
                checks.push(Check::close(
                    format!("lambda={lambda:.1} entropy"),
                    r.entropy_nats,
                    shannon(&[lambda, 1.0 - lambda]),
                    ENTROPY_TOL,
                ));
                checks.push(Check::equal(
                    format!("lambda={lambda:.1} null_dim"),
                    r.null_dim,
                    if edge { 2 } else { 0 },
                ));
                checks.push(Check::equal(
                    format!("lambda={lambda:.1} gns_dim"),
                    r.gns_dim,
                    if edge { 2 } else { 4 },
                ));
                reports.push(r);
            }
        }
        2 => {
            let p = prep(Preset::Ex2Bell)?;
            let omega = p.state(&StateSpec::default())?;
            let gram = omega.gram(&crate::presets::local_paulis());
            let dev = (gram - CMatrix::identity(4, 4)).camax();
            checks.push(Check::holds(
                "Gram on sigma_mu x 1 is identity",
                dev <= 1e-12,
                format!("max deviation {dev:.3e}"),
            ));
            let r = p.evaluate(&omega)?;
            checks.push(Check::close("entropy", r.entropy_nats, LN_2, ENTROPY_TOL));
            let w = crate::entropy::spectrum_distance(&r.spectrum, &[0.5, 0.5]);
            checks.push(Check::holds(
                "weights (1/2, 1/2)",
                w <= ENTROPY_TOL,
                format!("{:?}", r.spectrum),
            ));
            checks.push(Check::equal("pure", r.pure, false));
            reports.push(r);
        }
        3 => {
            let p = prep(Preset::Ex3Choice2)?;
            for (label, theta, dim) in [
                ("0", 0.0, 2),
                ("pi/5", std::f64::consts::PI / 5.0, 3),
                ("pi/2", FRAC_PI_2, 1),
            ] {
                let r = p.evaluate_params(&params(&[("theta", theta)]))?;
                checks.push(Check::equal(
                    format!("choice 2 theta={label} gns_dim"),
                    r.gns_dim,
                    dim,
                ));
                checks.push(Check::close(
                    format!("choice 2 theta={label} entropy"),
                    r.entropy_nats,
                    two_level_entropy(theta),
                    ENTROPY_TOL,
                ));
                reports.push(r);
            }
            let full = prep(Preset::Ex3Choice1)?;
            for theta in [0.0, FRAC_PI_4, 1.0] {
                let r = full.evaluate_params(&params(&[("theta", theta)]))?;
                checks.push(Check::holds(
                    format!("choice 1 theta={theta:.4} pure"),
                    r.pure && r.entropy_nats < ENTROPY_TOL,
                    format!("entropy {:.3e}", r.entropy_nats),
                ));
                reports.push(r);
            }
        }
        4 => {
            let p = prep(Preset::Ex4Left)?;
            for (label, theta) in [("0", 0.0), ("pi/2", FRAC_PI_2)] {
                let r = p.evaluate_params(&params(&[("theta", theta)]))?;
                checks.push(Check::equal(
                    format!("theta={label} null_dim"),
                    r.null_dim,
                    4,
                ));
                checks.push(Check::equal(format!("theta={label} gns_dim"), r.gns_dim, 2));
                checks.push(Check::close(
                    format!("theta={label} entropy"),
                    r.entropy_nats,
                    0.0,
                    ENTROPY_TOL,
                ));
                reports.push(r);
            }
            let r = p.evaluate_params(&params(&[("theta", FRAC_PI_4)]))?;
            checks.push(Check::close(
                "theta=pi/4 entropy",
                r.entropy_nats,
                LN_2,
                ENTROPY_TOL,
            ));
            let w = wedderburn(p.algebra(), p.seed, p.tolerance())?;
            checks.push(Check::holds(
                "block (n, m) = (2, 2) present",
                w.shape().contains(&(2, 2)),
                format!("{:?}", w.shape()),
            ));
            reports.push(r);
        }
        5 => {
            let p = prep(Preset::Ex5Bosons)?;
            checks.push(Check::equal("dim A0", p.algebra().len(), 14));
            let axes = [
                (0.0, 0.0),
                (std::f64::consts::PI, 0.0),
                (FRAC_PI_2, 0.0),
                (FRAC_PI_2, std::f64::consts::PI),
                (FRAC_PI_2, FRAC_PI_2),
                (FRAC_PI_2, -FRAC_PI_2),
            ];
            let mut zeros = 0;
            for (theta, phi) in axes {
                let r = p.evaluate_params(&params(&[("theta", theta), ("phi", phi)]))?;
                zeros += (r.entropy_nats < ENTROPY_TOL) as usize;
            }
            checks.push(Check::equal(
                "entropy zeros at the six axis points",
                zeros,
                6,
            ));
            let theta = (1.0f64 / 3.0).sqrt().acos();
            let r = p.evaluate_params(&params(&[("theta", theta), ("phi", FRAC_PI_4)]))?;
            checks.push(Check::close(
                "equal weights give ln 3",
                r.entropy_nats,
                3f64.ln(),
                ENTROPY_TOL,
            ));
            reports.push(r);
            let r = p.evaluate_params(&params(&[("theta", 1.1), ("phi", 0.4)]))?;
            checks.push(Check::close(
                "theta=1.1 phi=0.4 entropy",
                r.entropy_nats,
                boson_entropy(1.1, 0.4),
                ENTROPY_TOL,
            ));
            reports.push(r);
        }
        _ => return Err(Error::OutOfRange(format!("example {n} not in 1..=5"))),
    }
    Ok(ExampleOutcome {
        example: n,
        checks,
        reports,
    })
}
