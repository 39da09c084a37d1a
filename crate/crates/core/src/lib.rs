//! Entanglement entropy of states restricted to operator subalgebras.
//!
//! An observable subalgebra `A₀ ⊂ M_D(ℂ)` and a state `ω` determine a GNS
//! representation; the entropy of `ω|A₀` is computed from the isotypic
//! decomposition of that representation and cross-checked against the
//! density element obtained from the Wedderburn block structure of `A₀`.
//!
//! ```
//! use gns_entropy::{example_generators, Method, Preset, Tolerance};
//!
//! let tol = Tolerance::default();
//! let bell = example_generators(Preset::Ex2Bell, &tol).unwrap();
//! let omega = bell.state(&Default::default(), &tol).unwrap();
//! let report = gns_entropy::restriction_entropy(&bell.algebra, &omega, Method::Both, 0, &tol).unwrap();
//! assert!((report.entropy_nats - std::f64::consts::LN_2).abs() < 1e-9);
//! ```

pub mod algebra;
pub mod entropy;
pub mod error;
pub mod fock;
pub mod gns;
pub mod linalg;
pub mod presets;
pub mod scenario;

pub use algebra::{
    center, commutant, span_closure, wedderburn, OperatorSpan, WedderburnBlock, WedderburnData,
};
pub use entropy::{
    density_element, partial_trace, restriction_entropy, restriction_entropy_with,
    spectrum_distance, von_neumann_entropy, LogBase, Method, RestrictionReport, SpectralState,
    Subsystem,
};
pub use error::{Error, Result};
pub use fock::{car_ladders, coproduct_embed, group_embed, FockContext, LadderSet, Statistics};
pub use gns::{
    build_gns, gns_density, isotypic_decompose, AlgebraState, GnsSpace, IsotypicDecomposition,
};
pub use linalg::{CMatrix, CVector, Tolerance, C64};
pub use presets::{example_generators, Params, Preset, PresetScenario};
