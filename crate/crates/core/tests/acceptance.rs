//! Acceptance gate. One line per criterion; exits nonzero if any fails.

// NaN must fail the check, hence the negated comparisons
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::f64::consts::{FRAC_PI_2, LN_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use gns_entropy::entropy::{entropy_of_density, spectrum_distance};
use gns_entropy::fock::MAX_MODES;
use gns_entropy::linalg::{
    expi_hermitian, random_hermitian, random_matrix, random_unit_vector, CMatrix,
};
use gns_entropy::presets::local_paulis;
use gns_entropy::scenario::{
    boson_entropy, grid, grid_local_minima, linspace, shannon, two_level_entropy, Prepared,
    RunOptions, ScenarioSpec,
};
use gns_entropy::{
    build_gns, car_ladders, coproduct_embed, group_embed, isotypic_decompose, partial_trace,
    restriction_entropy, wedderburn, AlgebraState, FockContext, Method, Params, Preset, Statistics,
    Subsystem, Tolerance,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ENTROPY_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn prepared(p: Preset) -> Result<Prepared, String> {
    Prepared::new(
        &ScenarioSpec::for_preset(p, Params::new()),
        &RunOptions::default(),
    )
    .map_err(|e| e.to_string())
}

fn params(pairs: &[(&str, f64)]) -> Params {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn criterion_1() -> Outcome {
    let p = prepared(Preset::Ex1M2)?;
    let mut worst: f64 = 0.0;
    for i in 0..=10 {
        let lambda = i as f64 / 10.0;
        let r = p
            .evaluate_params(&params(&[("lambda", lambda)]))
            .map_err(|e| e.to_string())?;
        worst = worst.max((r.entropy_nats - shannon(&[lambda, 1.0 - lambda])).abs());
        let edge = i == 0 || i == 10;
        let (null, gns) = if edge { (2, 2) } else { (0, 4) };
        ensure!(
            r.null_dim == null,
            "lambda={lambda}: null_dim {} != {null}",
            r.null_dim
        );
        ensure!(
            r.gns_dim == gns,
            "lambda={lambda}: gns_dim {} != {gns}",
            r.gns_dim
        );
    }
    ensure!(worst <= ENTROPY_TOL, "entropy deviation {worst:.3e}");
    Ok(format!(
        "11 lambdas, max entropy deviation {worst:.1e}, null/GNS dims 2/2 at ends, 0/4 inside"
    ))
}

fn criterion_2() -> Outcome {
    let tol = Tolerance::default();
    let p = prepared(Preset::Ex2Bell)?;
    let omega = p.state(&Default::default()).map_err(|e| e.to_string())?;
    let gram_dev = (omega.gram(&local_paulis()) - CMatrix::identity(4, 4)).camax();
    ensure!(gram_dev <= 1e-12, "Gram deviation {gram_dev:.3e}");
    let r = p.evaluate(&omega).map_err(|e| e.to_string())?;
    let dev = (r.entropy_nats - LN_2).abs();
    ensure!(dev <= ENTROPY_TOL, "entropy {} vs ln 2", r.entropy_nats);
    let g = build_gns(p.algebra(), &omega, &tol).map_err(|e| e.to_string())?;
    let iso = isotypic_decompose(&g, 0, &tol).map_err(|e| e.to_string())?;
    let weights: Vec<f64> = iso
        .components
        .iter()
        .flat_map(|c| c.refined_weights.iter().copied())
        .collect();
    let wdev = spectrum_distance(&weights, &[0.5, 0.5]);
    ensure!(wdev <= ENTROPY_TOL, "isotypic weights {weights:?}");
    Ok(format!(
        "Gram deviation {gram_dev:.1e}, entropy deviation {dev:.1e}, weights {weights:.6?}"
    ))
}

fn criterion_3() -> Outcome {
    let tol = Tolerance::default();
    let p = prepared(Preset::Ex3Choice1)?;
    let ctx = FockContext::new(3, Statistics::Fermionic, 2).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut worst_s, mut worst_pt): (f64, f64) = (0.0, 0.0);
    for k in 0..50 {
        let v = random_unit_vector(3, &mut rng);
        let omega = AlgebraState::pure(v.clone(), &tol).map_err(|e| e.to_string())?;
        let r = p.evaluate(&omega).map_err(|e| e.to_string())?;
        ensure!(
            r.entropy_nats < ENTROPY_TOL && r.pure,
            "vector {k}: entropy {:.3e}, pure {}",
            r.entropy_nats,
            r.pure
        );
        worst_s = worst_s.max(r.entropy_nats);
        let embedded = AlgebraState::pure(ctx.to_tensor(&v), &tol).map_err(|e| e.to_string())?;
        let rho = partial_trace(&embedded, (3, 3), Subsystem::A).map_err(|e| e.to_string())?;
        let dev = (entropy_of_density(&rho, &tol) - LN_2).abs();
        ensure!(
            dev <= ENTROPY_TOL,
            "vector {k}: partial-trace entropy off by {dev:.3e}"
        );
        worst_pt = worst_pt.max(dev);
    }
    Ok(format!("50 vectors: max restricted entropy {worst_s:.1e}, max partial-trace deviation from ln 2 {worst_pt:.1e}"))
}

fn criterion_4() -> Outcome {
    let p = prepared(Preset::Ex3Choice2)?;
    let thetas = linspace(0.0, FRAC_PI_2, 50);
    let mut worst: f64 = 0.0;
    for (i, &theta) in thetas.iter().enumerate() {
        let r = p
            .evaluate_params(&params(&[("theta", theta)]))
            .map_err(|e| e.to_string())?;
        worst = worst.max((r.entropy_nats - two_level_entropy(theta)).abs());
        let want = if i == 0 {
            2
        } else if i == thetas.len() - 1 {
            1
        } else {
            3
        };
        ensure!(
            r.gns_dim == want,
            "theta={theta}: gns_dim {} != {want}",
            r.gns_dim
        );
    }
    ensure!(worst <= ENTROPY_TOL, "entropy deviation {worst:.3e}");
    Ok(format!(
        "50 thetas, max entropy deviation {worst:.1e}, GNS dims 2/3/1"
    ))
}

fn criterion_5() -> Outcome {
    let tol = Tolerance::default();
    let p = prepared(Preset::Ex4Left)?;
    let mut worst: f64 = 0.0;
    for theta in linspace(0.0, FRAC_PI_2, 50) {
        let r = p
            .evaluate_params(&params(&[("theta", theta)]))
            .map_err(|e| e.to_string())?;
        worst = worst.max((r.entropy_nats - two_level_entropy(theta)).abs());
    }
    ensure!(worst <= ENTROPY_TOL, "entropy deviation {worst:.3e}");
    for theta in [0.0, FRAC_PI_2] {
        let r = p
            .evaluate_params(&params(&[("theta", theta)]))
            .map_err(|e| e.to_string())?;
        ensure!(
            r.null_dim == 4 && r.gns_dim == 2,
            "theta={theta}: null {} gns {}",
            r.null_dim,
            r.gns_dim
        );
    }
    let w = wedderburn(p.algebra(), 0, &tol).map_err(|e| e.to_string())?;
    ensure!(w.shape().contains(&(2, 2)), "block table {:?}", w.shape());
    Ok(format!(
        "50 thetas, max entropy deviation {worst:.1e}, null/GNS 4/2 at ends, blocks {:?}",
        w.shape()
    ))
}

fn criterion_6() -> Outcome {
    let p = prepared(Preset::Ex5Bosons)?;
    ensure!(p.algebra().len() == 14, "dim A0 = {}", p.algebra().len());
    let mut worst: f64 = 0.0;
    let mut points: Vec<(f64, f64)> = Vec::new();
    for i in 0..30 {
        for j in 0..30 {
            points.push((PI * i as f64 / 29.0, 2.0 * PI * j as f64 / 29.0));
        }
    }
    let axes = [
        (0.0, 0.0),
        (PI, 0.0),
        (FRAC_PI_2, 0.0),
        (FRAC_PI_2, PI),
        (FRAC_PI_2, FRAC_PI_2),
        (FRAC_PI_2, -FRAC_PI_2),
    ];
    let mut zeros: Vec<[f64; 3]> = Vec::new();
    for (k, &(theta, phi)) in points.iter().chain(axes.iter()).enumerate() {
        let r = p
            .evaluate_params(&params(&[("theta", theta), ("phi", phi)]))
            .map_err(|e| e.to_string())?;
        if k < points.len() {
            worst = worst.max((r.entropy_nats - boson_entropy(theta, phi)).abs());
        }
        if r.entropy_nats < ENTROPY_TOL {
            let x = [
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ];
            if !zeros
                .iter()
                .any(|z| z.iter().zip(&x).all(|(a, b)| (a - b).abs() < 1e-9))
            {
                zeros.push(x);
            }
        }
    }
    ensure!(
        worst <= ENTROPY_TOL,
        "entropy deviation {worst:.3e} on the 30x30 grid"
    );
    let on_axes = zeros
        .iter()
        .all(|z| z.iter().filter(|c| c.abs() > 1e-9).count() == 1);
    ensure!(zeros.len() == 6 && on_axes, "zero set {zeros:?}");

    let resolution = 41;
    let rows = grid(resolution, 2.0, &RunOptions::default()).map_err(|e| e.to_string())?;
    let minima = grid_local_minima(&rows, resolution);
    let expected = [(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)];
    ensure!(minima.len() == 5, "{} landscape minima", minima.len());
    for (x, y) in expected {
        let hit = minima
            .iter()
            .any(|m| (m.x - x).abs() < 1e-12 && (m.y - y).abs() < 1e-12 && m.entropy < ENTROPY_TOL);
        ensure!(hit, "no zero minimum at ({x}, {y})");
    }
    Ok(format!("900 points, max entropy deviation {worst:.1e}, 6 distinct zeros on the axes, 5 landscape minima"))
}

fn criterion_7() -> Outcome {
    let tol = Tolerance::default();
    let check = |label: &str, r: &gns_entropy::RestrictionReport| -> Result<f64, String> {
        let dev = r.oracle_deviation.ok_or("missing oracle deviation")?;
        ensure!(dev <= tol.oracle, "{label}: spectra differ by {dev:.3e}");
        let commutant_one = r.commutant_dim == Some(1);
        ensure!(
            r.pure == commutant_one,
            "{label}: pure {} but commutant dim {:?}",
            r.pure,
            r.commutant_dim
        );
        Ok(dev)
    };
    let mut worst: f64 = 0.0;
    let mut pure_cases = 0;
    let preset_params: [(Preset, &[(&str, f64)]); 10] = [
        (Preset::Ex1M2, &[("lambda", 0.0)]),
        (Preset::Ex1M2, &[("lambda", 0.3)]),
        (Preset::Ex2Bell, &[]),
        (Preset::Ex3Choice1, &[("theta", 0.6)]),
        (Preset::Ex3Choice2, &[("theta", 0.0)]),
        (Preset::Ex3Choice2, &[("theta", 0.6)]),
        (Preset::Ex4Left, &[("theta", 0.0)]),
        (Preset::Ex4Left, &[("theta", 0.6)]),
        (Preset::Ex5Bosons, &[("theta", 1.1), ("phi", 0.4)]),
        (Preset::Ex5Bosons, &[("theta", 0.0), ("phi", 0.0)]),
    ];
    for (preset, ps) in preset_params {
        let p = prepared(preset)?;
        let omega = p.state(&gns_entropy::scenario::StateSpec {
            params: params(ps),
            ..Default::default()
        });
        let omega = omega.map_err(|e| e.to_string())?;
        let r = restriction_entropy(p.algebra(), &omega, Method::Both, 0, &tol)
            .map_err(|e| format!("{preset}: {e}"))?;
        worst = worst.max(check(preset.name(), &r)?);
        pure_cases += r.pure as usize;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..100 {
        let case = common::random_case(6, k, &mut rng, &tol);
        let label = format!("random case {k} {:?}", case.shape);
        let r = restriction_entropy(&case.algebra, &case.state, Method::Both, k as u64, &tol)
            .map_err(|e| format!("{label}: {e}"))?;
        worst = worst.max(check(&label, &r)?);
        ensure!(
            !case.constructed_pure || r.pure,
            "{label}: product state not reported pure"
        );
        pure_cases += r.pure as usize;
    }
    Ok(format!("10 preset states + 100 random pairs, max spectrum deviation {worst:.1e}, {pure_cases} pure"))
}

fn criterion_8() -> Outcome {
    let tol = Tolerance::default();
    let mut car: f64 = 0.0;
    for d in 1..=8.min(MAX_MODES) {
        car = car.max(car_ladders(d).map_err(|e| e.to_string())?.car_residual());
    }
    ensure!(car < 1e-12, "CAR residual {car:.3e}");

    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let (mut lie, mut group, mut second): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let contexts = [
        (3, Statistics::Fermionic, 2),
        (4, Statistics::Fermionic, 2),
        (4, Statistics::Fermionic, 3),
        (5, Statistics::Fermionic, 2),
        (3, Statistics::Bosonic, 2),
        (4, Statistics::Bosonic, 2),
    ];
    for (d, stats, k) in contexts {
        let ctx = FockContext::new(d, stats, k).map_err(|e| e.to_string())?;
        let a = random_matrix(d, d, &mut rng);
        let b = random_matrix(d, d, &mut rng);
        let emb = |x: &CMatrix| coproduct_embed(x, &ctx).map_err(|e| e.to_string());
        let (ea, eb) = (emb(&a)?, emb(&b)?);
        lie = lie.max((emb(&(&a * &b - &b * &a))? - (&ea * &eb - &eb * &ea)).camax());
        let h = random_hermitian(d, &mut rng);
        let lhs = group_embed(&expi_hermitian(&h), &ctx, &tol).map_err(|e| e.to_string())?;
        group = group.max((lhs - expi_hermitian(&emb(&h)?)).camax());
        if stats == Statistics::Fermionic {
            let ladders = car_ladders(d).map_err(|e| e.to_string())?;
            let iso = ladders.sector_isometry(&ctx).map_err(|e| e.to_string())?;
            let fock = ladders.second_quantize(&a).map_err(|e| e.to_string())?;
            second = second.max((iso.adjoint() * fock * &iso - ea).camax());
        }
    }
    ensure!(lie < 1e-8, "coproduct Lie residual {lie:.3e}");
    ensure!(group < 1e-8, "group/Lie residual {group:.3e}");
    ensure!(second < 1e-10, "second-quantization residual {second:.3e}");

    let mut gns: f64 = 0.0;
    for preset in Preset::ALL {
        let p = prepared(preset)?;
        let defaults: Params = preset
            .parameters()
            .iter()
            .map(|&(k, v)| (k.to_string(), v))
            .collect();
        let mut variants = vec![defaults.clone()];
        if let Some(&(name, _)) = preset.parameters().first() {
            let mut edge = defaults.clone();
            edge.insert(name.to_string(), 0.0);
            variants.push(edge);
        }
        for ps in variants {
            let omega = p.state(&gns_entropy::scenario::StateSpec {
                params: ps,
                ..Default::default()
            });
            let omega = omega.map_err(|e| e.to_string())?;
            let g = build_gns(p.algebra(), &omega, &tol).map_err(|e| format!("{preset}: {e}"))?;
            for (what, v) in [
                ("left-ideal", g.left_ideal_residual()),
                ("*-homomorphism", g.star_hom_residual()),
                ("state recovery", g.state_recovery_residual()),
            ] {
                ensure!(v < 1e-9, "{preset}: {what} residual {v:.3e}");
                gns = gns.max(v);
            }
        }
    }
    Ok(format!(
        "CAR {car:.1e}, Lie {lie:.1e}, group {group:.1e}, second quantization {second:.1e}, GNS invariants {gns:.1e}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("mixed state on M2 (example 1)", criterion_1),
        ("singlet restricted to one spin (example 2)", criterion_2),
        (
            "two fermions, full one-particle algebra (example 3, choice 1)",
            criterion_3,
        ),
        (
            "two fermions, five-dimensional algebra (example 3, choice 2)",
            criterion_4,
        ),
        ("left-location observables (example 4)", criterion_5),
        ("two bosons in three modes (example 5)", criterion_6),
        ("GNS and Wedderburn spectra agree", criterion_7),
        ("structural invariants", criterion_8),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {}: {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name} ({why}) [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
