//! Invariant checks for the configured instance, across all layers.

use std::fmt::Write as _;
use std::sync::Arc;

use radial_nls::discretization::{DiscreteFunctional, RadialFunction, RadialGrid};
use radial_nls::exponents::PotentialRates;
use radial_nls::problem::{check_growth, check_structure, default_samples, Nonlinearity, RadialProblem, Truncation};
use radial_nls::real::{ExtReal, OpenInterval, Real};
use radial_nls::solver::{Bump, GroundStateReport, Mode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toml::{Table, Value};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::Output;
use crate::solve::solve_config;

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

type Check = (&'static str, Outcome);

fn check(cond: bool, pass: impl Into<String>, fail: impl Into<String>) -> Outcome {
    if cond {
        Outcome::Pass(pass.into())
    } else {
        Outcome::Fail(fail.into())
    }
}

fn open(lo: i64, hi: Option<i64>) -> OpenInterval {
    OpenInterval::new(ExtReal::int(lo), hi.map_or(ExtReal::PosInf, ExtReal::int))
}

fn exponent_checks(r: &PotentialRates) -> Vec<Check> {
    let iv = r.intervals();
    let b0 = ExtReal::Finite(r.b0().clone());
    let (above_two, one_two) = (open(2, None), open(1, Some(2)));
    let facts = [
        ("I1 nonempty iff b0 > b_star", !iv.i1.is_empty(), b0 > r.b_star()),
        ("I1 meets (2,inf) iff b0 > b_lower", !iv.i1.intersect(&above_two).is_empty(), b0 > r.b_lower()),
        ("I2 meets (2,inf)", !iv.i2.intersect(&above_two).is_empty(), true),
        (
            "I1 meets (1,2) iff b0 above the sub-linear bound",
            !iv.i1.intersect(&one_two).is_empty(),
            *r.b0() > r.sublinear_b0_bound(),
        ),
        (
            "I2 meets (1,2) iff b < max{a,-2}",
            !iv.i2.intersect(&one_two).is_empty(),
            *r.b() < r.a().clone().max(Real::int(-2)),
        ),
    ];
    let broken: Vec<_> = facts.iter().filter(|(_, l, r)| l != r).map(|(n, ..)| *n).collect();
    let mut out = vec![(
        "interval-equivalences",
        check(
            broken.is_empty(),
            format!("I1 = {}, I2 = {}", iv.i1, iv.i2),
            format!("violated: {}", broken.join("; ")),
        ),
    )];

    out.push((
        "super-linear-range",
        match r.super_power_exponents() {
            Some(sup) if sup.q_lower < sup.q_upper => {
                let lhs = iv.both.intersect(&above_two);
                let rhs = OpenInterval::new(sup.q_lower, sup.q_upper);
                check(lhs == rhs, format!("I1 ∩ I2 ∩ (2,inf) = {lhs}"), format!("{lhs} differs from {rhs}"))
            }
            Some(_) => check(iv.both.is_empty(), "incompatible: I1 ∩ I2 = ∅", format!("I1 ∩ I2 = {}", iv.both)),
            None => Outcome::Skip("b0 <= b_lower".into()),
        },
    ));

    let (b_lower, b_star) = r.threshold_exponents();
    out.push((
        "threshold-order",
        check(b_star <= b_lower, format!("b_star = {b_star} <= b_lower = {b_lower}"), "b_star > b_lower"),
    ));

    out.push((
        "corollary-consistency",
        match r.corollary_double() {
            Some(c) => check(
                c.is_consistent(r),
                format!("bounds ({}, {}) match q_upper_star and q_double_star", c.q1_bound, c.q2_bound),
                format!("inconsistent bounds {c:?}"),
            ),
            None => Outcome::Skip("no corollary hypothesis holds".into()),
        },
    ));
    out
}

fn nonlinearity_checks(f: &Nonlinearity) -> Vec<Check> {
    let samples = default_samples();
    let mut out = Vec::new();
    let structure = check_structure(f, &samples);
    out.push((
        "structure-consistency",
        match &structure {
            Ok(s) => {
                let theta = |c: &radial_nls::problem::Condition| match (c.holds(), c.witness) {
                    (Some(true), Some(w)) => format!("theta = {w}"),
                    (Some(true), None) => "holds".into(),
                    (Some(false), _) => "fails".into(),
                    (None, _) => "undecided".into(),
                };
                Outcome::Pass(format!(
                    "analytic and sampled verdicts agree; AR {}, small-t {}",
                    theta(&s.ambrosetti_rabinowitz),
                    theta(&s.small_t_lower_bound)
                ))
            }
            Err(e) => Outcome::Fail(e.to_string()),
        },
    ));

    let Some((q1, q2)) = f.envelope() else {
        out.push(("growth-envelope", Outcome::Skip(format!("{f} has no growth exponents"))));
        return out;
    };
    out.push((
        "growth-envelope",
        match check_growth(f, q1, q2, &samples) {
            Ok(g) => {
                let worst = samples
                    .iter()
                    .map(|&t| f.eval_antiderivative(t).abs() / (g.m_tilde * t.powf(q1).min(t.powf(q2))))
                    .fold(0.0f64, f64::max);
                check(
                    worst <= 1.0 + 1e-12,
                    format!("M = {}, |F| <= M~ min{{t^q1, t^q2}} (ratio {worst:.6})", g.m),
                    format!("|F| / (M~ min) reaches {worst}"),
                )
            }
            Err(e) => Outcome::Fail(e.to_string()),
        },
    ));
    if let Ok(s) = &structure {
        out.push((
            "oddness",
            match s.odd.holds() {
                Some(true) => {
                    let worst = samples
                        .iter()
                        .map(|&t| (f.eval_f(-t) + f.eval_f(t)).abs() / f.eval_f(t).abs().max(f64::MIN_POSITIVE))
                        .fold(0.0f64, f64::max);
                    check(worst <= 1e-14, "f(-t) = -f(t) on the samples", format!("relative defect {worst:e}"))
                }
                _ => Outcome::Skip("f is not claimed odd".into()),
            },
        ));
    }
    out
}

fn discretization_checks(problem: &RadialProblem, profiles: usize, seed: u64) -> Vec<Check> {
    let dim = problem.dim();
    let mut out = Vec::new();
    // ∫ e^{-r} dx over R^N is |S^{N-1}| (N-1)!
    let grid = RadialGrid::new(dim, 1e-6, 80.0, 2048).expect("valid oracle grid");
    let exact = grid.surface_factor() * (1..dim).map(f64::from).product::<f64>();
    out.push((
        "quadrature-oracle",
        match grid.integrate(|r| (-r).exp()) {
            Ok(v) => {
                let rel = (v - exact).abs() / exact;
                check(rel <= 1e-6, format!("relative error {rel:.1e}"), format!("{v} vs {exact}"))
            }
            Err(e) => Outcome::Fail(e.to_string()),
        },
    ));

    let grid = Arc::new(RadialGrid::new(dim, 1e-4, 30.0, 256).expect("valid check grid"));
    let d = match DiscreteFunctional::new(grid.clone(), problem, Truncation::None) {
        Ok(d) => d,
        Err(e) => {
            out.push(("gradient-vs-finite-differences", Outcome::Fail(e.to_string())));
            return out;
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..profiles {
        let mut values = vec![0.0; grid.len()];
        for _ in 0..2 {
            let b = Bump::random_in(&mut rng, 1e-2, 5.0);
            let amp = rng.gen_range(-1.5..1.5);
            for (v, &r) in values.iter_mut().zip(grid.nodes()) {
                *v += amp * b.eval(r);
            }
        }
        let n = values.len();
        values[n - 1] = 0.0;
        let u = d.restrict(&RadialFunction::new(grid.clone(), values).expect("finite values"));
        let values = u.values().to_vec();
        let g = match d.gradient(&u) {
            Ok(g) => g,
            Err(e) => {
                out.push(("gradient-vs-finite-differences", Outcome::Fail(e.to_string())));
                return out;
            }
        };
        let scale = g.iter().fold(f64::MIN_POSITIVE, |m, x| m.max(x.abs()));
        let energy = |v: Vec<f64>| d.energy(&RadialFunction::new(grid.clone(), v).expect("finite values")).unwrap_or(f64::NAN);
        for i in (0..grid.len() - 1).filter(|&i| d.active()[i]) {
            let h = 1e-5 * values[i].abs().max(1e-3);
            let (mut plus, mut minus) = (values.clone(), values.clone());
            plus[i] += h;
            minus[i] -= h;
            let fd = (energy(plus) - energy(minus)) / (2.0 * h);
            worst = worst.max((fd - g[i]).abs() / scale);
        }
    }
    out.push((
        "gradient-vs-finite-differences",
        check(
            worst <= 1e-6,
            format!("{profiles} profiles, mismatch {worst:.1e}"),
            format!("mismatch {worst:e}"),
        ),
    ));
    out
}

fn solver_checks(config: &RunConfig, problem: &RadialProblem) -> Vec<Check> {
    let (rep, mode) = match solve_config(config) {
        Ok((resolved, _, rep)) => (rep, resolved.solver.mode),
        Err(CliError::NotAdmissible(m)) => return vec![("solver", Outcome::Skip(format!("not admissible: {m}")))],
        Err(e) => return vec![("solver", Outcome::Fail(e.to_string()))],
    };
    let mut out = vec![(
        "solver-convergence",
        check(
            rep.converged,
            format!("{mode}: energy {:e} after {} iterations", rep.energy, rep.iterations),
            format!("not converged after {} iterations", rep.iterations),
        ),
    )];
    out.push((
        "nonnegativity",
        check(rep.u.min_value() >= 0.0, "min u >= 0", format!("min u = {:e}", rep.u.min_value())),
    ));
    let tol = config.solver.tol_gradient;
    out.push((
        "residuals",
        check(
            rep.weak_residual <= tol && rep.nehari_residual <= config.solver.tol_nehari.max(tol),
            format!("weak {:.1e}, Nehari {:.1e}", rep.weak_residual, rep.nehari_residual),
            format!("weak {:e}, Nehari {:e}", rep.weak_residual, rep.nehari_residual),
        ),
    ));
    let rises = rep.energy_trace.windows(2).filter(|w| w[1] > w[0]).count();
    out.push((
        "monotone-energy-trace",
        check(rises == 0, format!("{} accepted steps", rep.energy_trace.len()), format!("{rises} increases")),
    ));
    out.extend(mode_checks(problem, &rep));
    out
}

fn mode_checks(problem: &RadialProblem, rep: &GroundStateReport) -> Vec<Check> {
    match rep.mode {
        Mode::SuperlinearNehari => {
            let d = DiscreteFunctional::new(rep.u.grid().clone(), problem, Truncation::PositivePart)
                .expect("grid matches problem");
            let ray: Vec<f64> = [0.25, 0.5, 0.75, 0.9, 1.1, 1.5, 2.0, 4.0]
                .iter()
                .map(|&t| d.energy(&rep.u.scaled(t)).unwrap_or(f64::NAN))
                .collect();
            let peak = ray.iter().all(|&e| e <= rep.energy * (1.0 + 1e-12));
            vec![
                (
                    "positive-energy",
                    check(rep.energy > 0.0, format!("energy {:e}", rep.energy), format!("energy {:e}", rep.energy)),
                ),
                (
                    "ray-maximum-at-one",
                    check(peak, "I(tu) <= I(u) on the sampled ray", "I(tu) exceeds I(u) on the ray"),
                ),
                (
                    "mountain-pass-witnesses",
                    match (rep.mp_rho, rep.mp_sphere_infimum, rep.mp_descent_lambda) {
                        (Some(rho), Some(inf), Some(lambda)) => check(
                            inf > 0.0,
                            format!("rho {rho:.3e}, sphere infimum {inf:.3e}, lambda {lambda}"),
                            format!("sphere infimum {inf:e}"),
                        ),
                        _ => Outcome::Fail("no geometry witnesses".into()),
                    },
                ),
            ]
        }
        Mode::SublinearGlobal => {
            let seed = rep.seed_energy.unwrap_or(f64::NAN);
            vec![(
                "negative-energy-below-seed",
                check(
                    rep.energy < 0.0 && rep.energy <= seed,
                    format!("energy {:e} <= seed energy {seed:e}", rep.energy),
                    format!("energy {:e}, seed energy {seed:e}", rep.energy),
                ),
            )]
        }
    }
}

pub fn run(config: &RunConfig, out: &Output) -> Result<String, CliError> {
    let problem = config.problem()?;
    let mut checks = exponent_checks(problem.rates());
    checks.extend(nonlinearity_checks(problem.f()));
    checks.extend(discretization_checks(&problem, config.verify.gradient_profiles, config.solver.seed));
    if config.verify.solve {
        checks.extend(solver_checks(config, &problem));
    }

    let mut text = String::new();
    let mut table = Table::new();
    let mut failed = 0;
    for (name, outcome) in &checks {
        let (status, detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Outcome::Skip(d) => ("SKIP", d),
        };
        writeln!(text, "{status} {name}: {detail}").unwrap();
        table.insert((*name).into(), Value::String(format!("{status}: {detail}")));
    }
    let mut doc = Table::new();
    doc.insert("checks".into(), Value::Table(table));
    let path = out.write_report("verify.toml", doc, config)?;
    writeln!(text, "wrote {}", path.display()).unwrap();
    if failed > 0 {
        print!("{text}");
        return Err(CliError::Verify(failed, checks.len()));
    }
    Ok(text)
}
