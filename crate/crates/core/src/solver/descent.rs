use rayon::prelude::*;

use super::config::{Mode, SolverConfig};
use super::geometry::mountain_pass_probe;
use super::init::Bump;
use super::nehari::nehari_project;
use super::report::GroundStateReport;
use crate::discretization::{DiscreteFunctional, RadialFunction};
use crate::error::{Error, Result};
use crate::exponents::Theorem;
use crate::problem::{admissibility_of, RadialProblem, Truncation};

/// Fails with `NotAdmissible` unless the calculus certifies `theorem`.
pub(crate) fn require(problem: &RadialProblem, theorem: Theorem) -> Result<()> {
    let (_, report) = admissibility_of(problem)?;
    if report.is_applicable(theorem) {
        Ok(())
    } else {
        Err(Error::NotAdmissible(format!(
            "{theorem} does not apply: {}",
            report.verdict(theorem).reason
        )))
    }
}

struct Run {
    u: RadialFunction,
    energy: f64,
    iterations: usize,
    converged: bool,
    trace: Vec<f64>,
    seed: u64,
    seed_energy: Option<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Preconditioned descent with Armijo backtracking. `project` maps a trial
/// point back to the constraint set (or fails, which rejects the trial).
fn descend(
    d: &DiscreteFunctional,
    config: &SolverConfig,
    start: RadialFunction,
    check_nehari: bool,
    project: impl Fn(RadialFunction) -> Result<RadialFunction>,
) -> Result<(RadialFunction, usize, bool, Vec<f64>)> {
    let mut u = start;
    let mut energy = d.energy(&u)?;
    let mut trace = vec![energy];
    let mut step = config.initial_step;
    for iteration in 0..=config.max_iterations {
        let g = d.gradient(&u)?;
        let p = d.riesz(&g);
        let gp = dot(&g, &p).max(0.0);
        let residual = gp.sqrt() / (1.0 + d.norm(&u)?);
        let on_set = !check_nehari || d.nehari_residual(&u)? <= config.tol_nehari;
        let small = residual <= config.tol_gradient && on_set;
        let settled = trace.len() > 5 && {
            let last = trace[trace.len() - 1];
            (trace[trace.len() - 6] - last).abs() <= config.tol_energy * last.abs().max(1e-300)
        };
        if small && settled {
            return Ok((u, iteration, true, trace));
        }
        if iteration == config.max_iterations {
            return Ok((u, iteration, false, trace));
        }

        let mut alpha = step;
        let mut accepted = None;
        while alpha >= 1e-14 * config.initial_step {
            if let Ok(candidate) = project(u.step(-alpha, &p)) {
                let e = d.energy(&candidate)?;
                if e <= energy - config.armijo * alpha * gp {
                    accepted = Some((candidate, e));
                    break;
                }
            }
            alpha *= config.backtrack;
        }
        match accepted {
            Some((candidate, e)) => {
                step = if alpha == step { (2.0 * alpha).min(16.0 * config.initial_step) } else { alpha };
                u = candidate;
                energy = e;
                trace.push(e);
            }
            // no decrease is possible at this precision
            None => return Ok((u, iteration, small, trace)),
        }
    }
    unreachable!("the loop returns at the last iteration")
}

fn run_superlinear(d: &DiscreteFunctional, config: &SolverConfig, seed: u64) -> Result<Run> {
    let start = Bump::for_seed(seed).sample(d.grid());
    let (_, u0) = nehari_project(d, &start, config.tol_nehari)?;
    let project = |w: RadialFunction| {
        let clipped = w.map(|x| x.max(0.0));
        if clipped.max_abs() == 0.0 {
            return Err(Error::InvalidInput("step removed all mass".into()));
        }
        Ok(nehari_project(d, &clipped, config.tol_nehari)?.1)
    };
    let (u, iterations, converged, trace) = descend(d, config, u0, true, project)?;
    Ok(Run {
        energy: d.energy(&u)?,
        u,
        iterations,
        converged,
        trace,
        seed,
        seed_energy: None,
    })
}

/// Scalings `10^(-k/2)`, `k = 0..=16`, of the seed bump.
fn negative_seed(d: &DiscreteFunctional, bump: &RadialFunction) -> Result<(RadialFunction, f64)> {
    let mut best: Option<(RadialFunction, f64)> = None;
    for k in 0..=16 {
        let lambda = 10f64.powf(-(k as f64) / 2.0);
        let v = bump.scaled(lambda);
        let e = d.energy(&v)?;
        if e < 0.0 && best.as_ref().is_none_or(|(_, b)| e < *b) {
            best = Some((v, e));
        }
    }
    best.ok_or(Error::NoNegativeSeed)
}

fn run_sublinear(d: &DiscreteFunctional, config: &SolverConfig, seed: u64) -> Result<Run> {
    let bump = d.restrict(&Bump::for_seed(seed).sample(d.grid()));
    let (u0, seed_energy) = negative_seed(d, &bump)?;
    let project = |w: RadialFunction| Ok(w.map(f64::abs));
    let (u, iterations, converged, trace) = descend(d, config, u0, false, project)?;
    Ok(Run {
        energy: d.energy(&u)?,
        u,
        iterations,
        converged,
        trace,
        seed,
        seed_energy: Some(seed_energy),
    })
}

/// Lowest converged energy, ties to the lowest seed; the best
/// unconverged run when none converged.
fn select(runs: Vec<Result<Run>>) -> Result<(Run, Vec<Option<f64>>)> {
    let energies = runs
        .iter()
        .map(|r| r.as_ref().ok().filter(|r| r.converged).map(|r| r.energy))
        .collect();
    let mut best: Option<Run> = None;
    let mut first_error = None;
    for run in runs {
        match run {
            Ok(run) => {
                let better = match &best {
                    None => true,
                    Some(b) => (run.converged, -run.energy) > (b.converged, -b.energy),
                };
                if better {
                    best = Some(run);
                }
            }
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    match best {
        Some(run) => Ok((run, energies)),
        None => Err(first_error.expect("at least one run")),
    }
}

fn report(d: &DiscreteFunctional, mode: Mode, run: Run, energies: Vec<Option<f64>>) -> Result<GroundStateReport> {
    Ok(GroundStateReport {
        mode,
        nehari_residual: d.nehari_residual(&run.u)?,
        weak_residual: d.weak_residual(&run.u)?,
        energy: run.energy,
        mp_rho: None,
        mp_sphere_infimum: None,
        mp_descent_lambda: None,
        minimax_upper: None,
        mu: None,
        seed_energy: run.seed_energy,
        iterations: run.iterations,
        converged: run.converged,
        seed: run.seed,
        multistart_energies: energies,
        energy_trace: run.trace,
        u: run.u,
    })
}

fn seeds(config: &SolverConfig) -> Vec<u64> {
    (0..config.multistarts as u64).map(|k| config.seed.wrapping_add(k)).collect()
}

/// Ground state: minimizer of the energy over the Nehari set, with `f`
/// cut to its positive part and iterates clipped to be nonnegative.
pub fn solve_superlinear(problem: &RadialProblem, config: &SolverConfig) -> Result<GroundStateReport> {
    config.validate()?;
    if !config.force {
        require(problem, Theorem::GroundState)?;
    }
    let grid = config.grid.build(problem.dim())?;
    let d = DiscreteFunctional::new(grid, problem, Truncation::PositivePart)?;
    let runs = seeds(config).into_par_iter().map(|s| run_superlinear(&d, config, s)).collect();
    let (run, energies) = select(runs)?;
    let mut rep = report(&d, Mode::SuperlinearNehari, run, energies)?;
    match mountain_pass_probe(problem, config) {
        Ok(mp) => {
            rep.mp_rho = Some(mp.rho);
            rep.mp_sphere_infimum = Some(mp.inf_on_sphere);
            rep.mp_descent_lambda = Some(mp.lambda);
            rep.minimax_upper = Some(mp.minimax_upper);
        }
        Err(e) if !config.force => return Err(e),
        Err(_) => {}
    }
    Ok(rep)
}

/// Global minimizer of a coercive energy, with `f` extended oddly and
/// iterates replaced by their absolute values.
pub fn solve_sublinear(problem: &RadialProblem, config: &SolverConfig) -> Result<GroundStateReport> {
    config.validate()?;
    if !config.force {
        require(problem, Theorem::DoublePowerSub)?;
    }
    let grid = config.grid.build(problem.dim())?;
    let d = DiscreteFunctional::new(grid, problem, Truncation::OddExtension)?;
    let runs = seeds(config).into_par_iter().map(|s| run_sublinear(&d, config, s)).collect();
    let (run, energies) = select(runs)?;
    let mut rep = report(&d, Mode::SublinearGlobal, run, energies)?;
    rep.mu = Some(rep.energy);
    Ok(rep)
}

pub fn solve(problem: &RadialProblem, config: &SolverConfig) -> Result<GroundStateReport> {
    match config.mode {
        Mode::SuperlinearNehari => solve_superlinear(problem, config),
        Mode::SublinearGlobal => solve_sublinear(problem, config),
    }
}

impl GroundStateReport {
    /// `Err(NoConvergence)` unless the report converged.
    pub fn into_result(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NoConvergence {
                iterations: self.iterations,
                residual: self.weak_residual,
            })
        }
    }
}
