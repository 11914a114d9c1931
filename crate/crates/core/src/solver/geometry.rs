use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::SolverConfig;
use super::init::Bump;
use crate::discretization::{DiscreteFunctional, RadialFunction};
use crate::error::{Error, Result};
use crate::problem::{check_growth, default_samples, RadialProblem, Truncation};
use crate::real::Real;

const ASCENT_STARTS: usize = 8;
const ASCENT_ITERATIONS: usize = 300;
const ASCENT_TOL: f64 = 1e-8;

/// Sampled lower bounds of the embedding levels at one radius:
/// `sup ∫_{|x|<R} K|u|^q1` and `sup ∫_{|x|>R} K|u|^q2` over `‖u‖ = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingRow {
    pub radius: f64,
    pub s1_lower: f64,
    pub s2_lower: f64,
    /// Relative stationarity residual of the best ascent run.
    pub s1_residual: f64,
    pub s2_residual: f64,
    pub s1_converged: bool,
    pub s2_converged: bool,
}

#[derive(Clone, Copy, PartialEq)]
enum Region {
    Inside(f64),
    Outside(f64),
}

impl Region {
    fn contains(self, r: f64) -> bool {
        match self {
            Region::Inside(radius) => r <= radius,
            Region::Outside(radius) => r > radius,
        }
    }
}

struct Ascent {
    value: f64,
    residual: f64,
    converged: bool,
    u: RadialFunction,
}

/// `Σ_{r_i in region} w_i K_i |u_i|^q`.
fn restricted_power(d: &DiscreteFunctional, u: &RadialFunction, q: f64, region: Region) -> f64 {
    let nodes = d.grid().nodes();
    d.source_weights()
        .iter()
        .zip(u.values())
        .enumerate()
        .filter(|(i, _)| d.active()[*i] && region.contains(nodes[*i]))
        .map(|(_, (w, x))| w * x.abs().powf(q))
        .sum::<f64>()
        + 0.0
}

/// Ascent on the unit sphere by `u <- A⁻¹ J'(u) / ‖A⁻¹ J'(u)‖`, which
/// never decreases the convex functional `J`.
fn ascend(d: &DiscreteFunctional, start: RadialFunction, q: f64, region: Region) -> Result<Ascent> {
    let nodes = d.grid().nodes();
    let normalize = |u: RadialFunction| -> Result<Option<RadialFunction>> {
        let n = d.norm(&u)?;
        Ok((n > 0.0).then(|| u.scaled(1.0 / n)))
    };
    let Some(mut u) = normalize(d.restrict(&start))? else {
        return Ok(Ascent { value: 0.0, residual: 0.0, converged: true, u: start });
    };
    let mut value = restricted_power(d, &u, q, region);
    let mut residual = f64::INFINITY;
    for _ in 0..ASCENT_ITERATIONS {
        let dj: Vec<f64> = (0..nodes.len())
            .map(|i| {
                let x = u.values()[i];
                if d.active()[i] && region.contains(nodes[i]) && x != 0.0 {
                    q * d.source_weights()[i] * x.abs().powf(q - 1.0) * x.signum()
                } else {
                    0.0
                }
            })
            .collect();
        let p = d.riesz(&dj);
        let p_norm = dj.iter().zip(&p).map(|(a, b)| a * b).sum::<f64>().max(0.0).sqrt();
        if p_norm == 0.0 {
            // J' vanishes: u carries no mass in the region
            residual = 0.0;
            break;
        }
        // distance of the normalized ascent direction from u, in the H metric
        let next = RadialFunction::new(d.grid().clone(), p)?.scaled(1.0 / p_norm);
        let diff = next.step(-1.0, u.values());
        residual = d.norm(&diff)?;
        let next_value = restricted_power(d, &next, q, region);
        if next_value < value {
            break;
        }
        u = next;
        value = next_value;
        if residual <= ASCENT_TOL {
            break;
        }
    }
    Ok(Ascent { value, residual, converged: residual <= ASCENT_TOL, u })
}

/// Best of the warm start (if any) and `ASCENT_STARTS` random bumps in the region.
fn best_ascent(
    d: &DiscreteFunctional,
    q: f64,
    region: Region,
    warm: Option<&RadialFunction>,
    rng: &mut ChaCha8Rng,
) -> Result<Ascent> {
    let grid = d.grid();
    let (lo, hi) = match region {
        Region::Inside(r) => (grid.r_min(), r.min(grid.r_max())),
        Region::Outside(r) => (r.max(grid.r_min()), grid.r_max()),
    };
    let mut starts: Vec<RadialFunction> = (0..ASCENT_STARTS)
        .map(|_| Bump::random_in(rng, lo, hi).sample(grid))
        .collect();
    starts.extend(warm.cloned());
    let mut best: Option<Ascent> = None;
    for start in starts {
        let a = ascend(d, start, q, region)?;
        if best.as_ref().is_none_or(|b| a.value > b.value) {
            best = Some(a);
        }
    }
    Ok(best.expect("at least one start"))
}

fn levels(
    d: &DiscreteFunctional,
    q1: f64,
    q2: f64,
    radii: &[f64],
    seed: u64,
) -> Result<Vec<EmbeddingRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..radii.len()).collect();
    order.sort_by(|&a, &b| radii[a].total_cmp(&radii[b]));

    // inner levels grow with R: sweep upward reusing the previous maximizer;
    // outer levels shrink with R: sweep downward. A witness for the smaller
    // region is one for the larger, so the running maximum is a valid bound
    // and absorbs summation round-off.
    let mut inner: Vec<Option<Ascent>> = (0..radii.len()).map(|_| None).collect();
    let mut warm: Option<RadialFunction> = None;
    let mut floor = 0.0f64;
    for &i in &order {
        let mut a = best_ascent(d, q1, Region::Inside(radii[i]), warm.as_ref(), &mut rng)?;
        a.value = a.value.max(floor);
        floor = a.value;
        warm = Some(a.u.clone());
        inner[i] = Some(a);
    }
    let mut outer: Vec<Option<Ascent>> = (0..radii.len()).map(|_| None).collect();
    let mut warm: Option<RadialFunction> = None;
    let mut floor = 0.0f64;
    for &i in order.iter().rev() {
        let mut a = best_ascent(d, q2, Region::Outside(radii[i]), warm.as_ref(), &mut rng)?;
        a.value = a.value.max(floor);
        floor = a.value;
        warm = Some(a.u.clone());
        outer[i] = Some(a);
    }
    Ok(radii
        .iter()
        .zip(inner.into_iter().zip(outer))
        .map(|(&radius, (s1, s2))| {
            let (s1, s2) = (s1.unwrap(), s2.unwrap());
            EmbeddingRow {
                radius,
                s1_lower: s1.value,
                s2_lower: s2.value,
                s1_residual: s1.residual,
                s2_residual: s2.residual,
                s1_converged: s1.converged,
                s2_converged: s2.converged,
            }
        })
        .collect())
}

/// Embedding levels at each radius, for `q1` in `I1` and `q2` in `I2`.
pub fn embedding_levels(
    problem: &RadialProblem,
    config: &SolverConfig,
    q1: f64,
    q2: f64,
    radii: &[f64],
) -> Result<Vec<EmbeddingRow>> {
    let iv = problem.rates().intervals();
    if !iv.i1.contains(&Real::from_shortest_decimal(q1)) || !iv.i2.contains(&Real::from_shortest_decimal(q2)) {
        return Err(Error::NotAdmissible(format!(
            "embedding levels need q1 ∈ I1 = {} and q2 ∈ I2 = {}, got {q1}, {q2}",
            iv.i1, iv.i2
        )));
    }
    if let Some(r) = radii.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
        return Err(Error::InvalidInput(format!("radii must be positive, got {r}")));
    }
    let grid = config.grid.build(problem.dim())?;
    let d = DiscreteFunctional::new(grid, problem, Truncation::PositivePart)?;
    levels(&d, q1, q2, radii, config.seed)
}

/// Constants of `∫ K F(u) <= c1 ‖u‖^q1 + c2 ‖u‖^q2`: inflated embedding
/// levels at the split radius times the growth constant of `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoercivityConstants {
    pub q1: f64,
    pub q2: f64,
    pub c1: f64,
    pub c2: f64,
    pub m_tilde: f64,
    pub levels: EmbeddingRow,
    pub inflation: f64,
}

impl CoercivityConstants {
    /// `½ρ² - c1 ρ^q1 - c2 ρ^q2`.
    pub fn lower_bound(&self, rho: f64) -> f64 {
        0.5 * rho * rho - self.c1 * rho.powf(self.q1) - self.c2 * rho.powf(self.q2)
    }
}

fn constants(d: &DiscreteFunctional, config: &SolverConfig) -> Result<CoercivityConstants> {
    let f = d.problem().f();
    let (q1, q2) = f
        .envelope()
        .ok_or_else(|| Error::NotAdmissible(format!("{f} has no growth exponents")))?;
    let growth = check_growth(f, q1, q2, &default_samples())?;
    let row = levels(d, q1, q2, &[config.split_radius], config.seed)?.remove(0);
    Ok(CoercivityConstants {
        q1,
        q2,
        c1: config.inflation * growth.m_tilde * row.s1_lower,
        c2: config.inflation * growth.m_tilde * row.s2_lower,
        m_tilde: growth.m_tilde,
        levels: row,
        inflation: config.inflation,
    })
}

/// Witnesses of the mountain-pass geometry.
#[derive(Clone, Debug, PartialEq)]
pub struct MountainPass {
    pub constants: CoercivityConstants,
    pub rho: f64,
    /// `½ρ² - c1 ρ^q1 - c2 ρ^q2` at `rho`.
    pub lower_bound: f64,
    /// Smallest energy over the sampled directions on the `rho`-sphere.
    pub inf_on_sphere: f64,
    pub lambda: f64,
    /// `I(lambda u0)`, negative.
    pub energy_at_lambda: f64,
    /// Maximum of `I(t u0)` over `t in [0, lambda]`.
    pub minimax_upper: f64,
}

fn random_direction(rng: &mut ChaCha8Rng, d: &DiscreteFunctional) -> RadialFunction {
    let grid = d.grid();
    let bumps = rng.gen_range(1..=3);
    let mut values = vec![0.0; grid.len()];
    for _ in 0..bumps {
        let b = Bump::random_in(rng, 1e-2, 1e1);
        let sign = if rng.gen_bool(0.8) { 1.0 } else { -1.0 };
        let weight = sign * rng.gen_range(0.2..1.0);
        for (v, &r) in values.iter_mut().zip(grid.nodes()) {
            *v += weight * b.eval(r);
        }
    }
    let last = values.len() - 1;
    values[last] = 0.0;
    d.restrict(&RadialFunction::new(grid.clone(), values).expect("finite"))
}

/// Maximum of `I(t u0)` for `t in [0, t_max]`: a 257-point scan refined
/// by golden-section search around the best sample.
fn ray_maximum(d: &DiscreteFunctional, u0: &RadialFunction, t_max: f64) -> Result<f64> {
    let e = |t: f64| d.energy(&u0.scaled(t));
    let samples = 256;
    let mut best = (0.0, 0.0);
    for k in 1..=samples {
        let t = t_max * k as f64 / samples as f64;
        let v = e(t)?;
        if v > best.1 {
            best = (t, v);
        }
    }
    let h = t_max / samples as f64;
    let (mut a, mut b) = ((best.0 - h).max(0.0), (best.0 + h).min(t_max));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut x1, mut x2) = (b - g * (b - a), a + g * (b - a));
    let (mut f1, mut f2) = (e(x1)?, e(x2)?);
    for _ in 0..80 {
        if f1 > f2 {
            b = x2;
            (x2, f2) = (x1, f1);
            x1 = b - g * (b - a);
            f1 = e(x1)?;
        } else {
            a = x1;
            (x1, f1) = (x2, f2);
            x2 = a + g * (b - a);
            f2 = e(x2)?;
        }
    }
    Ok(best.1.max(f1).max(f2))
}

/// Radius `rho` with `inf_{‖u‖=rho} I > 0`, from the coercivity lower bound
/// and checked on sampled directions, and `lambda` with `I(lambda u0) < 0`.
pub fn mountain_pass_probe(problem: &RadialProblem, config: &SolverConfig) -> Result<MountainPass> {
    config.validate()?;
    let grid = config.grid.build(problem.dim())?;
    let d = DiscreteFunctional::new(grid, problem, Truncation::PositivePart)?;
    let constants = constants(&d, config)?;

    let (rho, lower_bound) = (0..=800)
        .map(|k| 10f64.powf(-4.0 + k as f64 / 100.0))
        .map(|rho| (rho, constants.lower_bound(rho)))
        .fold((f64::NAN, f64::NEG_INFINITY), |best, x| if x.1 > best.1 { x } else { best });
    if !(lower_bound > 0.0) {
        return Err(Error::GeometryFailed(format!(
            "½ρ² - {:.3e} ρ^{} - {:.3e} ρ^{} is never positive for ρ in [1e-4, 1e4]",
            constants.c1, constants.q1, constants.c2, constants.q2
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5eed_5f3e);
    let mut inf_on_sphere = f64::INFINITY;
    for _ in 0..config.sphere_samples {
        let w = random_direction(&mut rng, &d);
        let n = d.norm(&w)?;
        if n > 0.0 {
            inf_on_sphere = inf_on_sphere.min(d.energy(&w.scaled(rho / n))?);
        }
    }
    if !(inf_on_sphere > 0.0) {
        return Err(Error::GeometryFailed(format!(
            "sampled energy {inf_on_sphere:e} on the sphere of radius {rho:e} is not positive"
        )));
    }

    let u0 = d.restrict(&Bump::DEFAULT.sample(d.grid()));
    let mut lambda = 1.0;
    let mut energy_at_lambda = d.energy(&u0)?;
    let mut doublings = 0;
    while energy_at_lambda >= 0.0 {
        if doublings == 60 {
            return Err(Error::GeometryFailed(
                "energy stays nonnegative along the ray through the initial bump".into(),
            ));
        }
        lambda *= 2.0;
        energy_at_lambda = d.energy(&u0.scaled(lambda))?;
        doublings += 1;
    }
    let minimax_upper = ray_maximum(&d, &u0, lambda)?;
    Ok(MountainPass {
        constants,
        rho,
        lower_bound,
        inf_on_sphere,
        lambda,
        energy_at_lambda,
        minimax_upper,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoercivityReport {
    pub constants: CoercivityConstants,
    /// Smallest `I(u) - (½‖u‖² - c1‖u‖^q1 - c2‖u‖^q2)` over the trials.
    pub worst_margin: f64,
    /// Factor by which the constants would have to grow for every trial to
    /// satisfy the bound; at most 1 when they already do.
    pub required_inflation: f64,
    pub trials: usize,
}

/// `I(u) - (½‖u‖² - c1‖u‖^q1 - c2‖u‖^q2) = c1‖u‖^q1 + c2‖u‖^q2 - ∫ K F(u)`.
pub fn coercivity_margin(d: &DiscreteFunctional, c: &CoercivityConstants, u: &RadialFunction) -> Result<f64> {
    let n = d.norm(u)?;
    Ok(d.energy(u)? - c.lower_bound(n))
}

/// Tests the coercivity bound on `trials` random functions of norm
/// log-uniform in `[1e-3, 1e2]`.
pub fn coercivity_check(problem: &RadialProblem, config: &SolverConfig, trials: usize) -> Result<CoercivityReport> {
    config.validate()?;
    let grid = config.grid.build(problem.dim())?;
    let d = DiscreteFunctional::new(grid, problem, Truncation::PositivePart)?;
    let constants = constants(&d, config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0xc0e7_c1e5);
    let mut worst_margin = f64::INFINITY;
    let mut required_inflation = 0.0f64;
    for _ in 0..trials {
        let w = random_direction(&mut rng, &d);
        let n = d.norm(&w)?;
        if n == 0.0 {
            continue;
        }
        let rho = 10f64.powf(rng.gen_range(-3.0..2.0));
        let u = w.scaled(rho / n);
        worst_margin = worst_margin.min(coercivity_margin(&d, &constants, &u)?);
        let bound = constants.c1 * rho.powf(constants.q1) + constants.c2 * rho.powf(constants.q2);
        if bound > 0.0 {
            required_inflation = required_inflation.max(d.potential(&u)? / bound);
        }
    }
    Ok(CoercivityReport {
        constants,
        worst_margin: if trials == 0 { 0.0 } else { worst_margin },
        required_inflation,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::Mode;

    fn small_config() -> SolverConfig {
        let mut c = SolverConfig::new(Mode::SuperlinearNehari);
        c.grid.nodes = 256;
        c.grid.r_max = 40.0;
        c
    }

    #[test]
    fn zero_margin_at_origin() {
        let p = RadialProblem::constant_coefficients(3, 4.0).unwrap();
        let c = small_config();
        let d = DiscreteFunctional::new(c.grid.build(3).unwrap(), &p, Truncation::PositivePart).unwrap();
        let k = constants(&d, &c).unwrap();
        let zero = RadialFunction::zeros(d.grid().clone());
        assert_eq!(coercivity_margin(&d, &k, &zero).unwrap(), 0.0);
    }

    #[test]
    fn classical_geometry() {
        let p = RadialProblem::constant_coefficients(3, 4.0).unwrap();
        let mp = mountain_pass_probe(&p, &small_config()).unwrap();
        assert!(mp.inf_on_sphere > 0.0 && mp.energy_at_lambda < 0.0);
        assert!(mp.minimax_upper > mp.inf_on_sphere);
    }

    #[test]
    fn quadratic_geometry_fails() {
        let p = RadialProblem::constant_coefficients(3, 2.0).unwrap();
        assert!(matches!(
            mountain_pass_probe(&p, &small_config()),
            Err(Error::GeometryFailed(_))
        ));
    }
}
