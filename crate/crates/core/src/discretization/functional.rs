use std::sync::Arc;

use super::function::RadialFunction;
use super::grid::RadialGrid;
use crate::error::{Error, Result};
use crate::problem::{RadialProblem, Truncation};

/// The discrete energy `I(u) = ½‖u‖² - ∫ K F(u)` of a problem on a grid.
///
/// The kinetic part is the exact weighted integral of the piecewise linear
/// interpolant, `|S^(N-1)| Σ (u_{i+1}-u_i)² (r_{i+1}^N - r_i^N) / (N h_i²)`;
/// the potential parts use the log-trapezoid weights of the grid. This
/// makes `‖·‖²` a tridiagonal quadratic form `uᵀAu` and the gradient exact.
///
/// Nodes whose weighted potential overflows are clipped: functions must
/// vanish there and those values are held at 0, as is the value at `R_max`.
#[derive(Clone, Debug)]
pub struct DiscreteFunctional {
    grid: Arc<RadialGrid>,
    problem: RadialProblem,
    truncation: Truncation,
    stiffness: Vec<f64>,
    mass: Vec<f64>,
    source: Vec<f64>,
    active: Vec<bool>,
}

impl DiscreteFunctional {
    pub fn new(grid: Arc<RadialGrid>, problem: &RadialProblem, truncation: Truncation) -> Result<Self> {
        if grid.dim() != problem.dim() {
            return Err(Error::InvalidInput(format!(
                "grid dimension {} differs from problem dimension {}",
                grid.dim(),
                problem.dim()
            )));
        }
        let n = grid.len();
        let nodes = grid.nodes();
        let dim = grid.dim() as i32;
        let surface = grid.surface_factor();
        let stiffness = nodes
            .windows(2)
            .map(|w| {
                let h = w[1] - w[0];
                surface * (w[1].powi(dim) - w[0].powi(dim)) / (dim as f64 * h * h)
            })
            .collect();
        let weighted = |ln_profile: &dyn Fn(f64) -> f64| -> Vec<f64> {
            (0..n).map(|i| (grid.ln_weight(i) + ln_profile(nodes[i])).exp()).collect()
        };
        let mass = weighted(&|r| problem.v().ln_eval(r));
        let source = weighted(&|r| problem.k().ln_eval(r));
        let mut active: Vec<bool> = mass
            .iter()
            .zip(&source)
            .map(|(m, s)| m.is_finite() && s.is_finite())
            .collect();
        active[n - 1] = false;
        Ok(DiscreteFunctional {
            grid,
            problem: problem.clone(),
            truncation,
            stiffness,
            mass,
            source,
            active,
        })
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn problem(&self) -> &RadialProblem {
        &self.problem
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    /// Nodes where values may be nonzero.
    pub fn active(&self) -> &[bool] {
        &self.active
    }

    /// Quadrature weights of `K` (`∫ K g ≈ Σ source_i g(r_i)`).
    pub fn source_weights(&self) -> &[f64] {
        &self.source
    }

    fn check(&self, u: &RadialFunction) -> Result<()> {
        if !Arc::ptr_eq(u.grid(), &self.grid) && **u.grid() != *self.grid {
            return Err(Error::InvalidInput("function lives on a different grid".into()));
        }
        for (i, &v) in u.values().iter().enumerate() {
            if v != 0.0 && !self.active[i] && i + 1 != u.values().len() {
                return Err(Error::NonFinite { index: i, r: self.grid.nodes()[i] });
            }
        }
        Ok(())
    }

    /// Zeroes clipped entries so that `u` is admissible here.
    pub fn restrict(&self, u: &RadialFunction) -> RadialFunction {
        let values = u
            .values()
            .iter()
            .zip(&self.active)
            .map(|(&v, &a)| if a { v } else { 0.0 })
            .collect();
        RadialFunction::new(self.grid.clone(), values).expect("restricted values are finite")
    }

    fn mass_term(&self, i: usize, u: f64, v: f64) -> f64 {
        if self.active[i] {
            self.mass[i] * u * v
        } else {
            0.0
        }
    }

    /// `A u` for the tridiagonal form of `‖·‖²`, zero on inactive rows.
    fn apply(&self, u: &[f64]) -> Vec<f64> {
        let n = u.len();
        let mut out = vec![0.0; n];
        for (e, &k) in self.stiffness.iter().enumerate() {
            let d = k * (u[e + 1] - u[e]);
            out[e] -= d;
            out[e + 1] += d;
        }
        for i in 0..n {
            out[i] = if self.active[i] { out[i] + self.mass[i] * u[i] } else { 0.0 };
        }
        out
    }

    /// `<u, v>` of the discrete weighted `H^1` space.
    pub fn inner(&self, u: &RadialFunction, v: &RadialFunction) -> Result<f64> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.inner_values(u.values(), v.values()))
    }

    fn inner_values(&self, u: &[f64], v: &[f64]) -> f64 {
        let kinetic: f64 = self
            .stiffness
            .iter()
            .enumerate()
            .map(|(e, k)| k * (u[e + 1] - u[e]) * (v[e + 1] - v[e]))
            .sum();
        let potential: f64 = (0..u.len()).map(|i| self.mass_term(i, u[i], v[i])).sum();
        kinetic + potential
    }

    pub fn norm_sq(&self, u: &RadialFunction) -> Result<f64> {
        self.check(u)?;
        Ok(self.inner_values(u.values(), u.values()))
    }

    pub fn norm(&self, u: &RadialFunction) -> Result<f64> {
        Ok(self.norm_sq(u)?.sqrt())
    }

    /// `∫ K(|x|) F(u) dx`.
    pub fn potential(&self, u: &RadialFunction) -> Result<f64> {
        self.check(u)?;
        let f = self.problem.f();
        let mut total = 0.0;
        for (i, &v) in u.values().iter().enumerate() {
            if v == 0.0 || !self.active[i] {
                continue;
            }
            let term = self.source[i] * f.antiderivative_with(v, self.truncation);
            if !term.is_finite() {
                return Err(Error::NonFinite { index: i, r: self.grid.nodes()[i] });
            }
            total += term;
        }
        Ok(total)
    }

    /// `∫ K(|x|) f(u) v dx`.
    pub fn source_pairing(&self, u: &RadialFunction, v: &RadialFunction) -> Result<f64> {
        let fu = self.source_vector(u)?;
        Ok(fu.iter().zip(v.values()).map(|(a, b)| a * b).sum())
    }

    /// Nodal vector `K_i w_i f(u_i)`.
    fn source_vector(&self, u: &RadialFunction) -> Result<Vec<f64>> {
        self.check(u)?;
        let f = self.problem.f();
        let mut out = vec![0.0; u.values().len()];
        for (i, &v) in u.values().iter().enumerate() {
            if !self.active[i] {
                continue;
            }
            let term = self.source[i] * f.f_with(v, self.truncation);
            if !term.is_finite() {
                return Err(Error::NonFinite { index: i, r: self.grid.nodes()[i] });
            }
            out[i] = term;
        }
        Ok(out)
    }

    pub fn energy(&self, u: &RadialFunction) -> Result<f64> {
        Ok(0.5 * self.norm_sq(u)? - self.potential(u)?)
    }

    /// Partial derivatives of the discrete energy with respect to the
    /// nodal values; 0 at held nodes.
    pub fn gradient(&self, u: &RadialFunction) -> Result<Vec<f64>> {
        let fu = self.source_vector(u)?;
        let mut g = self.apply(u.values());
        for ((gi, fi), &a) in g.iter_mut().zip(&fu).zip(&self.active) {
            *gi = if a { *gi - fi } else { 0.0 };
        }
        Ok(g)
    }

    /// `A⁻¹ g`: the Riesz representative of a dual vector, i.e. the
    /// gradient in the `H^1` metric. Thomas algorithm on active nodes.
    pub fn riesz(&self, g: &[f64]) -> Vec<f64> {
        let n = g.len();
        let mut diag = vec![1.0; n];
        let mut upper = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        for i in 0..n {
            if !self.active[i] {
                continue;
            }
            let left = if i > 0 { self.stiffness[i - 1] } else { 0.0 };
            let right = if i + 1 < n { self.stiffness[i] } else { 0.0 };
            diag[i] = left + right + self.mass[i];
            rhs[i] = g[i];
            if i + 1 < n && self.active[i + 1] {
                upper[i] = -right;
            }
        }
        // lower[i] = upper[i-1] by symmetry
        for i in 1..n {
            let lower = upper[i - 1];
            if lower != 0.0 {
                let m = lower / diag[i - 1];
                diag[i] -= m * upper[i - 1];
                rhs[i] -= m * rhs[i - 1];
            }
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let next = if i + 1 < n { upper[i] * x[i + 1] } else { 0.0 };
            x[i] = (rhs[i] - next) / diag[i];
        }
        x
    }

    /// Gradient in the `H^1` metric, usable as a descent direction.
    pub fn h_gradient(&self, u: &RadialFunction) -> Result<Vec<f64>> {
        Ok(self.riesz(&self.gradient(u)?))
    }

    /// `sqrt(gᵀ A⁻¹ g)`, the dual norm of a nodal gradient.
    pub fn dual_norm(&self, g: &[f64]) -> f64 {
        let p = self.riesz(g);
        g.iter().zip(&p).map(|(a, b)| a * b).sum::<f64>().max(0.0).sqrt()
    }

    /// `‖I'(u)‖_* / (1 + ‖u‖)`.
    pub fn weak_residual(&self, u: &RadialFunction) -> Result<f64> {
        let g = self.gradient(u)?;
        Ok(self.dual_norm(&g) / (1.0 + self.norm(u)?))
    }

    /// `I'(u)u = ‖u‖² - ∫ K f(u) u`.
    pub fn nehari_pairing(&self, u: &RadialFunction) -> Result<f64> {
        Ok(self.norm_sq(u)? - self.source_pairing(u, u)?)
    }

    /// `|I'(u)u| / (1 + ‖u‖²)`.
    pub fn nehari_residual(&self, u: &RadialFunction) -> Result<f64> {
        Ok(self.nehari_pairing(u)?.abs() / (1.0 + self.norm_sq(u)?))
    }
}

fn functional(u: &RadialFunction, problem: &RadialProblem) -> Result<DiscreteFunctional> {
    DiscreteFunctional::new(u.grid().clone(), problem, Truncation::None)
}

/// `‖u‖` with `f` used as written for the family.
pub fn norm_v(u: &RadialFunction, problem: &RadialProblem) -> Result<f64> {
    functional(u, problem)?.norm(u)
}

pub fn energy(u: &RadialFunction, problem: &RadialProblem) -> Result<f64> {
    functional(u, problem)?.energy(u)
}

pub fn energy_gradient(u: &RadialFunction, problem: &RadialProblem) -> Result<RadialFunction> {
    let g = functional(u, problem)?.gradient(u)?;
    RadialFunction::new(u.grid().clone(), g)
}

pub fn weak_residual(u: &RadialFunction, problem: &RadialProblem) -> Result<f64> {
    functional(u, problem)?.weak_residual(u)
}

/// `∫_{R^N} g(|x|) dx` over the grid.
pub fn weighted_integral(g: impl Fn(f64) -> f64, grid: &RadialGrid) -> Result<f64> {
    grid.integrate(g)
}
