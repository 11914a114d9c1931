use std::fmt::Write as _;

use super::config::Mode;
use crate::discretization::RadialFunction;

/// Outcome of a ground-state solve.
#[derive(Clone, Debug)]
pub struct GroundStateReport {
    pub mode: Mode,
    pub u: RadialFunction,
    pub energy: f64,
    pub nehari_residual: f64,
    pub weak_residual: f64,
    /// Radius of a sphere on which the energy stays positive.
    pub mp_rho: Option<f64>,
    /// Sampled infimum of the energy on that sphere.
    pub mp_sphere_infimum: Option<f64>,
    /// Scaling with negative energy on the ray through the initial bump.
    pub mp_descent_lambda: Option<f64>,
    /// Maximum of the energy along that ray; bounds the minimax level from above.
    pub minimax_upper: Option<f64>,
    /// Global infimum estimate (sub-linear mode).
    pub mu: Option<f64>,
    /// Energy of the scaled seed the sub-linear descent starts from.
    pub seed_energy: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Seed of the multistart run that produced `u`.
    pub seed: u64,
    /// Energies of the converged runs, in seed order.
    pub multistart_energies: Vec<Option<f64>>,
    /// Energy after every accepted iteration of the selected run.
    pub energy_trace: Vec<f64>,
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "none".to_string(), |x| format!("{x:e}"))
}

impl GroundStateReport {
    /// `key = value` lines, one per scalar field.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| writeln!(out, "{k} = {v}").unwrap();
        kv("mode", self.mode.to_string());
        kv("converged", self.converged.to_string());
        kv("iterations", self.iterations.to_string());
        kv("seed", self.seed.to_string());
        kv("energy", format!("{:e}", self.energy));
        kv("nehari_residual", format!("{:e}", self.nehari_residual));
        kv("weak_residual", format!("{:e}", self.weak_residual));
        kv("min_u", format!("{:e}", self.u.min_value()));
        kv("max_u", format!("{:e}", self.u.max_abs()));
        kv("mp_rho", opt(self.mp_rho));
        kv("mp_sphere_infimum", opt(self.mp_sphere_infimum));
        kv("mp_descent_lambda", opt(self.mp_descent_lambda));
        kv("minimax_upper", opt(self.minimax_upper));
        kv("mu", opt(self.mu));
        kv("seed_energy", opt(self.seed_energy));
        let starts: Vec<String> = self.multistart_energies.iter().map(|e| opt(*e)).collect();
        kv("multistart_energies", starts.join(","));
        out
    }
}
