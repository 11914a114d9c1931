use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `|S^(N-1)| = 2 pi^(N/2) / Gamma(N/2)`, with `Gamma` at integers and
/// half-integers built from `Gamma(1) = 1`, `Gamma(1/2) = sqrt(pi)`.
pub fn surface_factor(dim: u32) -> f64 {
    let (mut gamma, mut x) = if dim.is_multiple_of(2) { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    let half = dim as f64 / 2.0;
    while x < half {
        gamma *= x;
        x += 1.0;
    }
    2.0 * PI.powf(half) / gamma
}

/// `n` geometrically spaced points from `lo` to `hi` inclusive.
pub fn log_spaced_nodes(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && lo < hi && hi.is_finite()) || n < 2 {
        return Err(Error::InvalidInput(format!(
            "need 0 < lo < hi and n >= 2, got lo={lo} hi={hi} n={n}"
        )));
    }
    let (a, b) = (lo.ln(), hi.ln());
    let step = (b - a) / (n - 1) as f64;
    let mut nodes: Vec<f64> = (0..n).map(|i| (a + step * i as f64).exp()).collect();
    nodes[0] = lo;
    nodes[n - 1] = hi;
    Ok(nodes)
}

/// Log-spaced radial nodes on `[r_min, r_max]` in dimension `N`.
///
/// Integrals `∫_{R^N} g(|x|) dx` become `|S^(N-1)| ∫ g(r) r^(N-1) dr`,
/// approximated by the trapezoid rule in `s = ln r`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialGrid {
    dim: u32,
    nodes: Vec<f64>,
    log_step: f64,
    surface: f64,
}

impl RadialGrid {
    pub const MIN_NODES: usize = 16;

    pub fn new(dim: u32, r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        if dim < 3 {
            return Err(Error::InvalidInput(format!("dimension must be >= 3, got {dim}")));
        }
        if n < Self::MIN_NODES {
            return Err(Error::InvalidInput(format!(
                "grid needs at least {} nodes, got {n}",
                Self::MIN_NODES
            )));
        }
        let nodes = log_spaced_nodes(r_min, r_max, n)?;
        Ok(RadialGrid {
            dim,
            log_step: (r_max.ln() - r_min.ln()) / (n - 1) as f64,
            nodes,
            surface: surface_factor(dim),
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn r_min(&self) -> f64 {
        self.nodes[0]
    }

    pub fn r_max(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    pub fn log_step(&self) -> f64 {
        self.log_step
    }

    pub fn surface_factor(&self) -> f64 {
        self.surface
    }

    /// Same range with `n` nodes.
    pub fn with_nodes(&self, n: usize) -> Result<Self> {
        RadialGrid::new(self.dim, self.r_min(), self.r_max(), n)
    }

    /// Same log step on `[r_min, r_max]` with a new outer radius.
    pub fn with_r_max(&self, r_max: f64) -> Result<Self> {
        let n = ((r_max.ln() - self.r_min().ln()) / self.log_step).round() as usize + 1;
        RadialGrid::new(self.dim, self.r_min(), r_max, n)
    }

    /// `ln` of the quadrature weight at node `i`, so that
    /// `∫_{R^N} g dx ≈ Σ exp(ln_weight_i) g(r_i)`.
    pub fn ln_weight(&self, i: usize) -> f64 {
        let end = if i == 0 || i + 1 == self.nodes.len() { 0.5f64.ln() } else { 0.0 };
        self.surface.ln() + self.log_step.ln() + end + self.dim as f64 * self.nodes[i].ln()
    }

    pub fn weights(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.ln_weight(i).exp()).collect()
    }

    /// `|S^(N-1)| ∫ g(r) r^(N-1) dr` over the grid from nodal values.
    pub fn integrate_values(&self, values: &[f64]) -> Result<f64> {
        if values.len() != self.len() {
            return Err(Error::InvalidInput(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                self.len()
            )));
        }
        let mut total = 0.0;
        for (i, &g) in values.iter().enumerate() {
            if !g.is_finite() {
                return Err(Error::NonFinite { index: i, r: self.nodes[i] });
            }
            if g != 0.0 {
                total += g * self.ln_weight(i).exp();
            }
        }
        Ok(total)
    }

    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> Result<f64> {
        let values: Vec<f64> = self.nodes.iter().map(|&r| g(r)).collect();
        self.integrate_values(&values)
    }
}

/// Grid constructor with the usual argument order.
pub fn make_grid(dim: u32, r_min: f64, r_max: f64, n: usize) -> Result<RadialGrid> {
    RadialGrid::new(dim, r_min, r_max, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_closed_forms() {
        assert!((surface_factor(3) - 4.0 * PI).abs() < 1e-14);
        assert!((surface_factor(4) - 2.0 * PI * PI).abs() < 1e-14);
        assert!((surface_factor(5) - 8.0 * PI * PI / 3.0).abs() < 1e-13);
    }

    #[test]
    fn three_geometric_nodes() {
        let nodes = log_spaced_nodes(1e-4, 1e2, 3).unwrap();
        assert_eq!(nodes[0], 1e-4);
        assert!((nodes[1] - 1e-1).abs() < 1e-16);
        assert_eq!(nodes[2], 1e2);
    }

    #[test]
    fn constant_ratio() {
        let g = make_grid(3, 1e-6, 1e3, 1024).unwrap();
        let q = g.nodes()[1] / g.nodes()[0];
        for w in g.nodes().windows(2) {
            assert!(w[1] > w[0]);
            assert!((w[1] / w[0] - q).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(make_grid(2, 1e-3, 1.0, 64).is_err());
        assert!(make_grid(3, 1e-3, 1.0, 15).is_err());
        assert!(make_grid(3, 1.0, 1.0, 64).is_err());
        assert!(make_grid(3, 0.0, 1.0, 64).is_err());
    }

    #[test]
    fn quadrature_examples() {
        let g = make_grid(3, 1e-6, 50.0, 2048).unwrap();
        assert!((g.integrate(|r| (-2.0 * r).exp()).unwrap() - PI).abs() < 1e-6);
        assert_eq!(g.integrate(|_| 0.0).unwrap(), 0.0);
        let g = make_grid(3, 1.0, 2.0, 2048).unwrap();
        assert!((g.integrate(|r| 1.0 / r).unwrap() - 6.0 * PI).abs() < 1e-5);
        assert!(matches!(
            g.integrate(|r| if r > 1.5 { f64::NAN } else { 0.0 }),
            Err(Error::NonFinite { .. })
        ));
    }
}
