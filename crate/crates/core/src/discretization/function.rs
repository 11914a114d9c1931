use std::fmt::Write as _;
use std::sync::Arc;

use super::grid::RadialGrid;
use crate::error::{Error, Result};

/// Nodal values of a radial function; the value at `R_max` is pinned to 0.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialFunction {
    grid: Arc<RadialGrid>,
    values: Vec<f64>,
}

impl RadialFunction {
    pub fn new(grid: Arc<RadialGrid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidInput(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: i, r: grid.nodes()[i] });
        }
        if values[values.len() - 1] != 0.0 {
            return Err(Error::InvalidInput("value at R_max must be 0".into()));
        }
        Ok(RadialFunction { grid, values })
    }

    /// Samples `u` at the nodes, with 0 at `R_max`.
    pub fn from_fn(grid: Arc<RadialGrid>, u: impl Fn(f64) -> f64) -> Result<Self> {
        let mut values: Vec<f64> = grid.nodes().iter().map(|&r| u(r)).collect();
        let last = values.len() - 1;
        values[last] = 0.0;
        RadialFunction::new(grid, values)
    }

    pub fn zeros(grid: Arc<RadialGrid>) -> Self {
        let values = vec![0.0; grid.len()];
        RadialFunction { grid, values }
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        RadialFunction {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| lambda * v).collect(),
        }
    }

    /// `self + alpha * dir`; `dir` is taken with its last entry ignored.
    pub fn step(&self, alpha: f64, dir: &[f64]) -> Self {
        let mut values: Vec<f64> = self.values.iter().zip(dir).map(|(u, d)| u + alpha * d).collect();
        let last = values.len() - 1;
        values[last] = 0.0;
        RadialFunction { grid: self.grid.clone(), values }
    }

    pub fn map(&self, g: impl Fn(f64) -> f64) -> Self {
        let mut values: Vec<f64> = self.values.iter().map(|&v| g(v)).collect();
        let last = values.len() - 1;
        values[last] = 0.0;
        RadialFunction { grid: self.grid.clone(), values }
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Two-column CSV `r,u` after a `# N=<N> Rmax=<R>` header line.
    /// Numbers use the shortest round-trip representation.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.values.len() * 48);
        writeln!(out, "# N={} Rmax={}", self.grid.dim(), self.grid.r_max()).unwrap();
        out.push_str("r,u\n");
        for (r, u) in self.grid.nodes().iter().zip(&self.values) {
            writeln!(out, "{r:e},{u:e}").unwrap();
        }
        out
    }

    /// Reads the output of [`RadialFunction::to_csv`]; the nodes must be
    /// log-spaced.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty CSV".into()))?;
        let (dim, r_max) = parse_header(header)?;
        if lines.next().map(str::trim) != Some("r,u") {
            return Err(Error::Parse("expected column line 'r,u'".into()));
        }
        let mut rs = Vec::new();
        let mut us = Vec::new();
        for (k, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (r, u) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("line {}: expected 'r,u'", k + 3)))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", k + 3)))
            };
            rs.push(parse(r)?);
            us.push(parse(u)?);
        }
        if rs.is_empty() {
            return Err(Error::Parse("no data rows".into()));
        }
        if rs[rs.len() - 1] != r_max {
            return Err(Error::Parse(format!("last node {} differs from Rmax={r_max}", rs[rs.len() - 1])));
        }
        let grid = RadialGrid::new(dim, rs[0], r_max, rs.len())?;
        for (i, (&a, &b)) in grid.nodes().iter().zip(&rs).enumerate() {
            if (a - b).abs() > 1e-12 * a {
                return Err(Error::Parse(format!("node {i} at {b} is not on a log-spaced grid")));
            }
        }
        RadialFunction::new(Arc::new(grid), us)
    }
}

fn parse_header(line: &str) -> Result<(u32, f64)> {
    let bad = || Error::Parse(format!("expected header '# N=<N> Rmax=<R>', got '{line}'"));
    let rest = line.strip_prefix('#').ok_or_else(bad)?;
    let mut dim = None;
    let mut r_max = None;
    for field in rest.split_whitespace() {
        match field.split_once('=') {
            Some(("N", v)) => dim = v.parse().ok(),
            Some(("Rmax", v)) => r_max = v.parse().ok(),
            _ => return Err(bad()),
        }
    }
    Ok((dim.ok_or_else(bad)?, r_max.ok_or_else(bad)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let grid = Arc::new(RadialGrid::new(4, 1e-5, 30.0, 64).unwrap());
        let u = RadialFunction::from_fn(grid, |r| (-r).exp() / 3.0).unwrap();
        let text = u.to_csv();
        assert!(text.starts_with("# N=4 Rmax=30\nr,u\n"));
        let back = RadialFunction::from_csv(&text).unwrap();
        assert_eq!(back.values(), u.values());
        assert_eq!(back.grid().len(), 64);
    }

    #[test]
    fn boundary_value_is_pinned() {
        let grid = Arc::new(RadialGrid::new(3, 1e-3, 10.0, 16).unwrap());
        let u = RadialFunction::from_fn(grid.clone(), |_| 1.0).unwrap();
        assert_eq!(u.values()[15], 0.0);
        assert!(RadialFunction::new(grid.clone(), vec![1.0; 16]).is_err());
        let mut v = vec![0.0; 16];
        v[3] = f64::NAN;
        assert!(matches!(RadialFunction::new(grid, v), Err(Error::NonFinite { index: 3, .. })));
    }

    #[test]
    fn malformed_csv() {
        assert!(RadialFunction::from_csv("").is_err());
        assert!(RadialFunction::from_csv("# N=3\nr,u\n1,0\n").is_err());
        assert!(RadialFunction::from_csv("# N=3 Rmax=2\nr,u\n1,x\n").is_err());
    }
}
