//! Log-spaced radial grids, nodal functions and the discrete energy.

mod function;
mod functional;
mod grid;

pub use function::RadialFunction;
pub use functional::{energy, energy_gradient, norm_v, weak_residual, weighted_integral, DiscreteFunctional};
pub use grid::{log_spaced_nodes, make_grid, surface_factor, RadialGrid};
