use std::f64::consts::PI;

use radial_nls::discretization::{surface_factor, RadialGrid};
use radial_nls::quadrature::integrate;
use statrs::function::gamma::gamma;

#[test]
fn kronrod_reproduces_the_gamma_function() {
    // the r^s singularity at 0 exercises the adaptive refinement
    for s in [0.3, 0.5, 1.7, 3.3, 6.0] {
        let (value, err) = integrate(|r: f64| r.powf(s) * (-r).exp(), 0.0, 80.0, 1e-14, 1e-12);
        let exact = gamma(s + 1.0);
        assert!((value - exact).abs() <= 1e-10 * exact, "s = {s}: {value} vs {exact}");
        assert!(err <= 1e-8 * exact);
    }
}

#[test]
fn surface_factor_matches_the_sphere_area() {
    for n in 1..=12u32 {
        let half = n as f64 / 2.0;
        let exact = 2.0 * PI.powf(half) / gamma(half);
        let got = surface_factor(n);
        assert!((got - exact).abs() <= 1e-13 * exact, "N = {n}: {got} vs {exact}");
    }
}

#[test]
fn grid_integrates_radial_moments() {
    // ∫_{R^N} |x|^s e^{-|x|} dx = |S^{N-1}| Γ(N + s)
    for (n, s) in [(3u32, 0.0), (3, 0.5), (4, -1.5), (5, 1.0)] {
        let grid = RadialGrid::new(n, 1e-8, 80.0, 8192).unwrap();
        let got = grid.integrate(|r| r.powf(s) * (-r).exp()).unwrap();
        let exact = surface_factor(n) * gamma(n as f64 + s);
        assert!((got - exact).abs() <= 1e-5 * exact, "N = {n}, s = {s}: {got} vs {exact}");
    }
}
