use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::discretization::{RadialFunction, RadialGrid};

/// `amplitude * exp(-(ln r - ln center)² / width²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bump {
    pub center: f64,
    pub width: f64,
    pub amplitude: f64,
}

impl Bump {
    /// Centered at `r = 1`, unit log-width, peak 2.
    pub const DEFAULT: Bump = Bump {
        center: 1.0,
        width: 1.0,
        amplitude: 2.0,
    };

    /// `DEFAULT` for seed 0, otherwise a random variation of it.
    pub fn for_seed(seed: u64) -> Bump {
        if seed == 0 {
            return Bump::DEFAULT;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Bump {
            center: rng.gen_range(-1.0f64..1.0).exp(),
            width: rng.gen_range(0.5..1.5),
            amplitude: rng.gen_range(1.5..3.0),
        }
    }

    /// A bump centered log-uniformly in `[lo, hi]`.
    pub fn random_in<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> Bump {
        let center = if hi > lo { rng.gen_range(lo.ln()..hi.ln()).exp() } else { lo };
        Bump {
            center,
            width: rng.gen_range(0.2..2.0),
            amplitude: 1.0,
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        let z = (r.ln() - self.center.ln()) / self.width;
        self.amplitude * (-z * z).exp()
    }

    pub fn sample(&self, grid: &Arc<RadialGrid>) -> RadialFunction {
        RadialFunction::from_fn(grid.clone(), |r| self.eval(r)).expect("bump values are finite")
    }
}
