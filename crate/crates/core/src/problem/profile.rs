use crate::error::{Error, Result};
use crate::real::Real;

/// A positive radial profile equal to `c0 r^p0` on `(0, r1]` and to
/// `c_inf r^p_inf` on `[r2, inf)`, joined on `[r1, r2]` by linear
/// interpolation of `ln P` in `ln r`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerProfile {
    c0: f64,
    p0: Real,
    c_inf: f64,
    p_inf: Real,
    r1: f64,
    r2: f64,
}

impl PowerProfile {
    pub fn new(c0: f64, p0: Real, c_inf: f64, p_inf: Real, r1: f64, r2: f64) -> Result<Self> {
        if !(c0 > 0.0 && c0.is_finite() && c_inf > 0.0 && c_inf.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "profile coefficients must be positive and finite, got c0={c0} c_inf={c_inf}"
            )));
        }
        if !(r1 > 0.0 && r1.is_finite() && r2.is_finite() && r1 <= r2) {
            return Err(Error::InvalidInput(format!(
                "crossover radii must satisfy 0 < r1 <= r2, got r1={r1} r2={r2}"
            )));
        }
        if !p0.is_finite() || !p_inf.is_finite() {
            return Err(Error::InvalidInput("profile exponents must be finite".into()));
        }
        let profile = PowerProfile {
            c0,
            p0,
            c_inf,
            p_inf,
            r1,
            r2,
        };
        if r1 == r2 {
            let inner = profile.inner(r1);
            let outer = profile.outer(r1);
            if (inner - outer).abs() > 1e-12 * inner.abs().max(outer.abs()) {
                return Err(Error::InvalidInput(format!(
                    "profile jumps at r1 = r2 = {r1}: {inner} vs {outer}"
                )));
            }
        }
        Ok(profile)
    }

    /// `c r^p` on all of `(0, inf)`.
    pub fn pure(c: f64, p: Real) -> Result<Self> {
        PowerProfile::new(c, p.clone(), c, p, 1.0, 1.0)
    }

    pub fn constant(c: f64) -> Result<Self> {
        PowerProfile::pure(c, Real::int(0))
    }

    pub fn p0(&self) -> &Real {
        &self.p0
    }

    pub fn p_inf(&self) -> &Real {
        &self.p_inf
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn c_inf(&self) -> f64 {
        self.c_inf
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    fn inner(&self, r: f64) -> f64 {
        self.c0 * r.powf(self.p0.to_f64())
    }

    fn outer(&self, r: f64) -> f64 {
        self.c_inf * r.powf(self.p_inf.to_f64())
    }

    /// `ln P(r)`, finite for every `r > 0`.
    pub fn ln_eval(&self, r: f64) -> f64 {
        let ln_r = r.ln();
        let ln_inner = self.c0.ln() + self.p0.to_f64() * ln_r;
        let ln_outer = self.c_inf.ln() + self.p_inf.to_f64() * ln_r;
        if r <= self.r1 {
            ln_inner
        } else if r >= self.r2 {
            ln_outer
        } else {
            let s = (ln_r - self.r1.ln()) / (self.r2.ln() - self.r1.ln());
            (1.0 - s) * ln_inner + s * ln_outer
        }
    }

    /// `P(r)`; may overflow to `inf` or underflow to 0 for extreme `r`.
    pub fn eval(&self, r: f64) -> f64 {
        if r <= self.r1 {
            self.inner(r)
        } else if r >= self.r2 {
            self.outer(r)
        } else {
            self.ln_eval(r).exp()
        }
    }
}

/// Value of a profile at `r > 0`.
pub fn eval_potential(p: &PowerProfile, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidInput(format!("radius must be positive and finite, got {r}")));
    }
    Ok(p.eval(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_profile() {
        let p = PowerProfile::constant(1.0).unwrap();
        for r in [1e-6, 0.3, 1.0, 7.0, 1e5] {
            assert_eq!(eval_potential(&p, r).unwrap(), 1.0);
        }
    }

    #[test]
    fn inverse_power() {
        let p = PowerProfile::pure(1.0, Real::int(-1)).unwrap();
        assert_eq!(eval_potential(&p, 0.5).unwrap(), 2.0);
    }

    #[test]
    fn rejects_bad_input() {
        let p = PowerProfile::constant(1.0).unwrap();
        assert!(eval_potential(&p, 0.0).is_err());
        assert!(eval_potential(&p, -1.0).is_err());
        assert!(PowerProfile::constant(0.0).is_err());
        assert!(PowerProfile::new(1.0, Real::int(0), 2.0, Real::int(0), 1.0, 1.0).is_err());
        assert!(PowerProfile::new(1.0, Real::int(0), 1.0, Real::int(0), 2.0, 1.0).is_err());
    }

    #[test]
    fn blend_is_continuous() {
        let p = PowerProfile::new(2.0, Real::int(-3), 0.5, Real::int(2), 0.5, 4.0).unwrap();
        for edge in [0.5, 4.0] {
            let below = p.eval(edge * (1.0 - 1e-15));
            let at = p.eval(edge);
            let above = p.eval(edge * (1.0 + 1e-15));
            assert!((below - at).abs() <= 1e-12 * at);
            assert!((above - at).abs() <= 1e-12 * at);
        }
        assert_eq!(p.eval(0.25), 2.0 * 0.25f64.powi(-3));
        assert_eq!(p.eval(8.0), 0.5 * 64.0);
        // positive on the blend
        assert!(p.eval(1.3) > 0.0);
    }
}
