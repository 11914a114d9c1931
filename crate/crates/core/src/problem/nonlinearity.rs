use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::quadrature::integrate;

/// The library nonlinearities. Exponent parameters are the envelope
/// exponents `q1 <= q2` of `|f(t)| <= M min{t^(q1-1), t^(q2-1)}` (`q1`
/// governs large `t`, `q2` small `t`), except for `MinPower` where either
/// order is accepted.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `sign(t) min{|t|^(q1-1), |t|^(q2-1)}`
    MinPower { q1: f64, q2: f64 },
    /// `|t|^(q2-2) t / (1 + |t|^(q2-q1))`, `q1 <= q2`
    RationalPower { q1: f64, q2: f64 },
    /// `|t|^(q-2) t`
    PurePower { q: f64 },
    /// `(|t|^(q1+q-1) - |t|^(q2-1)) / (1 + |t|^q)`, `1 < q1 <= q2 < q1 + q`
    PowerDiff { q1: f64, q2: f64, q: f64 },
    /// `|t|^(q2-1+eps) ln|t| / (1 + |t|^(q2-q1+2 eps))`, `0` at `t = 0`
    LogModulated { q1: f64, q2: f64, epsilon: f64 },
    /// `f = 0`
    Zero,
}

/// How `f` is extended to negative arguments inside the solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// `f` as defined on all of the real line.
    None,
    /// `f(t) = 0` for `t <= 0` (super-linear solver).
    PositivePart,
    /// `f(-t) = -f(t)` built from the values on `t > 0` (sub-linear solver).
    OddExtension,
}

const ANCHOR_MIN: i32 = -160;
const ANCHOR_MAX: i32 = 160;

fn anchor(k: i32) -> f64 {
    (k as f64 / 4.0).exp2()
}

#[derive(Clone, Debug)]
pub struct Nonlinearity {
    family: Family,
    // F at t_k = 2^(k/4), k in ANCHOR_MIN..=ANCHOR_MAX, for families without
    // a closed-form antiderivative.
    anchors: Arc<OnceLock<Vec<f64>>>,
}

impl PartialEq for Nonlinearity {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family
    }
}

fn check_exponent(name: &str, q: f64) -> Result<()> {
    if q > 1.0 && q.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be a finite number > 1, got {q}")))
    }
}

impl Nonlinearity {
    pub fn new(family: Family) -> Result<Self> {
        match family {
            Family::MinPower { q1, q2 } => {
                check_exponent("q1", q1)?;
                check_exponent("q2", q2)?;
            }
            Family::RationalPower { q1, q2 } => {
                check_exponent("q1", q1)?;
                check_exponent("q2", q2)?;
                if q1 > q2 {
                    return Err(Error::InvalidInput(format!("rational power needs q1 <= q2, got {q1} > {q2}")));
                }
            }
            Family::PurePower { q } => check_exponent("q", q)?,
            Family::PowerDiff { q1, q2, q } => {
                check_exponent("q1", q1)?;
                check_exponent("q2", q2)?;
                if !(q1 <= q2 && q2 < q1 + q && q.is_finite()) {
                    return Err(Error::InvalidInput(format!(
                        "power difference needs 1 < q1 <= q2 < q1 + q, got q1={q1} q2={q2} q={q}"
                    )));
                }
            }
            Family::LogModulated { q1, q2, epsilon } => {
                check_exponent("q1", q1)?;
                check_exponent("q2", q2)?;
                if !(q1 <= q2 && epsilon > 0.0 && epsilon.is_finite()) {
                    return Err(Error::InvalidInput(format!(
                        "log-modulated power needs 1 < q1 <= q2 and epsilon > 0, got q1={q1} q2={q2} epsilon={epsilon}"
                    )));
                }
            }
            Family::Zero => {}
        }
        Ok(Nonlinearity {
            family,
            anchors: Arc::new(OnceLock::new()),
        })
    }

    pub fn min_power(q1: f64, q2: f64) -> Result<Self> {
        Nonlinearity::new(Family::MinPower { q1, q2 })
    }

    pub fn rational_power(q1: f64, q2: f64) -> Result<Self> {
        Nonlinearity::new(Family::RationalPower { q1, q2 })
    }

    pub fn pure_power(q: f64) -> Result<Self> {
        Nonlinearity::new(Family::PurePower { q })
    }

    pub fn power_diff(q1: f64, q2: f64, q: f64) -> Result<Self> {
        Nonlinearity::new(Family::PowerDiff { q1, q2, q })
    }

    pub fn log_modulated(q1: f64, q2: f64, epsilon: f64) -> Result<Self> {
        Nonlinearity::new(Family::LogModulated { q1, q2, epsilon })
    }

    pub fn zero() -> Self {
        Nonlinearity::new(Family::Zero).expect("no parameters to validate")
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn name(&self) -> &'static str {
        match self.family {
            Family::MinPower { .. } => "min-power",
            Family::RationalPower { .. } => "rational-power",
            Family::PurePower { .. } => "pure-power",
            Family::PowerDiff { .. } => "power-diff",
            Family::LogModulated { .. } => "log-modulated",
            Family::Zero => "zero",
        }
    }

    /// The family's own envelope exponents `(q1, q2)`; `None` for `f = 0`.
    pub fn envelope(&self) -> Option<(f64, f64)> {
        match self.family {
            Family::MinPower { q1, q2 }
            | Family::RationalPower { q1, q2 }
            | Family::PowerDiff { q1, q2, .. }
            | Family::LogModulated { q1, q2, .. } => Some((q1, q2)),
            Family::PurePower { q } => Some((q, q)),
            Family::Zero => None,
        }
    }

    /// `f(t)` for `t >= 0`.
    fn f_pos(&self, t: f64) -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        match self.family {
            Family::MinPower { q1, q2 } => t.powf(q1 - 1.0).min(t.powf(q2 - 1.0)),
            Family::RationalPower { q1, q2 } => {
                if t > 1.0 {
                    // divide through by t^(q2-q1) to avoid inf/inf
                    t.powf(q1 - 1.0) / (t.powf(q1 - q2) + 1.0)
                } else {
                    t.powf(q2 - 1.0) / (1.0 + t.powf(q2 - q1))
                }
            }
            Family::PurePower { q } => t.powf(q - 1.0),
            Family::PowerDiff { q1, q2, q } => {
                if t > 1.0 {
                    (t.powf(q1 - 1.0) - t.powf(q2 - 1.0 - q)) / (t.powf(-q) + 1.0)
                } else {
                    (t.powf(q1 + q - 1.0) - t.powf(q2 - 1.0)) / (1.0 + t.powf(q))
                }
            }
            Family::LogModulated { q1, q2, epsilon } => {
                let d = q2 - q1 + 2.0 * epsilon;
                if t > 1.0 {
                    t.powf(q1 - 1.0 - epsilon) * t.ln() / (t.powf(-d) + 1.0)
                } else {
                    t.powf(q2 - 1.0 + epsilon) * t.ln() / (1.0 + t.powf(d))
                }
            }
            Family::Zero => 0.0,
        }
    }

    /// Whether `f(-t) = -f(t)` for the formula as written.
    fn formula_is_odd(&self) -> bool {
        !matches!(self.family, Family::PowerDiff { .. } | Family::LogModulated { .. })
    }

    /// `f(t)` on the whole real line, as written for the family.
    pub fn eval_f(&self, t: f64) -> f64 {
        if t >= 0.0 {
            self.f_pos(t)
        } else if self.formula_is_odd() {
            -self.f_pos(-t)
        } else {
            self.f_pos(-t)
        }
    }

    /// `F(t) = ∫_0^t f(s) ds` on the whole real line.
    pub fn eval_antiderivative(&self, t: f64) -> f64 {
        if t >= 0.0 {
            self.antiderivative_pos(t)
        } else if self.formula_is_odd() {
            self.antiderivative_pos(-t)
        } else {
            -self.antiderivative_pos(-t)
        }
    }

    /// `f` with the solver-facing extension to `t < 0`.
    pub fn f_with(&self, t: f64, truncation: Truncation) -> f64 {
        match truncation {
            Truncation::None => self.eval_f(t),
            Truncation::PositivePart if t <= 0.0 => 0.0,
            Truncation::PositivePart => self.f_pos(t),
            Truncation::OddExtension => t.signum() * self.f_pos(t.abs()),
        }
    }

    /// `F` with the solver-facing extension to `t < 0`.
    pub fn antiderivative_with(&self, t: f64, truncation: Truncation) -> f64 {
        match truncation {
            Truncation::None => self.eval_antiderivative(t),
            Truncation::PositivePart if t <= 0.0 => 0.0,
            Truncation::PositivePart => self.antiderivative_pos(t),
            Truncation::OddExtension => self.antiderivative_pos(t.abs()),
        }
    }

    fn antiderivative_pos(&self, t: f64) -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        match self.family {
            Family::MinPower { q1, q2 } => {
                let (lo, hi) = (q1.min(q2), q1.max(q2));
                if t <= 1.0 {
                    t.powf(hi) / hi
                } else {
                    1.0 / hi + (t.powf(lo) - 1.0) / lo
                }
            }
            Family::PurePower { q } => t.powf(q) / q,
            Family::Zero => 0.0,
            _ => self.numeric_antiderivative(t),
        }
    }

    fn segment(&self, a: f64, b: f64) -> f64 {
        let scale = (self.f_pos(a).abs() + self.f_pos(b).abs()) * (b - a).abs();
        integrate(|s| self.f_pos(s), a, b, 1e-16 * scale + 1e-300, 1e-14).0
    }

    fn anchor_values(&self) -> &[f64] {
        self.anchors.get_or_init(|| {
            let mut values = Vec::with_capacity((ANCHOR_MAX - ANCHOR_MIN + 1) as usize);
            let mut acc = self.segment(0.0, anchor(ANCHOR_MIN));
            values.push(acc);
            for k in ANCHOR_MIN + 1..=ANCHOR_MAX {
                acc += self.segment(anchor(k - 1), anchor(k));
                values.push(acc);
            }
            values
        })
    }

    fn numeric_antiderivative(&self, t: f64) -> f64 {
        if t <= anchor(ANCHOR_MIN) {
            return self.segment(0.0, t);
        }
        let k = ((4.0 * t.log2()).floor() as i32).clamp(ANCHOR_MIN, ANCHOR_MAX);
        // guard against log2 rounding across an anchor
        let k = if anchor(k) > t { k - 1 } else { k };
        let base = self.anchor_values()[(k - ANCHOR_MIN) as usize];
        base + self.segment(anchor(k), t)
    }
}

impl fmt::Display for Nonlinearity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::MinPower { q1, q2 } => write!(f, "min-power(q1={q1}, q2={q2})"),
            Family::RationalPower { q1, q2 } => write!(f, "rational-power(q1={q1}, q2={q2})"),
            Family::PurePower { q } => write!(f, "pure-power(q={q})"),
            Family::PowerDiff { q1, q2, q } => write!(f, "power-diff(q1={q1}, q2={q2}, q={q})"),
            Family::LogModulated { q1, q2, epsilon } => {
                write!(f, "log-modulated(q1={q1}, q2={q2}, epsilon={epsilon})")
            }
            Family::Zero => f.write_str("zero"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let p = Nonlinearity::pure_power(4.0).unwrap();
        assert_eq!(p.eval_antiderivative(2.0), 4.0);
        let m = Nonlinearity::min_power(3.0, 4.0).unwrap();
        assert_eq!(m.eval_f(2.0), 4.0);
        assert_eq!(m.eval_f(0.5), 0.125);
        assert_eq!(m.eval_f(-2.0), -4.0);
        // F(2) = 1/4 + (8 - 1)/3
        assert!((m.eval_antiderivative(2.0) - (0.25 + 7.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn numeric_antiderivative_matches_closed_form() {
        // q1 = q2 = 4: f = t^3 / 2, F = t^4 / 8
        let r = Nonlinearity::rational_power(4.0, 4.0).unwrap();
        for t in [1e-5f64, 0.3, 1.0, 2.5, 40.0, 1e4] {
            let exact = t.powi(4) / 8.0;
            let got = r.eval_antiderivative(t);
            assert!((got - exact).abs() <= 1e-12 * exact, "t={t}: {got} vs {exact}");
        }
        // q1 = 2, q2 = 4: F = t^2/2 - ln(1+t^2)/2
        let r = Nonlinearity::rational_power(2.0, 4.0).unwrap();
        for t in [0.01f64, 0.7, 3.0, 100.0] {
            let exact = 0.5 * t * t - 0.5 * (t * t).ln_1p();
            let got = r.eval_antiderivative(t);
            assert!((got - exact).abs() <= 1e-12 * exact.abs().max(1e-12), "t={t}: {got} vs {exact}");
        }
    }

    #[test]
    fn even_formulas_have_odd_antiderivative() {
        let f = Nonlinearity::power_diff(3.0, 3.5, 1.0).unwrap();
        assert_eq!(f.eval_f(-2.0), f.eval_f(2.0));
        assert_eq!(f.eval_antiderivative(-2.0), -f.eval_antiderivative(2.0));
        assert_eq!(f.f_with(-2.0, Truncation::OddExtension), -f.eval_f(2.0));
        assert_eq!(f.f_with(-2.0, Truncation::PositivePart), 0.0);
    }

    #[test]
    fn log_modulated_is_continuous_at_zero() {
        let f = Nonlinearity::log_modulated(3.0, 4.0, 0.5).unwrap();
        assert_eq!(f.eval_f(0.0), 0.0);
        assert!(f.eval_f(1e-12).abs() < 1e-30);
        assert_eq!(f.eval_f(1.0), 0.0);
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(Nonlinearity::pure_power(1.0).is_err());
        assert!(Nonlinearity::rational_power(4.0, 3.0).is_err());
        assert!(Nonlinearity::power_diff(2.0, 4.0, 1.0).is_err());
        assert!(Nonlinearity::log_modulated(3.0, 4.0, 0.0).is_err());
    }
}
