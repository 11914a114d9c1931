//! Growth envelopes and structural conditions of `f`, decided analytically
//! for the library families and cross-checked on a log-spaced sample set.

use super::nonlinearity::{Family, Nonlinearity};
use super::profile::PowerProfile;
use crate::error::{Error, Result};
use crate::quadrature::integrate;

/// 512 points, log-spaced over `[1e-6, 1e6]`.
pub fn default_samples() -> Vec<f64> {
    log_samples(1e-6, 1e6, 512)
}

pub fn log_samples(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn envelope(t: f64, q1: f64, q2: f64) -> f64 {
    t.powf(q1 - 1.0).min(t.powf(q2 - 1.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    /// `max |f(t)| / min{t^(q1-1), t^(q2-1)}` over the samples.
    pub sup_estimate: f64,
    /// Constant `M` of `|f| <= M min{..}`: the analytic value when known,
    /// otherwise the sampled supremum times `1 + 1e-3`.
    pub m: f64,
    /// `M / min(q1, q2)`, the constant of `|F| <= M~ min{t^q1, t^q2}`.
    pub m_tilde: f64,
    pub analytic_m: Option<f64>,
    /// `max |f(t)| / (t^(q1-1) + t^(q2-1))` over the samples.
    pub sum_form_sup: f64,
}

/// The family's exact envelope constant when `(q1, q2)` are its own
/// exponents (in either order).
pub fn analytic_growth_constant(nl: &Nonlinearity, q1: f64, q2: f64) -> Option<f64> {
    let same = |a: f64, b: f64| (a == q1 && b == q2) || (a == q2 && b == q1);
    match *nl.family() {
        Family::MinPower { q1: a, q2: b } if same(a, b) => Some(1.0),
        Family::RationalPower { q1: a, q2: b } if same(a, b) => Some(if a == b { 0.5 } else { 1.0 }),
        Family::PurePower { q } if same(q, q) => Some(1.0),
        Family::Zero => Some(0.0),
        _ => None,
    }
}

/// Growth of the ratio at either end, or `None` if bounded on the samples:
/// monotone over the last eighth of the samples and a factor `1e3` over
/// the outer half.
fn unbounded_end(ratios: &[f64]) -> Option<&'static str> {
    let n = ratios.len();
    let tail = (n / 8).max(2);
    let grows = |outer: f64, middle: f64| outer > 1e3 * middle.max(f64::MIN_POSITIVE);
    if ratios[n - tail..].windows(2).all(|w| w[1] >= w[0]) && grows(ratios[n - 1], ratios[n / 2]) {
        return Some("t -> inf");
    }
    if ratios[..tail].windows(2).all(|w| w[0] >= w[1]) && grows(ratios[0], ratios[n / 2]) {
        return Some("t -> 0");
    }
    None
}

const SAMPLED_M_MARGIN: f64 = 1e-3;

/// Sampled growth constants of `f` against the double-power envelope.
pub fn check_growth(nl: &Nonlinearity, q1: f64, q2: f64, samples: &[f64]) -> Result<GrowthReport> {
    if !(q1 > 1.0 && q2 > 1.0) {
        return Err(Error::InvalidInput(format!("envelope exponents must exceed 1, got {q1}, {q2}")));
    }
    if samples.len() < 16 {
        return Err(Error::InvalidInput("at least 16 samples are required".into()));
    }
    let (lo, hi) = (samples[0], samples[samples.len() - 1]);
    if !(lo > 0.0 && lo <= 1e-4 && hi >= 1e4) {
        return Err(Error::InvalidInput(format!(
            "samples must be positive and span at least [1e-4, 1e4], got [{lo}, {hi}]"
        )));
    }
    let ratios: Vec<f64> = samples
        .iter()
        .map(|&t| nl.eval_f(t).abs() / envelope(t, q1, q2))
        .collect();
    if let Some(end) = unbounded_end(&ratios) {
        return Err(Error::Unbounded(format!(
            "|f(t)| / min{{t^{}, t^{}}} grows as {end} for {nl}",
            q1 - 1.0,
            q2 - 1.0
        )));
    }
    let sup_estimate = ratios.iter().copied().fold(0.0, f64::max);
    let sum_form_sup = samples
        .iter()
        .map(|&t| nl.eval_f(t).abs() / (t.powf(q1 - 1.0) + t.powf(q2 - 1.0)))
        .fold(0.0, f64::max);
    if sum_form_sup > sup_estimate {
        return Err(Error::Inconsistent(format!(
            "sum-form ratio {sum_form_sup} exceeds min-form ratio {sup_estimate}"
        )));
    }
    let analytic_m = analytic_growth_constant(nl, q1, q2);
    if let Some(m) = analytic_m {
        if sup_estimate > m * (1.0 + 1e-12) {
            return Err(Error::Inconsistent(format!(
                "sampled envelope ratio {sup_estimate} exceeds the analytic constant {m} for {nl}"
            )));
        }
    }
    // the sampled supremum can sit just below a limit approached outside
    // the sample range
    let m = analytic_m.unwrap_or(sup_estimate * (1.0 + SAMPLED_M_MARGIN));
    Ok(GrowthReport {
        sup_estimate,
        m,
        m_tilde: m / q1.min(q2),
        analytic_m,
        sum_form_sup,
    })
}

/// Outcome of a sampled check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampled {
    Holds,
    Fails,
    Inconclusive,
}

impl Sampled {
    fn contradicts(self, analytic: Option<bool>) -> bool {
        matches!(
            (self, analytic),
            (Sampled::Holds, Some(false)) | (Sampled::Fails, Some(true))
        )
    }
}

/// One structural condition: analytic verdict (when the family decides it),
/// sampled verdict, and the witness used.
#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub analytic: Option<bool>,
    pub sampled: Sampled,
    /// Exponent, threshold or infimum backing the verdict.
    pub witness: Option<f64>,
}

impl Condition {
    /// Analytic verdict when available, otherwise the sampled one if decisive.
    pub fn holds(&self) -> Option<bool> {
        self.analytic.or(match self.sampled {
            Sampled::Holds => Some(true),
            Sampled::Fails => Some(false),
            Sampled::Inconclusive => None,
        })
    }
}

/// Structural conditions on `f` over `t > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport {
    /// `0 <= theta F(t) <= f(t) t` for all `t > 0` with `theta > 2`; witness `theta`.
    pub ambrosetti_rabinowitz: Condition,
    /// `F(t0) > 0` for some `t0`; witness `t0`.
    pub positive_somewhere: Condition,
    /// `0 < theta F(t) <= f(t) t` for `t >= t0`, some `theta > 2`; witness `theta`.
    pub ar_at_infinity: Condition,
    /// `liminf_{t->0+} F(t)/t^theta > 0` with `theta < 2`; witness `theta`.
    pub small_t_lower_bound: Condition,
    /// `f(t)/t` strictly increasing on `(0, inf)`.
    pub ratio_increasing: Condition,
    /// `inf_{t>0} f(t) / min{t^(q1-1), t^(q2-1)} > 0`; witness the infimum.
    pub envelope_lower_bound: Condition,
    /// `f(-t) = -f(t)`.
    pub odd: Condition,
}

struct Analytic {
    ar: Option<(bool, Option<f64>)>,
    positive: Option<bool>,
    ar_inf: Option<bool>,
    small_t: Option<(bool, Option<f64>)>,
    ratio: Option<bool>,
    mult: Option<(bool, Option<f64>)>,
    odd: bool,
}

fn analytic(nl: &Nonlinearity) -> Analytic {
    match *nl.family() {
        Family::MinPower { q1, q2 } => {
            let (lo, hi) = (q1.min(q2), q1.max(q2));
            Analytic {
                ar: Some((lo > 2.0, (lo > 2.0).then_some(lo))),
                positive: Some(true),
                ar_inf: Some(lo > 2.0),
                small_t: Some((hi < 2.0, (hi < 2.0).then_some(hi))),
                ratio: Some(lo > 2.0),
                mult: Some((true, Some(1.0))),
                odd: true,
            }
        }
        Family::RationalPower { q1, q2 } => Analytic {
            ar: Some((q1 > 2.0, (q1 > 2.0).then_some(q1))),
            positive: Some(true),
            ar_inf: Some(q1 > 2.0),
            small_t: Some((q2 < 2.0, (q2 < 2.0).then_some(q2))),
            ratio: Some(q1 >= 2.0 && q2 > 2.0),
            mult: Some((true, Some(0.5))),
            odd: true,
        },
        Family::PurePower { q } => Analytic {
            ar: Some((q > 2.0, (q > 2.0).then_some(q))),
            positive: Some(true),
            ar_inf: Some(q > 2.0),
            small_t: Some((q < 2.0, (q < 2.0).then_some(q))),
            ratio: Some(q > 2.0),
            mult: Some((true, Some(1.0))),
            odd: true,
        },
        Family::PowerDiff { q1, .. } => Analytic {
            ar: Some((false, None)),
            positive: Some(true),
            ar_inf: Some(q1 > 2.0),
            small_t: Some((false, None)),
            ratio: None,
            mult: Some((false, None)),
            odd: false,
        },
        Family::LogModulated { q1, epsilon, .. } => Analytic {
            ar: Some((false, None)),
            positive: Some(true),
            ar_inf: Some(q1 > 2.0 && epsilon < q1 - 2.0),
            small_t: Some((false, None)),
            ratio: None,
            mult: Some((false, None)),
            odd: false,
        },
        Family::Zero => Analytic {
            ar: Some((true, Some(f64::INFINITY))),
            positive: Some(false),
            ar_inf: Some(false),
            small_t: Some((false, None)),
            ratio: Some(false),
            mult: Some((false, Some(0.0))),
            odd: true,
        },
    }
}

/// Margin for conditions that only hold in a limit; sampled verdicts closer
/// than this to the threshold are inconclusive.
const ASYMPTOTIC_MARGIN: f64 = 0.1;

fn sampled_ar(nl: &Nonlinearity, ts: &[f64], theta: Option<f64>) -> Sampled {
    let mut min_ratio = f64::INFINITY;
    for &t in ts {
        let big_f = nl.eval_antiderivative(t);
        let ft = nl.eval_f(t) * t;
        if big_f < 0.0 {
            return Sampled::Fails;
        }
        if big_f > 0.0 {
            min_ratio = min_ratio.min(ft / big_f);
        } else if ft < 0.0 {
            return Sampled::Fails;
        }
        if let Some(theta) = theta {
            if theta.is_finite() && theta * big_f > ft + 1e-9 * ft.abs().max(f64::MIN_POSITIVE) {
                return Sampled::Fails;
            }
        }
    }
    if min_ratio > 2.0 + 1e-3 {
        Sampled::Holds
    } else if min_ratio < 2.0 - 1e-9 {
        Sampled::Fails
    } else {
        Sampled::Inconclusive
    }
}

fn sampled_ar_at_infinity(nl: &Nonlinearity, ts: &[f64]) -> (Sampled, Option<f64>) {
    let decade: Vec<f64> = ts.iter().copied().filter(|&t| t >= ts[ts.len() - 1] / 10.0).collect();
    let mut ratios = Vec::with_capacity(decade.len());
    for &t in &decade {
        let big_f = nl.eval_antiderivative(t);
        if !(big_f > 0.0) {
            return (Sampled::Inconclusive, None);
        }
        ratios.push(nl.eval_f(t) * t / big_f);
    }
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo > 2.0 + ASYMPTOTIC_MARGIN {
        (Sampled::Holds, Some(lo))
    } else if hi < 2.0 - ASYMPTOTIC_MARGIN {
        (Sampled::Fails, Some(hi))
    } else {
        (Sampled::Inconclusive, Some(lo))
    }
}

fn sampled_small_t(nl: &Nonlinearity, ts: &[f64]) -> (Sampled, Option<f64>) {
    let decade: Vec<f64> = ts.iter().copied().filter(|&t| t <= ts[0] * 10.0).collect();
    let values: Vec<f64> = decade.iter().map(|&t| nl.eval_antiderivative(t)).collect();
    if values.iter().all(|&v| v < 0.0) {
        return (Sampled::Fails, None);
    }
    if values.iter().any(|&v| !(v > 0.0)) {
        return (Sampled::Inconclusive, None);
    }
    let (t0, t1) = (decade[0], decade[decade.len() - 1]);
    let slope = (values[values.len() - 1] / values[0]).ln() / (t1 / t0).ln();
    if slope < 2.0 - ASYMPTOTIC_MARGIN {
        (Sampled::Holds, Some(slope))
    } else if slope > 2.0 + ASYMPTOTIC_MARGIN {
        (Sampled::Fails, Some(slope))
    } else {
        (Sampled::Inconclusive, Some(slope))
    }
}

fn sampled_ratio_increasing(nl: &Nonlinearity, ts: &[f64]) -> Sampled {
    let ratios: Vec<f64> = ts.iter().map(|&t| nl.eval_f(t) / t).collect();
    let mut strict = true;
    for w in ratios.windows(2) {
        let scale = w[0].abs().max(w[1].abs());
        if w[1] < w[0] - 1e-12 * scale {
            return Sampled::Fails;
        }
        if !(w[1] > w[0]) {
            strict = false;
        }
    }
    if strict {
        Sampled::Holds
    } else {
        Sampled::Inconclusive
    }
}

/// Analytic and sampled verdicts for every structural condition.
/// A decisive sampled verdict that contradicts the analytic one is an error.
pub fn check_structure(nl: &Nonlinearity, samples: &[f64]) -> Result<StructureReport> {
    if samples.len() < 16 {
        return Err(Error::InvalidInput("at least 16 samples are required".into()));
    }
    let a = analytic(nl);
    let (q1, q2) = nl.envelope().unwrap_or((2.0, 2.0));

    let ar_theta = a.ar.and_then(|(_, theta)| theta);
    let ambrosetti_rabinowitz = Condition {
        analytic: a.ar.map(|(ok, _)| ok),
        sampled: sampled_ar(nl, samples, ar_theta.filter(|_| a.ar.is_some_and(|(ok, _)| ok))),
        witness: ar_theta,
    };

    let positive_t = samples.iter().copied().find(|&t| nl.eval_antiderivative(t) > 0.0);
    let positive_somewhere = Condition {
        analytic: a.positive,
        // F <= 0 on the samples does not rule out F > 0 further out
        sampled: if positive_t.is_some() { Sampled::Holds } else { Sampled::Inconclusive },
        witness: positive_t,
    };

    let (sampled, witness) = sampled_ar_at_infinity(nl, samples);
    let ar_at_infinity = Condition {
        analytic: a.ar_inf,
        sampled,
        witness,
    };

    let (sampled, slope) = sampled_small_t(nl, samples);
    let small_t_lower_bound = Condition {
        analytic: a.small_t.map(|(ok, _)| ok),
        sampled,
        witness: a.small_t.and_then(|(_, theta)| theta).or(slope),
    };

    let ratio_increasing = Condition {
        analytic: a.ratio,
        sampled: sampled_ratio_increasing(nl, samples),
        witness: None,
    };

    let inf_ratio = samples
        .iter()
        .map(|&t| nl.eval_f(t) / envelope(t, q1, q2))
        .fold(f64::INFINITY, f64::min);
    let mult_sampled = if inf_ratio <= 0.0 {
        Sampled::Fails
    } else if let Some((true, Some(bound))) = a.mult {
        if inf_ratio >= bound * (1.0 - 1e-12) {
            Sampled::Holds
        } else {
            Sampled::Fails
        }
    } else {
        Sampled::Inconclusive
    };
    let envelope_lower_bound = Condition {
        analytic: a.mult.map(|(ok, _)| ok),
        sampled: mult_sampled,
        witness: a.mult.and_then(|(_, v)| v).or(Some(inf_ratio)),
    };

    let odd_sampled = samples.iter().all(|&t| {
        let (plus, minus) = (nl.eval_f(t), nl.eval_f(-t));
        (plus + minus).abs() <= 1e-15 * plus.abs()
    });
    let odd = Condition {
        analytic: Some(a.odd),
        sampled: if odd_sampled { Sampled::Holds } else { Sampled::Fails },
        witness: None,
    };

    let report = StructureReport {
        ambrosetti_rabinowitz,
        positive_somewhere,
        ar_at_infinity,
        small_t_lower_bound,
        ratio_increasing,
        envelope_lower_bound,
        odd,
    };
    for (name, c) in report.conditions() {
        if c.sampled.contradicts(c.analytic) {
            return Err(Error::Inconsistent(format!(
                "{name} for {nl}: analytic {:?}, sampled {:?}",
                c.analytic, c.sampled
            )));
        }
    }
    Ok(report)
}

impl StructureReport {
    pub fn conditions(&self) -> [(&'static str, &Condition); 7] {
        [
            ("ambrosetti_rabinowitz", &self.ambrosetti_rabinowitz),
            ("positive_somewhere", &self.positive_somewhere),
            ("ar_at_infinity", &self.ar_at_infinity),
            ("small_t_lower_bound", &self.small_t_lower_bound),
            ("ratio_increasing", &self.ratio_increasing),
            ("envelope_lower_bound", &self.envelope_lower_bound),
            ("odd", &self.odd),
        ]
    }
}

/// Result of the integrability test for `K(|x|)` on the whole space.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegrabilityReport {
    /// `b0 > -N` and `b < -N`.
    pub analytic: bool,
    /// `∫ K(r) r^(N-1) dr` over `[1e-8, 1e8]`.
    pub truncated_integral: f64,
    /// The same integral over `[1e-7, 1e7]`; close to the above when
    /// the tails are integrable.
    pub inner_integral: f64,
}

/// Whether `K(|·|)` is integrable on `R^N`.
pub fn check_k_integrable(k: &PowerProfile, dim: u32) -> IntegrabilityReport {
    let n = dim as f64;
    let analytic = k.p0().to_f64() > -n && k.p_inf().to_f64() < -n;
    // integrate in s = ln r: ∫ K(e^s) e^(N s) ds
    let integral = |lo: f64, hi: f64| {
        let g = |s: f64| (k.ln_eval(s.exp()) + n * s).exp();
        let mut total = 0.0;
        let steps = 64;
        for i in 0..steps {
            let a = lo + (hi - lo) * i as f64 / steps as f64;
            let b = lo + (hi - lo) * (i + 1) as f64 / steps as f64;
            total += integrate(g, a, b, 0.0, 1e-10).0;
        }
        total
    };
    let (l8, l7) = (8.0 * std::f64::consts::LN_10, 7.0 * std::f64::consts::LN_10);
    IntegrabilityReport {
        analytic,
        truncated_integral: integral(-l8, l8),
        inner_integral: integral(-l7, l7),
    }
}

impl IntegrabilityReport {
    /// Numeric confirmation: the truncated integral is finite and stable
    /// when the window grows by a decade at each end.
    pub fn numerically_integrable(&self) -> bool {
        self.truncated_integral.is_finite()
            && (self.truncated_integral - self.inner_integral).abs() <= 1e-2 * self.truncated_integral.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::Real;

    #[test]
    fn min_power_growth_is_one() {
        let nl = Nonlinearity::min_power(3.0, 4.0).unwrap();
        let g = check_growth(&nl, 3.0, 4.0, &default_samples()).unwrap();
        assert_eq!(g.m, 1.0);
        assert!((g.sup_estimate - 1.0).abs() < 1e-15);
        assert!((g.m_tilde - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn pure_power_outgrows_smaller_envelope() {
        let nl = Nonlinearity::pure_power(4.0).unwrap();
        assert!(matches!(
            check_growth(&nl, 3.0, 4.0, &default_samples()),
            Err(Error::Unbounded(_))
        ));
    }

    #[test]
    fn rational_power_growth() {
        let nl = Nonlinearity::rational_power(3.0, 4.0).unwrap();
        let g = check_growth(&nl, 3.0, 4.0, &default_samples()).unwrap();
        assert_eq!(g.m, 1.0);
        assert!(g.sup_estimate <= 1.0);
    }

    #[test]
    fn k_integrability() {
        let k = |b0: i64, b: i64| PowerProfile::new(1.0, Real::int(b0), 1.0, Real::int(b), 1.0, 1.0).unwrap();
        let r = check_k_integrable(&k(0, -4), 3);
        assert!(r.analytic && r.numerically_integrable());
        let r = check_k_integrable(&k(0, 0), 3);
        assert!(!r.analytic && !r.numerically_integrable());
        let r = check_k_integrable(&k(-3, -4), 3);
        assert!(!r.analytic && !r.numerically_integrable());
    }

    #[test]
    fn structure_of_pure_power() {
        let s = check_structure(&Nonlinearity::pure_power(4.0).unwrap(), &default_samples()).unwrap();
        assert_eq!(s.ratio_increasing.holds(), Some(true));
        assert_eq!(s.ratio_increasing.sampled, Sampled::Holds);
        assert_eq!(s.ambrosetti_rabinowitz.witness, Some(4.0));
    }
}
