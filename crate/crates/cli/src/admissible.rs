use std::fmt::Write as _;

use radial_nls::exponents::{AdmissibilityReport, Theorem};
use radial_nls::problem::{admissibility_of, Condition, Hypotheses, Sampled};
use radial_nls::real::ExtReal;
use toml::{Table, Value};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::Output;

fn s(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn pair(lo: &ExtReal, hi: &ExtReal) -> String {
    format!("({lo}, {hi})")
}

fn condition_text(c: &Condition) -> String {
    let verdict = match c.holds() {
        Some(true) => "holds",
        Some(false) => "fails",
        None => "undecided",
    };
    let source = match (c.analytic, c.sampled) {
        (Some(_), Sampled::Inconclusive) => "analytic",
        (Some(_), _) => "analytic, confirmed by sampling",
        (None, _) => "sampled",
    };
    match c.witness {
        Some(w) => format!("{verdict} ({source}; witness {w})"),
        None => format!("{verdict} ({source})"),
    }
}

/// Exponents, intervals and regions of the rates.
fn exponent_table(rep: &AdmissibilityReport) -> Table {
    let r = &rep.rates;
    let mut t = Table::new();
    t.insert("dim".into(), Value::Integer(r.dim() as i64));
    for (k, v) in [("a0", r.a0()), ("b0", r.b0()), ("a", r.a()), ("b", r.b())] {
        t.insert(k.into(), s(v));
    }
    for (k, v) in [
        ("b_lower", &rep.b_lower),
        ("b_star", &rep.b_star),
        ("q_star", &rep.q_star),
        ("q_upper_star", &rep.q_upper_star),
        ("q_double_star", &rep.q_double_star),
    ] {
        t.insert(k.into(), s(v));
    }
    t.insert("i1".into(), s(&rep.intervals.i1));
    t.insert("i2".into(), s(&rep.intervals.i2));
    t.insert("i1_and_i2".into(), s(&rep.intervals.both));
    t.insert(
        "single_power_super".into(),
        s(rep.super_power.as_ref().map_or("undefined".into(), |p| pair(&p.q_lower, &p.q_upper))),
    );
    match &rep.sub_power {
        Some(p) => {
            t.insert("single_power_sub".into(), s(pair(&p.q_lower, &p.q_upper)));
            t.insert("a_regions".into(), Value::Array(p.a_regions.iter().map(s).collect()));
            t.insert("b_regions".into(), Value::Array(p.b_regions.iter().map(s).collect()));
        }
        None => {
            t.insert("single_power_sub".into(), s("undefined"));
        }
    }
    match &rep.corollary {
        Some(c) => {
            t.insert("corollary".into(), s(format!("{:?}", c.hypothesis)));
            t.insert("corollary_q1_bound".into(), s(&c.q1_bound));
            t.insert("corollary_q2_bound".into(), s(&c.q2_bound));
        }
        None => {
            t.insert("corollary".into(), s("none"));
        }
    }
    t.insert("in_p".into(), Value::Boolean(rep.in_p));
    t.insert("in_p1".into(), Value::Boolean(rep.in_p1));
    t
}

fn claim_table(h: &Hypotheses) -> Table {
    let c = &h.claim;
    let mut t = Table::new();
    t.insert("q1".into(), s(&c.q1));
    t.insert("q2".into(), s(&c.q2));
    t.insert("theta".into(), s(&c.theta));
    t.insert("superlinear".into(), Value::Boolean(c.superlinear));
    t.insert("k_integrable".into(), Value::Boolean(c.k_integrable));
    t.insert("ar_at_infinity".into(), Value::Boolean(c.ar_at_infinity));
    t.insert("ratio_increasing".into(), Value::Boolean(c.ratio_increasing));
    t.insert("growth_m".into(), Value::Float(h.growth.m));
    t.insert("growth_m_tilde".into(), Value::Float(h.growth.m_tilde));
    for (name, cond) in h.structure.conditions() {
        t.insert(name.into(), s(condition_text(cond)));
    }
    t
}

fn verdict_table(rep: &AdmissibilityReport) -> Table {
    let mut t = Table::new();
    for th in Theorem::ALL {
        let v = rep.verdict(th);
        let mut row = Table::new();
        row.insert("applicable".into(), Value::Boolean(v.applicable));
        row.insert("reason".into(), s(&v.reason));
        if let Some(w) = &v.witness {
            row.insert("q1".into(), s(&w.q1));
            row.insert("q2".into(), s(&w.q2));
            row.insert("direct".into(), Value::Boolean(w.direct));
        }
        t.insert(th.name().into(), Value::Table(row));
    }
    t
}

fn render(title: &str, t: &Table, out: &mut String) {
    writeln!(out, "{title}").unwrap();
    for (k, v) in t {
        let text = match v {
            Value::String(x) => x.clone(),
            Value::Array(xs) => xs.iter().map(|x| x.as_str().unwrap_or_default()).collect::<Vec<_>>().join(", "),
            other => other.to_string(),
        };
        writeln!(out, "  {k}: {text}").unwrap();
    }
}

pub fn run(config: &RunConfig, out: &Output) -> Result<String, CliError> {
    let problem = config.problem()?;
    let (h, rep) = admissibility_of(&problem)?;
    let exponents = exponent_table(&rep);
    let claim = claim_table(&h);
    let verdicts = verdict_table(&rep);

    let mut text = String::new();
    writeln!(text, "nonlinearity: {}", problem.f()).unwrap();
    render("rates and exponents:", &exponents, &mut text);
    render("growth claim:", &claim, &mut text);
    writeln!(text, "verdicts:").unwrap();
    for th in Theorem::ALL {
        let v = rep.verdict(th);
        let status = if v.applicable { "applicable" } else { "not applicable" };
        let witness = v
            .witness
            .as_ref()
            .map(|w| format!(" [q1 = {}, q2 = {}]", w.q1, w.q2))
            .unwrap_or_default();
        writeln!(text, "  {th}: {status}{witness}; {}", v.reason).unwrap();
    }
    let applicable: Vec<_> = rep.applicable().iter().map(|t| t.name()).collect();
    writeln!(
        text,
        "summary: {}",
        if applicable.is_empty() { "no result applies".into() } else { applicable.join(", ") }
    )
    .unwrap();

    let mut doc = Table::new();
    doc.insert("exponents".into(), Value::Table(exponents));
    doc.insert("claim".into(), Value::Table(claim));
    doc.insert("verdicts".into(), Value::Table(verdicts));
    let path = out.write_report("admissibility.toml", doc, config)?;
    writeln!(text, "wrote {}", path.display()).unwrap();
    Ok(text)
}
