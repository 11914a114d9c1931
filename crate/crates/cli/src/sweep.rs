use std::fmt::Write as _;

use radial_nls::exponents::{PotentialRates, Theorem};
use radial_nls::problem::admissibility_of;
use radial_nls::real::{ExtReal, OpenInterval, Real};
use radial_nls::solver::solve;
use rayon::prelude::*;
use toml::{Table, Value};

use crate::config::{Rate, RunConfig, SweepParameter};
use crate::error::CliError;
use crate::output::{decimal, Output};
use crate::solve::required_theorem;

fn with_parameter(rates: &PotentialRates, p: SweepParameter, v: Real) -> PotentialRates {
    match p {
        SweepParameter::A0 => rates.with_a0(v),
        SweepParameter::B0 => rates.with_b0(v),
        SweepParameter::A => rates.with_a(v),
        SweepParameter::B => rates.with_b(v),
    }
}

fn row(config: &RunConfig, parameter: SweepParameter, value: &Rate, solve_too: bool) -> Result<String, CliError> {
    let rates = with_parameter(&config.rates()?, parameter, value.value().clone());
    let problem = config.problem_with(rates)?;
    let (h, rep) = admissibility_of(&problem)?;
    let d = |v: &ExtReal| decimal(Some(v));
    // empty intervals get empty endpoint cells
    let ends = |iv: &OpenInterval| {
        if iv.is_empty() {
            [String::new(), String::new()]
        } else {
            [d(&iv.lo), d(&iv.hi)]
        }
    };
    // q_star and q_upper_star are only defined for b0 > b_star
    let defined = ExtReal::Finite(rep.rates.b0().clone()) > rep.b_star;
    let at_zero = |v: &ExtReal| if defined { d(v) } else { String::new() };
    let mut cells = vec![
        value.value().to_f64().to_string(),
        value.value().to_string(),
        at_zero(&rep.q_star),
        at_zero(&rep.q_upper_star),
        d(&rep.q_double_star),
    ];
    cells.extend(ends(&rep.intervals.i1));
    cells.extend(ends(&rep.intervals.i2));
    cells.extend([rep.in_p.to_string(), rep.in_p1.to_string()]);
    cells.extend(Theorem::ALL.iter().map(|&t| rep.is_applicable(t).to_string()));
    if solve_too {
        let solver = config.solver_config(h.claim.superlinear)?;
        if rep.is_applicable(required_theorem(solver.mode)) {
            match solve(&problem, &solver) {
                Ok(r) => cells.extend([format!("{:e}", r.energy), r.converged.to_string()]),
                Err(e) => cells.extend([String::new(), format!("error: {}", e.to_string().replace(',', ";"))]),
            }
        } else {
            cells.extend([String::new(), "not admissible".into()]);
        }
    }
    Ok(cells.join(","))
}

pub fn run(config: &RunConfig, out: &Output) -> Result<String, CliError> {
    let sweep = config
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Config("sweep: section required for sweep".into()))?;
    let mut header = vec![
        sweep.parameter.name().to_string(),
        format!("{}_exact", sweep.parameter.name()),
        "q_star".into(),
        "q_upper_star".into(),
        "q_double_star".into(),
        "i1_lo".into(),
        "i1_hi".into(),
        "i2_lo".into(),
        "i2_hi".into(),
        "in_p".into(),
        "in_p1".into(),
    ];
    header.extend(Theorem::ALL.iter().map(|t| t.name().to_string()));
    if sweep.solve {
        header.extend(["energy".to_string(), "converged".to_string()]);
    }
    // independent instances in parallel; collect keeps the input order
    let rows: Vec<String> = sweep
        .values
        .par_iter()
        .map(|v| row(config, sweep.parameter, v, sweep.solve))
        .collect::<Result<_, _>>()?;
    let mut csv = header.join(",") + "\n";
    for r in &rows {
        writeln!(csv, "{r}").unwrap();
    }
    let table_path = out.write("sweep.csv", &csv)?;
    let mut summary = Table::new();
    summary.insert("rows".into(), Value::Integer(rows.len() as i64));
    summary.insert("table".into(), Value::String("sweep.csv".into()));
    let mut doc = Table::new();
    doc.insert("sweep".into(), Value::Table(summary));
    let report_path = out.write_report("sweep.toml", doc, config)?;
    Ok(format!(
        "{} rows over {}\nwrote {}\nwrote {}\n",
        rows.len(),
        sweep.parameter.name(),
        table_path.display(),
        report_path.display()
    ))
}
