use std::fmt::Write as _;

use radial_nls::exponents::Theorem;
use radial_nls::problem::admissibility_of;
use radial_nls::solver::{solve, GroundStateReport, Mode};
use toml::{Table, Value};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{key_values, Output};

/// The result a solve in `mode` relies on.
pub fn required_theorem(mode: Mode) -> Theorem {
    match mode {
        Mode::SuperlinearNehari => Theorem::GroundState,
        Mode::SublinearGlobal => Theorem::DoublePowerSub,
    }
}

/// Resolves `auto` mode and runs the solver. Returns the resolved
/// configuration, whether the required result applies, and the report.
pub fn solve_config(config: &RunConfig) -> Result<(RunConfig, bool, GroundStateReport), CliError> {
    let problem = config.problem()?;
    let (h, rep) = admissibility_of(&problem)?;
    let solver = config.solver_config(h.claim.superlinear)?;
    let mut resolved = config.clone();
    resolved.solver.mode = solver.mode.name().into();
    let admissible = rep.is_applicable(required_theorem(solver.mode));
    let report = solve(&problem, &solver)?;
    Ok((resolved, admissible, report))
}

fn trace_csv(rep: &GroundStateReport) -> String {
    let mut csv = String::from("iteration,energy\n");
    for (i, e) in rep.energy_trace.iter().enumerate() {
        writeln!(csv, "{i},{e:e}").unwrap();
    }
    csv
}

pub fn run(config: &RunConfig, out: &Output) -> Result<String, CliError> {
    let (resolved, admissible, rep) = solve_config(config)?;
    let mut result = key_values(&rep.to_key_value());
    result.insert("required_result".into(), Value::String(required_theorem(rep.mode).name().into()));
    result.insert("admissible".into(), Value::Boolean(admissible));
    let mut doc = Table::new();
    doc.insert("result".into(), Value::Table(result));
    let report = out.write_report("report.toml", doc, &resolved)?;
    let profile = out.write("profile.csv", &rep.u.to_csv())?;
    let trace = out.write("energy_trace.csv", &trace_csv(&rep))?;

    let mut text = String::new();
    if !admissible {
        writeln!(text, "warning: {} does not apply; solved because of --force", required_theorem(rep.mode)).unwrap();
    }
    writeln!(
        text,
        "{}: energy {:e}, weak residual {:e}, Nehari residual {:e}, {} iterations, converged {}",
        rep.mode, rep.energy, rep.weak_residual, rep.nehari_residual, rep.iterations, rep.converged
    )
    .unwrap();
    for path in [report, profile, trace] {
        writeln!(text, "wrote {}", path.display()).unwrap();
    }
    if rep.converged {
        Ok(text)
    } else {
        print!("{text}");
        Err(CliError::Solver(format!(
            "no convergence after {} iterations (weak residual {:e})",
            rep.iterations, rep.weak_residual
        )))
    }
}
