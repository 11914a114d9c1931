use std::fmt::Write as _;

use radial_nls::exponents::{exponent_curves, CurveSpec, Regime};
use radial_nls::real::Real;

use crate::config::{Rate, RunConfig};
use crate::error::CliError;
use crate::output::{decimal, exact, Output};

fn spec_for(config: &RunConfig, regime: Regime) -> Result<CurveSpec, CliError> {
    let plot = config.plot.as_ref().expect("caller checked the plot section");
    let dim = config.problem.dim;
    let n = dim as i64;
    Ok(CurveSpec {
        dim,
        regime,
        fixed: plot.fixed.as_ref().map_or_else(|| regime.representative(dim), |r| r.value().clone()),
        lo: plot.lo.as_ref().map_or_else(|| Real::int(-(2 * n + 2)), |r| r.value().clone()),
        hi: plot.hi.as_ref().map_or_else(|| Real::int(2), |r| r.value().clone()),
        samples: plot.samples,
    })
}

/// CSV with decimal columns followed by their exact rational counterparts.
fn table(spec: &CurveSpec) -> Result<String, CliError> {
    let rows = exponent_curves(spec).map_err(|e| CliError::Config(format!("plot: {e}")))?;
    let names = spec.column_names();
    let mut csv = String::new();
    let exact_names: Vec<String> = names.iter().map(|n| format!("{n}_exact")).collect();
    writeln!(csv, "{},{}", names.join(","), exact_names.join(",")).unwrap();
    for row in rows {
        let x = radial_nls::real::ExtReal::Finite(row.abscissa.clone());
        let mut cells = vec![decimal(Some(&x))];
        cells.extend(row.values.iter().map(|v| decimal(v.as_ref())));
        cells.push(exact(Some(&x)));
        cells.extend(row.values.iter().map(|v| exact(v.as_ref())));
        writeln!(csv, "{}", cells.join(",")).unwrap();
    }
    Ok(csv)
}

pub fn run(config: &RunConfig, out: &Output) -> Result<String, CliError> {
    let plot = config
        .plot
        .as_ref()
        .ok_or_else(|| CliError::Config("plot: section required for plot-exponents".into()))?;
    let regimes = if plot.regime == "all" {
        Regime::ALL.to_vec()
    } else {
        vec![plot
            .regime
            .parse::<Regime>()
            .map_err(|e| CliError::Config(format!("plot.regime: {e}")))?]
    };
    let single = regimes.len() == 1;
    let mut resolved = config.clone();
    let mut text = String::new();
    let mut files = Vec::new();
    for regime in regimes {
        let spec = spec_for(config, regime)?;
        let csv = table(&spec)?;
        let name = format!("exponents-{regime}.csv");
        let path = out.write(&name, &csv)?;
        files.push(toml::Value::String(name));
        let section = resolved.plot.as_mut().expect("plot section");
        section.lo = Some(Rate::from_real(spec.lo.clone()));
        section.hi = Some(Rate::from_real(spec.hi.clone()));
        if single {
            section.fixed = Some(Rate::from_real(spec.fixed.clone()));
        }
        writeln!(
            text,
            "{regime} ({}, fixed {}): {} rows -> {}",
            regime.condition(),
            spec.fixed,
            csv.lines().count() - 1,
            path.display()
        )
        .unwrap();
    }
    let mut summary = toml::Table::new();
    summary.insert("files".into(), toml::Value::Array(files));
    let mut doc = toml::Table::new();
    doc.insert("plot".into(), toml::Value::Table(summary));
    let path = out.write_report("plot.toml", doc, &resolved)?;
    writeln!(text, "wrote {}", path.display()).unwrap();
    Ok(text)
}
