use std::path::{Path, PathBuf};

use radial_nls::real::ExtReal;
use toml::{Table, Value};

use crate::config::RunConfig;
use crate::error::CliError;

pub struct Output {
    dir: PathBuf,
}

impl Output {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Output { dir: dir.into() }
    }

    pub fn write(&self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        let io = |path: &Path, source| CliError::Io {
            path: path.display().to_string(),
            source,
        };
        std::fs::create_dir_all(&self.dir).map_err(|e| io(&self.dir, e))?;
        let path = self.dir.join(name);
        std::fs::write(&path, contents).map_err(|e| io(&path, e))?;
        Ok(path)
    }

    /// Writes `sections` followed by the resolved configuration as one TOML
    /// document.
    pub fn write_report(&self, name: &str, sections: Table, config: &RunConfig) -> Result<PathBuf, CliError> {
        let mut doc = sections;
        doc.insert(
            "config".into(),
            Value::try_from(config).expect("configuration converts to TOML"),
        );
        self.write(name, &toml::to_string(&doc).expect("report serializes"))
    }
}

/// `key = value` lines (as produced by the solver report) as a TOML table.
pub fn key_values(text: &str) -> Table {
    let mut table = Table::new();
    for line in text.lines() {
        let Some((k, v)) = line.split_once(" = ") else { continue };
        let value = if let Ok(b) = v.parse::<bool>() {
            Value::Boolean(b)
        } else if let Ok(i) = v.parse::<i64>() {
            Value::Integer(i)
        } else if let Ok(x) = v.parse::<f64>() {
            Value::Float(x)
        } else {
            Value::String(v.to_string())
        };
        table.insert(k.to_string(), value);
    }
    table
}

/// CSV cell of an exponent value: decimal, `inf`/`-inf`, or empty when undefined.
pub fn decimal(v: Option<&ExtReal>) -> String {
    match v {
        None => String::new(),
        Some(ExtReal::PosInf) => "inf".into(),
        Some(ExtReal::NegInf) => "-inf".into(),
        Some(ExtReal::Finite(r)) => r.to_f64().to_string(),
    }
}

/// CSV cell with the exact rational value.
pub fn exact(v: Option<&ExtReal>) -> String {
    v.map(ToString::to_string).unwrap_or_default()
}
