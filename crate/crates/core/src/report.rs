//! Run configuration and machine-readable reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{ConstantLedger, ConstantStatus};

/// Mass unit at the command-line boundary. Internally everything is GeV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Units {
    #[default]
    #[value(name = "GeV", alias = "gev")]
    GeV,
    #[value(name = "MeV", alias = "mev")]
    MeV,
}

impl Units {
    /// GeV per unit.
    pub fn in_gev(&self) -> f64 {
        match self {
            Units::GeV => 1.0,
            Units::MeV => 1e-3,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Units::GeV => "GeV",
            Units::MeV => "MeV",
        }
    }

    /// Converts a quantity of mass dimension `dim` into GeV.
    pub fn to_gev(&self, value: f64, dim: i32) -> f64 {
        value * self.in_gev().powi(dim)
    }

    /// Converts a quantity of mass dimension `dim` from GeV.
    pub fn from_gev(&self, value: f64, dim: i32) -> f64 {
        value / self.in_gev().powi(dim)
    }
}

impl FromStr for Units {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gev" => Ok(Units::GeV),
            "mev" => Ok(Units::MeV),
            _ => Err(Error::InvalidInput(format!("unknown unit {s:?}, expected GeV or MeV"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    PlotData,
}

impl OutputFormat {
    pub fn name(&self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::PlotData => "plot-data",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "plot-data" => Ok(OutputFormat::PlotData),
            _ => Err(Error::InvalidInput(format!("unknown format {s:?}"))),
        }
    }
}

pub const MIN_PRECISION: usize = 4;
pub const MAX_PRECISION: usize = 17;
pub const DEFAULT_PRECISION: usize = 12;
pub const PRECISION_ENV: &str = "LOOPREG_PRECISION";

/// Keys accepted in a `--config` file.
pub const CONFIG_KEYS: &[&str] = &["units", "precision", "format", "alpha", "bethe-log", "b", "rel-tol"];

/// Parsed `key = value` configuration file. `#` starts a comment; `_` and `-`
/// are interchangeable in keys.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("config line {}: expected key=value", lineno + 1)))?;
            let key = key.trim().replace('_', "-");
            if !CONFIG_KEYS.contains(&key.as_str()) {
                return Err(Error::InvalidInput(format!("config line {}: unknown key {key:?}", lineno + 1)));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(ConfigFile { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn get_f64(&self, key: &str) -> Result<Option<f64>> {
        self.get(key)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| Error::InvalidInput(format!("config key {key}: {v:?} is not a number")))
            })
            .transpose()
    }
}

/// Resolved rendering settings for one invocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub units: Units,
    pub precision: usize,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { units: Units::GeV, precision: DEFAULT_PRECISION, format: OutputFormat::Json }
    }
}

impl RunConfig {
    /// Flags win over the config file, which wins over the environment
    /// fallback for precision.
    pub fn resolve(
        units: Option<Units>,
        precision: Option<usize>,
        format: Option<OutputFormat>,
        file: &ConfigFile,
        env_precision: Option<&str>,
    ) -> Result<Self> {
        let units = match units {
            Some(u) => u,
            None => file.get("units").map(str::parse).transpose()?.unwrap_or_default(),
        };
        let format = match format {
            Some(f) => f,
            None => file.get("format").map(str::parse).transpose()?.unwrap_or_default(),
        };
        let precision = match precision {
            Some(p) => p,
            None => match file.get("precision").or(env_precision) {
                Some(p) => p
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("precision {p:?} is not an integer")))?,
                None => DEFAULT_PRECISION,
            },
        };
        if !(MIN_PRECISION..=MAX_PRECISION).contains(&precision) {
            return Err(Error::InvalidInput(format!(
                "precision {precision} outside [{MIN_PRECISION}, {MAX_PRECISION}]"
            )));
        }
        Ok(RunConfig { units, precision, format })
    }

    /// Renders `value` with `precision` significant digits.
    pub fn number(&self, value: f64) -> String {
        format_number(value, self.precision)
    }
}

pub fn format_number(value: f64, precision: usize) -> String {
    if value.is_finite() {
        format!("{:.*e}", precision.saturating_sub(1), value)
    } else {
        value.to_string()
    }
}

/// Status of one arbitrary constant as printed in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub name: String,
    pub mass_dimension: i32,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scale: Option<String>,
}

/// Column-oriented sweep output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Indices of the x and y columns for plot-data.
    #[serde(skip)]
    pub plot_columns: (usize, usize),
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }

    /// Two whitespace-separated columns; rows whose y is not a number are skipped.
    pub fn to_plot_data(&self) -> String {
        let (xi, yi) = self.plot_columns;
        let mut s = String::new();
        for row in &self.rows {
            if row[yi].parse::<f64>().is_ok_and(f64::is_finite) {
                let _ = writeln!(s, "{} {}", row[xi], row[yi]);
            }
        }
        s
    }
}

/// One subcommand's report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub subcommand: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, String>,
    pub provenance: BTreeMap<String, String>,
    pub ledger: Vec<LedgerEntry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub table: Option<Table>,
}

impl ReportRecord {
    pub fn new(subcommand: &str) -> Self {
        ReportRecord {
            subcommand: subcommand.to_string(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            provenance: BTreeMap::new(),
            ledger: Vec::new(),
            table: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    /// Adds an output together with its provenance tag.
    pub fn output(&mut self, key: &str, value: impl Into<String>, tag: &str) -> &mut Self {
        self.outputs.insert(key.to_string(), value.into());
        self.provenance.insert(key.to_string(), tag.to_string());
        self
    }

    /// Copies a constant ledger; fixed values are rendered at `config`
    /// precision with scales in the working unit.
    pub fn set_ledger(&mut self, ledger: &ConstantLedger, config: &RunConfig) {
        self.ledger = ledger
            .iter()
            .map(|c| {
                let (status, value) = match c.status {
                    ConstantStatus::Unfixed => ("unfixed".to_string(), None),
                    ConstantStatus::Fixed(v) => ("fixed".to_string(), Some(config.number(v))),
                };
                LedgerEntry {
                    name: format!("C{}", c.index),
                    mass_dimension: c.mass_dimension,
                    status,
                    value,
                    scale: c.scale_alias.map(|mu| config.number(mu)),
                }
            })
            .collect();
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed report: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_parsing() {
        let c = ConfigFile::parse("# defaults\nunits = MeV\nbethe_log=2.8\n\nprecision=6 # short\n").unwrap();
        assert_eq!(c.get("units"), Some("MeV"));
        assert_eq!(c.get_f64("bethe-log").unwrap(), Some(2.8));
        assert!(ConfigFile::parse("colour = blue").is_err());
        assert!(ConfigFile::parse("units").is_err());
        assert!(ConfigFile::parse("alpha = x").unwrap().get_f64("alpha").is_err());
    }

    #[test]
    fn precedence() {
        let file = ConfigFile::parse("precision = 6\nunits = MeV").unwrap();
        let c = RunConfig::resolve(None, None, None, &file, Some("9")).unwrap();
        assert_eq!((c.precision, c.units), (6, Units::MeV));
        let c = RunConfig::resolve(None, None, None, &ConfigFile::default(), Some("9")).unwrap();
        assert_eq!(c.precision, 9);
        let c = RunConfig::resolve(Some(Units::GeV), Some(5), None, &file, Some("9")).unwrap();
        assert_eq!((c.precision, c.units), (5, Units::GeV));
        assert!(RunConfig::resolve(None, Some(3), None, &file, None).is_err());
        assert!(RunConfig::resolve(None, Some(18), None, &file, None).is_err());
        assert!(RunConfig::resolve(None, None, None, &ConfigFile::default(), Some("x")).is_err());
    }

    #[test]
    fn number_rendering() {
        assert_eq!(format_number(0.22208, 5), "2.2208e-1");
        assert_eq!(format_number(-3.0, 4), "-3.000e0");
        assert_eq!(format_number(f64::INFINITY, 4), "inf");
    }

    #[test]
    fn unit_conversion() {
        assert_eq!(Units::MeV.to_gev(511.0, 1), 0.511);
        assert!((Units::MeV.to_gev(1e6, 2) - 1.0).abs() < 1e-15);
        assert_eq!(Units::MeV.from_gev(0.5, 1), 500.0);
        assert_eq!(Units::GeV.to_gev(3.0, 2), 3.0);
    }

    #[test]
    fn tables() {
        let t = Table {
            header: vec!["mu".into(), "coupling".into()],
            rows: vec![vec!["1".into(), "0.5".into()], vec!["2".into(), "pole".into()]],
            plot_columns: (0, 1),
        };
        assert_eq!(t.to_csv(), "mu,coupling\n1,0.5\n2,pole\n");
        assert_eq!(t.to_plot_data(), "1 0.5\n");
    }

    #[test]
    fn json_round_trip() {
        let mut r = ReportRecord::new("mu1");
        r.input("m", 0.511).output("mu1", "2.2e-1", "on-shell scale");
        let back = ReportRecord::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(ReportRecord::from_json("{").is_err());
    }
}
