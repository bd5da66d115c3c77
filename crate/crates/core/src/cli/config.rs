//! Run settings merged from defaults, an optional `key=value` file and flags.

use std::fs;
use std::path::Path;

use clap::ValueEnum;

use crate::error::{CcsError, Result};
use crate::states::Constants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = CcsError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(CcsError::Config(format!("unknown format '{other}' (expected csv or json)"))),
        }
    }
}

/// Settings that may come from a config file or the command line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub omega: Option<f64>,
    pub gamma: Option<f64>,
    pub hbar: Option<f64>,
    pub k_b: Option<f64>,
    pub format: Option<OutputFormat>,
    pub tol: Option<f64>,
}

impl Settings {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut settings = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CcsError::Config(format!("line {}: expected key=value", lineno + 1)))?;
            let value = value.trim();
            let number = || {
                value
                    .parse::<f64>()
                    .map_err(|_| CcsError::Config(format!("line {}: '{value}' is not a number", lineno + 1)))
            };
            match key.trim() {
                "omega" => settings.omega = Some(number()?),
                "gamma" => settings.gamma = Some(number()?),
                "hbar" => settings.hbar = Some(number()?),
                "kb" | "k_b" => settings.k_b = Some(number()?),
                "tol" => settings.tol = Some(number()?),
                "format" => settings.format = Some(value.parse()?),
                other => {
                    return Err(CcsError::Config(format!("line {}: unknown key '{other}'", lineno + 1)))
                }
            }
        }
        Ok(settings)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CcsError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Values present in `self` win over `base`.
    pub fn over(self, base: Settings) -> Settings {
        Settings {
            omega: self.omega.or(base.omega),
            gamma: self.gamma.or(base.gamma),
            hbar: self.hbar.or(base.hbar),
            k_b: self.k_b.or(base.k_b),
            format: self.format.or(base.format),
            tol: self.tol.or(base.tol),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub omega: f64,
    pub gamma: f64,
    pub constants: Constants,
    /// Overrides every verification tolerance when set.
    pub tol: Option<f64>,
    pub format: OutputFormat,
}

impl RunConfig {
    /// Resolves settings; `gamma` defaults to `omega` and must equal it.
    pub fn resolve(settings: &Settings) -> Result<Self> {
        let omega = settings.omega.unwrap_or(1.0);
        if !(omega.is_finite() && omega > 0.0) {
            return Err(CcsError::Domain(format!("omega must be positive, got {omega}")));
        }
        let gamma = settings.gamma.unwrap_or(omega);
        if gamma != omega {
            return Err(CcsError::ParameterMismatch { gamma, omega });
        }
        let constants = Constants::new(settings.hbar.unwrap_or(1.0), settings.k_b.unwrap_or(1.0))?;
        if let Some(tol) = settings.tol {
            if !(tol >= 0.0) {
                return Err(CcsError::Config(format!("tol must be non-negative, got {tol}")));
            }
        }
        Ok(Self { omega, gamma, constants, tol: settings.tol, format: settings.format.unwrap_or_default() })
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self::resolve(&Settings::default()).expect("defaults are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_value_file() {
        let s = Settings::parse("# units\nomega = 2\nhbar=0.5 # reduced\n\nformat = json\nkb=3\n").unwrap();
        assert_eq!(s.omega, Some(2.0));
        assert_eq!(s.hbar, Some(0.5));
        assert_eq!(s.k_b, Some(3.0));
        assert_eq!(s.format, Some(OutputFormat::Json));
        assert_eq!(s.gamma, None);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(Settings::parse("omega").is_err());
        assert!(Settings::parse("omega = fast").is_err());
        assert!(Settings::parse("mass = 2").is_err());
        assert!(Settings::parse("format = xml").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = Settings::parse("omega = 2\nhbar = 3").unwrap();
        let flags = Settings { omega: Some(5.0), ..Default::default() };
        let merged = flags.over(file);
        assert_eq!(merged.omega, Some(5.0));
        assert_eq!(merged.hbar, Some(3.0));
    }

    #[test]
    fn gamma_defaults_to_omega_and_must_match() {
        let cfg = RunConfig::resolve(&Settings { omega: Some(2.0), ..Default::default() }).unwrap();
        assert_eq!(cfg.gamma, 2.0);
        let bad = Settings { omega: Some(2.0), gamma: Some(1.0), ..Default::default() };
        assert!(matches!(RunConfig::resolve(&bad), Err(CcsError::ParameterMismatch { .. })));
    }
}
