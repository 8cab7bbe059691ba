//! Effective run settings: built-in defaults, overridden by an optional
//! line-oriented key=value config file, overridden by explicit flags.

use sha2::{Digest, Sha256};
use std::fmt;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Md,
}

impl Format {
    pub fn label(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Md => "md",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub tol: f64,
    pub digits: usize,
    pub format: Format,
    pub deterministic: bool,
    pub mesh_points: usize,
}

// Flag values that were given explicitly; `None` falls through to the
// config file and then to the defaults.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub tol: Option<f64>,
    pub digits: Option<usize>,
    pub format: Option<Format>,
    pub deterministic: bool,
    pub mesh_points: Option<usize>,
}

impl Settings {
    pub fn resolve(config_path: Option<&Path>, flags: &Overrides) -> Result<Self, String> {
        let mut s = Settings {
            tol: 1e-10,
            digits: 6,
            format: Format::Csv,
            deterministic: false,
            mesh_points: 2048,
        };
        if let Some(path) = config_path {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
            s.apply_file(&text)?;
        }
        if let Some(tol) = flags.tol {
            s.tol = tol;
        }
        if let Some(digits) = flags.digits {
            s.digits = digits;
        }
        if let Some(format) = flags.format {
            s.format = format;
        }
        if flags.deterministic {
            s.deterministic = true;
        }
        if let Some(points) = flags.mesh_points {
            s.mesh_points = points;
        }
        if s.tol <= 0.0 || !s.tol.is_finite() {
            return Err(format!(
                "tol must be a positive finite number, got {}",
                s.tol
            ));
        }
        if !(1..=12).contains(&s.digits) {
            return Err(format!("digits must be between 1 and 12, got {}", s.digits));
        }
        Ok(s)
    }

    fn apply_file(&mut self, text: &str) -> Result<(), String> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                format!(
                    "config line {}: expected key=value, got {raw:?}",
                    lineno + 1
                )
            })?;
            let (key, value) = (key.trim(), value.trim());
            let parse =
                |what: &str| format!("config line {}: bad {what} value {value:?}", lineno + 1);
            match key {
                "tol" => self.tol = value.parse().map_err(|_| parse("tol"))?,
                "digits" => self.digits = value.parse().map_err(|_| parse("digits"))?,
                "mesh-points" => {
                    self.mesh_points = value.parse().map_err(|_| parse("mesh-points"))?
                }
                "deterministic" => {
                    self.deterministic = value.parse().map_err(|_| parse("deterministic"))?
                }
                "format" => {
                    self.format = match value {
                        "csv" => Format::Csv,
                        "json" => Format::Json,
                        "md" => Format::Md,
                        _ => return Err(parse("format")),
                    }
                }
                other => return Err(format!("config line {}: unknown key {other:?}", lineno + 1)),
            }
        }
        Ok(())
    }

    /// First 16 hex digits of the SHA-256 over the canonical sorted
    /// key=value rendering of the effective settings.
    pub fn digest(&self) -> String {
        let canonical = format!(
            "deterministic={}\ndigits={}\nformat={}\nmesh-points={}\ntol={:e}\n",
            self.deterministic, self.digits, self.format, self.mesh_points, self.tol
        );
        let hash = Sha256::digest(canonical.as_bytes());
        hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_hold_without_config_or_flags() {
        let s = Settings::resolve(None, &Overrides::default()).unwrap();
        assert_eq!(s.tol, 1e-10);
        assert_eq!(s.digits, 6);
        assert_eq!(s.format, Format::Csv);
        assert!(!s.deterministic);
        assert_eq!(s.mesh_points, 2048);
    }

    #[test]
    fn config_overrides_defaults_and_flags_override_config() {
        let mut s = Settings::resolve(None, &Overrides::default()).unwrap();
        s.apply_file("tol=1e-8\ndigits=9\nformat=json\n# comment\n\nmesh-points=512\n")
            .unwrap();
        assert_eq!(s.tol, 1e-8);
        assert_eq!(s.digits, 9);
        assert_eq!(s.format, Format::Json);
        assert_eq!(s.mesh_points, 512);
    }

    #[test]
    fn unknown_keys_and_bad_values_are_rejected() {
        let mut s = Settings::resolve(None, &Overrides::default()).unwrap();
        assert!(s
            .apply_file("tolerance=1e-8\n")
            .unwrap_err()
            .contains("unknown key"));
        assert!(s.apply_file("digits=many\n").is_err());
        assert!(s.apply_file("just a line\n").is_err());
    }

    #[test]
    fn digest_is_stable_and_sensitive() {
        let a = Settings::resolve(None, &Overrides::default()).unwrap();
        let b = Settings::resolve(None, &Overrides::default()).unwrap();
        assert_eq!(a.digest(), b.digest());
        assert_eq!(a.digest().len(), 16);
        let c = Settings::resolve(
            None,
            &Overrides {
                digits: Some(7),
                ..Overrides::default()
            },
        )
        .unwrap();
        assert_ne!(a.digest(), c.digest());
    }
}
