use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::HarnessError;

/// A named group of identities. Every catalogued identity belongs to exactly one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    ThetaCore,
    Vertex,
    Fusion,
    Gauge,
    Fateev,
    Face,
    VertexFace,
    Inversion,
    ClosedForm,
    DualFused,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::ThetaCore,
        Suite::Vertex,
        Suite::Fusion,
        Suite::Gauge,
        Suite::Fateev,
        Suite::Face,
        Suite::VertexFace,
        Suite::Inversion,
        Suite::ClosedForm,
        Suite::DualFused,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ThetaCore => "theta-core",
            Suite::Vertex => "vertex",
            Suite::Fusion => "fusion",
            Suite::Gauge => "gauge",
            Suite::Fateev => "fateev",
            Suite::Face => "face",
            Suite::VertexFace => "vertex-face",
            Suite::Inversion => "inversion",
            Suite::ClosedForm => "closed-form",
            Suite::DualFused => "dual-fused",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            let known: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            HarnessError::Config(format!("unknown suite '{s}' (known: {})", known.join(", ")))
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub r: f64,
    /// `τ = i·tau_im`.
    pub tau_im: f64,
    pub cutoff: usize,
    pub tol: f64,
    pub points: usize,
    pub seed: u64,
    /// Empty means every suite.
    pub suites: Vec<Suite>,
    pub json: Option<PathBuf>,
    pub stable: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            r: 6.0,
            tau_im: 1.2,
            cutoff: 32,
            tol: 1e-9,
            points: 25,
            seed: 42,
            suites: Vec::new(),
            json: None,
            stable: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if !(self.tau_im > 0.0) {
            return Err(HarnessError::Config(format!("tau-im must be positive, got {}", self.tau_im)));
        }
        if !(self.r > 2.0) || !self.r.is_finite() {
            return Err(HarnessError::Config(format!("r must exceed 2, got {}", self.r)));
        }
        if self.points < 1 {
            return Err(HarnessError::Config("points must be at least 1".into()));
        }
        if self.cutoff < 1 {
            return Err(HarnessError::Config("cutoff must be at least 1".into()));
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(HarnessError::Config(format!("tol must be positive, got {}", self.tol)));
        }
        Ok(())
    }

    pub fn selected_suites(&self) -> Vec<Suite> {
        if self.suites.is_empty() {
            Suite::ALL.to_vec()
        } else {
            let mut s = self.suites.clone();
            s.sort();
            s.dedup();
            s
        }
    }

    /// Apply one `key = value` setting; keys are the long flag names.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), HarnessError> {
        fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, HarnessError> {
            value.parse().map_err(|_| HarnessError::Config(format!("invalid value '{value}' for '{key}'")))
        }
        match key {
            "r" => self.r = parse(key, value)?,
            "tau-im" => self.tau_im = parse(key, value)?,
            "cutoff" => self.cutoff = parse(key, value)?,
            "tol" => self.tol = parse(key, value)?,
            "points" => self.points = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "suite" => {
                for name in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    self.suites.push(name.parse()?);
                }
            }
            "json" => self.json = Some(PathBuf::from(value)),
            "stable" => self.stable = parse(key, value)?,
            other => return Err(HarnessError::Config(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }
}

/// Parse `key = value` lines; `#` starts a comment, blank lines are skipped.
pub fn parse_config_text(text: &str) -> Result<Vec<(String, String)>, HarnessError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| HarnessError::Config(format!("line {}: expected 'key = value'", n + 1)))?;
        out.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn config_text_parsing() {
        let text = "# defaults\nr = 6.5\n\ntau-im=1.1 # trailing\nsuite = vertex, face\nstable = true\n";
        let mut cfg = SuiteConfig::default();
        for (k, v) in parse_config_text(text).unwrap() {
            cfg.set(&k, &v).unwrap();
        }
        assert_eq!(cfg.r, 6.5);
        assert_eq!(cfg.tau_im, 1.1);
        assert_eq!(cfg.suites, vec![Suite::Vertex, Suite::Face]);
        assert!(cfg.stable);
        assert!(parse_config_text("no equals sign").is_err());
        assert!(cfg.set("colour", "red").is_err());
        assert!(cfg.set("points", "many").is_err());
    }

    #[test]
    fn validation() {
        assert!(SuiteConfig::default().validate().is_ok());
        let bad = [
            SuiteConfig { tau_im: 0.0, ..Default::default() },
            SuiteConfig { r: 2.0, ..Default::default() },
            SuiteConfig { points: 0, ..Default::default() },
            SuiteConfig { tol: -1.0, ..Default::default() },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
    }
}
