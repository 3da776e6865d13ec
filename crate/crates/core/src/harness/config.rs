use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which amplification dynamics a sweep measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Quantum,
    Classical,
    AnalogCoherent,
    AnalogDephased,
}

impl Mode {
    pub const ALL: [Mode; 4] = [
        Mode::Quantum,
        Mode::Classical,
        Mode::AnalogCoherent,
        Mode::AnalogDephased,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Quantum => "quantum",
            Mode::Classical => "classical",
            Mode::AnalogCoherent => "analog-coherent",
            Mode::AnalogDephased => "analog-dephased",
        }
    }

    /// Dephased modes saturate at 1/2, so their thresholds must stay below it.
    pub fn is_dephased(&self) -> bool {
        matches!(self, Mode::Classical | Mode::AnalogDephased)
    }

    /// Threshold used when none is given: 0.5 for coherent modes, 0.25 for
    /// dephased ones.
    pub fn default_threshold(&self) -> f64 {
        if self.is_dephased() {
            0.25
        } else {
            0.5
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown mode `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub sizes: Vec<u64>,
    pub mode: Mode,
    pub threshold: f64,
    pub max_steps: u64,
    pub output_path: PathBuf,
    /// Reserved for a sampling mode; exact probabilities ignore it.
    #[serde(default)]
    pub seed: u64,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() {
            return Err(Error::Config("sizes must not be empty".into()));
        }
        if let Some(&n) = self.sizes.iter().find(|&&n| n < 2) {
            return Err(Error::Config(format!("every size must be at least 2, got {n}")));
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("sizes must be strictly increasing".into()));
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(Error::Config(format!(
                "threshold {} must lie in (0, 1)",
                self.threshold
            )));
        }
        if self.mode.is_dephased() && self.threshold >= 0.5 {
            return Err(Error::Config(format!(
                "threshold {} is unreachable in {} mode (populations saturate at 1/2)",
                self.threshold, self.mode
            )));
        }
        if self.max_steps < 1 {
            return Err(Error::Config("max_steps must be at least 1".into()));
        }
        Ok(())
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json_str(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> SweepConfig {
        SweepConfig {
            sizes: vec![4, 16],
            mode: Mode::Classical,
            threshold: 0.25,
            max_steps: 100,
            output_path: "out.csv".into(),
            seed: 0,
        }
    }

    #[test]
    fn parses_field_names() {
        let text = r#"{"sizes":[256,512],"mode":"analog-dephased","threshold":0.25,
                       "max_steps":1000000,"output_path":"x.csv","seed":7}"#;
        let c = SweepConfig::from_json_str(text).unwrap();
        assert_eq!(c.mode, Mode::AnalogDephased);
        assert_eq!(c.sizes, vec![256, 512]);
        assert_eq!(c.seed, 7);
        assert!(SweepConfig::from_json_str(&text.replace("\"seed\"", "\"sed\"")).is_err());
    }

    #[test]
    fn validation() {
        assert!(config().validate().is_ok());
        let mut c = config();
        c.sizes.clear();
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        let mut c = config();
        c.sizes = vec![16, 4];
        assert!(c.validate().is_err());
        let mut c = config();
        c.sizes = vec![1, 4];
        assert!(c.validate().is_err());
        let mut c = config();
        c.threshold = 0.5;
        assert!(c.validate().is_err());
        c.mode = Mode::Quantum;
        assert!(c.validate().is_ok());
        c.max_steps = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn mode_round_trips_through_strings() {
        for m in Mode::ALL {
            assert_eq!(m.as_str().parse::<Mode>().unwrap(), m);
            assert_eq!(serde_json::to_string(&m).unwrap(), format!("\"{m}\""));
        }
        assert!("grover".parse::<Mode>().is_err());
    }
}
