use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Tsv,
}

/// Run parameters, echoed into every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub precision: u32,
    pub orbit_budget: u64,
    pub scan_max_degree: u32,
    pub seed: u64,
    pub output: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision: 12,
            orbit_budget: 1 << 16,
            scan_max_degree: 6,
            seed: 0,
            output: OutputFormat::Json,
        }
    }
}

impl Config {
    pub fn from_json(src: &str) -> Result<Self> {
        let c: Config = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision == 0 || self.orbit_budget == 0 || self.scan_max_degree == 0 {
            return Err(Error::InvalidArgument(
                "precision, orbit_budget and scan_max_degree must be positive".into(),
            ));
        }
        Ok(())
    }
}
