//! JSON run configuration for the Schrödinger commands.

use serde::Deserialize;

use semibound::schrodinger::{GridSpec, LtConstant, Potential, QuadSpec};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchrodingerConfig {
    pub grid: GridSpec,
    pub potential: PotentialConfig,
    pub gammas: Vec<f64>,
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub t_grid: Vec<f64>,
    #[serde(default)]
    pub lt_constant: Option<LtConstant>,
    #[serde(default)]
    pub tolerances: QuadSpec,
    /// Dense spectral oracle alongside the bounds (skipped automatically when
    /// the grid exceeds the dense cap).
    #[serde(default = "default_true")]
    pub compute_oracle: bool,
}

fn default_true() -> bool {
    true
}

/// The potential block reuses the core schema `{kind, params}` plus the
/// dimension implied by the grid.
#[derive(Debug, Deserialize)]
pub struct PotentialConfig {
    #[serde(flatten)]
    pub shape: semibound::schrodinger::PotentialShape,
}

impl SchrodingerConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        let cfg: SchrodingerConfig =
            serde_json::from_str(text).map_err(|e| format!("config: {e}"))?;
        if cfg.gammas.is_empty() {
            return Err("config: gammas must be a nonempty list".into());
        }
        cfg.grid.validate().map_err(|e| format!("config: {e}"))?;
        Ok(cfg)
    }

    pub fn potential(&self) -> Result<Potential, String> {
        let pot = Potential {
            d: self.grid.d,
            shape: self.potential.shape.clone(),
        };
        pot.validate(Some(&self.grid))
            .map_err(|e| format!("config: {e}"))?;
        Ok(pot)
    }

    pub fn lt(&self) -> LtConstant {
        self.lt_constant.unwrap_or_default()
    }
}
