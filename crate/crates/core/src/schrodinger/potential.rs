use serde::{Deserialize, Serialize};

use super::{GridSpec, SchrodingerError};

/// The curated potential family. All built-in kinds are Kato potentials:
/// square and Gaussian wells are bounded with compact support / rapid decay,
/// and the cut-off power law `-A |x|^{-η}` with `η ∈ (0, 2)` has a locally
/// integrable heat average that vanishes as `t → 0`. Grid-sampled data is
/// caller-asserted Kato and flagged as such in reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum PotentialShape {
    /// `amplitude` inside the ball of `radius`, 0 outside.
    SquareWell {
        amplitude: f64,
        radius: f64,
        #[serde(default)]
        center: Vec<f64>,
    },
    /// `amplitude · exp(-|x-c|²/radius²)`.
    GaussianWell {
        amplitude: f64,
        radius: f64,
        #[serde(default)]
        center: Vec<f64>,
    },
    /// `amplitude · |x-c|^{-exponent}` inside the ball of `radius`, 0 outside;
    /// `exponent ∈ (0, 2)`.
    PowerLawCutoff {
        amplitude: f64,
        radius: f64,
        exponent: f64,
        #[serde(default)]
        center: Vec<f64>,
    },
    /// Raw node values, length `n^d`; Kato membership asserted by the caller.
    GridSampled { values: Vec<f64> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Potential {
    pub d: usize,
    #[serde(flatten)]
    pub shape: PotentialShape,
}

impl Potential {
    pub fn new(d: usize, shape: PotentialShape) -> Result<Self, SchrodingerError> {
        let p = Self { d, shape };
        p.validate(None)?;
        Ok(p)
    }

    pub fn validate(&self, grid: Option<&GridSpec>) -> Result<(), SchrodingerError> {
        if !(1..=3).contains(&self.d) {
            return Err(SchrodingerError::domain(format!(
                "potential dimension must be 1, 2 or 3, got {}",
                self.d
            )));
        }
        match &self.shape {
            PotentialShape::PowerLawCutoff { exponent, radius, .. } => {
                if !(*exponent > 0.0 && *exponent < 2.0) {
                    return Err(SchrodingerError::domain(format!(
                        "power-law exponent must lie in (0, 2) for the Kato condition, got {exponent}"
                    )));
                }
                if !(*radius > 0.0) {
                    return Err(SchrodingerError::domain("cutoff radius must be positive"));
                }
            }
            PotentialShape::SquareWell { radius, .. }
            | PotentialShape::GaussianWell { radius, .. } => {
                if !(*radius > 0.0) {
                    return Err(SchrodingerError::domain("radius must be positive"));
                }
            }
            PotentialShape::GridSampled { values } => {
                if let Some(g) = grid {
                    if values.len() != g.total_points() {
                        return Err(SchrodingerError::domain(format!(
                            "grid-sampled potential has {} values, grid has {} points",
                            values.len(),
                            g.total_points()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn center(&self) -> [f64; 3] {
        let c = match &self.shape {
            PotentialShape::SquareWell { center, .. }
            | PotentialShape::GaussianWell { center, .. }
            | PotentialShape::PowerLawCutoff { center, .. } => center.as_slice(),
            PotentialShape::GridSampled { .. } => &[],
        };
        let mut out = [0.0; 3];
        for (o, v) in out.iter_mut().zip(c) {
            *o = *v;
        }
        out
    }

    /// Caller-asserted (rather than built-in) Kato membership.
    pub fn kato_asserted_only(&self) -> bool {
        matches!(self.shape, PotentialShape::GridSampled { .. })
    }

    /// Length scale of the support; the default box half-width is 5x this.
    pub fn support_radius(&self) -> Option<f64> {
        match &self.shape {
            PotentialShape::SquareWell { radius, .. }
            | PotentialShape::GaussianWell { radius, .. }
            | PotentialShape::PowerLawCutoff { radius, .. } => Some(*radius),
            PotentialShape::GridSampled { .. } => None,
        }
    }

    /// Pointwise value for the analytic kinds (`None` for grid-sampled).
    pub fn value_at(&self, x: &[f64]) -> Option<f64> {
        let c = self.center();
        let rho = x
            .iter()
            .zip(c.iter())
            .map(|(xi, ci)| (xi - ci) * (xi - ci))
            .sum::<f64>()
            .sqrt();
        self.radial_value(rho)
    }

    /// Radial profile `V(ρ)` about the center, for the analytic kinds.
    pub fn radial_value(&self, rho: f64) -> Option<f64> {
        match &self.shape {
            PotentialShape::SquareWell { amplitude, radius, .. } => {
                Some(if rho <= *radius { *amplitude } else { 0.0 })
            }
            PotentialShape::GaussianWell { amplitude, radius, .. } => {
                Some(amplitude * (-(rho * rho) / (radius * radius)).exp())
            }
            PotentialShape::PowerLawCutoff {
                amplitude,
                radius,
                exponent,
                ..
            } => Some(if rho <= *radius {
                amplitude * rho.powf(-exponent)
            } else {
                0.0
            }),
            PotentialShape::GridSampled { .. } => None,
        }
    }

    /// `|V_-|(ρ)`, the radial profile of the negative part. The analytic
    /// kinds are radially monotone, so the convolution suprema sit at the
    /// center.
    pub fn negative_radial_value(&self, rho: f64) -> Option<f64> {
        self.radial_value(rho).map(|v| (-v).max(0.0))
    }

    /// Radius beyond which the negative part vanishes (`None`: all of ℝ^d or
    /// unknown).
    pub fn negative_support(&self) -> Option<f64> {
        match &self.shape {
            PotentialShape::SquareWell { radius, .. }
            | PotentialShape::PowerLawCutoff { radius, .. } => Some(*radius),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DiscretizedPotential {
    /// `V` at the grid nodes.
    pub values: Vec<f64>,
    /// `V_- = min(V, 0)` at the grid nodes (all entries ≤ 0).
    pub negative: Vec<f64>,
    /// Set when a power-law singularity was capped at the half-cell value.
    pub cap_applied: bool,
}

/// Pointwise sampling at grid nodes. A power-law singularity closer than
/// half a grid cell is capped at the value half a cell away, which keeps the
/// diagonal well-defined while preserving the integrable-singularity scale of
/// the resolved grid.
pub fn discretize(
    potential: &Potential,
    grid: &GridSpec,
) -> Result<DiscretizedPotential, SchrodingerError> {
    potential.validate(Some(grid))?;
    if potential.d != grid.d {
        return Err(SchrodingerError::domain(format!(
            "potential dimension {} vs grid dimension {}",
            potential.d, grid.d
        )));
    }
    let total = grid.total_points();
    let mut values = Vec::with_capacity(total);
    let mut cap_applied = false;

    match &potential.shape {
        PotentialShape::GridSampled { values: raw } => {
            values.extend_from_slice(raw);
        }
        PotentialShape::PowerLawCutoff {
            amplitude,
            radius,
            exponent,
            ..
        } => {
            let c = potential.center();
            let floor = 0.5 * grid.spacing();
            for flat in 0..total {
                let x = grid.position(flat);
                let mut rho = 0.0;
                for axis in 0..grid.d {
                    rho += (x[axis] - c[axis]) * (x[axis] - c[axis]);
                }
                let rho = rho.sqrt();
                let v = if rho > *radius {
                    0.0
                } else if rho < floor {
                    cap_applied = true;
                    amplitude * floor.powf(-exponent)
                } else {
                    amplitude * rho.powf(-exponent)
                };
                values.push(v);
            }
        }
        _ => {
            for flat in 0..total {
                let x = grid.position(flat);
                values.push(
                    potential
                        .value_at(&x[..grid.d])
                        .expect("analytic kinds have pointwise values"),
                );
            }
        }
    }

    let negative: Vec<f64> = values.iter().map(|v| v.min(0.0)).collect();
    Ok(DiscretizedPotential {
        values,
        negative,
        cap_applied,
    })
}

/// Midpoint-rule grid `L^p` norm of the negative part: `(Σ |v|^p h^d)^{1/p}`.
pub fn lp_norm(negative: &[f64], grid: &GridSpec, p: f64) -> Result<f64, SchrodingerError> {
    if !(p >= 1.0) {
        return Err(SchrodingerError::domain(format!(
            "Lebesgue exponent must satisfy p >= 1, got {p}"
        )));
    }
    let cell = grid.spacing().powi(grid.d as i32);
    let sum: f64 = negative.iter().map(|v| v.abs().powf(p)).sum();
    Ok((sum * cell).powf(1.0 / p))
}

pub fn sup_norm(negative: &[f64]) -> f64 {
    negative.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}
