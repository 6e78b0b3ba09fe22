use serde::{Deserialize, Serialize};

use crate::SimError;

pub const DEFAULT_DENSITY: f64 = 0.10;
pub const DEFAULT_PATIENCE: u32 = 3;

/// One simulation run. `agent_count` defaults to `grid_size` and `max_steps`
/// to `8 * grid_size^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub grid_size: usize,
    #[serde(default)]
    pub agent_count: Option<usize>,
    #[serde(default = "default_density")]
    pub obstacle_density: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub max_steps: Option<u64>,
    #[serde(default = "default_policy")]
    pub policy: String,
    #[serde(default = "default_patience")]
    pub replan_patience: u32,
}

fn default_density() -> f64 {
    DEFAULT_DENSITY
}

fn default_policy() -> String {
    "smtl".into()
}

fn default_patience() -> u32 {
    DEFAULT_PATIENCE
}

impl SimConfig {
    pub fn new(grid_size: usize, policy: &str, seed: u64) -> Self {
        SimConfig {
            grid_size,
            agent_count: None,
            obstacle_density: DEFAULT_DENSITY,
            seed,
            max_steps: None,
            policy: policy.into(),
            replan_patience: DEFAULT_PATIENCE,
        }
    }

    pub fn agents(&self) -> usize {
        self.agent_count.unwrap_or(self.grid_size)
    }

    pub fn step_limit(&self) -> u64 {
        self.max_steps.unwrap_or(8 * (self.grid_size * self.grid_size) as u64)
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |msg: &str| Err(SimError::InvalidConfig(msg.into()));
        if self.grid_size == 0 {
            return bad("grid_size must be positive");
        }
        if self.agents() == 0 {
            return bad("agent_count must be positive");
        }
        if !(0.0..1.0).contains(&self.obstacle_density) {
            return bad("obstacle_density must lie in [0, 1)");
        }
        if self.step_limit() == 0 {
            return bad("max_steps must be positive");
        }
        if self.agents() > self.grid_size * self.grid_size {
            return bad("more agents than grid cells");
        }
        Ok(())
    }
}
