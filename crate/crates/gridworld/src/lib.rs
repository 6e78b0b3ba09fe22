//! Multi-agent gridworld: agents walk to their goals on an `N x N` grid with
//! random obstacles, under a policy that ignores other agents (`mtl`) or one
//! that never lets two agents share a cell (`smtl`).

mod config;
pub mod experiment;
pub mod log;
pub mod policy;
pub mod run;
pub mod world;

pub use config::{SimConfig, DEFAULT_DENSITY, DEFAULT_PATIENCE};
pub use experiment::{run_experiment, AggregateRow, ExperimentConfig, ExperimentResult, RunRecord, Summary};
pub use policy::{MtlPolicy, Policy, PolicyRegistry, SmtlPolicy};
pub use run::{run, run_world, RunMetrics, RunOutput, StepRecord};
pub use world::{count_collisions, generate_world, AgentState, Cell, Grid, World};

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown policy `{0}`")]
    UnknownPolicy(String),
    #[error("world generation failed after {attempts} obstacle fields")]
    WorldGenerationFailed { attempts: usize },
    #[error("agent {agent} cannot reach its goal")]
    Unreachable { agent: usize },
    #[error("agents {agents:?} share cell {cell:?}")]
    InvariantViolation { cell: Cell, agents: Vec<usize> },
    #[error("trajectory log: {0}")]
    Log(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
