use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use smtl_core::time::to_f64;

use crate::config::{DEFAULT_DENSITY, DEFAULT_PATIENCE};
use crate::run::{run, RunOutput};
use crate::{PolicyRegistry, SimConfig, SimError};

/// A size x policy x seed matrix; run `i` of a size uses seed `base.seed + i`.
/// `base.grid_size` and `base.policy` are replaced per run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "ExperimentFile", into = "ExperimentFile")]
pub struct ExperimentConfig {
    pub sizes: Vec<usize>,
    pub seeds_per_size: u64,
    pub policies: Vec<String>,
    pub base: SimConfig,
}

/// On-disk shape: the per-run settings sit next to the matrix keys.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentFile {
    sizes: Vec<usize>,
    seeds_per_size: u64,
    #[serde(default = "both_policies")]
    policies: Vec<String>,
    #[serde(default)]
    agent_count: Option<usize>,
    #[serde(default = "default_density")]
    obstacle_density: f64,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    max_steps: Option<u64>,
    #[serde(default = "default_patience")]
    replan_patience: u32,
}

fn both_policies() -> Vec<String> {
    vec!["mtl".into(), "smtl".into()]
}

fn default_density() -> f64 {
    DEFAULT_DENSITY
}

fn default_patience() -> u32 {
    DEFAULT_PATIENCE
}

impl From<ExperimentFile> for ExperimentConfig {
    fn from(f: ExperimentFile) -> Self {
        let base = SimConfig {
            grid_size: f.sizes.first().copied().unwrap_or(0),
            agent_count: f.agent_count,
            obstacle_density: f.obstacle_density,
            seed: f.seed,
            max_steps: f.max_steps,
            policy: f.policies.first().cloned().unwrap_or_default(),
            replan_patience: f.replan_patience,
        };
        ExperimentConfig { sizes: f.sizes, seeds_per_size: f.seeds_per_size, policies: f.policies, base }
    }
}

impl From<ExperimentConfig> for ExperimentFile {
    fn from(c: ExperimentConfig) -> Self {
        ExperimentFile {
            sizes: c.sizes,
            seeds_per_size: c.seeds_per_size,
            policies: c.policies,
            agent_count: c.base.agent_count,
            obstacle_density: c.base.obstacle_density,
            seed: c.base.seed,
            max_steps: c.base.max_steps,
            replan_patience: c.base.replan_patience,
        }
    }
}

impl ExperimentConfig {
    pub fn new(sizes: Vec<usize>, seeds_per_size: u64, base: SimConfig) -> Self {
        ExperimentConfig { sizes, seeds_per_size, policies: both_policies(), base }
    }

    /// Run configurations in `(size, policy, seed)` order.
    pub fn runs(&self) -> Vec<SimConfig> {
        let mut out = Vec::new();
        for &size in &self.sizes {
            for policy in &self.policies {
                for i in 0..self.seeds_per_size {
                    out.push(SimConfig {
                        grid_size: size,
                        policy: policy.to_ascii_lowercase(),
                        seed: self.base.seed.wrapping_add(i),
                        ..self.base.clone()
                    });
                }
            }
        }
        out
    }

    pub fn validate(&self, registry: &PolicyRegistry) -> Result<(), SimError> {
        if let Some(&bad) = self.sizes.iter().find(|&&n| n < 2) {
            return Err(SimError::InvalidConfig(format!("grid size {bad} is below 2")));
        }
        if self.sizes.is_empty() || self.seeds_per_size == 0 {
            return Err(SimError::InvalidConfig("need at least one size and one seed".into()));
        }
        for p in &self.policies {
            registry.resolve(p)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RunRecord {
    pub config: SimConfig,
    pub result: Result<RunOutput, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Summary {
    pub mean: f64,
    /// Sample standard deviation; 0 for fewer than two values.
    pub std: f64,
    pub n: usize,
}

impl Summary {
    pub fn of(values: &[f64]) -> Summary {
        let n = values.len();
        if n == 0 {
            return Summary { mean: f64::NAN, std: f64::NAN, n };
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let std = if n < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        };
        Summary { mean, std, n }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateRow {
    pub size: usize,
    pub policy: String,
    pub runs: usize,
    pub failures: usize,
    pub collision_rate: Summary,
    pub avg_path_length: Summary,
    pub path_efficiency: Summary,
    pub avg_waits: Summary,
    /// Milliseconds.
    pub compute_ms: Summary,
    pub unfinished: Summary,
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub runs: Vec<RunRecord>,
    pub aggregates: Vec<AggregateRow>,
}

impl ExperimentResult {
    pub fn row(&self, size: usize, policy: &str) -> Option<&AggregateRow> {
        self.aggregates.iter().find(|r| r.size == size && r.policy.eq_ignore_ascii_case(policy))
    }

    pub fn failures(&self) -> impl Iterator<Item = &RunRecord> {
        self.runs.iter().filter(|r| r.result.is_err())
    }
}

/// Runs the matrix on `workers` threads (all cores when `None`). Failed runs
/// are kept as error records.
pub fn run_experiment(
    cfg: &ExperimentConfig,
    registry: &PolicyRegistry,
    workers: Option<usize>,
) -> Result<ExperimentResult, SimError> {
    cfg.validate(registry)?;
    let configs = cfg.runs();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        builder = builder.num_threads(w.max(1));
    }
    let pool = builder.build().map_err(|e| SimError::InvalidConfig(e.to_string()))?;
    let runs: Vec<RunRecord> = pool.install(|| {
        configs
            .into_par_iter()
            .map(|config| {
                let result = run(&config, registry).map_err(|e| e.to_string());
                RunRecord { config, result }
            })
            .collect()
    });
    let mut aggregates = Vec::new();
    for &size in &cfg.sizes {
        for policy in &cfg.policies {
            let group: Vec<_> =
                runs.iter().filter(|r| r.config.grid_size == size && r.config.policy.eq_ignore_ascii_case(policy)).collect();
            let ok: Vec<_> = group.iter().filter_map(|r| r.result.as_ref().ok()).map(|o| &o.metrics).collect();
            let summary = |f: &dyn Fn(&crate::RunMetrics) -> Option<f64>| {
                Summary::of(&ok.iter().filter_map(|m| f(m)).collect::<Vec<_>>())
            };
            aggregates.push(AggregateRow {
                size,
                policy: policy.to_ascii_lowercase(),
                runs: group.len(),
                failures: group.len() - ok.len(),
                collision_rate: summary(&|m| Some(to_f64(&m.collision_rate))),
                avg_path_length: summary(&|m| m.avg_path_length.as_ref().map(to_f64)),
                path_efficiency: summary(&|m| m.path_efficiency.as_ref().map(to_f64)),
                avg_waits: summary(&|m| Some(to_f64(&m.avg_waits))),
                compute_ms: summary(&|m| Some(m.mean_compute_per_step.as_secs_f64() * 1e3)),
                unfinished: summary(&|m| Some(m.unfinished as f64)),
            });
        }
    }
    Ok(ExperimentResult { runs, aggregates })
}
