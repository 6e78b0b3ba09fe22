use std::time::{Duration, Instant};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use smtl_core::time::{ratio, Rational};

use crate::policy::Policy;
use crate::world::{generate_world, Cell, World};
use crate::{PolicyRegistry, SimConfig, SimError};

/// One line of the trajectory log; `t = 0` is the initial placement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub t: u64,
    pub positions: Vec<Cell>,
    pub collisions: u64,
    pub waits_this_step: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunMetrics {
    /// Pairwise same-cell events over all steps, per agent.
    pub collision_rate: Rational,
    /// Mean steps (waits included) over agents that reached their goal.
    pub avg_path_length: Option<Rational>,
    /// Mean of shortest / actual over agents that reached their goal.
    pub path_efficiency: Option<Rational>,
    pub avg_waits: Rational,
    /// Policy decision time (initial planning plus every step) per step per
    /// agent.
    pub mean_compute_per_step: Duration,
    pub unfinished: usize,
    pub total_collisions: u64,
    pub steps: u64,
}

impl RunMetrics {
    /// Equality ignoring the wall-clock field.
    pub fn same_outcome(&self, other: &RunMetrics) -> bool {
        RunMetrics { mean_compute_per_step: Duration::ZERO, ..self.clone() }
            == RunMetrics { mean_compute_per_step: Duration::ZERO, ..other.clone() }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub metrics: RunMetrics,
    pub log: Vec<StepRecord>,
    pub starts: Vec<Cell>,
    pub goals: Vec<Cell>,
}

pub fn run(cfg: &SimConfig, registry: &PolicyRegistry) -> Result<RunOutput, SimError> {
    let policy = registry.resolve(&cfg.policy)?;
    let world = generate_world(cfg)?;
    run_world(world, policy, cfg.step_limit(), cfg.replan_patience)
}

/// Steps `world` until every agent has reached its goal or `max_steps`.
pub fn run_world(mut world: World, policy: &dyn Policy, max_steps: u64, patience: u32) -> Result<RunOutput, SimError> {
    let starts = world.positions();
    let mut log = vec![StepRecord { t: 0, positions: starts.clone(), collisions: world.collisions(), waits_this_step: vec![] }];
    let mut total_collisions = log[0].collisions;
    let started = Instant::now();
    policy.plan(&mut world);
    let mut compute = started.elapsed();
    let mut steps = 0;
    while steps < max_steps && !world.all_reached() {
        let started = Instant::now();
        let waited = policy.step(&mut world, patience)?;
        compute += started.elapsed();
        steps += 1;
        let collisions = world.collisions();
        total_collisions += collisions;
        log.push(StepRecord { t: steps, positions: world.positions(), collisions, waits_this_step: waited });
    }
    let metrics = metrics(&world, total_collisions, steps, compute);
    Ok(RunOutput { metrics, log, starts, goals: world.goals() })
}

fn mean(values: impl IntoIterator<Item = Rational>) -> Option<Rational> {
    let (sum, n) = values.into_iter().fold((Rational::zero(), 0i64), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / Rational::from_integer(n.into()))
}

fn metrics(world: &World, total_collisions: u64, steps: u64, compute: Duration) -> RunMetrics {
    let agents = world.agents.len() as i64;
    let reached: Vec<_> = world.agents.iter().filter(|a| a.reached).collect();
    let per_decision = (steps as u128) * (agents as u128);
    RunMetrics {
        collision_rate: ratio(total_collisions as i64, agents),
        avg_path_length: mean(reached.iter().map(|a| ratio(a.steps_taken as i64, 1))),
        path_efficiency: mean(reached.iter().map(|a| {
            if a.steps_taken == 0 {
                ratio(1, 1)
            } else {
                ratio(a.shortest as i64, a.steps_taken as i64)
            }
        })),
        avg_waits: ratio(world.agents.iter().map(|a| a.waits as i64).sum(), agents),
        mean_compute_per_step: compute
            .as_nanos()
            .checked_div(per_decision)
            .map_or(Duration::ZERO, |n| Duration::from_nanos(n as u64)),
        unfinished: world.agents.len() - reached.len(),
        total_collisions,
        steps,
    }
}
