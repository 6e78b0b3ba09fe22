//! Movement policies, selected by name through a [`PolicyRegistry`].

use crate::world::World;
use crate::SimError;

/// Advances every unreached agent by at most one cell.
pub trait Policy: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Initial routes, before the first step.
    fn plan(&self, world: &mut World) {
        world.plan_shortest_paths();
    }

    /// Returns the ids of agents that waited this step.
    fn step(&self, world: &mut World, patience: u32) -> Result<Vec<usize>, SimError>;
}

/// Follows the precomputed shortest path and ignores every other agent.
pub struct MtlPolicy;

impl Policy for MtlPolicy {
    fn name(&self) -> &'static str {
        "mtl"
    }

    fn description(&self) -> &'static str {
        "goal response only: shortest path, never waits"
    }

    fn step(&self, world: &mut World, _patience: u32) -> Result<Vec<usize>, SimError> {
        for id in 0..world.agents.len() {
            let agent = &world.agents[id];
            if agent.reached {
                continue;
            }
            if let Some(&next) = agent.path.front() {
                world.move_agent(id, next);
            }
        }
        Ok(Vec::new())
    }
}

/// Goal response under a pairwise no-shared-cell constraint: agents act in id
/// order and wait whenever their next cell is taken, either by an agent that
/// has not acted yet or by where an earlier agent has just moved.
pub struct SmtlPolicy;

impl Policy for SmtlPolicy {
    fn name(&self) -> &'static str {
        "smtl"
    }

    fn description(&self) -> &'static str {
        "goal response plus collision avoidance: priority by id, wait, replan after patience"
    }

    fn step(&self, world: &mut World, patience: u32) -> Result<Vec<usize>, SimError> {
        let mut waited = Vec::new();
        for id in 0..world.agents.len() {
            let agent = &world.agents[id];
            if agent.reached {
                continue;
            }
            if let Some(&next) = agent.path.front().filter(|&&c| world.occupancy(c) == 0) {
                world.move_agent(id, next);
                continue;
            }
            let moves = world.moves();
            let agent = &mut world.agents[id];
            agent.waits += 1;
            agent.steps_taken += 1;
            agent.stalled += 1;
            waited.push(id);
            if agent.stalled < patience {
                continue;
            }
            agent.stalled = 0;
            // Nothing moved since the last attempt, so the search would
            // return the same answer.
            if agent.replanned_at == Some(moves) {
                continue;
            }
            agent.replanned_at = Some(moves);
            let (from, goal) = (agent.position, agent.goal);
            if let Some(path) = world.grid.shortest_path(from, goal, |c| world.occupancy(c) > 0) {
                world.agents[id].path = path;
            }
        }
        if let Some(cell) = world.agents.iter().map(|a| a.position).find(|&c| world.occupancy(c) > 1) {
            let agents = world.agents.iter().filter(|a| a.position == cell).map(|a| a.id).collect();
            return Err(SimError::InvariantViolation { cell, agents });
        }
        Ok(waited)
    }
}

pub struct PolicyRegistry {
    policies: Vec<Box<dyn Policy>>,
}

impl PolicyRegistry {
    pub fn empty() -> Self {
        PolicyRegistry { policies: Vec::new() }
    }

    pub fn register(&mut self, policy: Box<dyn Policy>) {
        self.policies.retain(|p| p.name() != policy.name());
        self.policies.push(policy);
    }

    /// Case-insensitive lookup.
    pub fn get(&self, name: &str) -> Option<&dyn Policy> {
        self.policies.iter().find(|p| p.name().eq_ignore_ascii_case(name)).map(|p| p.as_ref())
    }

    pub fn resolve(&self, name: &str) -> Result<&dyn Policy, SimError> {
        self.get(name).ok_or_else(|| SimError::UnknownPolicy(name.into()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.policies.iter().map(|p| p.name())
    }
}

impl Default for PolicyRegistry {
    fn default() -> Self {
        let mut registry = PolicyRegistry::empty();
        registry.register(Box::new(MtlPolicy));
        registry.register(Box::new(SmtlPolicy));
        registry
    }
}
