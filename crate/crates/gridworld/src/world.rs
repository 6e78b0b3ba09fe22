use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{SimConfig, SimError};

/// `(row, col)`.
pub type Cell = (usize, usize);

const OBSTACLE_FIELDS: usize = 50;
const PAIR_RETRIES: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    size: usize,
    blocked: Vec<bool>,
}

impl Grid {
    pub fn open(size: usize) -> Self {
        Grid { size, blocked: vec![false; size * size] }
    }

    pub fn with_obstacles(size: usize, obstacles: &[Cell]) -> Self {
        let mut grid = Grid::open(size);
        for &c in obstacles {
            let i = grid.index(c);
            grid.blocked[i] = true;
        }
        grid
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn index(&self, (r, c): Cell) -> usize {
        r * self.size + c
    }

    pub fn is_free(&self, cell: Cell) -> bool {
        cell.0 < self.size && cell.1 < self.size && !self.blocked[self.index(cell)]
    }

    pub fn free_cells(&self) -> Vec<Cell> {
        (0..self.size)
            .flat_map(|r| (0..self.size).map(move |c| (r, c)))
            .filter(|&c| self.is_free(c))
            .collect()
    }

    pub fn neighbours(&self, (r, c): Cell) -> impl Iterator<Item = Cell> + '_ {
        let up = r.checked_sub(1).map(|r| (r, c));
        let left = c.checked_sub(1).map(|c| (r, c));
        [up, Some((r + 1, c)), left, Some((r, c + 1))].into_iter().flatten().filter(|&n| self.is_free(n))
    }

    /// Shortest path from `from` to `to`, excluding `from`, avoiding cells
    /// for which `blocked` holds (the goal itself is never avoided).
    pub fn shortest_path(&self, from: Cell, to: Cell, blocked: impl Fn(Cell) -> bool) -> Option<VecDeque<Cell>> {
        if !self.is_free(from) || !self.is_free(to) {
            return None;
        }
        let mut parent = vec![usize::MAX; self.size * self.size];
        let start = self.index(from);
        parent[start] = start;
        let mut queue = VecDeque::from([from]);
        while let Some(cell) = queue.pop_front() {
            if cell == to {
                let mut path = VecDeque::new();
                let mut at = cell;
                while at != from {
                    path.push_front(at);
                    let p = parent[self.index(at)];
                    at = (p / self.size, p % self.size);
                }
                return Some(path);
            }
            for next in self.neighbours(cell) {
                let i = self.index(next);
                if parent[i] == usize::MAX && (next == to || !blocked(next)) {
                    parent[i] = self.index(cell);
                    queue.push_back(next);
                }
            }
        }
        None
    }

    pub fn distance(&self, from: Cell, to: Cell) -> Option<usize> {
        self.shortest_path(from, to, |_| false).map(|p| p.len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentState {
    pub id: usize,
    pub position: Cell,
    pub start: Cell,
    pub goal: Cell,
    pub path: VecDeque<Cell>,
    pub shortest: usize,
    pub steps_taken: u64,
    pub waits: u64,
    /// Waits since the last move or replan.
    pub stalled: u32,
    /// World move count at the last replan attempt.
    pub replanned_at: Option<u64>,
    pub reached: bool,
}

/// Agents change cells only through [`World::move_agent`], which keeps the
/// per-cell occupancy counts in step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct World {
    pub grid: Grid,
    pub agents: Vec<AgentState>,
    occupancy: Vec<u16>,
    moves: u64,
}

impl World {
    /// Agents with the given start/goal pairs; every goal must be reachable.
    /// Routes are left empty for the policy to plan.
    pub fn new(grid: Grid, pairs: &[(Cell, Cell)]) -> Result<Self, SimError> {
        let mut agents = Vec::with_capacity(pairs.len());
        for (id, &(start, goal)) in pairs.iter().enumerate() {
            let shortest = grid.distance(start, goal).ok_or(SimError::Unreachable { agent: id })?;
            agents.push(AgentState {
                id,
                position: start,
                start,
                goal,
                path: VecDeque::new(),
                shortest,
                steps_taken: 0,
                waits: 0,
                stalled: 0,
                replanned_at: None,
                reached: start == goal,
            });
        }
        let starts: std::collections::BTreeSet<_> = pairs.iter().map(|p| p.0).collect();
        if starts.len() != pairs.len() {
            return Err(SimError::InvalidConfig("agents must start on distinct cells".into()));
        }
        let mut occupancy = vec![0; grid.size() * grid.size()];
        for a in &agents {
            occupancy[grid.index(a.position)] += 1;
        }
        Ok(World { grid, agents, occupancy, moves: 0 })
    }

    /// Agents currently on `cell`.
    pub fn occupancy(&self, cell: Cell) -> u16 {
        self.occupancy[self.grid.index(cell)]
    }

    /// Successful moves so far, over all agents.
    pub fn moves(&self) -> u64 {
        self.moves
    }

    /// Gives every agent a shortest route over the obstacle grid.
    pub fn plan_shortest_paths(&mut self) {
        for agent in &mut self.agents {
            agent.path = self.grid.shortest_path(agent.position, agent.goal, |_| false).unwrap_or_default();
        }
    }

    /// Moves agent `id` one cell along its path.
    pub fn move_agent(&mut self, id: usize, next: Cell) {
        let agent = &mut self.agents[id];
        self.occupancy[self.grid.index(agent.position)] -= 1;
        self.occupancy[self.grid.index(next)] += 1;
        self.moves += 1;
        agent.position = next;
        agent.path.pop_front();
        agent.steps_taken += 1;
        agent.stalled = 0;
        agent.reached = agent.position == agent.goal;
    }

    pub fn positions(&self) -> Vec<Cell> {
        self.agents.iter().map(|a| a.position).collect()
    }

    pub fn goals(&self) -> Vec<Cell> {
        self.agents.iter().map(|a| a.goal).collect()
    }

    pub fn all_reached(&self) -> bool {
        self.agents.iter().all(|a| a.reached)
    }

    /// Unordered agent pairs sharing a cell.
    pub fn collisions(&self) -> u64 {
        count_collisions(&self.positions())
    }
}

pub fn count_collisions(positions: &[Cell]) -> u64 {
    let mut sorted = positions.to_vec();
    sorted.sort_unstable();
    let mut total = 0;
    let mut run = 1u64;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            total += run;
            run += 1;
        } else {
            run = 1;
        }
    }
    total
}

/// Seeded world: obstacles cell by cell, then distinct starts and distinct
/// goals with every goal reachable from its start.
pub fn generate_world(cfg: &SimConfig) -> Result<World, SimError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.grid_size;
    let agents = cfg.agents();
    'field: for _ in 0..OBSTACLE_FIELDS {
        let obstacles: Vec<Cell> = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .filter(|_| rng.gen_bool(cfg.obstacle_density))
            .collect();
        let grid = Grid::with_obstacles(n, &obstacles);
        let free = grid.free_cells();
        if free.len() < agents.max(2) {
            continue;
        }
        let mut starts = std::collections::BTreeSet::new();
        let mut goals = std::collections::BTreeSet::new();
        let mut pairs = Vec::with_capacity(agents);
        for _ in 0..agents {
            let pair = (0..PAIR_RETRIES).find_map(|_| {
                let start = *free.choose(&mut rng)?;
                let goal = *free.choose(&mut rng)?;
                let fresh = start != goal && !starts.contains(&start) && !goals.contains(&goal);
                (fresh && grid.distance(start, goal).is_some()).then_some((start, goal))
            });
            match pair {
                Some((s, g)) => {
                    starts.insert(s);
                    goals.insert(g);
                    pairs.push((s, g));
                }
                None => continue 'field,
            }
        }
        return World::new(grid, &pairs);
    }
    Err(SimError::WorldGenerationFailed { attempts: OBSTACLE_FIELDS })
}
