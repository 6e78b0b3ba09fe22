//! Trajectory logs on disk and their conversion to evaluator traces.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use smtl_core::formula::{atom, Formula};
use smtl_core::interval::Interval;
use smtl_core::time::int;
use smtl_core::trace::{State, StratifiedTrace};
use smtl_core::{evaluate, SemanticsMode, Verdict};

use crate::run::{RunOutput, StepRecord};
use crate::world::Cell;
use crate::SimError;

/// Sidecar describing one logged run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunMeta {
    pub size: usize,
    pub policy: String,
    pub seed: u64,
    pub max_steps: u64,
    pub starts: Vec<Cell>,
    pub goals: Vec<Cell>,
    pub all_reached: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoggedRun {
    pub meta: RunMeta,
    pub steps: Vec<StepRecord>,
    pub path: PathBuf,
}

pub fn log_stem(size: usize, policy: &str, seed: u64) -> String {
    format!("{policy}_n{size}_seed{seed}")
}

/// Writes `<stem>.jsonl` (one step per line) and `<stem>.meta.json`.
pub fn write_log(dir: &Path, meta: &RunMeta, steps: &[StepRecord]) -> Result<PathBuf, SimError> {
    fs::create_dir_all(dir)?;
    let stem = log_stem(meta.size, &meta.policy, meta.seed);
    let mut lines = String::new();
    for step in steps {
        lines.push_str(&serde_json::to_string(step)?);
        lines.push('\n');
    }
    let path = dir.join(format!("{stem}.jsonl"));
    fs::write(&path, lines)?;
    fs::write(dir.join(format!("{stem}.meta.json")), serde_json::to_string_pretty(meta)?)?;
    Ok(path)
}

pub fn run_meta(size: usize, policy: &str, seed: u64, max_steps: u64, out: &RunOutput) -> RunMeta {
    RunMeta {
        size,
        policy: policy.to_ascii_lowercase(),
        seed,
        max_steps,
        starts: out.starts.clone(),
        goals: out.goals.clone(),
        all_reached: out.metrics.unfinished == 0,
    }
}

pub fn read_log(path: &Path) -> Result<LoggedRun, SimError> {
    let text = fs::read_to_string(path)?;
    let steps = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect::<Result<Vec<StepRecord>, _>>()?;
    let meta_path = path.with_extension("meta.json");
    let meta: RunMeta = serde_json::from_str(&fs::read_to_string(&meta_path)?)?;
    if steps.is_empty() {
        return Err(SimError::Log(format!("{}: no steps", path.display())));
    }
    Ok(LoggedRun { meta, steps, path: path.to_path_buf() })
}

/// Every `*.jsonl` log in `dir`, sorted by file name.
pub fn read_logs(dir: &Path) -> Result<Vec<LoggedRun>, SimError> {
    let mut paths: Vec<_> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
        .collect();
    paths.sort();
    paths.iter().map(|p| read_log(p)).collect()
}

pub fn collide_prop(i: usize, j: usize) -> String {
    format!("collide_{i}_{j}")
}

pub fn at_goal_prop(i: usize) -> String {
    format!("at_goal_{i}")
}

/// One-level trace at timestamps `0, 1, 2, ...` with `collide_i_j` (`i < j`)
/// and `at_goal_i`; positions past the log repeat the final step.
pub fn export_trace(steps: &[StepRecord], goals: &[Cell], len: usize) -> StratifiedTrace {
    let states: Vec<State> = (0..len)
        .map(|t| {
            let positions = &steps[t.min(steps.len() - 1)].positions;
            let mut s = State::new();
            for i in 0..positions.len() {
                if positions[i] == goals[i] {
                    s.insert(at_goal_prop(i));
                }
                for j in i + 1..positions.len() {
                    if positions[i] == positions[j] {
                        s.insert(collide_prop(i, j));
                    }
                }
            }
            s
        })
        .collect();
    StratifiedTrace::new(
        (0..len).map(|t| int(t as i64)).collect(),
        BTreeMap::from([(1, states)]),
        BTreeMap::from([(1, int(1))]),
    )
    .expect("unit-spaced single-level trace is valid")
}

/// `G[0,T] (!collide_0_1 & !collide_0_2 & ...)` over all agent pairs.
pub fn safety_formula(agents: usize, horizon: u64) -> Formula {
    let pairs = (0..agents).flat_map(|i| (i + 1..agents).map(move |j| Formula::not(atom(&collide_prop(i, j)))));
    Formula::always(Interval::closed(int(0), int(horizon as i64)).unwrap(), Formula::conjunction(pairs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafetyCheck {
    pub verdict: Verdict,
    pub horizon: u64,
    /// First step with a shared cell, if any.
    pub first_violation: Option<u64>,
}

/// Evaluates the pairwise safety conjunct over `[0, horizon]` (default: the
/// run's `max_steps`). Beyond the log the agents are taken to stay parked when
/// every agent finished; otherwise those steps stay undetermined.
pub fn verify_safety(run: &LoggedRun, horizon: Option<u64>) -> SafetyCheck {
    let last = run.steps.len() as u64 - 1;
    let horizon = horizon.unwrap_or(run.meta.max_steps);
    let len = if horizon > last && run.meta.all_reached { horizon + 1 } else { last + 1 };
    let trace = export_trace(&run.steps, &run.meta.goals, len as usize);
    let agents = run.meta.goals.len();
    let verdict = evaluate(&safety_formula(agents, horizon), &trace, 0, 1, SemanticsMode::Strict)
        .expect("trace defines level 1 and position 0");
    let first_violation = run.steps.iter().find(|s| s.collisions > 0 && s.t <= horizon).map(|s| s.t);
    SafetyCheck { verdict, horizon, first_violation }
}
