//! Seeded random instances for property tests and benchmarks.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::formula::{Formula, Level};
use crate::interval::Interval;
use crate::time::{int, ratio, Rational};
use crate::trace::{State, StratifiedTrace, TimedTrace};

pub const ATOMS: &[&str] = &["p", "q", "r"];

#[derive(Debug, Clone, Copy)]
pub struct FormulaShape {
    pub max_depth: usize,
    /// Highest stratum level to emit; 0 disables strata.
    pub max_level: Level,
    /// Only nest strata at or below every enclosing level.
    pub well_formed: bool,
    /// Emit `Or`, `Implies`, `Release`, `Eventually`, `Always`, `False`.
    pub derived: bool,
}

fn quarter(rng: &mut impl Rng, max_quarters: i64) -> Rational {
    ratio(rng.gen_range(0..=max_quarters), 4)
}

pub fn random_interval(rng: &mut impl Rng) -> Interval {
    loop {
        let lower = quarter(rng, 8);
        let lower_closed = rng.gen_bool(0.7);
        let candidate = if rng.gen_bool(0.15) {
            Interval::new(lower, None, lower_closed, false)
        } else {
            let upper = &lower + quarter(rng, 12);
            Interval::new(lower, Some(upper), lower_closed, rng.gen_bool(0.7))
        };
        if let Ok(interval) = candidate {
            return interval;
        }
    }
}

pub fn random_formula(rng: &mut impl Rng, shape: FormulaShape) -> Formula {
    let ceiling = if shape.max_level == 0 { None } else { Some(shape.max_level) };
    gen(rng, shape, shape.max_depth, ceiling)
}

fn gen(rng: &mut impl Rng, shape: FormulaShape, depth: usize, ceiling: Option<Level>) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..10) {
            0 => Formula::True,
            1 if shape.derived => Formula::False,
            _ => Formula::Atom(ATOMS.choose(rng).unwrap().to_string()),
        };
    }
    let d = depth - 1;
    let kinds = if shape.derived { 10 } else { 5 };
    match rng.gen_range(0..kinds) {
        0 => Formula::not(gen(rng, shape, d, ceiling)),
        1 => Formula::and(gen(rng, shape, d, ceiling), gen(rng, shape, d, ceiling)),
        2 | 3 => Formula::until(gen(rng, shape, d, ceiling), random_interval(rng), gen(rng, shape, d, ceiling)),
        4 => match ceiling {
            Some(top) => {
                let k = rng.gen_range(1..=top);
                let inner = if shape.well_formed { Some(k) } else { Some(shape.max_level) };
                Formula::stratum(k, gen(rng, shape, d, inner))
            }
            None => Formula::not(gen(rng, shape, d, ceiling)),
        },
        5 => Formula::or(gen(rng, shape, d, ceiling), gen(rng, shape, d, ceiling)),
        6 => Formula::implies(gen(rng, shape, d, ceiling), gen(rng, shape, d, ceiling)),
        7 => Formula::release(gen(rng, shape, d, ceiling), random_interval(rng), gen(rng, shape, d, ceiling)),
        8 => Formula::eventually(random_interval(rng), gen(rng, shape, d, ceiling)),
        _ => Formula::always(random_interval(rng), gen(rng, shape, d, ceiling)),
    }
}

pub fn random_timestamps(rng: &mut impl Rng, len: usize) -> Vec<Rational> {
    let mut t = int(0);
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(t.clone());
        t += ratio(rng.gen_range(1..=6), 4);
    }
    out
}

pub fn random_state(rng: &mut impl Rng) -> State {
    ATOMS.iter().filter(|_| rng.gen_bool(0.5)).map(|a| a.to_string()).collect()
}

pub fn random_timed_trace(rng: &mut impl Rng, len: usize) -> TimedTrace {
    let ts = random_timestamps(rng, len);
    let states = (0..len).map(|_| random_state(rng)).collect();
    TimedTrace::new(ts, states).expect("generated timestamps increase from 0")
}

/// Random levels `1..=levels`; resolutions stay below the smallest timestamp
/// step so any state pattern satisfies the multi-rate constraint.
pub fn random_stratified_trace(rng: &mut impl Rng, len: usize, levels: Level) -> StratifiedTrace {
    let ts = random_timestamps(rng, len);
    let states = (1..=levels)
        .map(|k| (k, (0..len).map(|_| random_state(rng)).collect()))
        .collect::<BTreeMap<_, _>>();
    let resolutions = (1..=levels).map(|k| (k, ratio(k as i64, 16))).collect();
    StratifiedTrace::new(ts, states, resolutions).expect("generated trace is valid")
}

/// `trace` followed by `extra` random positions at every level.
pub fn extend_randomly(rng: &mut impl Rng, trace: &StratifiedTrace, extra: usize) -> StratifiedTrace {
    let mut ts = trace.timestamps().to_vec();
    for _ in 0..extra {
        let next = ts.last().cloned().unwrap_or_else(|| int(0)) + ratio(rng.gen_range(1..=6), 4);
        ts.push(next);
    }
    let levels = trace
        .levels()
        .iter()
        .map(|(&k, states)| {
            let mut states = states.clone();
            states.extend((0..extra).map(|_| random_state(rng)));
            (k, states)
        })
        .collect();
    StratifiedTrace::new(ts, levels, trace.resolutions().clone()).expect("extension keeps the trace valid")
}
