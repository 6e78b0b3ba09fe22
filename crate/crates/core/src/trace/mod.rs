//! Finite timed state sequences, single- and multi-level.

mod abstraction;
mod json;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

pub use abstraction::{
    apply_abstraction, build_stratified, check_consistency, erode_isolated, AbstractionOp, Hierarchy,
};
pub use json::{load_trace, trace_to_json, TraceFile};

use crate::formula::Level;
use crate::time::{format_rational, Rational};

/// The set of propositions that hold in a state.
pub type State = BTreeSet<String>;

pub fn state<'a>(props: impl IntoIterator<Item = &'a str>) -> State {
    props.into_iter().map(str::to_string).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("invalid trace: {}", list(.0))]
    Invalid(Vec<Violation>),
    #[error("constructed trace violates the multi-rate constraint: {}", list(.0))]
    ResolutionViolation(Vec<Violation>),
    #[error("trace has {found} levels but the hierarchy implies {expected}")]
    LevelMismatch { expected: usize, found: usize },
    #[error("invalid hierarchy: {0}")]
    InvalidHierarchy(String),
    #[error("trace levels are not consistent with the declared hierarchy")]
    Inconsistent,
    #[error("malformed trace file: {0}")]
    Format(String),
}

fn list(violations: &[Violation]) -> String {
    violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    FirstTimestampNotZero,
    NonMonotone { position: usize },
    LengthMismatch { level: Level, expected: usize, found: usize },
    LevelGap { missing: Level },
    MissingResolution { level: Level },
    ResolutionWithoutLevel { level: Level },
    NonPositiveResolution { level: Level },
    NonIncreasingResolution { lower: Level, higher: Level },
    MultiRate { level: Level, position: usize, gap: Rational, resolution: Rational },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "trace has no positions"),
            Violation::FirstTimestampNotZero => write!(f, "first timestamp is not 0"),
            Violation::NonMonotone { position } => {
                write!(f, "timestamp at position {position} does not increase")
            }
            Violation::LengthMismatch { level, expected, found } => {
                write!(f, "level {level} has {found} states, expected {expected}")
            }
            Violation::LevelGap { missing } => write!(f, "level {missing} is missing"),
            Violation::MissingResolution { level } => write!(f, "level {level} has no resolution"),
            Violation::ResolutionWithoutLevel { level } => {
                write!(f, "resolution given for absent level {level}")
            }
            Violation::NonPositiveResolution { level } => {
                write!(f, "resolution of level {level} is not positive")
            }
            Violation::NonIncreasingResolution { lower, higher } => {
                write!(f, "resolution of level {lower} is not below level {higher}")
            }
            Violation::MultiRate { level, position, gap, resolution } => write!(
                f,
                "level {level} changes at position {position} only {} after its previous change (resolution {})",
                format_rational(gap),
                format_rational(resolution)
            ),
        }
    }
}

/// Single-level sequence of states stamped with strictly increasing times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimedTrace {
    timestamps: Vec<Rational>,
    states: Vec<State>,
}

impl TimedTrace {
    pub fn new(timestamps: Vec<Rational>, states: Vec<State>) -> Result<Self, TraceError> {
        let mut violations = timestamp_violations(&timestamps);
        if states.len() != timestamps.len() {
            violations.push(Violation::LengthMismatch {
                level: 1,
                expected: timestamps.len(),
                found: states.len(),
            });
        }
        if violations.is_empty() {
            Ok(Self { timestamps, states })
        } else {
            Err(TraceError::Invalid(violations))
        }
    }

    pub fn len(&self) -> usize {
        self.timestamps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.timestamps.is_empty()
    }

    pub fn timestamps(&self) -> &[Rational] {
        &self.timestamps
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }
}

fn timestamp_violations(timestamps: &[Rational]) -> Vec<Violation> {
    let mut out = Vec::new();
    match timestamps.first() {
        None => out.push(Violation::Empty),
        Some(t0) if !t0.is_zero() => out.push(Violation::FirstTimestampNotZero),
        _ => {}
    }
    for (position, pair) in timestamps.windows(2).enumerate() {
        if pair[1] <= pair[0] {
            out.push(Violation::NonMonotone { position: position + 1 });
        }
    }
    out
}

/// One shared timestamp sequence with a state sequence per abstraction level.
///
/// Built unchecked with [`StratifiedTrace::from_parts`] (so that broken traces
/// can be inspected with [`StratifiedTrace::validate`]) or checked with
/// [`StratifiedTrace::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratifiedTrace {
    timestamps: Vec<Rational>,
    levels: BTreeMap<Level, Vec<State>>,
    resolutions: BTreeMap<Level, Rational>,
}

impl StratifiedTrace {
    pub fn from_parts(
        timestamps: Vec<Rational>,
        levels: BTreeMap<Level, Vec<State>>,
        resolutions: BTreeMap<Level, Rational>,
    ) -> Self {
        Self { timestamps, levels, resolutions }
    }

    pub fn new(
        timestamps: Vec<Rational>,
        levels: BTreeMap<Level, Vec<State>>,
        resolutions: BTreeMap<Level, Rational>,
    ) -> Result<Self, TraceError> {
        Self::from_parts(timestamps, levels, resolutions).validated()
    }

    pub fn validated(self) -> Result<Self, TraceError> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(self)
        } else {
            Err(TraceError::Invalid(violations))
        }
    }

    /// A one-level trace carrying `trace` at level 1.
    pub fn lift(trace: &TimedTrace, resolution: Rational) -> Result<Self, TraceError> {
        Self::new(
            trace.timestamps.clone(),
            BTreeMap::from([(1, trace.states.clone())]),
            BTreeMap::from([(1, resolution)]),
        )
    }

    /// Every broken invariant, in a stable order.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = timestamp_violations(&self.timestamps);
        let n = self.timestamps.len();
        if self.levels.is_empty() {
            out.push(Violation::LevelGap { missing: 1 });
        }
        for (expected, &level) in (1..).zip(self.levels.keys()) {
            if level != expected {
                out.push(Violation::LevelGap { missing: expected });
                break;
            }
        }
        for (&level, states) in &self.levels {
            if states.len() != n {
                out.push(Violation::LengthMismatch { level, expected: n, found: states.len() });
            }
            match self.resolutions.get(&level) {
                None => out.push(Violation::MissingResolution { level }),
                Some(r) if *r <= Rational::zero() => out.push(Violation::NonPositiveResolution { level }),
                _ => {}
            }
        }
        for &level in self.resolutions.keys() {
            if !self.levels.contains_key(&level) {
                out.push(Violation::ResolutionWithoutLevel { level });
            }
        }
        for ((&lower, lo), (&higher, hi)) in self.resolutions.iter().zip(self.resolutions.iter().skip(1)) {
            if lo >= hi {
                out.push(Violation::NonIncreasingResolution { lower, higher });
            }
        }
        out.extend(self.multi_rate_violations());
        out
    }

    /// Successive distinct states of a level must start at least its
    /// resolution apart; repeated (stuttering) states are exempt.
    fn multi_rate_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (&level, states) in &self.levels {
            let Some(resolution) = self.resolutions.get(&level) else { continue };
            let Some(mut last_change) = self.timestamps.first() else { continue };
            let len = states.len().min(self.timestamps.len());
            for position in 1..len {
                if states[position] == states[position - 1] {
                    continue;
                }
                let at = &self.timestamps[position];
                let gap = at - last_change;
                if gap < *resolution {
                    out.push(Violation::MultiRate {
                        level,
                        position,
                        gap,
                        resolution: resolution.clone(),
                    });
                }
                last_change = at;
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.timestamps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.timestamps.is_empty()
    }

    pub fn timestamps(&self) -> &[Rational] {
        &self.timestamps
    }

    pub fn level(&self, level: Level) -> Option<&[State]> {
        self.levels.get(&level).map(Vec::as_slice)
    }

    pub fn levels(&self) -> &BTreeMap<Level, Vec<State>> {
        &self.levels
    }

    pub fn resolutions(&self) -> &BTreeMap<Level, Rational> {
        &self.resolutions
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn level_trace(&self, level: Level) -> Option<TimedTrace> {
        self.levels
            .get(&level)
            .map(|states| TimedTrace { timestamps: self.timestamps.clone(), states: states.clone() })
    }

    /// The first `len` positions of every level.
    pub fn prefix(&self, len: usize) -> StratifiedTrace {
        StratifiedTrace {
            timestamps: self.timestamps[..len].to_vec(),
            levels: self.levels.iter().map(|(&k, s)| (k, s[..len].to_vec())).collect(),
            resolutions: self.resolutions.clone(),
        }
    }
}
