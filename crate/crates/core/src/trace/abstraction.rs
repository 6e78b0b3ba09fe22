//! Abstraction operators and the level hierarchy built from them.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{State, StratifiedTrace, TimedTrace, TraceError};
use crate::formula::Level;
use crate::time::{serde_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum AbstractionOp {
    Identity,
    /// Keep only the listed propositions.
    Project { keep: BTreeSet<String> },
    /// Drop proposition occurrences too short-lived to contain a full window
    /// of half-width `radius` (erosion followed by dilation).
    SmoothIsolated {
        #[serde(with = "serde_rational")]
        radius: Rational,
    },
    /// Sample once per `period` and write the sample over the whole period.
    Downsample {
        #[serde(with = "serde_rational")]
        period: Rational,
        hold: bool,
    },
}

impl AbstractionOp {
    pub fn check(&self) -> Result<(), TraceError> {
        match self {
            AbstractionOp::Project { keep } if keep.is_empty() => {
                Err(TraceError::InvalidHierarchy("project needs a non-empty keep set".into()))
            }
            AbstractionOp::SmoothIsolated { radius } if *radius <= Rational::zero() => {
                Err(TraceError::InvalidHierarchy("smoothing radius must be positive".into()))
            }
            AbstractionOp::Downsample { period, .. } if *period <= Rational::zero() => {
                Err(TraceError::InvalidHierarchy("downsample period must be positive".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Abstraction operators between adjacent levels plus per-level resolutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hierarchy {
    ops: Vec<AbstractionOp>,
    resolutions: BTreeMap<Level, Rational>,
}

impl Hierarchy {
    /// `ops[k - 1]` maps level `k` to level `k + 1`; `resolutions` must cover
    /// exactly the levels `1..=ops.len() + 1` and strictly increase.
    pub fn new(ops: Vec<AbstractionOp>, resolutions: BTreeMap<Level, Rational>) -> Result<Self, TraceError> {
        for op in &ops {
            op.check()?;
        }
        let expected: Vec<Level> = (1..=ops.len() as Level + 1).collect();
        let found: Vec<Level> = resolutions.keys().copied().collect();
        if expected != found {
            return Err(TraceError::InvalidHierarchy(format!(
                "resolutions cover levels {found:?}, expected {expected:?}"
            )));
        }
        if resolutions.values().any(|r| *r <= Rational::zero()) {
            return Err(TraceError::InvalidHierarchy("resolutions must be positive".into()));
        }
        if resolutions.values().zip(resolutions.values().skip(1)).any(|(lo, hi)| lo >= hi) {
            return Err(TraceError::InvalidHierarchy("resolutions must strictly increase".into()));
        }
        Ok(Self { ops, resolutions })
    }

    pub fn ops(&self) -> &[AbstractionOp] {
        &self.ops
    }

    pub fn resolutions(&self) -> &BTreeMap<Level, Rational> {
        &self.resolutions
    }

    pub fn num_levels(&self) -> usize {
        self.ops.len() + 1
    }
}

pub fn apply_abstraction(op: &AbstractionOp, trace: &TimedTrace) -> TimedTrace {
    let states = match op {
        AbstractionOp::Identity => return trace.clone(),
        AbstractionOp::Project { keep } => {
            trace.states.iter().map(|s| s.intersection(keep).cloned().collect()).collect()
        }
        AbstractionOp::SmoothIsolated { radius } => smooth(trace, radius),
        AbstractionOp::Downsample { period, hold } => downsample(trace, period, *hold),
    };
    TimedTrace { timestamps: trace.timestamps.clone(), states }
}

/// Positions `m` with `|t_m - t_n| < radius`, as an index range.
fn window(timestamps: &[Rational], n: usize, radius: &Rational) -> std::ops::Range<usize> {
    let centre = &timestamps[n];
    let mut lo = n;
    while lo > 0 && centre - &timestamps[lo - 1] < *radius {
        lo -= 1;
    }
    let mut hi = n + 1;
    while hi < timestamps.len() && &timestamps[hi] - centre < *radius {
        hi += 1;
    }
    lo..hi
}

fn propositions(states: &[State]) -> BTreeSet<String> {
    states.iter().flatten().cloned().collect()
}

/// Erosion stage of [`AbstractionOp::SmoothIsolated`]: `p` survives at `n`
/// iff `p` holds at every sample strictly within `radius` of `t_n`.
pub fn erode_isolated(trace: &TimedTrace, radius: &Rational) -> Vec<State> {
    let ts = &trace.timestamps;
    let mut out = vec![State::new(); ts.len()];
    for p in propositions(&trace.states) {
        for (n, slot) in out.iter_mut().enumerate() {
            if window(ts, n, radius).all(|m| trace.states[m].contains(&p)) {
                slot.insert(p.clone());
            }
        }
    }
    out
}

fn smooth(trace: &TimedTrace, radius: &Rational) -> Vec<State> {
    let ts = &trace.timestamps;
    let eroded = erode_isolated(trace, radius);
    let mut out = vec![State::new(); ts.len()];
    for p in propositions(&trace.states) {
        for (n, slot) in out.iter_mut().enumerate() {
            if window(ts, n, radius).any(|m| eroded[m].contains(&p)) {
                slot.insert(p.clone());
            }
        }
    }
    out
}

fn downsample(trace: &TimedTrace, period: &Rational, hold: bool) -> Vec<State> {
    let ts = &trace.timestamps;
    ts.iter()
        .map(|t| {
            let boundary = (t / period).floor() * period;
            let source = if hold {
                // last sample at or before the period boundary
                ts.iter().rposition(|s| *s <= boundary).unwrap_or(0)
            } else {
                // first sample inside the period
                ts.iter().position(|s| *s >= boundary).unwrap_or(0)
            };
            trace.states[source].clone()
        })
        .collect()
}

pub fn build_stratified(base: &TimedTrace, hierarchy: &Hierarchy) -> Result<StratifiedTrace, TraceError> {
    let mut levels = BTreeMap::new();
    let mut current = base.clone();
    levels.insert(1, current.states.clone());
    for (k, op) in (2..).zip(&hierarchy.ops) {
        current = apply_abstraction(op, &current);
        levels.insert(k, current.states.clone());
    }
    let trace = StratifiedTrace::from_parts(base.timestamps.clone(), levels, hierarchy.resolutions.clone());
    let violations = trace.validate();
    if violations.is_empty() {
        Ok(trace)
    } else {
        Err(TraceError::ResolutionViolation(violations))
    }
}

/// Whether each level equals the declared operator applied to the level below.
pub fn check_consistency(trace: &StratifiedTrace, hierarchy: &Hierarchy) -> Result<bool, TraceError> {
    if trace.num_levels() != hierarchy.num_levels() {
        return Err(TraceError::LevelMismatch {
            expected: hierarchy.num_levels(),
            found: trace.num_levels(),
        });
    }
    for (k, op) in (1..).zip(&hierarchy.ops) {
        let (Some(lower), Some(upper)) = (trace.level_trace(k), trace.level(k + 1)) else {
            return Ok(false);
        };
        if apply_abstraction(op, &lower).states != upper {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::time::{int, ratio};
    use crate::trace::state;

    fn sampled(step: Rational, count: usize, holds: impl Fn(usize) -> bool) -> TimedTrace {
        let ts = (0..count).map(|i| &step * int(i as i64)).collect();
        let states = (0..count).map(|i| if holds(i) { state(["p"]) } else { State::new() }).collect();
        TimedTrace::new(ts, states).unwrap()
    }

    /// p on samples 0.0..=1.0 of a 0.1-step grid over [0, 2].
    fn sigma_one() -> TimedTrace {
        sampled(ratio(1, 10), 21, |i| i <= 10)
    }

    fn sigma_two() -> TimedTrace {
        sampled(ratio(1, 10), 21, |i| i <= 10 && i != 5)
    }

    fn holds_at(states: &[State]) -> Vec<usize> {
        states.iter().enumerate().filter(|(_, s)| s.contains("p")).map(|(i, _)| i).collect()
    }

    /// Brute force over the definition with no early exits: for every pair of
    /// samples test the distance directly.
    fn opening_oracle(trace: &TimedTrace, radius: &Rational) -> Vec<usize> {
        let ts = trace.timestamps();
        let x: Vec<bool> = trace.states().iter().map(|s| s.contains("p")).collect();
        let near = |a: usize, b: usize| {
            let d = if ts[a] >= ts[b] { &ts[a] - &ts[b] } else { &ts[b] - &ts[a] };
            d < *radius
        };
        let eroded: Vec<bool> = (0..ts.len()).map(|m| (0..ts.len()).filter(|&k| near(m, k)).all(|k| x[k])).collect();
        (0..ts.len()).filter(|&n| (0..ts.len()).any(|m| near(n, m) && eroded[m])).collect()
    }

    #[test]
    fn identity_is_exact() {
        assert_eq!(apply_abstraction(&AbstractionOp::Identity, &sigma_two()), sigma_two());
    }

    #[test]
    fn erosion_widens_the_single_gap() {
        // samples within 0.3 (exclusive) of 0.5 are 0.3..=0.7
        let eroded = erode_isolated(&sigma_two(), &ratio(3, 10));
        let holds = holds_at(&eroded);
        assert!((3..=7).all(|i| !holds.contains(&i)));
        assert_eq!(holds, vec![0, 1, 2, 8]);
    }

    #[test]
    fn erosion_attenuates_boundaries() {
        let holds = holds_at(&erode_isolated(&sigma_one(), &ratio(3, 10)));
        assert_eq!(holds, (0..=8).collect::<Vec<_>>());
    }

    #[test]
    fn smoothing_restores_wide_runs() {
        let r = ratio(3, 10);
        let one = apply_abstraction(&AbstractionOp::SmoothIsolated { radius: r.clone() }, &sigma_one());
        assert_eq!(holds_at(one.states()), (0..=10).collect::<Vec<_>>());
        assert_eq!(holds_at(one.states()), opening_oracle(&sigma_one(), &r));
        let two = apply_abstraction(&AbstractionOp::SmoothIsolated { radius: r.clone() }, &sigma_two());
        let expected: Vec<usize> = (0..=10).filter(|&i| i != 5).collect();
        assert_eq!(holds_at(two.states()), expected);
        assert_eq!(holds_at(two.states()), opening_oracle(&sigma_two(), &r));
    }

    #[test]
    fn smoothing_removes_isolated_points() {
        let spike = sampled(ratio(1, 10), 11, |i| i == 5 || i == 0);
        let out = apply_abstraction(&AbstractionOp::SmoothIsolated { radius: ratio(3, 10) }, &spike);
        assert!(holds_at(out.states()).is_empty());
        // below the sample step the window holds only its centre
        let inert = apply_abstraction(&AbstractionOp::SmoothIsolated { radius: ratio(1, 20) }, &spike);
        assert_eq!(inert, spike);
    }

    #[test]
    fn downsample_writes_one_value_per_period() {
        let trace = sampled(ratio(1, 4), 8, |i| i % 2 == 1);
        let held = apply_abstraction(&AbstractionOp::Downsample { period: int(1), hold: true }, &trace);
        // boundaries 0 and 1 fall on samples 0 and 4, both without p
        assert!(holds_at(held.states()).is_empty());
        let shifted = TimedTrace::new(
            vec![int(0), ratio(3, 4), ratio(5, 4), ratio(7, 4)],
            vec![State::new(), state(["p"]), State::new(), state(["p"])],
        )
        .unwrap();
        let held = apply_abstraction(&AbstractionOp::Downsample { period: int(1), hold: true }, &shifted);
        assert_eq!(holds_at(held.states()), vec![2, 3]);
        let fresh = apply_abstraction(&AbstractionOp::Downsample { period: int(1), hold: false }, &shifted);
        assert_eq!(holds_at(fresh.states()), Vec::<usize>::new());
    }

    #[test]
    fn build_and_check() {
        let base = TimedTrace::new(
            vec![int(0), int(1), int(2)],
            vec![state(["p", "q"]), state(["p"]), state(["q"])],
        )
        .unwrap();
        let h = Hierarchy::new(vec![AbstractionOp::Identity], BTreeMap::from([(1, ratio(1, 10)), (2, ratio(1, 2))]))
            .unwrap();
        let t = build_stratified(&base, &h).unwrap();
        assert_eq!(t.level(1), t.level(2));
        assert_eq!(check_consistency(&t, &h), Ok(true));

        let single = Hierarchy::new(vec![], BTreeMap::from([(1, ratio(1, 100))])).unwrap();
        let t1 = build_stratified(&base, &single).unwrap();
        assert_eq!(t1.level(1).unwrap(), base.states());
        assert_eq!(check_consistency(&t1, &single), Ok(true));
        assert_eq!(
            check_consistency(&t1, &h),
            Err(TraceError::LevelMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn single_flip_breaks_consistency() {
        let base = TimedTrace::new(
            vec![int(0), int(1), int(2)],
            vec![state(["p", "q"]), state(["p"]), state(["q"])],
        )
        .unwrap();
        let keep_p = AbstractionOp::Project { keep: ["p".to_string()].into() };
        let h = Hierarchy::new(vec![keep_p], BTreeMap::from([(1, ratio(1, 10)), (2, ratio(1, 2))])).unwrap();
        let t = build_stratified(&base, &h).unwrap();
        assert_eq!(check_consistency(&t, &h), Ok(true));
        let mut levels = t.levels().clone();
        levels.get_mut(&2).unwrap()[1] = State::new();
        let flipped = StratifiedTrace::from_parts(t.timestamps().to_vec(), levels, t.resolutions().clone());
        assert_eq!(check_consistency(&flipped, &h), Ok(false));
    }

    #[test]
    fn build_reports_multi_rate_violation() {
        let base = sampled(ratio(1, 10), 5, |i| i % 2 == 0);
        let h = Hierarchy::new(vec![AbstractionOp::Identity], BTreeMap::from([(1, ratio(1, 10)), (2, int(1))])).unwrap();
        assert!(matches!(build_stratified(&base, &h), Err(TraceError::ResolutionViolation(_))));
    }

    #[test]
    fn hierarchy_validation() {
        let res = BTreeMap::from([(1, int(1)), (2, int(2))]);
        assert!(Hierarchy::new(vec![], res.clone()).is_err());
        assert!(Hierarchy::new(vec![AbstractionOp::SmoothIsolated { radius: int(0) }], res.clone()).is_err());
        assert!(Hierarchy::new(vec![AbstractionOp::Project { keep: BTreeSet::new() }], res).is_err());
        let decreasing = BTreeMap::from([(1, int(2)), (2, int(1))]);
        assert!(Hierarchy::new(vec![AbstractionOp::Identity], decreasing).is_err());
    }

    #[test]
    fn op_json_shape() {
        let op: AbstractionOp = serde_json::from_str(r#"{"op":"smooth_isolated","radius":0.3}"#).unwrap();
        assert_eq!(op, AbstractionOp::SmoothIsolated { radius: ratio(3, 10) });
        let op: AbstractionOp = serde_json::from_str(r#"{"op":"downsample","period":"1/3","hold":true}"#).unwrap();
        assert_eq!(op, AbstractionOp::Downsample { period: ratio(1, 3), hold: true });
        let op: AbstractionOp = serde_json::from_str(r#"{"op":"project","keep":["p"]}"#).unwrap();
        assert_eq!(serde_json::to_string(&op).unwrap(), r#"{"op":"project","keep":["p"]}"#);
    }
}
