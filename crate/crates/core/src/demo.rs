//! The separating example: two boolean signals that differ at a single
//! sample, told apart by a formula that reads a smoothed copy of the signal at
//! level 1 and the raw signal at level 2.
//!
//! Level 1 deliberately carries the *smoothed* signal and level 2 the raw
//! one, the reverse of the usual coarser-is-higher layout, so the traces are
//! assembled directly from the two level sequences and no hierarchy is
//! declared for them.

use std::collections::BTreeMap;

use crate::eval::{evaluate, SemanticsMode, Verdict};
use crate::formula::{atom, Formula};
use crate::interval::Interval;
use crate::time::{int, ratio, Rational};
use crate::trace::{apply_abstraction, state, AbstractionOp, State, StratifiedTrace, TimedTrace, TraceError};

/// `L1 G[0,1] p & L2 F[0,2] !p`
pub fn separating_formula() -> Formula {
    Formula::and(
        Formula::stratum(1, Formula::always(Interval::closed(int(0), int(1)).unwrap(), atom("p"))),
        Formula::stratum(2, Formula::eventually(Interval::closed(int(0), int(2)).unwrap(), Formula::not(atom("p")))),
    )
}

/// Samples `0, step, 2*step, ...` up to 2 with `p` on `[0, 1]`; with
/// `gap_at_half` the sample at 1/2 (if any) is cleared.
pub fn sampled_signal(step: &Rational, gap_at_half: bool) -> TimedTrace {
    let mut timestamps = Vec::new();
    let mut states = Vec::new();
    let mut t = int(0);
    while t <= int(2) {
        let on = t <= int(1) && !(gap_at_half && t == ratio(1, 2));
        states.push(if on { state(["p"]) } else { State::new() });
        timestamps.push(t.clone());
        t += step;
    }
    TimedTrace::new(timestamps, states).expect("a positive step yields increasing samples")
}

/// Level 1 = smoothed signal, level 2 = raw signal.
pub fn demo_trace(raw: &TimedTrace, radius: &Rational, step: &Rational) -> Result<StratifiedTrace, TraceError> {
    let smoothed = apply_abstraction(&AbstractionOp::SmoothIsolated { radius: radius.clone() }, raw);
    StratifiedTrace::new(
        raw.timestamps().to_vec(),
        BTreeMap::from([(1, smoothed.states().to_vec()), (2, raw.states().to_vec())]),
        BTreeMap::from([(1, step / int(2)), (2, step.clone())]),
    )
}

#[derive(Debug, Clone)]
pub struct SeparatingDemo {
    pub formula: Formula,
    pub radius: Rational,
    pub step: Rational,
    pub sigma_one: StratifiedTrace,
    pub sigma_two: StratifiedTrace,
    pub verdict_one: Verdict,
    pub verdict_two: Verdict,
    /// Sample times at which the two raw signals differ.
    pub differences: Vec<Rational>,
    /// The smoothing window holds only its centre sample.
    pub smoothing_inert: bool,
}

pub fn run_separating_demo(radius: &Rational, step: &Rational) -> Result<SeparatingDemo, TraceError> {
    if *step <= int(0) || *radius <= int(0) {
        return Err(TraceError::InvalidHierarchy("radius and step must be positive".into()));
    }
    let raw_one = sampled_signal(step, false);
    let raw_two = sampled_signal(step, true);
    let sigma_one = demo_trace(&raw_one, radius, step)?;
    let sigma_two = demo_trace(&raw_two, radius, step)?;
    let formula = separating_formula();
    let verdict = |t: &StratifiedTrace| {
        evaluate(&formula, t, 0, 1, SemanticsMode::Strict).expect("demo traces define levels 1 and 2")
    };
    let differences = raw_one
        .timestamps()
        .iter()
        .zip(raw_one.states().iter().zip(raw_two.states()))
        .filter(|(_, (a, b))| a != b)
        .map(|(t, _)| t.clone())
        .collect();
    Ok(SeparatingDemo {
        verdict_one: verdict(&sigma_one),
        verdict_two: verdict(&sigma_two),
        formula,
        radius: radius.clone(),
        step: step.clone(),
        sigma_one,
        sigma_two,
        differences,
        smoothing_inert: radius <= step,
    })
}
