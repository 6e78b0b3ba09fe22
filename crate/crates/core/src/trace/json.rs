//! JSON interchange format for stratified traces.
//!
//! ```json
//! { "timestamps": [0, 0.1, "1/3"],
//!   "resolutions": {"1": 0.1, "2": 0.5},
//!   "levels": {"1": [["p","q"], ["p"], []], "2": [...]},
//!   "hierarchy": [{"op": "identity"}] }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{check_consistency, AbstractionOp, Hierarchy, State, StratifiedTrace, TraceError};
use crate::formula::Level;
use crate::time::{rational_from_json, rational_to_json, Rational};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceFile {
    pub timestamps: Vec<Value>,
    pub resolutions: BTreeMap<String, Value>,
    pub levels: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hierarchy: Option<Vec<AbstractionOp>>,
}

fn level_key(key: &str) -> Result<Level, TraceError> {
    key.parse::<Level>()
        .ok()
        .filter(|k| *k >= 1)
        .ok_or_else(|| TraceError::Format(format!("level key `{key}` is not a positive integer")))
}

fn number(value: &Value) -> Result<Rational, TraceError> {
    rational_from_json(value).map_err(|e| TraceError::Format(e.to_string()))
}

/// Parses and validates a trace; when a hierarchy is declared the levels must
/// be consistent with it.
pub fn load_trace(text: &str) -> Result<(StratifiedTrace, Option<Hierarchy>), TraceError> {
    let file: TraceFile = serde_json::from_str(text).map_err(|e| TraceError::Format(e.to_string()))?;
    let timestamps = file.timestamps.iter().map(number).collect::<Result<Vec<_>, _>>()?;
    let mut resolutions = BTreeMap::new();
    for (key, value) in &file.resolutions {
        resolutions.insert(level_key(key)?, number(value)?);
    }
    let mut levels = BTreeMap::new();
    for (key, states) in &file.levels {
        let states: Vec<State> = states.iter().map(|s| s.iter().cloned().collect()).collect();
        levels.insert(level_key(key)?, states);
    }
    let trace = StratifiedTrace::new(timestamps, levels, resolutions.clone())?;
    let hierarchy = match file.hierarchy {
        None => None,
        Some(ops) => {
            let h = Hierarchy::new(ops, resolutions)?;
            if !check_consistency(&trace, &h)? {
                return Err(TraceError::Inconsistent);
            }
            Some(h)
        }
    };
    Ok((trace, hierarchy))
}

pub fn trace_to_json(trace: &StratifiedTrace, hierarchy: Option<&Hierarchy>) -> String {
    let file = TraceFile {
        timestamps: trace.timestamps().iter().map(rational_to_json).collect(),
        resolutions: trace.resolutions().iter().map(|(k, r)| (k.to_string(), rational_to_json(r))).collect(),
        levels: trace
            .levels()
            .iter()
            .map(|(k, states)| (k.to_string(), states.iter().map(|s| s.iter().cloned().collect()).collect()))
            .collect(),
        hierarchy: hierarchy.map(|h| h.ops().to_vec()),
    };
    serde_json::to_string_pretty(&file).expect("trace serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::time::ratio;

    const SAMPLE: &str = r#"{
        "timestamps": [0, 0.1, "1/3"],
        "resolutions": {"1": 0.1, "2": "0.25"},
        "levels": {"1": [["p","q"], ["p"], []], "2": [["p"], ["p"], []]},
        "hierarchy": [{"op": "project", "keep": ["p"]}]
    }"#;

    #[test]
    fn loads_exact_values() {
        let (trace, h) = load_trace(SAMPLE).unwrap();
        assert_eq!(trace.timestamps()[1], ratio(1, 10));
        assert_eq!(trace.timestamps()[2], ratio(1, 3));
        assert_eq!(trace.resolutions()[&2], ratio(1, 4));
        assert!(h.is_some());
    }

    #[test]
    fn round_trips() {
        let (trace, h) = load_trace(SAMPLE).unwrap();
        let text = trace_to_json(&trace, h.as_ref());
        let (again, h2) = load_trace(&text).unwrap();
        assert_eq!(trace, again);
        assert_eq!(h, h2);
    }

    #[test]
    fn rejects_inconsistent_hierarchy() {
        let bad = SAMPLE.replace(r#""2": [["p"], ["p"], []]"#, r#""2": [["p"], [], []]"#);
        // the flip also breaks the level-2 resolution, so either error is a rejection
        assert!(load_trace(&bad).is_err());
        let bad = SAMPLE.replace(r#""2": [["p"], ["p"], []]"#, r#""2": [["q"], ["q"], []]"#);
        assert_eq!(load_trace(&bad).unwrap_err(), TraceError::Inconsistent);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(load_trace("{"), Err(TraceError::Format(_))));
        let bad = SAMPLE.replace(r#""1": 0.1"#, r#""x": 0.1"#);
        assert!(matches!(load_trace(&bad), Err(TraceError::Format(_))));
        let bad = SAMPLE.replace("[0, 0.1,", "[0, -0.1,");
        assert!(load_trace(&bad).is_err());
    }
}
