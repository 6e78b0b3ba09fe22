//! Temporal-resolution lint.
//!
//! A bounded operator whose window closes before the resolution of the level
//! it is evaluated at can never be witnessed by a state change at that level.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::{Formula, Level, NodePath};
use crate::interval::Interval;
use crate::time::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LintError {
    #[error("no resolution given for level {0}")]
    MissingResolution(Level),
    #[error("resolutions must strictly increase with level (level {lower} >= level {higher})")]
    NonIncreasing { lower: Level, higher: Level },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LintWarning {
    pub path: NodePath,
    pub level: Level,
    pub interval: Interval,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LintReport {
    pub warnings: Vec<LintWarning>,
}

impl LintReport {
    pub fn is_clean(&self) -> bool {
        self.warnings.is_empty()
    }
}

pub fn check_resolutions_increasing(resolutions: &BTreeMap<Level, Rational>) -> Result<(), LintError> {
    for ((&lo, lo_res), (&hi, hi_res)) in resolutions.iter().zip(resolutions.iter().skip(1)) {
        if lo_res >= hi_res {
            return Err(LintError::NonIncreasing { lower: lo, higher: hi });
        }
    }
    Ok(())
}

pub fn resolution_lint(
    formula: &Formula,
    resolutions: &BTreeMap<Level, Rational>,
    base_level: Level,
) -> Result<LintReport, LintError> {
    check_resolutions_increasing(resolutions)?;
    let mut report = LintReport::default();
    walk(formula, resolutions, base_level, &mut Vec::new(), &mut report)?;
    Ok(report)
}

fn walk(
    f: &Formula,
    resolutions: &BTreeMap<Level, Rational>,
    level: Level,
    path: &mut Vec<usize>,
    report: &mut LintReport,
) -> Result<(), LintError> {
    let level = match f {
        Formula::Stratum(k, _) => *k,
        _ => level,
    };
    let resolution = resolutions.get(&level).ok_or(LintError::MissingResolution(level))?;
    if let Some(interval) = f.interval() {
        if let Some(upper) = interval.upper() {
            if upper < resolution {
                report.warnings.push(LintWarning {
                    path: NodePath(path.clone()),
                    level,
                    interval: interval.clone(),
                    message: format!(
                        "window {interval} closes before the level-{level} resolution {}",
                        format_rational(resolution)
                    ),
                });
            }
        }
    }
    for (idx, child) in f.children().into_iter().enumerate() {
        path.push(idx);
        walk(child, resolutions, level, path, report)?;
        path.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::atom;
    use crate::time::{int, ratio};

    fn res(pairs: &[(Level, Rational)]) -> BTreeMap<Level, Rational> {
        pairs.iter().cloned().collect()
    }

    #[test]
    fn flags_window_below_level_resolution() {
        let f = Formula::stratum(2, Formula::eventually(Interval::closed(int(0), ratio(1, 2)).unwrap(), atom("p")));
        let report = resolution_lint(&f, &res(&[(1, ratio(1, 10)), (2, int(1))]), 1).unwrap();
        assert_eq!(report.warnings.len(), 1);
        assert_eq!(report.warnings[0].path, NodePath(vec![0]));
        assert_eq!(report.warnings[0].level, 2);
    }

    #[test]
    fn wide_windows_and_atoms_are_clean() {
        let f = Formula::stratum(1, Formula::eventually(Interval::closed(int(0), int(5)).unwrap(), atom("p")));
        assert!(resolution_lint(&f, &res(&[(1, ratio(1, 100))]), 1).unwrap().is_clean());
        assert!(resolution_lint(&atom("p"), &res(&[(1, ratio(1, 100))]), 1).unwrap().is_clean());
    }

    #[test]
    fn missing_and_non_increasing() {
        let f = Formula::stratum(3, atom("p"));
        assert_eq!(
            resolution_lint(&f, &res(&[(1, int(1))]), 1),
            Err(LintError::MissingResolution(3))
        );
        assert!(matches!(
            resolution_lint(&atom("p"), &res(&[(1, int(2)), (2, int(1))]), 1),
            Err(LintError::NonIncreasing { .. })
        ));
    }

    #[test]
    fn unbounded_windows_never_warn() {
        let f = Formula::always(Interval::from(int(0)), atom("p"));
        assert!(resolution_lint(&f, &res(&[(1, int(10))]), 1).unwrap().is_clean());
    }
}
