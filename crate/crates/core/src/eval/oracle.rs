//! Reference evaluator.
//!
//! Works on the desugared formula (only `Atom`, `True`, `Not`, `And`, `Until`
//! and `Stratum`), computes each operand's verdict at every position from
//! scratch, and applies the quantifier definitions of `Until` literally. It
//! shares no evaluation code with the table evaluator.

use super::{check_instance, EvalError, SemanticsMode, Verdict};
use crate::formula::{Formula, Level};
use crate::trace::StratifiedTrace;

pub const ORACLE_MAX_LEN: usize = 32;
pub const ORACLE_MAX_DEPTH: usize = 6;

pub fn oracle_evaluate(
    f: &Formula,
    t: &StratifiedTrace,
    position: usize,
    level: Level,
    mode: SemanticsMode,
) -> Result<Verdict, EvalError> {
    if t.len() > ORACLE_MAX_LEN || f.depth() > ORACLE_MAX_DEPTH {
        return Err(EvalError::InstanceTooLarge { len: t.len(), depth: f.depth() });
    }
    check_instance(f, t, position, level)?;
    let core = f.desugar();
    Ok(at(&core, t, level, mode)[position])
}

fn at(f: &Formula, t: &StratifiedTrace, level: Level, mode: SemanticsMode) -> Vec<Verdict> {
    let n = t.len();
    match f {
        Formula::Atom(p) => (0..n)
            .map(|i| {
                if t.level(level).unwrap()[i].contains(p) {
                    Verdict::True
                } else {
                    Verdict::False
                }
            })
            .collect(),
        Formula::True => vec![Verdict::True; n],
        Formula::Not(g) => at(g, t, level, mode)
            .into_iter()
            .map(|v| match v {
                Verdict::True => Verdict::False,
                Verdict::False => Verdict::True,
                Verdict::Unknown => Verdict::Unknown,
            })
            .collect(),
        Formula::And(a, b) => {
            let (x, y) = (at(a, t, level, mode), at(b, t, level, mode));
            (0..n)
                .map(|i| {
                    if x[i] == Verdict::False || y[i] == Verdict::False {
                        Verdict::False
                    } else if x[i] == Verdict::True && y[i] == Verdict::True {
                        Verdict::True
                    } else {
                        Verdict::Unknown
                    }
                })
                .collect()
        }
        Formula::Until(a, interval, b) => {
            let (lhs, rhs) = (at(a, t, level, mode), at(b, t, level, mode));
            let ts = t.timestamps();
            let in_window = |i: usize, j: usize| interval.contains(&(&ts[j] - &ts[i]));
            (0..n)
                .map(|i| {
                    let witnessed = (i..n).any(|j| {
                        in_window(i, j) && rhs[j] == Verdict::True && (i..j).all(|k| lhs[k] == Verdict::True)
                    });
                    if witnessed {
                        return Verdict::True;
                    }
                    let present_refuted = (i..n).all(|j| {
                        !in_window(i, j)
                            || rhs[j] == Verdict::False
                            || (i..j).any(|k| lhs[k] == Verdict::False)
                    });
                    let horizon = &ts[n - 1] - &ts[i];
                    let later_delay_fits = match interval.upper() {
                        None => true,
                        Some(u) => *u > horizon,
                    };
                    let later_blocked = (i..n).any(|k| lhs[k] == Verdict::False);
                    if present_refuted && (!later_delay_fits || later_blocked) {
                        Verdict::False
                    } else {
                        Verdict::Unknown
                    }
                })
                .collect()
        }
        Formula::Stratum(k, g) => {
            if mode == SemanticsMode::Strict && *k < level {
                vec![Verdict::False; n]
            } else {
                at(g, t, *k, mode)
            }
        }
        _ => unreachable!("oracle only sees desugared formulas"),
    }
}
