//! Single-level MTL semantics over a [`TimedTrace`], evaluated on demand
//! position by position with a per-call cache.

use std::collections::HashMap;

use super::{EvalError, Verdict};
use crate::formula::Formula;
use crate::trace::TimedTrace;

pub fn evaluate_mtl(f: &Formula, t: &TimedTrace, position: usize) -> Result<Verdict, EvalError> {
    if f.has_strata() {
        return Err(EvalError::NotMtl);
    }
    if position >= t.len() {
        return Err(EvalError::PositionOutOfRange { position, len: t.len() });
    }
    let core = f.desugar();
    let mut monitor = Monitor { trace: t, cache: HashMap::new() };
    Ok(monitor.at(&core, position))
}

struct Monitor<'a> {
    trace: &'a TimedTrace,
    cache: HashMap<(*const Formula, usize), Verdict>,
}

impl Monitor<'_> {
    fn at(&mut self, f: &Formula, i: usize) -> Verdict {
        let key = (f as *const Formula, i);
        if let Some(v) = self.cache.get(&key) {
            return *v;
        }
        let v = match f {
            Formula::Atom(p) => Verdict::from_bool(self.trace.states()[i].contains(p)),
            Formula::True => Verdict::True,
            Formula::Not(g) => self.at(g, i).negate(),
            Formula::And(a, b) => match self.at(a, i) {
                Verdict::False => Verdict::False,
                va => va.and(self.at(b, i)),
            },
            Formula::Until(a, interval, b) => {
                let ts = self.trace.timestamps();
                let last = ts.len() - 1;
                let mut outcome = Verdict::False;
                let mut left_definite = true;
                let mut j = i;
                loop {
                    let delay = &ts[j] - &ts[i];
                    if interval.lies_before(&delay) {
                        break;
                    }
                    if interval.contains(&delay) {
                        let rhs = self.at(b, j);
                        if rhs == Verdict::True && left_definite {
                            outcome = Verdict::True;
                            break;
                        }
                        if rhs != Verdict::False {
                            outcome = Verdict::Unknown;
                        }
                    }
                    match self.at(a, j) {
                        Verdict::False => break,
                        Verdict::Unknown => left_definite = false,
                        Verdict::True => {}
                    }
                    if j == last {
                        if interval.reaches_beyond(&(&ts[last] - &ts[i])) {
                            outcome = Verdict::Unknown;
                        }
                        break;
                    }
                    j += 1;
                }
                outcome
            }
            _ => unreachable!("evaluate_mtl desugars first"),
        };
        self.cache.insert(key, v);
        v
    }
}
