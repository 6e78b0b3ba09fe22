use super::{EvalError, SemanticsMode, Verdict};
use crate::formula::{Formula, Level};
use crate::interval::Interval;
use crate::time::Rational;
use crate::trace::StratifiedTrace;

/// Verdicts of `f` at every position of `t`, evaluated at `level`.
pub fn evaluate_all(
    f: &Formula,
    t: &StratifiedTrace,
    level: Level,
    mode: SemanticsMode,
) -> Result<Vec<Verdict>, EvalError> {
    if t.is_empty() {
        return Err(EvalError::PositionOutOfRange { position: 0, len: 0 });
    }
    if let Some(missing) = std::iter::once(level).chain(f.levels()).find(|k| t.level(*k).is_none()) {
        return Err(EvalError::UnknownLevel(missing));
    }
    Ok(Tables { trace: t, mode }.signal(f, level))
}

struct Tables<'a> {
    trace: &'a StratifiedTrace,
    mode: SemanticsMode,
}

fn negated(v: Vec<Verdict>) -> Vec<Verdict> {
    v.into_iter().map(Verdict::negate).collect()
}

fn zip(a: Vec<Verdict>, b: Vec<Verdict>, op: impl Fn(Verdict, Verdict) -> Verdict) -> Vec<Verdict> {
    a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
}

impl Tables<'_> {
    fn len(&self) -> usize {
        self.trace.len()
    }

    fn signal(&self, f: &Formula, level: Level) -> Vec<Verdict> {
        let n = self.len();
        match f {
            Formula::Atom(p) => {
                let states = self.trace.level(level).expect("levels are checked up front");
                states.iter().map(|s| Verdict::from_bool(s.contains(p))).collect()
            }
            Formula::True => vec![Verdict::True; n],
            Formula::False => vec![Verdict::False; n],
            Formula::Not(g) => negated(self.signal(g, level)),
            Formula::And(a, b) => zip(self.signal(a, level), self.signal(b, level), Verdict::and),
            Formula::Or(a, b) => zip(self.signal(a, level), self.signal(b, level), Verdict::or),
            Formula::Implies(a, b) => {
                zip(self.signal(a, level), self.signal(b, level), |x, y| x.negate().or(y))
            }
            Formula::Until(a, i, b) => until(&self.signal(a, level), i, &self.signal(b, level), self.trace.timestamps()),
            Formula::Release(a, i, b) => negated(until(
                &negated(self.signal(a, level)),
                i,
                &negated(self.signal(b, level)),
                self.trace.timestamps(),
            )),
            Formula::Eventually(i, g) => eventually(i, &self.signal(g, level), self.trace.timestamps()),
            Formula::Always(i, g) => {
                negated(eventually(i, &negated(self.signal(g, level)), self.trace.timestamps()))
            }
            Formula::Stratum(k, g) => {
                if self.mode == SemanticsMode::Strict && *k < level {
                    vec![Verdict::False; n]
                } else {
                    self.signal(g, *k)
                }
            }
        }
    }
}

fn eventually(interval: &Interval, body: &[Verdict], ts: &[Rational]) -> Vec<Verdict> {
    until(&vec![Verdict::True; body.len()], interval, body, ts)
}

/// First index at or after each position where `pred` holds (`n` if none).
fn next_where(v: &[Verdict], pred: impl Fn(Verdict) -> bool) -> Vec<usize> {
    let n = v.len();
    let mut out = vec![n; n + 1];
    for k in (0..n).rev() {
        out[k] = if pred(v[k]) { k } else { out[k + 1] };
    }
    out
}

/// For each start `i` with in-window positions `[lo, hi)`: true once some
/// in-window `j` has `right` true with `left` true on `[i, j)`; false once
/// every in-window candidate before the first false `left` is refuted and no
/// later position could still fall in the window.
fn until(left: &[Verdict], interval: &Interval, right: &[Verdict], ts: &[Rational]) -> Vec<Verdict> {
    let n = ts.len();
    let last = &ts[n - 1];
    let left_not_true = next_where(left, |v| v != Verdict::True);
    let left_false = next_where(left, |v| v == Verdict::False);
    let right_true = next_where(right, |v| v == Verdict::True);
    let right_open = next_where(right, |v| v != Verdict::False);
    (0..n)
        .map(|i| {
            let lo = i + ts[i..].partition_point(|t| interval.lies_after(&(t - &ts[i])));
            let hi = i + ts[i..].partition_point(|t| !interval.lies_before(&(t - &ts[i])));
            let witness = right_true[lo.min(n)];
            if lo < hi && witness < hi && witness <= left_not_true[i] {
                return Verdict::True;
            }
            let candidates_end = hi.min(left_false[i].saturating_add(1));
            let refuted = lo >= candidates_end || right_open[lo] >= candidates_end;
            let blocked = left_false[i] < hi;
            let future_window = !blocked && interval.reaches_beyond(&(last - &ts[i]));
            if refuted && !future_window {
                Verdict::False
            } else {
                Verdict::Unknown
            }
        })
        .collect()
}
