//! Three-valued satisfaction over finite stratified traces.
//!
//! A verdict is `True` or `False` only when no continuation of the trace could
//! change it; otherwise it is `Unknown`. Three independent routes compute it:
//! the table evaluator behind [`evaluate`], the naive [`oracle_evaluate`], and
//! the single-level [`evaluate_mtl`].

mod mtl;
mod oracle;
mod table;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use mtl::evaluate_mtl;
pub use oracle::{oracle_evaluate, ORACLE_MAX_DEPTH, ORACLE_MAX_LEN};
pub use table::evaluate_all;

use crate::formula::{Formula, Level};
use crate::trace::StratifiedTrace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn negate(self) -> Self {
        match self {
            Verdict::True => Verdict::False,
            Verdict::False => Verdict::True,
            Verdict::Unknown => Verdict::Unknown,
        }
    }

    pub fn and(self, other: Self) -> Self {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::True, Verdict::True) => Verdict::True,
            _ => Verdict::Unknown,
        }
    }

    pub fn or(self, other: Self) -> Self {
        self.negate().and(other.negate()).negate()
    }

    pub fn is_definite(self) -> bool {
        self != Verdict::Unknown
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "True",
            Verdict::False => "False",
            Verdict::Unknown => "Unknown",
        })
    }
}

/// How `L_k` treats the level it is entered from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SemanticsMode {
    /// `L_k φ` at level `m` is false whenever `k < m`.
    #[default]
    Strict,
    /// `L_k φ` always switches to level `k`.
    Scoped,
}

impl FromStr for SemanticsMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "strict" => Ok(SemanticsMode::Strict),
            "scoped" => Ok(SemanticsMode::Scoped),
            other => Err(format!("unknown semantics mode `{other}` (expected strict or scoped)")),
        }
    }
}

impl fmt::Display for SemanticsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SemanticsMode::Strict => "strict",
            SemanticsMode::Scoped => "scoped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("level {0} does not exist in the trace")]
    UnknownLevel(Level),
    #[error("position {position} is outside a trace of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("formula contains a stratum operator and is not plain MTL")]
    NotMtl,
    #[error("instance too large for the oracle (length {len}, depth {depth})")]
    InstanceTooLarge { len: usize, depth: usize },
}

pub(crate) fn check_instance(
    f: &Formula,
    t: &StratifiedTrace,
    position: usize,
    level: Level,
) -> Result<(), EvalError> {
    if position >= t.len() {
        return Err(EvalError::PositionOutOfRange { position, len: t.len() });
    }
    if let Some(missing) = std::iter::once(level).chain(f.levels()).find(|k| t.level(*k).is_none()) {
        return Err(EvalError::UnknownLevel(missing));
    }
    Ok(())
}

/// Verdict of `f` at `position`, evaluated at `level`.
pub fn evaluate(
    f: &Formula,
    t: &StratifiedTrace,
    position: usize,
    level: Level,
    mode: SemanticsMode,
) -> Result<Verdict, EvalError> {
    check_instance(f, t, position, level)?;
    Ok(evaluate_all(f, t, level, mode)?[position])
}

/// The embedding of MTL into the stratified logic: the identity on formulas
/// without strata.
pub fn translate_mtl(f: &Formula) -> Result<Formula, EvalError> {
    if f.has_strata() {
        Err(EvalError::NotMtl)
    } else {
        Ok(f.clone())
    }
}

/// An interchangeable evaluation strategy.
pub trait Engine: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn evaluate(
        &self,
        f: &Formula,
        t: &StratifiedTrace,
        position: usize,
        level: Level,
        mode: SemanticsMode,
    ) -> Result<Verdict, EvalError>;
}

pub struct TableEngine;

impl Engine for TableEngine {
    fn name(&self) -> &'static str {
        "table"
    }

    fn description(&self) -> &'static str {
        "bottom-up per-subformula verdict tables"
    }

    fn evaluate(
        &self,
        f: &Formula,
        t: &StratifiedTrace,
        position: usize,
        level: Level,
        mode: SemanticsMode,
    ) -> Result<Verdict, EvalError> {
        evaluate(f, t, position, level, mode)
    }
}

pub struct OracleEngine;

impl Engine for OracleEngine {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn description(&self) -> &'static str {
        "naive quantifier expansion over the desugared formula (small instances only)"
    }

    fn evaluate(
        &self,
        f: &Formula,
        t: &StratifiedTrace,
        position: usize,
        level: Level,
        mode: SemanticsMode,
    ) -> Result<Verdict, EvalError> {
        oracle_evaluate(f, t, position, level, mode)
    }
}

/// Engines selectable by name.
pub struct EngineRegistry {
    engines: BTreeMap<&'static str, Box<dyn Engine>>,
}

impl EngineRegistry {
    pub fn empty() -> Self {
        Self { engines: BTreeMap::new() }
    }

    pub fn register(&mut self, engine: Box<dyn Engine>) {
        self.engines.insert(engine.name(), engine);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Engine> {
        self.engines.get(name).map(|e| e.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.engines.keys().copied()
    }
}

impl Default for EngineRegistry {
    fn default() -> Self {
        let mut registry = Self::empty();
        registry.register(Box::new(TableEngine));
        registry.register(Box::new(OracleEngine));
        registry
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::atom;
    use crate::interval::Interval;
    use crate::time::int;
    use crate::trace::{state, State, TimedTrace};

    fn integer_trace(states: Vec<State>) -> StratifiedTrace {
        let ts = (0..states.len()).map(|i| int(i as i64)).collect();
        StratifiedTrace::lift(&TimedTrace::new(ts, states).unwrap(), int(1)).unwrap()
    }

    fn both(f: &Formula, t: &StratifiedTrace, pos: usize) -> Verdict {
        let v = evaluate(f, t, pos, 1, SemanticsMode::Strict).unwrap();
        assert_eq!(v, oracle_evaluate(f, t, pos, 1, SemanticsMode::Strict).unwrap());
        v
    }

    #[test]
    fn kleene_tables() {
        use Verdict::*;
        assert_eq!(Unknown.and(False), False);
        assert_eq!(Unknown.and(True), Unknown);
        assert_eq!(Unknown.or(True), True);
        assert_eq!(Unknown.negate(), Unknown);
    }

    #[test]
    fn always_over_full_window() {
        let t = integer_trace(vec![state(["p"]); 6]);
        let f = Formula::always(Interval::closed(int(0), int(5)).unwrap(), atom("p"));
        assert_eq!(both(&f, &t, 0), Verdict::True);
    }

    #[test]
    fn bounded_until_past_horizon_is_unknown() {
        let t = integer_trace(vec![state(["p"]); 3]);
        let f = Formula::until(atom("p"), Interval::closed(int(0), int(10)).unwrap(), atom("q"));
        assert_eq!(both(&f, &t, 0), Verdict::Unknown);
    }

    #[test]
    fn until_refuted_by_left_operand() {
        let t = integer_trace(vec![state(["p"]), State::new(), state(["q"])]);
        let f = Formula::until(atom("p"), Interval::from(int(0)), atom("q"));
        assert_eq!(both(&f, &t, 0), Verdict::False);
        // the witness position itself does not need the left operand
        let t = integer_trace(vec![state(["p"]), state(["q"])]);
        assert_eq!(both(&f, &t, 0), Verdict::True);
    }

    #[test]
    fn strict_gate_and_scoped_switch() {
        let mut levels = std::collections::BTreeMap::new();
        levels.insert(1, vec![State::new()]);
        levels.insert(2, vec![state(["p"])]);
        let res = [(1, int(1)), (2, int(2))].into_iter().collect();
        let t = StratifiedTrace::new(vec![int(0)], levels, res).unwrap();
        let f = Formula::stratum(1, Formula::not(atom("p")));
        assert_eq!(evaluate(&f, &t, 0, 2, SemanticsMode::Strict).unwrap(), Verdict::False);
        assert_eq!(evaluate(&f, &t, 0, 2, SemanticsMode::Scoped).unwrap(), Verdict::True);
        let up = Formula::stratum(2, atom("p"));
        assert_eq!(evaluate(&up, &t, 0, 1, SemanticsMode::Strict).unwrap(), Verdict::True);
    }

    #[test]
    fn errors() {
        let t = integer_trace(vec![State::new()]);
        assert_eq!(
            evaluate(&atom("p"), &t, 3, 1, SemanticsMode::Strict),
            Err(EvalError::PositionOutOfRange { position: 3, len: 1 })
        );
        assert_eq!(
            evaluate(&Formula::stratum(2, atom("p")), &t, 0, 1, SemanticsMode::Strict),
            Err(EvalError::UnknownLevel(2))
        );
        assert_eq!(evaluate(&atom("p"), &t, 0, 4, SemanticsMode::Strict), Err(EvalError::UnknownLevel(4)));
    }

    #[test]
    fn translation_is_identity_on_mtl() {
        let f = Formula::until(atom("p"), Interval::closed(int(0), int(1)).unwrap(), atom("q"));
        assert_eq!(translate_mtl(&f), Ok(f));
        assert_eq!(translate_mtl(&Formula::not(atom("p"))), Ok(Formula::not(atom("p"))));
        assert_eq!(translate_mtl(&Formula::stratum(1, atom("p"))), Err(EvalError::NotMtl));
    }

    #[test]
    fn registry_lookup() {
        let registry = EngineRegistry::default();
        assert_eq!(registry.names().collect::<Vec<_>>(), vec!["oracle", "table"]);
        let t = integer_trace(vec![state(["p"])]);
        for name in ["table", "oracle"] {
            let v = registry.get(name).unwrap().evaluate(&atom("p"), &t, 0, 1, SemanticsMode::Strict);
            assert_eq!(v, Ok(Verdict::True));
        }
        assert!(registry.get("smt").is_none());
    }
}
