//! Stratified metric temporal logic.
//!
//! Formulas bind temporal properties to abstraction levels with `L_k`; a
//! stratified trace carries one state sequence per level over a shared
//! timeline. This crate parses and prints formulas, checks their structure,
//! builds and validates stratified traces, and evaluates formulas over finite
//! traces with `True` / `False` / `Unknown` verdicts.
//!
//! ```
//! use smtl_core::{evaluate, parse, SemanticsMode, Verdict};
//! use smtl_core::demo::{demo_trace, sampled_signal};
//! use smtl_core::time::ratio;
//!
//! let psi = parse("L1 G[0,1] p & L2 F[0,2] !p").unwrap();
//! let step = ratio(1, 10);
//! let trace = demo_trace(&sampled_signal(&step, false), &ratio(3, 10), &step).unwrap();
//! assert_eq!(evaluate(&psi, &trace, 0, 1, SemanticsMode::Strict).unwrap(), Verdict::True);
//! ```

pub mod demo;
pub mod eval;
pub mod formula;
pub mod interval;
pub mod lint;
pub mod parser;
#[cfg(feature = "arbitrary")]
pub mod random;
pub mod time;
pub mod trace;

pub use eval::{
    evaluate, evaluate_all, evaluate_mtl, oracle_evaluate, translate_mtl, Engine, EngineRegistry, EvalError,
    SemanticsMode, Verdict,
};
pub use formula::{atom, Formula, Level, NodePath};
pub use interval::{Interval, IntervalError};
pub use lint::{resolution_lint, LintError, LintReport, LintWarning};
pub use parser::{parse, pretty_print, ParseError, SourceSpan};
pub use time::Rational;
pub use trace::{
    apply_abstraction, build_stratified, check_consistency, load_trace, trace_to_json, AbstractionOp, Hierarchy,
    State, StratifiedTrace, TimedTrace, TraceError, Violation,
};
