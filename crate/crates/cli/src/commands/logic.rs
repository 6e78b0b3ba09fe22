//! `check`, `eval` and `translate`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use smtl_core::formula::Level;
use smtl_core::lint::resolution_lint;
use smtl_core::time::Rational;
use smtl_core::{translate_mtl, EngineRegistry, SemanticsMode};

use crate::exit::{runtime, usage, CliError, ExitStatus};
use crate::input::{read_formula, read_trace};

pub fn check(
    path: &Path,
    resolutions: Option<&BTreeMap<Level, Rational>>,
    base_level: Level,
    out: &mut dyn Write,
) -> Result<ExitStatus, CliError> {
    let f = read_formula(path)?;
    let io = |e: std::io::Error| runtime(e);
    writeln!(out, "formula: {f}").map_err(io)?;
    let levels: Vec<_> = f.levels().into_iter().map(|k| k.to_string()).collect();
    writeln!(out, "levels: {}", if levels.is_empty() { "none".into() } else { levels.join(", ") }).map_err(io)?;
    let violations = f.nesting_violations();
    if violations.is_empty() {
        writeln!(out, "well-formed: yes").map_err(io)?;
    } else {
        writeln!(out, "well-formed: no").map_err(io)?;
        for (path, inner, outer) in &violations {
            writeln!(out, "  {path}: L{inner} nested inside L{outer}").map_err(io)?;
        }
    }
    if let Some(resolutions) = resolutions {
        let report = resolution_lint(&f, resolutions, base_level).map_err(usage)?;
        if report.warnings.is_empty() {
            writeln!(out, "lint: clean").map_err(io)?;
        } else {
            writeln!(out, "lint: {} warning(s)", report.warnings.len()).map_err(io)?;
            for w in &report.warnings {
                writeln!(out, "  {}: {}", w.path, w.message).map_err(io)?;
            }
        }
    }
    Ok(if violations.is_empty() { ExitStatus::Success } else { ExitStatus::False })
}

pub struct EvalArgs<'a> {
    pub formula: &'a Path,
    pub trace: &'a Path,
    pub level: Level,
    pub position: usize,
    pub mode: SemanticsMode,
    pub engine: &'a str,
}

pub fn eval(args: &EvalArgs, out: &mut dyn Write) -> Result<ExitStatus, CliError> {
    let registry = EngineRegistry::default();
    let engine = registry.get(args.engine).ok_or_else(|| {
        usage(format!("unknown engine `{}` (available: {})", args.engine, registry.names().collect::<Vec<_>>().join(", ")))
    })?;
    let f = read_formula(args.formula)?;
    let (trace, _) = read_trace(args.trace)?;
    let verdict = engine.evaluate(&f, &trace, args.position, args.level, args.mode).map_err(usage)?;
    writeln!(out, "{verdict}").map_err(runtime)?;
    Ok(verdict.into())
}

pub fn translate(path: &Path, out: &mut dyn Write) -> Result<ExitStatus, CliError> {
    let f = read_formula(path)?;
    match translate_mtl(&f) {
        Ok(g) => {
            writeln!(out, "{g}").map_err(runtime)?;
            Ok(ExitStatus::Success)
        }
        Err(_) => {
            writeln!(out, "NotMTL").map_err(runtime)?;
            Ok(ExitStatus::False)
        }
    }
}
