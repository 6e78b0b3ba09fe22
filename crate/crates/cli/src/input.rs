use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use smtl_core::formula::{Formula, Level};
use smtl_core::parser::{parse, ParseError};
use smtl_core::time::{parse_rational, Rational};
use smtl_core::trace::{load_trace, Hierarchy, StratifiedTrace};

use crate::exit::{usage, CliError};

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Error message with the offending line and a caret underline.
pub fn render_parse_error(path: &Path, text: &str, err: &ParseError) -> String {
    let line = text.lines().nth(err.span.line.saturating_sub(1)).unwrap_or("");
    let width = (err.span.end.saturating_sub(err.span.start)).max(1);
    let width = width.min(line.len().saturating_sub(err.span.column.saturating_sub(1)).max(1));
    format!(
        "{}:{err}\n  {line}\n  {}{}",
        path.display(),
        " ".repeat(err.span.column.saturating_sub(1)),
        "^".repeat(width)
    )
}

pub fn read_formula(path: &Path) -> Result<Formula, CliError> {
    let text = read_text(path)?;
    parse(&text).map_err(|e| usage(render_parse_error(path, &text, &e)))
}

pub fn read_trace(path: &Path) -> Result<(StratifiedTrace, Option<Hierarchy>), CliError> {
    let text = read_text(path)?;
    load_trace(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// `1=0.1,2=1/2`
pub fn parse_resolutions(text: &str) -> Result<BTreeMap<Level, Rational>, String> {
    text.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let (k, v) = part.split_once('=').ok_or_else(|| format!("expected LEVEL=VALUE, found `{part}`"))?;
            let level = k.trim().parse::<Level>().map_err(|e| format!("level `{k}`: {e}"))?;
            let value = parse_rational(v.trim()).map_err(|e| format!("resolution `{v}`: {e}"))?;
            Ok((level, value))
        })
        .collect()
}

pub fn parse_positive_rational(text: &str) -> Result<Rational, String> {
    let value = parse_rational(text).map_err(|e| e.to_string())?;
    if value == Rational::from_integer(0.into()) {
        return Err("must be positive".into());
    }
    Ok(value)
}
