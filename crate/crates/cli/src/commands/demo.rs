use std::fs;
use std::io::Write;
use std::path::Path;

use smtl_core::demo::run_separating_demo;
use smtl_core::time::{format_rational, Rational};
use smtl_core::trace_to_json;

use crate::exit::{runtime, CliError, ExitStatus};

pub fn separating(
    radius: &Rational,
    step: &Rational,
    write_traces: Option<&Path>,
    out: &mut dyn Write,
) -> Result<ExitStatus, CliError> {
    let demo = run_separating_demo(radius, step).map_err(runtime)?;
    let (r, s) = (format_rational(radius), format_rational(step));
    let diff: Vec<_> = demo.differences.iter().map(format_rational).collect();
    let text = format!(
        "formula: {}\n\
         signals: samples every {s} over [0,2], p on [0,1]; σ₂ also drops p at t = 0.5\n\
         signals differ at: t = {}\n\
         level 1: signal smoothed with radius {r}; level 2: raw signal\n\
         note: levels are supplied directly (level 1 is the smoothed copy), no hierarchy is declared or checked\n",
        demo.formula,
        if diff.is_empty() { "nowhere".to_string() } else { diff.join(", ") },
    );
    out.write_all(text.as_bytes()).map_err(runtime)?;
    if demo.smoothing_inert {
        writeln!(out, "warning: radius {r} does not exceed the sample step {s}; smoothing is inert").map_err(runtime)?;
    }
    writeln!(out, "σ₁: {}, σ₂: {}", demo.verdict_one, demo.verdict_two).map_err(runtime)?;
    if let Some(dir) = write_traces {
        fs::create_dir_all(dir).map_err(runtime)?;
        fs::write(dir.join("sigma1.json"), trace_to_json(&demo.sigma_one, None)).map_err(runtime)?;
        fs::write(dir.join("sigma2.json"), trace_to_json(&demo.sigma_two, None)).map_err(runtime)?;
        fs::write(dir.join("psi.smtl"), format!("{}\n", demo.formula)).map_err(runtime)?;
        writeln!(out, "traces written to {}", dir.display()).map_err(runtime)?;
    }
    let separated = demo.verdict_one == smtl_core::Verdict::True && demo.verdict_two == smtl_core::Verdict::False;
    Ok(if separated { ExitStatus::Success } else { ExitStatus::False })
}
