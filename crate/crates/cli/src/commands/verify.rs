use std::io::Write;
use std::path::Path;

use smtl_core::Verdict;
use smtl_gridworld::log::{read_logs, verify_safety};

use crate::exit::{runtime, usage, CliError, ExitStatus};

/// Checks the pairwise no-shared-cell property on every log of the selected
/// policy (`all` for every log).
pub fn verify_trajectories(
    dir: &Path,
    horizon: Option<u64>,
    policy: &str,
    out: &mut dyn Write,
) -> Result<ExitStatus, CliError> {
    if !dir.is_dir() {
        return Err(usage(format!("{}: not a directory", dir.display())));
    }
    let runs = read_logs(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    let selected: Vec<_> =
        runs.iter().filter(|r| policy.eq_ignore_ascii_case("all") || r.meta.policy.eq_ignore_ascii_case(policy)).collect();
    if selected.is_empty() {
        return Err(usage(format!("{}: no {policy} trajectory logs", dir.display())));
    }
    let io = |e: std::io::Error| runtime(e);
    let (mut falses, mut unknowns) = (0, 0);
    for run in &selected {
        let check = verify_safety(run, horizon);
        let name = run.path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        match check.verdict {
            Verdict::True => writeln!(out, "{name}: True (T = {})", check.horizon).map_err(io)?,
            Verdict::False => {
                falses += 1;
                let at = check.first_violation.map(|t| format!("step {t}")).unwrap_or_else(|| "unknown step".into());
                writeln!(out, "{name}: False (T = {}, first shared cell at {at})", check.horizon).map_err(io)?;
            }
            Verdict::Unknown => {
                unknowns += 1;
                writeln!(out, "{name}: Unknown (T = {} exceeds the log)", check.horizon).map_err(io)?;
            }
        }
    }
    writeln!(out, "{} log(s): {} true, {falses} false, {unknowns} unknown", selected.len(), selected.len() - falses - unknowns)
        .map_err(io)?;
    Ok(if falses > 0 {
        ExitStatus::False
    } else if unknowns > 0 {
        ExitStatus::Unknown
    } else {
        ExitStatus::Success
    })
}
