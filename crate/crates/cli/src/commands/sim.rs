use std::fs;
use std::io::Write;
use std::path::Path;

use smtl_gridworld::log::{run_meta, write_log};
use smtl_gridworld::{run_experiment, ExperimentConfig, ExperimentResult, PolicyRegistry};

use crate::exit::{runtime, usage, CliError, ExitStatus};
use crate::input::read_text;
use crate::report::{charts, write_metrics_csv, write_summary_csv};

pub fn load_config(path: &Path) -> Result<ExperimentConfig, CliError> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Writes `metrics.csv`, `summary.csv`, five charts and optionally the
/// trajectory logs under `out_dir/trajectories`.
pub fn write_outputs(
    cfg: &ExperimentConfig,
    result: &ExperimentResult,
    out_dir: &Path,
    trajectories: bool,
) -> Result<(), CliError> {
    fs::create_dir_all(out_dir).map_err(runtime)?;
    let file = |name: &str| fs::File::create(out_dir.join(name)).map_err(runtime);
    write_metrics_csv(result, file("metrics.csv")?).map_err(runtime)?;
    write_summary_csv(result, file("summary.csv")?).map_err(runtime)?;
    let policies: Vec<String> = cfg.policies.iter().map(|p| p.to_ascii_lowercase()).collect();
    for (name, svg) in charts(result, &cfg.sizes, &policies) {
        fs::write(out_dir.join(name), svg).map_err(runtime)?;
    }
    if trajectories {
        let dir = out_dir.join("trajectories");
        for run in &result.runs {
            if let Ok(out) = &run.result {
                let c = &run.config;
                let meta = run_meta(c.grid_size, &c.policy, c.seed, c.step_limit(), out);
                write_log(&dir, &meta, &out.log).map_err(runtime)?;
            }
        }
    }
    Ok(())
}

pub fn sim(
    config: &Path,
    out_dir: &Path,
    trajectories: bool,
    workers: Option<usize>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<ExitStatus, CliError> {
    let cfg = load_config(config)?;
    let registry = PolicyRegistry::default();
    cfg.validate(&registry).map_err(usage)?;
    let result = run_experiment(&cfg, &registry, workers).map_err(runtime)?;
    write_outputs(&cfg, &result, out_dir, trajectories)?;
    let io = |e: std::io::Error| runtime(e);
    writeln!(
        out,
        "{:>5}  {:<6} {:>5}  {:>14}  {:>12}  {:>10}  {:>10}  {:>12}",
        "size", "policy", "runs", "collision_rate", "path_length", "efficiency", "waits", "compute_ms"
    )
    .map_err(io)?;
    for row in &result.aggregates {
        writeln!(
            out,
            "{:>5}  {:<6} {:>5}  {:>14.4}  {:>12.3}  {:>10.4}  {:>10.3}  {:>12.6}",
            row.size,
            row.policy,
            row.runs - row.failures,
            row.collision_rate.mean,
            row.avg_path_length.mean,
            row.path_efficiency.mean,
            row.avg_waits.mean,
            row.compute_ms.mean
        )
        .map_err(io)?;
    }
    writeln!(out, "outputs written to {}", out_dir.display()).map_err(io)?;
    let failures: Vec<_> = result.failures().collect();
    for run in &failures {
        let c = &run.config;
        if let Err(e) = &run.result {
            writeln!(err, "run failed: size {} policy {} seed {}: {e}", c.grid_size, c.policy, c.seed).map_err(io)?;
        }
    }
    Ok(if failures.is_empty() { ExitStatus::Success } else { ExitStatus::Runtime })
}
