use std::io::Write;

use smtl_core::time::to_f64;
use smtl_gridworld::{AggregateRow, ExperimentResult, Summary};

use crate::charts::{line_chart, Series, COLOURS};

pub const METRICS_HEADER: [&str; 9] = [
    "size",
    "policy",
    "seed",
    "collision_rate",
    "avg_path_length",
    "path_efficiency",
    "avg_waits",
    "mean_compute_ms",
    "unfinished",
];

fn fixed(v: f64) -> String {
    format!("{v:.6}")
}

/// One row per successful run, in matrix order.
pub fn write_metrics_csv(result: &ExperimentResult, sink: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(METRICS_HEADER)?;
    for run in &result.runs {
        let Ok(out) = &run.result else { continue };
        let m = &out.metrics;
        let c = &run.config;
        w.write_record([
            c.grid_size.to_string(),
            c.policy.clone(),
            c.seed.to_string(),
            fixed(to_f64(&m.collision_rate)),
            m.avg_path_length.as_ref().map(|v| fixed(to_f64(v))).unwrap_or_default(),
            m.path_efficiency.as_ref().map(|v| fixed(to_f64(v))).unwrap_or_default(),
            fixed(to_f64(&m.avg_waits)),
            fixed(m.mean_compute_per_step.as_secs_f64() * 1e3),
            m.unfinished.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

type Pick = fn(&AggregateRow) -> Summary;

const METRIC_PICKS: [(&str, Pick); 6] = [
    ("collision_rate", |r| r.collision_rate),
    ("avg_path_length", |r| r.avg_path_length),
    ("path_efficiency", |r| r.path_efficiency),
    ("avg_waits", |r| r.avg_waits),
    ("mean_compute_ms", |r| r.compute_ms),
    ("unfinished", |r| r.unfinished),
];

/// Mean and sample standard deviation per size and policy.
pub fn write_summary_csv(result: &ExperimentResult, sink: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    let mut header = vec!["size".to_string(), "policy".into(), "runs".into(), "failures".into()];
    for (name, _) in METRIC_PICKS {
        header.push(format!("{name}_mean"));
        header.push(format!("{name}_std"));
    }
    w.write_record(&header)?;
    for row in &result.aggregates {
        let mut record = vec![row.size.to_string(), row.policy.clone(), row.runs.to_string(), row.failures.to_string()];
        for (_, pick) in METRIC_PICKS {
            let s = pick(row);
            record.push(if s.n == 0 { String::new() } else { fixed(s.mean) });
            record.push(if s.n == 0 { String::new() } else { fixed(s.std) });
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// `(file name, title, y label, metric)` for each chart.
pub const CHARTS: [(&str, &str, &str, Pick); 5] = [
    ("collision_rate.svg", "Collision rate", "collisions per agent", |r| r.collision_rate),
    ("avg_path_length.svg", "Average path length", "timesteps", |r| r.avg_path_length),
    ("path_efficiency.svg", "Path efficiency", "shortest / actual", |r| r.path_efficiency),
    ("avg_waits.svg", "Average waits", "waits per agent", |r| r.avg_waits),
    ("compute_time.svg", "Computation time per step per agent", "milliseconds", |r| r.compute_ms),
];

pub fn charts(result: &ExperimentResult, sizes: &[usize], policies: &[String]) -> Vec<(&'static str, String)> {
    CHARTS
        .iter()
        .map(|(file, title, y_label, pick)| {
            let series: Vec<Series> = policies
                .iter()
                .enumerate()
                .map(|(k, policy)| Series {
                    name: policy.to_ascii_uppercase(),
                    colour: COLOURS[k % COLOURS.len()],
                    points: sizes
                        .iter()
                        .map(|&n| result.row(n, policy).map(pick).filter(|s| s.n > 0).map(|s| (s.mean, s.std)))
                        .collect(),
                })
                .collect();
            (*file, line_chart(title, y_label, sizes, &series))
        })
        .collect()
}
