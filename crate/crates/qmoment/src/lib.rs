//! Reports, parallel execution and scans on top of `qmoment-core`.
//!
//! Reports carry no timestamps: identical configurations serialize to
//! identical bytes regardless of the thread count.

use std::fmt::Write as _;

use qmoment_core::hpn::boundary_coefficient_scan;
use qmoment_core::verify::{conformance_notes, Executor, SampleConfig, SpaceKind, SuiteReport};
use rayon::prelude::*;
use serde::Serialize;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "QMOMENT_THREADS";

/// Executor on a dedicated rayon pool. Results come back in index order.
pub struct RayonExecutor {
    pool: rayon::ThreadPool,
}

impl RayonExecutor {
    /// `threads == 0` uses rayon's default.
    pub fn new(threads: usize) -> Result<Self, String> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map(|pool| Self { pool })
            .map_err(|e| e.to_string())
    }

    /// Pool sized by `QMOMENT_THREADS` when set.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var(THREADS_ENV) {
            Ok(v) => {
                let n =
                    v.trim().parse::<usize>().map_err(|_| format!("{THREADS_ENV} must be a non-negative integer"))?;
                Self::new(n)
            }
            Err(_) => Self::new(0),
        }
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for RayonExecutor {
    fn run(&self, count: usize, f: &(dyn Fn(usize) -> f64 + Sync)) -> Vec<f64> {
        self.pool.install(|| (0..count).into_par_iter().map(f).collect())
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub max_residual: Option<f64>,
    pub mean_residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

/// Serialized form of a suite run. Non-finite residuals become `null`.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct JsonReport {
    pub suite: String,
    pub space: String,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub h: f64,
    pub checks: Vec<CheckRecord>,
    pub conformance_notes: Vec<String>,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl JsonReport {
    pub fn new(report: &SuiteReport, cfg: &SampleConfig) -> Self {
        Self {
            suite: report.suite.clone(),
            space: report.space.name().into(),
            n: report.n,
            samples: cfg.samples,
            seed: cfg.seed,
            h: cfg.h,
            checks: report
                .checks
                .iter()
                .map(|c| CheckRecord {
                    name: c.name.clone(),
                    max_residual: finite(c.max),
                    mean_residual: finite(c.mean),
                    tolerance: c.tolerance,
                    pass: c.pass,
                })
                .collect(),
            conformance_notes: report.conformance_notes.iter().map(|n| format!("{}: {}", n.key, n.text)).collect(),
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Aligned text table followed by the notes.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {}  space {}  n {}  samples {}  seed {}  h {:e}",
            self.suite, self.space, self.n, self.samples, self.seed, self.h
        );
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let num = |x: Option<f64>| x.map_or_else(|| "nan".to_string(), |v| format!("{v:.3e}"));
            let _ = writeln!(
                out,
                "{:<width$}  max {:>10}  mean {:>10}  tol {:.1e}  {}",
                c.name,
                num(c.max_residual),
                num(c.mean_residual),
                c.tolerance,
                if c.pass { "PASS" } else { "FAIL" },
            );
        }
        for n in &self.conformance_notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

/// CSV of the boundary coefficient scan: `t, lambda, closed_form, fd, reduced`.
pub fn boundary_csv(ts: &[f64], h: f64) -> Result<String, String> {
    let rows = boundary_coefficient_scan(ts, h).map_err(|e| e.to_string())?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t", "lambda", "closed_form", "fd", "reduced"]).map_err(|e| e.to_string())?;
    for r in rows {
        w.write_record([r.t, r.lambda, r.closed_form, r.fd, r.reduced].map(|x| format!("{x:.12e}")))
            .map_err(|e| e.to_string())?;
    }
    String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

/// The note printed alongside the boundary scan.
pub fn boundary_note() -> String {
    conformance_notes(SpaceKind::Hpn)
        .into_iter()
        .find(|n| n.key == "boundary_limit")
        .map(|n| format!("{}: {}", n.key, n.text))
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use qmoment_core::verify::{verify_suite, Sequential};

    #[test]
    fn rayon_matches_sequential() {
        let cfg = SampleConfig::new(1, 6, 3);
        let a = verify_suite(SpaceKind::Double, &cfg, &Sequential).unwrap();
        let b = verify_suite(SpaceKind::Double, &cfg, &RayonExecutor::new(4).unwrap()).unwrap();
        assert_eq!(JsonReport::new(&a, &cfg).to_json(), JsonReport::new(&b, &cfg).to_json());
    }

    #[test]
    fn csv_has_header_and_rows() {
        let s = boundary_csv(&[0.5, 2.0], 1e-5).unwrap();
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines[0], "t,lambda,closed_form,fd,reduced");
        assert_eq!(lines.len(), 3);
        assert!(boundary_csv(&[-1.0], 1e-5).is_err());
    }
}
