//! Verification reports: configuration, per-check entries and JSON/CSV rendering.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::scalar::ScalarMode;

pub const REPORT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
    #[error("{0} must be at least {1}")]
    TooSmall(&'static str, usize),
}

/// Sample and grid sizes for the scans.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grids {
    /// Samples per one-parameter family in the classification table.
    pub family_samples: usize,
    /// Side of the square grid over `Q⁽⁴ᵇ⁾`.
    pub q4b_side: usize,
    /// Translated points per homogeneous orbit.
    pub orbit_samples: usize,
    /// `(θ, φ)` grid of the Veronese intersection search.
    pub veronese_grid: (usize, usize),
    /// Random parameters for the cohomogeneity-one pullback.
    pub t_samples: usize,
    /// Parameters in the nearly Kähler defect sweep.
    pub defect_sweep: usize,
    /// Samples along a C-curve or Γ-fiber.
    pub curve_samples: usize,
}

impl Default for Grids {
    fn default() -> Self {
        Grids {
            family_samples: 50,
            q4b_side: 20,
            orbit_samples: 20,
            veronese_grid: (256, 512),
            t_samples: 100,
            defect_sweep: 50,
            curve_samples: 24,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub mode: ScalarMode,
    /// Tolerance for floating-point comparisons.
    pub tol: f64,
    pub threads: usize,
    pub seed: u64,
    pub grids: Grids,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            mode: ScalarMode::Exact,
            tol: 1e-9,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            seed: 0,
            grids: Grids::default(),
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(ConfigError::NonPositiveTolerance(self.tol));
        }
        let g = &self.grids;
        for (name, v, min) in [
            ("family samples", g.family_samples, 1),
            ("Q4b grid side", g.q4b_side, 1),
            ("t samples", g.t_samples, 1),
            ("defect sweep", g.defect_sweep, 2),
            ("curve samples", g.curve_samples, 2),
            ("threads", self.threads, 1),
        ] {
            if v < min {
                return Err(ConfigError::TooSmall(name, min));
            }
        }
        Ok(())
    }

    /// The comparison tolerance for checks that honour the scalar mode.
    pub fn mode_tol(&self) -> f64 {
        match self.mode {
            ScalarMode::Exact => 0.0,
            ScalarMode::Float { .. } => self.tol,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.mode == ScalarMode::Exact
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A recorded value (constant, defect) rather than an assertion.
    Measured,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub check_id: String,
    pub paper_anchor: String,
    pub status: Status,
    pub residual: f64,
    pub runtime_ms: f64,
    pub details: Value,
}

impl CheckEntry {
    pub fn new(check_id: &str, anchor: &str, passed: bool, residual: f64, details: Value) -> Self {
        CheckEntry {
            check_id: check_id.to_string(),
            paper_anchor: anchor.to_string(),
            status: if passed { Status::Pass } else { Status::Fail },
            residual,
            runtime_ms: 0.0,
            details,
        }
    }

    pub fn measured(check_id: &str, anchor: &str, residual: f64, details: Value) -> Self {
        CheckEntry {
            status: Status::Measured,
            ..Self::new(check_id, anchor, true, residual, details)
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Run `f` and stamp the entries it returns with the elapsed time, split evenly.
pub fn timed(f: impl FnOnce() -> Vec<CheckEntry>) -> Vec<CheckEntry> {
    let start = Instant::now();
    let mut entries = f();
    let ms = start.elapsed().as_secs_f64() * 1e3 / entries.len().max(1) as f64;
    for e in &mut entries {
        e.runtime_ms = ms;
    }
    entries
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: String,
    pub config: Config,
    pub entries: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn new(config: Config) -> Self {
        VerificationReport {
            version: REPORT_VERSION.to_string(),
            config,
            entries: Vec::new(),
        }
    }

    pub fn extend(&mut self, entries: Vec<CheckEntry>) {
        self.entries.extend(entries);
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(CheckEntry::passed)
    }

    pub fn failures(&self) -> Vec<&CheckEntry> {
        self.entries.iter().filter(|e| !e.passed()).collect()
    }

    /// Whether every `check_id` occurs once.
    pub fn ids_unique(&self) -> bool {
        let mut ids: Vec<&str> = self.entries.iter().map(|e| e.check_id.as_str()).collect();
        ids.sort_unstable();
        ids.windows(2).all(|w| w[0] != w[1])
    }

    pub fn entry(&self, check_id: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.check_id == check_id)
    }

    /// Zero every runtime, for byte-stable output.
    pub fn strip_timings(&mut self) {
        for e in &mut self.entries {
            e.runtime_ms = 0.0;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
