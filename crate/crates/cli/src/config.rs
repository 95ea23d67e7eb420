//! Run configuration shared by the subcommands.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use fracspec_core::{FractionalOrders, Mesh};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Problem geometry and discretization, defaults matching the reference
/// experiments (unit interval, 200 elements).
#[derive(Debug, Args, Clone)]
pub struct ProblemArgs {
    /// Left fractional order alpha in [0, 1]
    #[arg(long)]
    pub alpha: f64,
    /// Right fractional order beta in [0, 1]
    #[arg(long)]
    pub beta: f64,
    /// Number of uniform elements
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    /// Left endpoint
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub a: f64,
    /// Right endpoint
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub b: f64,
}

impl ProblemArgs {
    pub fn orders(&self) -> Result<FractionalOrders<f64>> {
        FractionalOrders::new(self.alpha, self.beta)
            .with_context(|| format!("invalid orders alpha={}, beta={}", self.alpha, self.beta))
    }

    pub fn mesh(&self) -> Result<Mesh<f64>> {
        Mesh::new(self.a, self.b, self.n)
            .with_context(|| format!("invalid mesh ({}, {}) with {} elements", self.a, self.b, self.n))
    }
}

/// Inclusive linear range `lo:hi:steps`.
#[derive(Debug, Clone, Copy)]
pub struct SweepRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl SweepRange {
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            bail!("range must be lo:hi:steps, got {text:?}");
        }
        let lo: f64 = parts[0].parse().context("range lo")?;
        let hi: f64 = parts[1].parse().context("range hi")?;
        let steps: usize = parts[2].parse().context("range steps")?;
        if steps == 0 {
            bail!("range needs at least one step");
        }
        if !(lo <= hi) {
            bail!("range lo {lo} exceeds hi {hi}");
        }
        Ok(Self { lo, hi, steps })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let d = (self.hi - self.lo) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| self.lo + d * i as f64).collect()
    }
}

/// Appends `_j<index>` before the file extension.
pub fn indexed_path(base: &Path, index: usize) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "eigenfunction".into());
    let ext = base
        .extension()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "csv".into());
    base.with_file_name(format!("{stem}_j{index}.{ext}"))
}

/// Replaces the extension with `_report.json`.
pub fn report_path(base: &Path) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "spectrum".into());
    base.with_file_name(format!("{stem}_report.json"))
}
