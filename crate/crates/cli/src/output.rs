//! Plot-ready data export: CSV and JSON with lossless float formatting.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use fracspec_core::{Spectrum64, SpectrumReport64};

use crate::config::Format;

/// 17 significant digits: round-trips f64 exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub index: usize,
    pub re_lambda: f64,
    pub im_lambda: f64,
    pub residual: f64,
    pub is_real: bool,
    pub region: &'static str,
    pub cone_margin: f64,
}

pub fn spectrum_rows(spectrum: &Spectrum64, report: &SpectrumReport64) -> Vec<SpectrumRow> {
    spectrum
        .pairs
        .iter()
        .enumerate()
        .map(|(i, p)| SpectrumRow {
            index: i + 1,
            re_lambda: p.lambda.re,
            im_lambda: p.lambda.im,
            residual: p.residual,
            is_real: fracspec_core::eigen::is_real_eigenvalue(p.lambda),
            region: report.regions[i].label(),
            cone_margin: report.margins[i],
        })
        .collect()
}

pub fn write_spectrum(path: &Path, rows: &[SpectrumRow], format: Format) -> Result<()> {
    let mut w = writer(path)?;
    match format {
        Format::Csv => {
            writeln!(w, "index,re_lambda,im_lambda,residual,is_real,region,cone_margin")?;
            for r in rows {
                writeln!(
                    w,
                    "{},{},{},{},{},{},{}",
                    r.index,
                    fmt_f64(r.re_lambda),
                    fmt_f64(r.im_lambda),
                    fmt_f64(r.residual),
                    r.is_real,
                    r.region,
                    fmt_f64(r.cone_margin)
                )?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, rows)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub beta: f64,
    pub lambda1_re: Option<f64>,
    pub lambda1_im: Option<f64>,
    pub real_count: Option<usize>,
    pub cone_margin: Option<f64>,
    pub error: String,
}

pub fn write_sweep(path: &Path, rows: &[SweepRow], format: Format) -> Result<()> {
    let mut w = writer(path)?;
    match format {
        Format::Csv => {
            writeln!(w, "alpha,beta,lambda1_re,lambda1_im,real_count,cone_margin,error")?;
            for r in rows {
                let opt = |v: &Option<f64>| v.map(fmt_f64).unwrap_or_default();
                writeln!(
                    w,
                    "{},{},{},{},{},{},{}",
                    fmt_f64(r.alpha),
                    fmt_f64(r.beta),
                    opt(&r.lambda1_re),
                    opt(&r.lambda1_im),
                    r.real_count.map(|c| c.to_string()).unwrap_or_default(),
                    opt(&r.cone_margin),
                    r.error
                )?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, rows)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceRow {
    pub x: f64,
    pub re_u: f64,
    pub im_u: f64,
    pub abs_u: f64,
}

pub fn write_trace(path: &Path, rows: &[TraceRow], format: Format) -> Result<()> {
    let mut w = writer(path)?;
    match format {
        Format::Csv => {
            writeln!(w, "x,re_u,im_u,abs_u")?;
            for r in rows {
                writeln!(
                    w,
                    "{},{},{},{}",
                    fmt_f64(r.x),
                    fmt_f64(r.re_u),
                    fmt_f64(r.im_u),
                    fmt_f64(r.abs_u)
                )?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, rows)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

/// Solve-report summary serialized next to the spectrum file.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
    pub elements: usize,
    pub eigenpair_count: usize,
    pub real_count: usize,
    pub conjugate_pairs: usize,
    pub cone_half_angle: f64,
    pub cone_margin_accurate_third: f64,
    pub principal_re: f64,
    pub principal_im: f64,
    pub principal_is_real: bool,
    pub principal_positive: bool,
    /// Largest real eigenvalue, the onset marker of the complex branches.
    pub largest_real: Option<f64>,
    pub max_residual: f64,
    pub residual_tolerance: f64,
}

pub fn solve_report(spectrum: &Spectrum64, report: &SpectrumReport64) -> SolveReport {
    SolveReport {
        alpha: spectrum.orders.alpha(),
        beta: spectrum.orders.beta(),
        a: spectrum.a,
        b: spectrum.b,
        elements: spectrum.elements,
        eigenpair_count: spectrum.pairs.len(),
        real_count: report.real_count,
        conjugate_pairs: report.conjugate_pairs,
        cone_half_angle: spectrum.orders.cone_half_angle(),
        cone_margin_accurate_third: report.cone_margin,
        principal_re: report.principal_lambda.re,
        principal_im: report.principal_lambda.im,
        principal_is_real: report.principal_is_real,
        principal_positive: report.principal_positive,
        largest_real: report.largest_real,
        max_residual: spectrum.max_residual(),
        residual_tolerance: Spectrum64::residual_tolerance(),
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = writer(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    Ok(())
}

fn writer(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)
                .with_context(|| format!("creating output directory {}", dir.display()))?;
        }
    }
    let file =
        File::create(path).with_context(|| format!("creating output file {}", path.display()))?;
    Ok(BufWriter::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_round_trips() {
        for v in [1.0, -0.123_456_789_012_345_68, 3.9e-300, 2.5e17, f64::MIN_POSITIVE] {
            let s = fmt_f64(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{s}");
        }
    }
}
