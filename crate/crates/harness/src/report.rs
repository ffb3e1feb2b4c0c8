//! Report artifacts: raw per-generation CSV, per-run summaries, aggregate
//! CSV/JSON documents and aligned text tables for the terminal.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use aded::metrics::{aov, convergence_speed, q_measure, q_measure_pooled, success_rate, RunBatch};
use aded::stats::{mean_sd, rank_variants, stars, ComparisonRow, VariantScore};

use crate::error::HarnessResult;
use crate::exec::{to_batch, MoRun, SingleRun, TournamentCell};
use crate::plan::ExperimentPlan;

/// Shortest round-trip text for a float; exponent form for very large or
/// very small magnitudes.
pub fn num(v: f64) -> String {
    if v == 0.0 || !v.is_finite() || (1e-4..1e15).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn writer(path: &Path) -> HarnessResult<csv::Writer<BufWriter<File>>> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    Ok(csv::Writer::from_writer(BufWriter::new(File::create(path)?)))
}

/// One row per completed generation per run.
pub fn write_raw(path: &Path, benchmark: &str, algorithm: &str, runs: &[SingleRun]) -> HarnessResult<()> {
    let mut w = writer(path)?;
    w.write_record([
        "benchmark", "algorithm", "run", "seed", "generation", "best_f", "diversity", "fdc", "convergence_rate",
    ])?;
    for r in runs {
        let res = &r.result;
        for g in 1..=res.generations {
            w.write_record([
                benchmark.to_string(),
                algorithm.to_string(),
                r.run.to_string(),
                r.seed.to_string(),
                g.to_string(),
                num(res.best_f_history[g]),
                num(res.diversity_history[g]),
                opt_num(res.fdc_history[g]),
                num(res.convergence_rate_history[g - 1]),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_run_summary(path: &Path, benchmark: &str, algorithm: &str, runs: &[SingleRun]) -> HarnessResult<()> {
    let mut w = writer(path)?;
    w.write_record([
        "benchmark",
        "algorithm",
        "run",
        "seed",
        "best_f",
        "generations",
        "n_evaluations",
        "local_search_evals",
        "terminated_by",
        "best_x",
    ])?;
    for r in runs {
        let res = &r.result;
        let x: Vec<String> = res.best_x.iter().map(|v| num(*v)).collect();
        w.write_record([
            benchmark.to_string(),
            algorithm.to_string(),
            r.run.to_string(),
            r.seed.to_string(),
            num(res.best_f),
            res.generations.to_string(),
            res.n_evaluations.to_string(),
            res.local_search_evals.to_string(),
            res.terminated_by.to_string(),
            x.join(";"),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchSummary {
    pub benchmark: String,
    pub algorithm: String,
    pub runs: usize,
    pub mean: f64,
    pub sd: f64,
    pub best: f64,
    pub worst: f64,
    pub known_optimum: Option<f64>,
    pub success_rate: Option<f64>,
    pub q_measure: Option<f64>,
    pub q_finite: Option<bool>,
    pub mean_evaluations: f64,
    pub mean_wall_seconds: f64,
}

pub fn summarize(benchmark: &str, algorithm: &str, runs: &[SingleRun]) -> HarnessResult<BatchSummary> {
    let batch = to_batch(benchmark, runs);
    let finals = batch.finals();
    let (mean, sd) = mean_sd(&finals);
    let q = batch.known_optimum.map(|_| q_measure(&batch)).transpose()?;
    let n = runs.len() as f64;
    Ok(BatchSummary {
        benchmark: benchmark.to_string(),
        algorithm: algorithm.to_string(),
        runs: runs.len(),
        mean,
        sd,
        best: convergence_speed(&batch)?,
        worst: finals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        known_optimum: batch.known_optimum,
        success_rate: batch.known_optimum.map(|_| success_rate(&batch)).transpose()?,
        q_measure: q.map(|q| q.q),
        q_finite: q.map(|q| q.finite),
        mean_evaluations: runs.iter().map(|r| r.result.n_evaluations as f64).sum::<f64>() / n,
        mean_wall_seconds: runs.iter().map(|r| r.result.wall_seconds).sum::<f64>() / n,
    })
}

pub fn write_batch_summaries(path: &Path, rows: &[BatchSummary]) -> HarnessResult<()> {
    let mut w = writer(path)?;
    w.write_record([
        "benchmark", "algorithm", "runs", "mean", "sd", "best", "worst", "success_rate", "q_measure", "mean_evaluations",
    ])?;
    for r in rows {
        w.write_record([
            r.benchmark.clone(),
            r.algorithm.clone(),
            r.runs.to_string(),
            num(r.mean),
            num(r.sd),
            num(r.best),
            num(r.worst),
            opt_num(r.success_rate),
            opt_num(r.q_measure),
            num(r.mean_evaluations),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRecord {
    pub benchmark: String,
    pub label_a: String,
    pub label_b: String,
    pub mean_a: f64,
    pub sd_a: f64,
    pub mean_b: f64,
    pub sd_b: f64,
    pub t: f64,
    pub p: f64,
    pub df: f64,
    pub significance: String,
}

impl From<&ComparisonRow> for ComparisonRecord {
    fn from(r: &ComparisonRow) -> Self {
        Self {
            benchmark: r.benchmark.clone(),
            label_a: r.label_a.clone(),
            label_b: r.label_b.clone(),
            mean_a: r.mean_a,
            sd_a: r.sd_a,
            mean_b: r.mean_b,
            sd_b: r.sd_b,
            t: r.t,
            p: r.p,
            df: r.df,
            significance: stars(r.p).to_string(),
        }
    }
}

pub fn write_comparisons(path: &Path, rows: &[ComparisonRecord]) -> HarnessResult<()> {
    let mut w = writer(path)?;
    w.write_record([
        "benchmark", "label_a", "label_b", "mean_a", "sd_a", "mean_b", "sd_b", "t", "p", "df", "significance",
    ])?;
    for r in rows {
        w.write_record([
            r.benchmark.clone(),
            r.label_a.clone(),
            r.label_b.clone(),
            num(r.mean_a),
            num(r.sd_a),
            num(r.mean_b),
            num(r.sd_b),
            num(r.t),
            num(r.p),
            num(r.df),
            r.significance.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct VariantRecord {
    pub variant: String,
    pub f: f64,
    pub cr: f64,
    pub aov: f64,
    pub aov_rank: f64,
    pub cs: f64,
    pub cs_rank: f64,
    pub q: f64,
    pub q_finite: bool,
    pub q_rank: f64,
    pub average_rank: f64,
}

/// Per-variant AOV and Cs over the pooled runs of every benchmark, and the
/// Q-measure with success judged against each benchmark's own optimum.
pub fn score_tournament(cells: &[TournamentCell]) -> HarnessResult<Vec<VariantRecord>> {
    let mut order: Vec<&'static str> = Vec::new();
    let mut grouped: BTreeMap<&'static str, (f64, f64, Vec<RunBatch>)> = BTreeMap::new();
    for c in cells {
        if !grouped.contains_key(c.variant) {
            order.push(c.variant);
        }
        grouped
            .entry(c.variant)
            .or_insert_with(|| (c.f, c.cr, Vec::new()))
            .2
            .push(to_batch(&c.benchmark, &c.runs));
    }
    let mut raw = Vec::new();
    let mut finite = BTreeMap::new();
    for v in &order {
        let (_, _, batches) = &grouped[v];
        let pooled = RunBatch::new(batches.iter().flat_map(|b| b.results.clone()).collect(), None);
        let q = q_measure_pooled(batches)?;
        finite.insert(*v, q.finite);
        raw.push((v.to_string(), aov(&pooled)?, convergence_speed(&pooled)?, q.q));
    }
    let scores: Vec<VariantScore> = rank_variants(&raw);
    Ok(scores
        .into_iter()
        .map(|s| {
            let (f, cr, _) = grouped[s.variant.as_str()];
            VariantRecord {
                q_finite: finite[s.variant.as_str()],
                variant: s.variant,
                f,
                cr,
                aov: s.aov,
                aov_rank: s.aov_rank,
                cs: s.cs,
                cs_rank: s.cs_rank,
                q: s.q,
                q_rank: s.q_rank,
                average_rank: s.average_rank,
            }
        })
        .collect())
}

pub fn write_tournament_runs(path: &Path, cells: &[TournamentCell]) -> HarnessResult<()> {
    let mut w = writer(path)?;
    w.write_record(["variant", "benchmark", "run", "seed", "best_f", "generations", "n_evaluations"])?;
    for c in cells {
        for r in &c.runs {
            w.write_record([
                c.variant.to_string(),
                c.benchmark.clone(),
                r.run.to_string(),
                r.seed.to_string(),
                num(r.result.best_f),
                r.result.generations.to_string(),
                r.result.n_evaluations.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_variants(path: &Path, rows: &[VariantRecord]) -> HarnessResult<()> {
    let mut w = writer(path)?;
    w.write_record([
        "variant", "f", "cr", "aov", "aov_rank", "cs", "cs_rank", "q_measure", "q_rank", "average_rank",
    ])?;
    for r in rows {
        w.write_record([
            r.variant.clone(),
            num(r.f),
            num(r.cr),
            num(r.aov),
            num(r.aov_rank),
            num(r.cs),
            num(r.cs_rank),
            num(r.q),
            num(r.q_rank),
            num(r.average_rank),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct MoSummary {
    pub benchmark: String,
    pub run: usize,
    pub seed: u64,
    pub gd: Option<f64>,
    pub spread: Option<f64>,
    pub front_size: usize,
    pub generations: usize,
    pub n_evaluations: usize,
}

pub fn mo_summaries(benchmark: &str, runs: &[MoRun]) -> Vec<MoSummary> {
    runs.iter()
        .map(|r| MoSummary {
            benchmark: benchmark.to_string(),
            run: r.run,
            seed: r.seed,
            gd: r.gd,
            spread: r.spread,
            front_size: r.result.front.len(),
            generations: r.result.generations,
            n_evaluations: r.result.n_evaluations,
        })
        .collect()
}

/// Front points: `x...` then `f...` per row.
pub fn write_front(path: &Path, benchmark: &str, runs: &[MoRun]) -> HarnessResult<()> {
    let mut w = writer(path)?;
    let (nx, nf) = runs
        .first()
        .and_then(|r| r.result.front.first())
        .map(|p| (p.x.len(), p.objectives.len()))
        .unwrap_or((0, 0));
    let mut header = vec!["benchmark".to_string(), "run".to_string(), "point".to_string()];
    header.extend((0..nx).map(|j| format!("x{j}")));
    header.extend((0..nf).map(|j| format!("f{}", j + 1)));
    w.write_record(&header)?;
    for r in runs {
        for (k, p) in r.result.front.iter().enumerate() {
            let mut row = vec![benchmark.to_string(), r.run.to_string(), k.to_string()];
            row.extend(p.x.iter().map(|v| num(*v)));
            row.extend(p.objectives.iter().map(|v| num(*v)));
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Per-generation front size and best weighted sum.
pub fn write_mo_raw(path: &Path, benchmark: &str, runs: &[MoRun]) -> HarnessResult<()> {
    let mut w = writer(path)?;
    w.write_record(["benchmark", "run", "seed", "generation", "front_size", "best_scalarized"])?;
    for r in runs {
        for (g, (size, s)) in r.result.history.iter().zip(&r.result.scalarized_history).enumerate() {
            w.write_record([
                benchmark.to_string(),
                r.run.to_string(),
                r.seed.to_string(),
                (g + 1).to_string(),
                size.to_string(),
                num(*s),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_mo_summaries(path: &Path, rows: &[MoSummary]) -> HarnessResult<()> {
    let mut w = writer(path)?;
    w.write_record(["benchmark", "run", "seed", "gd", "spread", "front_size", "generations", "n_evaluations"])?;
    for r in rows {
        w.write_record([
            r.benchmark.clone(),
            r.run.to_string(),
            r.seed.to_string(),
            opt_num(r.gd),
            opt_num(r.spread),
            r.front_size.to_string(),
            r.generations.to_string(),
            r.n_evaluations.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct HistoryRecord {
    pub benchmark: String,
    pub algorithm: String,
    pub run: usize,
    pub best_f: Vec<f64>,
    pub diversity: Vec<f64>,
    pub fdc: Vec<Option<f64>>,
    pub convergence_rate: Vec<f64>,
}

pub fn histories(benchmark: &str, algorithm: &str, runs: &[SingleRun]) -> Vec<HistoryRecord> {
    runs.iter()
        .map(|r| HistoryRecord {
            benchmark: benchmark.to_string(),
            algorithm: algorithm.to_string(),
            run: r.run,
            best_f: r.result.best_f_history.clone(),
            diversity: r.result.diversity_history.clone(),
            fdc: r.result.fdc_history.clone(),
            convergence_rate: r.result.convergence_rate_history.clone(),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool_version: String,
    pub command: String,
    pub config_hash: String,
    pub settings: BTreeMap<String, String>,
    pub summaries: Vec<BatchSummary>,
    pub comparisons: Vec<ComparisonRecord>,
    pub variants: Vec<VariantRecord>,
    pub multi_objective: Vec<MoSummary>,
    pub histories: Vec<HistoryRecord>,
}

impl Report {
    pub fn new(command: &str, plan: &ExperimentPlan) -> Self {
        let canonical = format!("command={command}\n{}", plan.canonical());
        let digest = Sha256::digest(canonical.as_bytes());
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config_hash: digest[..8].iter().map(|b| format!("{b:02x}")).collect(),
            settings: plan.settings.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            summaries: Vec::new(),
            comparisons: Vec::new(),
            variants: Vec::new(),
            multi_objective: Vec::new(),
            histories: Vec::new(),
        }
    }

    pub fn write_json(&self, path: &Path) -> HarnessResult<()> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let mut w = BufWriter::new(File::create(path)?);
        serde_json::to_writer_pretty(&mut w, self)
            .map_err(|e| crate::error::HarnessError::Runtime(format!("json: {e}")))?;
        writeln!(w)?;
        Ok(())
    }
}

/// Column-aligned text table.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = line(headers.to_vec());
    out.push('\n');
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&rule.join("  "));
    out.push('\n');
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

/// Short fixed-precision rendering for terminal tables.
pub fn short(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v != 0.0 && (v.abs() < 1e-3 || v.abs() >= 1e6) {
        format!("{v:.4e}")
    } else {
        format!("{v:.6}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for v in [0.0, -2.0, 1e-300, 123.456, -959.6406627208509, 4.440892098500626e-16, 1e20] {
            assert_eq!(num(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(num(-2.0), "-2");
    }

    #[test]
    fn table_alignment() {
        let t = render_table(&["a", "long"], &[vec!["xyz".into(), "1".into()]]);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[0], "a    long");
        assert_eq!(lines[1], "---  ----");
        assert_eq!(lines[2], "xyz  1");
    }
}
