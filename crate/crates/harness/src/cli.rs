use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use aded::benchmarks::{catalog, Benchmark};
use aded::stats::compare_batches;
use aded::EngineConfig;

use crate::error::{HarnessError, HarnessResult};
use crate::exec::{mo_base, run_batch, run_mo_batch, run_tournament, to_batch};
use crate::plan::{Algorithm, ExperimentPlan, Settings};
use crate::report::{self, render_table, short, ComparisonRecord, Report};

#[derive(Debug, Parser)]
#[command(name = "aded", version, about = "Adaptive differential evolution experiment driver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the benchmark catalog.
    ListBenchmarks,
    /// Seeded batch of runs on each benchmark.
    Run(RunArgs),
    /// ADED against classic DE with Welch's t-test.
    Compare(RunArgs),
    /// All 14 strategy variants, ranked by AOV, Cs and Q.
    Tournament(RunArgs),
    /// Multi-objective runs scored against the analytic front.
    Moo(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OnOff {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NeighborhoodArg {
    Dynamic,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Benchmark id; repeat or comma-separate for several.
    #[arg(long, value_delimiter = ',')]
    pub benchmark: Vec<String>,
    #[arg(long)]
    pub preset: Option<String>,
    /// Flat `key = value` file layered over the preset.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub pop: Option<usize>,
    #[arg(long)]
    pub gens: Option<usize>,
    #[arg(long)]
    pub runs: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// `aded-default`, `neighbor-pair` or a strategy name such as `rand1bin`.
    #[arg(long)]
    pub strategy: Option<String>,
    #[arg(long, value_enum)]
    pub neighborhood: Option<NeighborhoodArg>,
    #[arg(long, value_enum)]
    pub local_search: Option<OnOff>,
    #[arg(long)]
    pub stagnation_limit: Option<usize>,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Output directory (overrides ADED_OUT_DIR).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

impl RunArgs {
    /// Preset, then config file, then flags.
    pub fn settings(&self, default_preset: &str) -> HarnessResult<Settings> {
        let mut s = Settings::preset(self.preset.as_deref().unwrap_or(default_preset))?;
        if let Some(path) = &self.config {
            s.overlay(&Settings::load(path)?);
        }
        if !self.benchmark.is_empty() {
            s.set("benchmark", self.benchmark.join(","))?;
        }
        let flags: [(&str, Option<String>); 8] = [
            ("pop", self.pop.map(|v| v.to_string())),
            ("gens", self.gens.map(|v| v.to_string())),
            ("runs", self.runs.map(|v| v.to_string())),
            ("seed", self.seed.map(|v| v.to_string())),
            ("strategy", self.strategy.clone()),
            (
                "neighborhood",
                self.neighborhood.map(|n| match n {
                    NeighborhoodArg::Dynamic => "dynamic".to_string(),
                    NeighborhoodArg::All => "all".to_string(),
                }),
            ),
            (
                "local_search",
                self.local_search.map(|v| match v {
                    OnOff::On => "on".to_string(),
                    OnOff::Off => "off".to_string(),
                }),
            ),
            ("stagnation_limit", self.stagnation_limit.map(|v| v.to_string())),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                s.set(k, v)?;
            }
        }
        Ok(s)
    }

    pub fn plan(&self, default_preset: &str, base: EngineConfig) -> HarnessResult<ExperimentPlan> {
        ExperimentPlan::from_settings(self.settings(default_preset)?, base, self.out.clone())
    }
}

/// Parse arguments and run; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cmd: &Command) -> HarnessResult<()> {
    match cmd {
        Command::ListBenchmarks => {
            let mut out = std::io::stdout().lock();
            out.write_all(list_benchmarks().as_bytes())?;
            Ok(())
        }
        Command::Run(a) => cmd_run(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Tournament(a) => cmd_tournament(a),
        Command::Moo(a) => cmd_moo(a),
    }
}

fn bounds_text(lows: &[f64], highs: &[f64]) -> String {
    let uniform = lows.iter().all(|l| *l == lows[0]) && highs.iter().all(|h| *h == highs[0]);
    if uniform {
        format!("[{}, {}]", lows[0], highs[0])
    } else {
        let parts: Vec<String> = lows.iter().zip(highs).map(|(l, h)| format!("[{l}, {h}]")).collect();
        parts.join("x")
    }
}

/// One line per catalog entry: id, kind, dimension rule, bounds, optimum.
pub fn list_benchmarks() -> String {
    let rows: Vec<Vec<String>> = catalog()
        .iter()
        .map(|b| match b {
            Benchmark::Single(s) => vec![
                s.id.to_string(),
                "single".to_string(),
                s.dim_rule.label().to_string(),
                bounds_text(s.default_bounds.lows(), s.default_bounds.highs()),
                s.known_optimum.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
            ],
            Benchmark::Multi(m) => vec![
                m.id.to_string(),
                format!("multi({})", m.n_objectives),
                m.n_vars.to_string(),
                bounds_text(m.bounds.lows(), m.bounds.highs()),
                if m.has_analytic_front() { "front".into() } else { "-".into() },
            ],
        })
        .collect();
    render_table(&["id", "kind", "dim", "bounds", "optimum"], &rows)
}

fn file_stem(id: &str, algorithm: Algorithm) -> String {
    format!("{id}-{algorithm}")
}

fn finish(report: &Report, plan: &ExperimentPlan, format: Format, csv_name: &str, write_csv: impl FnOnce(&Path) -> HarnessResult<()>) -> HarnessResult<()> {
    let path = match format {
        Format::Json => {
            let p = plan.out_dir.join("report.json");
            report.write_json(&p)?;
            p
        }
        Format::Csv => {
            let p = plan.out_dir.join(csv_name);
            write_csv(&p)?;
            p
        }
    };
    println!("config {}  report {}", report.config_hash, path.display());
    Ok(())
}

fn summary_table(rows: &[report::BatchSummary]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.benchmark.clone(),
                r.algorithm.clone(),
                r.runs.to_string(),
                short(r.mean),
                short(r.sd),
                short(r.best),
                r.success_rate.map(short).unwrap_or_else(|| "-".into()),
                r.q_measure.map(short).unwrap_or_else(|| "-".into()),
            ]
        })
        .collect();
    render_table(&["benchmark", "algorithm", "runs", "mean", "sd", "best", "success", "Q"], &body)
}

fn single_objective_only(plan: &ExperimentPlan, cmd: &str) -> HarnessResult<()> {
    if plan.algorithm == Algorithm::AdedMo {
        return Err(HarnessError::Config(format!("`{cmd}` is single-objective; use `moo`")));
    }
    for b in &plan.benchmarks {
        if let Benchmark::Multi(_) = aded::benchmarks::lookup(b)? {
            return Err(HarnessError::Config(format!("{b} is multi-objective; use `moo`")));
        }
    }
    Ok(())
}

fn execute_batch(
    plan: &ExperimentPlan,
    id: &str,
    algorithm: Algorithm,
    cfg: &EngineConfig,
    jobs: Option<usize>,
    report: &mut Report,
) -> HarnessResult<Vec<crate::exec::SingleRun>> {
    let runs = run_batch(plan, id, algorithm, cfg, jobs)?;
    let stem = file_stem(id, algorithm);
    report::write_raw(&plan.out_dir.join(format!("{stem}-raw.csv")), id, &algorithm.to_string(), &runs)?;
    report::write_run_summary(&plan.out_dir.join(format!("{stem}-summary.csv")), id, &algorithm.to_string(), &runs)?;
    report.summaries.push(report::summarize(id, &algorithm.to_string(), &runs)?);
    report.histories.extend(report::histories(id, &algorithm.to_string(), &runs));
    Ok(runs)
}

fn cmd_run(a: &RunArgs) -> HarnessResult<()> {
    let plan = a.plan("default", EngineConfig::default())?;
    single_objective_only(&plan, "run")?;
    let mut rep = Report::new("run", &plan);
    for id in &plan.benchmarks {
        execute_batch(&plan, id, plan.algorithm, &plan.engine, a.jobs, &mut rep)?;
    }
    print!("{}", summary_table(&rep.summaries));
    let rows = rep.summaries.clone();
    finish(&rep, &plan, a.format, "report.csv", |p| report::write_batch_summaries(p, &rows))
}

fn cmd_compare(a: &RunArgs) -> HarnessResult<()> {
    let plan = a.plan("default", EngineConfig::default())?;
    single_objective_only(&plan, "compare")?;
    let mut rep = Report::new("compare", &plan);
    for id in &plan.benchmarks {
        let ra = execute_batch(&plan, id, Algorithm::Aded, &plan.engine, a.jobs, &mut rep)?;
        let rb = execute_batch(&plan, id, Algorithm::ClassicDe, &plan.baseline, a.jobs, &mut rep)?;
        let row = compare_batches(id, "aded", &to_batch(id, &ra), "classic_de", &to_batch(id, &rb))?;
        rep.comparisons.push(ComparisonRecord::from(&row));
    }
    let body: Vec<Vec<String>> = rep
        .comparisons
        .iter()
        .map(|r| {
            vec![
                r.benchmark.clone(),
                short(r.mean_a),
                short(r.sd_a),
                short(r.mean_b),
                short(r.sd_b),
                format!("{:.4}{}", r.t, r.significance),
                short(r.p),
            ]
        })
        .collect();
    print!(
        "{}",
        render_table(&["benchmark", "aded mean", "aded sd", "de mean", "de sd", "t", "p"], &body)
    );
    let rows = rep.comparisons.clone();
    finish(&rep, &plan, a.format, "comparison.csv", |p| report::write_comparisons(p, &rows))
}

fn cmd_tournament(a: &RunArgs) -> HarnessResult<()> {
    let plan = a.plan("paper-tournament", EngineConfig::default())?;
    single_objective_only(&plan, "tournament")?;
    let cells = run_tournament(&plan, a.jobs)?;
    report::write_tournament_runs(&plan.out_dir.join("tournament-raw.csv"), &cells)?;
    let mut rep = Report::new("tournament", &plan);
    rep.variants = report::score_tournament(&cells)?;
    let body: Vec<Vec<String>> = rep
        .variants
        .iter()
        .enumerate()
        .map(|(k, v)| {
            vec![
                (k + 1).to_string(),
                v.variant.clone(),
                format!("F={}, CR={}", v.f, v.cr),
                short(v.aov),
                v.aov_rank.to_string(),
                short(v.cs),
                v.cs_rank.to_string(),
                short(v.q),
                v.q_rank.to_string(),
                format!("{:.4}", v.average_rank),
            ]
        })
        .collect();
    print!(
        "{}",
        render_table(
            &["#", "variant", "parameters", "AOV", "AOV rank", "Cs", "Cs rank", "Q", "Q rank", "avg rank"],
            &body
        )
    );
    let rows = rep.variants.clone();
    finish(&rep, &plan, a.format, "tournament.csv", |p| report::write_variants(p, &rows))
}

fn cmd_moo(a: &RunArgs) -> HarnessResult<()> {
    let plan = a.plan("paper-zdt", mo_base())?;
    let mut rep = Report::new("moo", &plan);
    for id in &plan.benchmarks {
        aded::benchmarks::lookup_multi(id).map_err(|_| HarnessError::Config(format!("{id} is not multi-objective")))?;
    }
    for id in &plan.benchmarks {
        let runs = run_mo_batch(&plan, id, a.jobs)?;
        report::write_front(&plan.out_dir.join(format!("{id}-front.csv")), id, &runs)?;
        report::write_mo_raw(&plan.out_dir.join(format!("{id}-aded_mo-raw.csv")), id, &runs)?;
        rep.multi_objective.extend(report::mo_summaries(id, &runs));
    }
    let opt = |v: Option<f64>| v.map(short).unwrap_or_else(|| "-".into());
    let body: Vec<Vec<String>> = rep
        .multi_objective
        .iter()
        .map(|m| {
            vec![
                m.benchmark.clone(),
                m.run.to_string(),
                opt(m.gd),
                opt(m.spread),
                m.front_size.to_string(),
                m.generations.to_string(),
            ]
        })
        .collect();
    print!(
        "{}",
        render_table(&["benchmark", "run", "GD", "spread", "front", "generations"], &body)
    );
    let rows = rep.multi_objective.clone();
    finish(&rep, &plan, a.format, "moo.csv", |p| report::write_mo_summaries(p, &rows))
}
