//! Seeded batch execution. Runs are independent and may execute on a
//! worker pool; results always come back in run order.

use rayon::prelude::*;

use aded::benchmarks::{self, analytic_front};
use aded::metrics::{generational_distance, spread, FrontPair, RunBatch};
use aded::moo::{mo_config, run_aded_mo, MoResult};
use aded::{run_aded, run_classic_de, EngineConfig, RunResult, ScheduleParams, StrategyId, TrialRule};

use crate::error::{HarnessError, HarnessResult};
use crate::plan::{Algorithm, ExperimentPlan};

pub const FRONT_SAMPLES: usize = 1000;

#[derive(Debug, Clone)]
pub struct SingleRun {
    pub run: usize,
    pub seed: u64,
    pub result: RunResult,
}

/// Run `f` over `0..n` on at most `jobs` workers, preserving order.
pub fn in_pool<T, F>(jobs: Option<usize>, n: usize, f: F) -> HarnessResult<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> HarnessResult<T> + Sync + Send,
{
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(HarnessError::Config("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| HarnessError::Runtime(format!("worker pool: {e}")))?;
    pool.install(|| (0..n).into_par_iter().map(&f).collect())
}

fn context(id: &str, run: usize, seed: u64, e: aded::Error) -> HarnessError {
    match HarnessError::from(e) {
        HarnessError::Runtime(m) => HarnessError::Runtime(format!("{id}, run {run} (seed {seed}): {m}")),
        other => other,
    }
}

/// `plan.n_runs` runs of `algorithm` with `cfg` on benchmark `id`.
pub fn run_batch(
    plan: &ExperimentPlan,
    id: &str,
    algorithm: Algorithm,
    cfg: &EngineConfig,
    jobs: Option<usize>,
) -> HarnessResult<Vec<SingleRun>> {
    let spec = benchmarks::lookup_single(id)?;
    let space = plan.space_for(id)?;
    let f = spec.function();
    in_pool(jobs, plan.n_runs, |run| {
        let seed = plan.seed(run);
        let c = cfg.clone().with_seed(seed);
        let result = match algorithm {
            Algorithm::ClassicDe => run_classic_de(&f, &space, &c),
            Algorithm::Aded => run_aded(&f, &space, &c),
            Algorithm::AdedMo => {
                return Err(HarnessError::Config(format!("{id} is single-objective; use `run`")))
            }
        }
        .map_err(|e| context(id, run, seed, e))?;
        Ok(SingleRun { run, seed, result })
    })
}

pub fn to_batch(id: &str, runs: &[SingleRun]) -> RunBatch {
    let optimum = benchmarks::lookup_single(id).ok().and_then(|s| s.known_optimum);
    RunBatch::new(runs.iter().map(|r| r.result.clone()).collect(), optimum)
}

#[derive(Debug, Clone)]
pub struct MoRun {
    pub run: usize,
    pub seed: u64,
    pub result: MoResult,
    pub gd: Option<f64>,
    pub spread: Option<f64>,
}

pub const MO_WEIGHTS: [f64; 2] = [0.5, 0.5];

/// Weights for an `m`-objective problem: equal shares summing to one.
pub fn mo_weights(m: usize) -> Vec<f64> {
    if m == 2 {
        MO_WEIGHTS.to_vec()
    } else {
        vec![1.0 / m as f64; m]
    }
}

pub fn run_mo_batch(plan: &ExperimentPlan, id: &str, jobs: Option<usize>) -> HarnessResult<Vec<MoRun>> {
    let spec = benchmarks::lookup_multi(id)?;
    let f = spec.function();
    let weights = mo_weights(spec.n_objectives);
    let front = if spec.has_analytic_front() {
        Some(analytic_front(id, FRONT_SAMPLES)?)
    } else {
        None
    };
    in_pool(jobs, plan.n_runs, |run| {
        let seed = plan.seed(run);
        let cfg = plan.engine.clone().with_seed(seed);
        let result = run_aded_mo(&f, &spec.bounds, &cfg, &weights).map_err(|e| context(id, run, seed, e))?;
        let (gd, sp) = match &front {
            Some(reference) => {
                let pair = FrontPair::new(result.front_objectives(), reference.clone())?;
                (Some(generational_distance(&pair)), spread(&pair).ok())
            }
            None => (None, None),
        };
        Ok(MoRun {
            run,
            seed,
            result,
            gd,
            spread: sp,
        })
    })
}

/// Base engine configuration for the multi-objective command.
pub fn mo_base() -> EngineConfig {
    mo_config()
}

/// Tournament variants with their fixed `(F, CR)` pairs.
pub const VARIANTS: [(&str, f64, f64); 14] = [
    ("rand1bin", 0.9, 0.5),
    ("rand1exp", 0.9, 0.0),
    ("best1bin", 0.1, 0.1),
    ("best1exp", 0.9, 0.7),
    ("rand2bin", 0.3, 0.2),
    ("rand2exp", 0.9, 0.3),
    ("best2bin", 0.1, 0.7),
    ("best2exp", 0.9, 0.3),
    ("currenttorand1bin", 0.5, 0.4),
    ("currenttorand1exp", 0.9, 0.3),
    ("currenttobest1bin", 0.2, 0.8),
    ("currenttobest1exp", 0.9, 0.1),
    ("randtobest1bin", 0.1, 0.8),
    ("randtobest1exp", 0.9, 0.4),
];

#[derive(Debug, Clone)]
pub struct TournamentCell {
    pub variant: &'static str,
    pub f: f64,
    pub cr: f64,
    pub benchmark: String,
    pub runs: Vec<SingleRun>,
}

pub fn variant_config(base: &EngineConfig, name: &str, f: f64, cr: f64) -> HarnessResult<EngineConfig> {
    let strategy: StrategyId = name.parse()?;
    let mut cfg = base.clone();
    cfg.trial = TrialRule::Strategy(strategy);
    cfg.schedule = ScheduleParams::fixed(f, cr);
    Ok(cfg)
}

/// Every variant on every benchmark of the plan, `plan.n_runs` runs each.
pub fn run_tournament(plan: &ExperimentPlan, jobs: Option<usize>) -> HarnessResult<Vec<TournamentCell>> {
    let mut cells = Vec::new();
    for (name, f, cr) in VARIANTS {
        let cfg = variant_config(&plan.engine, name, f, cr)?;
        for id in &plan.benchmarks {
            let runs = run_batch(plan, id, Algorithm::Aded, &cfg, jobs)?;
            cells.push(TournamentCell {
                variant: name,
                f,
                cr,
                benchmark: id.clone(),
                runs,
            });
        }
    }
    Ok(cells)
}
