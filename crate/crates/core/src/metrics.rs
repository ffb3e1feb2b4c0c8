//! Diagnostic metrics: landscape and population statistics recorded during a
//! run, batch-level success and efficiency measures, and front-quality
//! indicators for multi-objective runs.

use crate::engine::RunResult;
use crate::error::{check_len, Error, Result};
use crate::space::{Population, SearchSpace};

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Pearson correlation between fitness and distance to `reference`.
pub fn fdc(population: &Population, fitness: &[f64], reference: &[f64]) -> Result<f64> {
    let n = population.len();
    check_len(n, fitness.len())?;
    if n < 3 {
        return Err(Error::UndefinedCorrelation(format!("{n} individuals, need at least 3")));
    }
    let dist: Vec<f64> = population.positions().map(|x| euclid(x, reference)).collect();
    let mean_f = fitness.iter().sum::<f64>() / n as f64;
    let mean_d = dist.iter().sum::<f64>() / n as f64;
    let (mut sfd, mut sff, mut sdd) = (0.0, 0.0, 0.0);
    for (f, d) in fitness.iter().zip(&dist) {
        let (a, b) = (f - mean_f, d - mean_d);
        sfd += a * b;
        sff += a * a;
        sdd += b * b;
    }
    if sff == 0.0 || sdd == 0.0 {
        return Err(Error::UndefinedCorrelation("zero variance".into()));
    }
    Ok((sfd / (sff.sqrt() * sdd.sqrt())).clamp(-1.0, 1.0))
}

/// Mean pairwise Euclidean distance divided by the box diagonal.
pub fn diversity(population: &Population, space: &SearchSpace) -> Result<f64> {
    let n = population.len();
    if n < 2 {
        return Err(Error::UndefinedDiversity(n));
    }
    let xs: Vec<&[f64]> = population.positions().collect();
    let mut total = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            total += euclid(xs[i], xs[j]);
        }
    }
    let pairs = (n * (n - 1) / 2) as f64;
    Ok(total / pairs / space.diagonal())
}

/// First differences of a best-fitness history.
pub fn convergence_rate(history: &[f64]) -> Result<Vec<f64>> {
    if history.len() < 2 {
        return Err(Error::Shape {
            expected: 2,
            got: history.len(),
        });
    }
    Ok(history.windows(2).map(|w| w[1] - w[0]).collect())
}

/// Runs of one configuration on one benchmark, with distinct seeds.
#[derive(Debug, Clone)]
pub struct RunBatch {
    pub results: Vec<RunResult>,
    pub known_optimum: Option<f64>,
    pub success_tol: f64,
    /// Whether local-search probes count toward evaluations in the Q-measure.
    pub count_local_probes: bool,
}

pub const DEFAULT_SUCCESS_TOL: f64 = 1e-4;

impl RunBatch {
    pub fn new(results: Vec<RunResult>, known_optimum: Option<f64>) -> Self {
        Self {
            results,
            known_optimum,
            success_tol: DEFAULT_SUCCESS_TOL,
            count_local_probes: true,
        }
    }

    pub fn finals(&self) -> Vec<f64> {
        self.results.iter().map(|r| r.best_f).collect()
    }

    fn optimum(&self) -> Result<f64> {
        self.known_optimum
            .ok_or_else(|| Error::InvalidConfig("batch has no known optimum".into()))
    }

    fn is_success(&self, r: &RunResult, optimum: f64) -> bool {
        (r.best_f - optimum).abs() <= self.success_tol
    }

    fn evaluations(&self, r: &RunResult) -> usize {
        if self.count_local_probes {
            r.n_evaluations
        } else {
            r.n_evaluations - r.local_search_evals
        }
    }
}

/// Fraction of runs within `success_tol` of the known optimum.
pub fn success_rate(batch: &RunBatch) -> Result<f64> {
    let opt = batch.optimum()?;
    if batch.results.is_empty() {
        return Err(Error::InvalidConfig("empty batch".into()));
    }
    let hits = batch.results.iter().filter(|r| batch.is_success(r, opt)).count();
    Ok(hits as f64 / batch.results.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QMeasure {
    /// Mean evaluations over successful runs.
    pub c: f64,
    /// Probability of convergence.
    pub p: f64,
    pub q: f64,
    /// False when no run succeeded; `c` and `q` are then infinite.
    pub finite: bool,
    pub successes: usize,
    pub runs: usize,
}

impl QMeasure {
    fn from_counts(total_evals: f64, successes: usize, runs: usize) -> Self {
        if successes == 0 {
            return Self {
                c: f64::INFINITY,
                p: 0.0,
                q: f64::INFINITY,
                finite: false,
                successes,
                runs,
            };
        }
        let c = total_evals / successes as f64;
        let p = successes as f64 / runs as f64;
        Self {
            c,
            p,
            q: c / p,
            finite: true,
            successes,
            runs,
        }
    }
}

/// `C = sum(E_j) / R` over successful runs, `P = R / runs`, `Q = C / P`.
pub fn q_measure(batch: &RunBatch) -> Result<QMeasure> {
    q_measure_pooled(std::slice::from_ref(batch))
}

/// Q-measure over the union of several batches, each judged against its own
/// optimum.
pub fn q_measure_pooled(batches: &[RunBatch]) -> Result<QMeasure> {
    let mut evals = 0.0;
    let mut successes = 0;
    let mut runs = 0;
    for batch in batches {
        let opt = batch.optimum()?;
        for r in &batch.results {
            runs += 1;
            if batch.is_success(r, opt) {
                successes += 1;
                evals += batch.evaluations(r) as f64;
            }
        }
    }
    if runs == 0 {
        return Err(Error::InvalidConfig("empty batch".into()));
    }
    Ok(QMeasure::from_counts(evals, successes, runs))
}

/// Minimum final best fitness across the batch.
pub fn convergence_speed(batch: &RunBatch) -> Result<f64> {
    batch
        .finals()
        .into_iter()
        .reduce(f64::min)
        .ok_or_else(|| Error::InvalidConfig("empty batch".into()))
}

/// Average of per-run best fitness values.
pub fn aov(batch: &RunBatch) -> Result<f64> {
    let finals = batch.finals();
    if finals.is_empty() {
        return Err(Error::InvalidConfig("empty batch".into()));
    }
    Ok(finals.iter().sum::<f64>() / finals.len() as f64)
}

/// Obtained front `Q` against reference front `P*`.
#[derive(Debug, Clone)]
pub struct FrontPair {
    pub obtained: Vec<Vec<f64>>,
    pub reference: Vec<Vec<f64>>,
}

impl FrontPair {
    pub fn new(obtained: Vec<Vec<f64>>, reference: Vec<Vec<f64>>) -> Result<Self> {
        if obtained.is_empty() || reference.is_empty() {
            return Err(Error::InvalidConfig("fronts must be non-empty".into()));
        }
        let m = reference[0].len();
        for p in obtained.iter().chain(&reference) {
            check_len(m, p.len())?;
        }
        Ok(Self {
            obtained,
            reference,
        })
    }
}

/// `sqrt(mean over p* in P* of d(p*, Q)^2)`, with `d` the distance to the
/// nearest obtained point.
pub fn generational_distance(pair: &FrontPair) -> f64 {
    let total: f64 = pair
        .reference
        .iter()
        .map(|p| {
            pair.obtained
                .iter()
                .map(|q| p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>())
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    (total / pair.reference.len() as f64).sqrt()
}

fn by_first_objective(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Spread of the obtained front: consecutive gaps along the first objective
/// plus the distances from the reference extremes to the boundary points.
pub fn spread(pair: &FrontPair) -> Result<f64> {
    if pair.obtained.len() < 2 {
        return Err(Error::UndefinedSpread(pair.obtained.len()));
    }
    let mut q = pair.obtained.clone();
    q.sort_by(|a, b| by_first_objective(a, b));
    let mut r = pair.reference.clone();
    r.sort_by(|a, b| by_first_objective(a, b));

    let gaps: Vec<f64> = q.windows(2).map(|w| euclid(&w[0], &w[1])).collect();
    let mean_gap = gaps.iter().sum::<f64>() / gaps.len() as f64;
    let d_f = euclid(&r[0], &q[0]);
    let d_l = euclid(&r[r.len() - 1], &q[q.len() - 1]);
    let num = d_f + d_l + gaps.iter().map(|d| (d - mean_gap).abs()).sum::<f64>();
    let den = d_f + d_l + gaps.len() as f64 * mean_gap;
    if num == 0.0 {
        return Ok(0.0);
    }
    Ok(num / den)
}
