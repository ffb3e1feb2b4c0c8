use std::fmt;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::metrics::{convergence_rate, diversity, fdc};
use crate::rng::RngStream;
use crate::space::{clip_to_bounds, distinct_indices, init_population, Candidate, Population, SearchSpace};
use crate::variation::{crossover, donor, local_refine, ScheduleMode, ScheduleParams};

use super::config::{EngineConfig, NeighborhoodMode, TrialRule};
use super::neighborhood::{dynamic_neighborhood, update_neighborhoods, NeighborhoodState};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    MaxGenerations,
    Stagnation,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::MaxGenerations => "max-generations",
            Termination::Stagnation => "stagnation",
        })
    }
}

/// Outcome of one seeded run.
///
/// Histories have one entry for the initial population plus one per
/// completed generation; `convergence_rate_history` is one shorter.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best_x: Vec<f64>,
    pub best_f: f64,
    pub best_f_history: Vec<f64>,
    pub diversity_history: Vec<f64>,
    /// `None` where the correlation is undefined (constant fitness or
    /// all members at the same distance from the best).
    pub fdc_history: Vec<Option<f64>>,
    pub convergence_rate_history: Vec<f64>,
    /// Every objective call, local-search probes included.
    pub n_evaluations: usize,
    /// The subset of `n_evaluations` spent on local-search probes beyond the
    /// evaluation of each refined trial itself.
    pub local_search_evals: usize,
    pub wall_seconds: f64,
    pub terminated_by: Termination,
    pub generations: usize,
    /// Schedule actually used, with random fixed parameters resolved.
    pub schedule: ScheduleParams,
    pub neighborhoods: NeighborhoodState,
}

/// True once the last `limit` entries all lie within `tol` of the last one.
pub fn has_converged(history: &[f64], limit: usize, tol: f64) -> bool {
    if limit == 0 || history.len() < limit {
        return false;
    }
    let last = history[history.len() - 1];
    history[history.len() - limit..]
        .iter()
        .all(|v| (v - last).abs() <= tol)
}

/// The strictly fitter candidate; the incumbent `a` wins ties.
pub fn crowding_select(a: Candidate, b: Candidate) -> Result<Candidate> {
    if b.fitness()? < a.fitness()? {
        Ok(b)
    } else {
        Ok(a)
    }
}

/// Run ADED on `objective` over `space`.
pub fn run_aded<F>(objective: &F, space: &SearchSpace, cfg: &EngineConfig) -> Result<RunResult>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    evolve(objective, space, cfg)
}

/// Run the classic DE baseline. The configuration must use a fixed schedule,
/// a donor strategy, all-neighbors mode and no local search.
pub fn run_classic_de<F>(objective: &F, space: &SearchSpace, cfg: &EngineConfig) -> Result<RunResult>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    if cfg.schedule.mode != ScheduleMode::Fixed {
        return Err(Error::InvalidConfig("classic DE needs fixed F and CR".into()));
    }
    if !matches!(cfg.trial, TrialRule::Strategy(_)) {
        return Err(Error::InvalidConfig(format!(
            "classic DE needs a donor strategy, got `{}`",
            cfg.trial
        )));
    }
    if cfg.neighborhood != NeighborhoodMode::All || cfg.local_search.enabled {
        return Err(Error::InvalidConfig(
            "classic DE runs without neighborhoods or local search".into(),
        ));
    }
    evolve(objective, space, cfg)
}

pub(crate) fn evaluate<F>(objective: &F, x: &[f64], generation: usize, individual: usize) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let value = objective(x);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Objective {
            generation,
            individual,
            value,
        })
    }
}

/// Neighbors of `i` for this generation; `None` means everyone else.
pub(crate) fn draw_neighbors(cfg: &EngineConfig, i: usize, n: usize, rng: &mut RngStream) -> Result<Option<Vec<usize>>> {
    match cfg.neighborhood {
        NeighborhoodMode::All => Ok(None),
        NeighborhoodMode::Dynamic => dynamic_neighborhood(i, n, cfg.neighborhood_size, rng).map(Some),
    }
}

/// `count` distinct peers of `i`, from its neighborhood when that is large
/// enough and from the whole population otherwise.
pub(crate) fn draw_peers(
    neighbors: Option<&[usize]>,
    i: usize,
    n: usize,
    count: usize,
    rng: &mut RngStream,
) -> Result<Vec<usize>> {
    match neighbors {
        Some(nb) if nb.len() >= count => {
            Ok(distinct_indices(nb.len(), count, &[], rng)?.into_iter().map(|p| nb[p]).collect())
        }
        _ => distinct_indices(n, count, &[i], rng),
    }
}

/// Unclipped trial vector for member `i`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn build_trial(
    rule: TrialRule,
    pop: &Population,
    i: usize,
    best: &[f64],
    neighbors: Option<&[usize]>,
    f: f64,
    cr: f64,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    let n = pop.len();
    let x = &pop.members[i].x;
    let at = |r: usize| pop.members[r].x.as_slice();
    match rule {
        TrialRule::AdedDefault => {
            let p = draw_peers(neighbors, i, n, 3, rng)?;
            let (r1, r2, r3) = (at(p[0]), at(p[1]), at(p[2]));
            Ok((0..x.len())
                .map(|j| x[j] + f * (r1[j] - x[j]) + f * (r2[j] - r3[j]))
                .collect())
        }
        TrialRule::NeighborPair => {
            let p = draw_peers(neighbors, i, n, 2, rng)?;
            let (n1, n2) = (at(p[0]), at(p[1]));
            Ok((0..x.len())
                .map(|j| x[j] + f * (n1[j] - x[j]) + f * (n2[j] - x[j]))
                .collect())
        }
        TrialRule::Strategy(s) => {
            let p = draw_peers(neighbors, i, n, s.mutation.picks(), rng)?;
            let picks: Vec<&[f64]> = p.iter().map(|&r| at(r)).collect();
            let k = if s.mutation.uses_k() { rng.uniform() } else { 0.0 };
            let v = donor(s.mutation, x, best, &picks, f, k)?;
            crossover(s.crossover, x, &v, cr, rng)
        }
    }
}

#[derive(Default)]
struct Histories {
    best_f: Vec<f64>,
    diversity: Vec<f64>,
    fdc: Vec<Option<f64>>,
}

impl Histories {
    fn record(&mut self, pop: &Population, space: &SearchSpace) -> Result<()> {
        let b = pop.best_index()?;
        let fit: Vec<f64> = pop.members.iter().map(|c| c.fitness()).collect::<Result<_>>()?;
        self.best_f.push(fit[b]);
        self.diversity.push(diversity(pop, space)?);
        self.fdc.push(fdc(pop, &fit, &pop.members[b].x).ok());
        Ok(())
    }
}

fn evolve<F>(objective: &F, space: &SearchSpace, cfg: &EngineConfig) -> Result<RunResult>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    cfg.validate()?;
    let started = Instant::now();
    let mut rng = RngStream::new(cfg.seed);
    let schedule = cfg.schedule.resolve(&mut rng);
    let n = cfg.population_size;
    let g_max = cfg.max_generations;

    let mut pop = init_population(space, n, &mut rng)?;
    for (i, c) in pop.members.iter_mut().enumerate() {
        c.fitness = Some(evaluate(objective, &c.x, 0, i)?);
    }
    let mut n_evaluations = n;
    let mut local_search_evals = 0;
    let mut neighborhoods = NeighborhoodState::new(n);

    let mut hist = Histories::default();
    hist.record(&pop, space)?;

    let mut terminated_by = Termination::MaxGenerations;
    let mut generations = 0;
    for g in 0..g_max {
        let (f, cr) = schedule.rates(g, g_max)?;
        let best = pop.members[pop.best_index()?].x.clone();
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let neighbors = draw_neighbors(cfg, i, n, &mut rng)?;
            let raw = build_trial(cfg.trial, &pop, i, &best, neighbors.as_deref(), f, cr, &mut rng)?;
            let mut trial = clip_to_bounds(&raw, space)?;
            let refine = cfg.local_search.enabled
                && (cfg.local_search.probability >= 1.0 || rng.uniform() < cfg.local_search.probability);
            let trial_f = if refine {
                let r = local_refine(objective, &trial, space, &cfg.local_search).map_err(|e| match e {
                    Error::Domain(_) => Error::Objective {
                        generation: g + 1,
                        individual: i,
                        value: objective(&trial),
                    },
                    e => e,
                })?;
                n_evaluations += r.evals;
                local_search_evals += r.evals - 1;
                trial = r.x;
                r.f
            } else {
                n_evaluations += 1;
                evaluate(objective, &trial, g + 1, i)?
            };
            if let Some(nb) = &neighbors {
                neighborhoods.retain(i, nb);
                update_neighborhoods(&mut neighborhoods, i, nb, trial_f);
            }
            let incumbent = pop.members[i].clone();
            next.push(crowding_select(incumbent, Candidate::evaluated(trial, trial_f))?);
        }
        pop = Population {
            members: next,
            generation: g + 1,
        };
        generations = g + 1;
        hist.record(&pop, space)?;
        if has_converged(&hist.best_f, cfg.stagnation_limit, cfg.stagnation_tol) {
            terminated_by = Termination::Stagnation;
            break;
        }
    }

    let b = pop.best_index()?;
    let best_f = pop.members[b].fitness()?;
    let best_x = pop.members[b].x.clone();
    let convergence_rate_history = convergence_rate(&hist.best_f)?;
    Ok(RunResult {
        best_x,
        best_f,
        best_f_history: hist.best_f,
        diversity_history: hist.diversity,
        fdc_history: hist.fdc,
        convergence_rate_history,
        n_evaluations,
        local_search_evals,
        wall_seconds: started.elapsed().as_secs_f64(),
        terminated_by,
        generations,
        schedule,
        neighborhoods,
    })
}
