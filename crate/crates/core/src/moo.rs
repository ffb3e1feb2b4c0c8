//! Multi-objective ADED: Pareto filtering of trials, weighted scalarization
//! for the local search, and a non-dominated archive.

use std::cmp::Ordering;
use std::time::Instant;

use crate::engine::{build_trial, draw_neighbors, has_converged, EngineConfig, TrialRule};
use crate::error::{check_len, Error, Result};
use crate::rng::RngStream;
use crate::space::{clip_to_bounds, init_population, random_point, SearchSpace};
use crate::variation::{local_refine, ScheduleParams};

/// Objective values of one point; at least two, all finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Shape {
                expected: 2,
                got: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("objective value {v} is not finite")));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// True iff `a` is no worse than `b` everywhere and strictly better somewhere.
pub fn pareto_dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    check_len(a.len(), b.len())?;
    Ok(dominates(a, b))
}

fn dominates(a: &[f64], b: &[f64]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        strict |= x < y;
    }
    strict
}

/// Weighted sum of the objectives.
pub fn scalarize(objs: &[f64], weights: &[f64]) -> Result<f64> {
    check_len(weights.len(), objs.len())?;
    check_weights(weights)?;
    Ok(objs.iter().zip(weights).map(|(o, w)| o * w).sum())
}

fn check_weights(weights: &[f64]) -> Result<()> {
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) || weights.iter().sum::<f64>() <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "weights {weights:?} must be non-negative with a positive sum"
        )));
    }
    Ok(())
}

/// Indices (ascending) of points no other point dominates.
///
/// Points are visited in lexicographic order, where a dominator always
/// precedes what it dominates, so each point only needs checking against
/// the front found so far.
pub fn nondominated_filter(points: &[Vec<f64>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        points[a]
            .iter()
            .zip(&points[b])
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    });
    let mut front: Vec<usize> = Vec::new();
    for i in order {
        if !front.iter().any(|&j| dominates(&points[j], &points[i])) {
            front.push(i);
        }
    }
    front.sort_unstable();
    front
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontPoint {
    pub x: Vec<f64>,
    pub objectives: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MoResult {
    /// Mutually non-dominated points from every admitted trial.
    pub front: Vec<FrontPoint>,
    /// Archive member with the lowest weighted sum, and that sum.
    pub best_scalarized: (Vec<f64>, f64),
    /// Incumbent replaced only by trials that dominate it.
    pub pareto_best: FrontPoint,
    /// Front size after each generation.
    pub history: Vec<usize>,
    pub scalarized_history: Vec<f64>,
    pub n_evaluations: usize,
    pub generations: usize,
    pub wall_seconds: f64,
}

impl MoResult {
    pub fn front_objectives(&self) -> Vec<Vec<f64>> {
        self.front.iter().map(|p| p.objectives.clone()).collect()
    }
}

/// Starting configuration for multi-objective runs: each trial moves the
/// target toward two random neighbors, with no crossover.
pub fn mo_config() -> EngineConfig {
    EngineConfig {
        schedule: ScheduleParams::scheduled(0.5, 0.9),
        trial: TrialRule::NeighborPair,
        ..EngineConfig::default()
    }
}

fn eval_vector<F>(objectives: &F, x: &[f64], m: Option<usize>, generation: usize, individual: usize) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Vec<f64> + ?Sized,
{
    let v = objectives(x);
    if let Some(m) = m {
        check_len(m, v.len())?;
    }
    if let Some(bad) = v.iter().find(|f| !f.is_finite()) {
        return Err(Error::Objective {
            generation,
            individual,
            value: *bad,
        });
    }
    Ok(v)
}

fn prune(archive: &mut Vec<FrontPoint>) {
    let objs: Vec<Vec<f64>> = archive.iter().map(|p| p.objectives.clone()).collect();
    let keep = nondominated_filter(&objs);
    let mut kept = keep.into_iter().peekable();
    let mut idx = 0;
    archive.retain(|_| {
        let k = kept.peek() == Some(&idx);
        if k {
            kept.next();
        }
        idx += 1;
        k
    });
}

/// Run multi-objective ADED.
///
/// A trial joins the next population only when no member admitted so far in
/// that generation dominates it; the population is topped up with uniform
/// samples when fewer than `population_size` trials are admitted.
pub fn run_aded_mo<F>(objectives: &F, space: &SearchSpace, cfg: &EngineConfig, weights: &[f64]) -> Result<MoResult>
where
    F: Fn(&[f64]) -> Vec<f64> + ?Sized,
{
    cfg.validate()?;
    check_weights(weights)?;
    let started = Instant::now();
    let m = weights.len();
    let mut rng = RngStream::new(cfg.seed);
    let schedule = cfg.schedule.resolve(&mut rng);
    let n = cfg.population_size;
    let g_max = cfg.max_generations;
    let scalar = |x: &[f64]| -> f64 {
        let v = objectives(x);
        if v.len() != m {
            return f64::NAN;
        }
        v.iter().zip(weights).map(|(o, w)| o * w).sum()
    };

    let mut pop = init_population(space, n, &mut rng)?;
    for (i, c) in pop.members.iter_mut().enumerate() {
        let v = eval_vector(objectives, &c.x, Some(m), 0, i)?;
        c.fitness = Some(scalarize(&v, weights)?);
    }
    let mut n_evaluations = n;
    let mut archive: Vec<FrontPoint> = Vec::new();
    let mut pareto_best: Option<FrontPoint> = None;
    let mut history = Vec::with_capacity(g_max);
    let mut scalarized_history = Vec::with_capacity(g_max);
    let mut generations = 0;

    for g in 0..g_max {
        let (f, cr) = schedule.rates(g, g_max)?;
        let best = pop.members[pop.best_index()?].x.clone();
        let mut next_x: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut next_objs: Vec<Vec<f64>> = Vec::with_capacity(n);
        for i in 0..n {
            let neighbors = draw_neighbors(cfg, i, n, &mut rng)?;
            let raw = build_trial(cfg.trial, &pop, i, &best, neighbors.as_deref(), f, cr, &mut rng)?;
            let mut trial = clip_to_bounds(&raw, space)?;
            let refine = cfg.local_search.enabled
                && (cfg.local_search.probability >= 1.0 || rng.uniform() < cfg.local_search.probability);
            if refine {
                let r = local_refine(&scalar, &trial, space, &cfg.local_search).map_err(|_| Error::Objective {
                    generation: g + 1,
                    individual: i,
                    value: scalar(&trial),
                })?;
                n_evaluations += r.evals;
                trial = r.x;
            }
            let v = eval_vector(objectives, &trial, Some(m), g + 1, i)?;
            n_evaluations += 1;

            if !next_objs.iter().any(|o| dominates(o, &v)) {
                archive.push(FrontPoint {
                    x: trial.clone(),
                    objectives: v.clone(),
                });
                next_x.push(trial.clone());
                next_objs.push(v.clone());
            }
            let replace = match &pareto_best {
                None => true,
                Some(b) => dominates(&v, &b.objectives),
            };
            if replace {
                pareto_best = Some(FrontPoint {
                    x: trial,
                    objectives: v,
                });
            }
        }
        while next_x.len() < n {
            let x = random_point(space, &mut rng);
            let v = eval_vector(objectives, &x, Some(m), g + 1, next_x.len())?;
            n_evaluations += 1;
            next_x.push(x);
            next_objs.push(v);
        }
        for (c, (x, v)) in pop.members.iter_mut().zip(next_x.into_iter().zip(next_objs)) {
            c.x = x;
            c.fitness = Some(scalarize(&v, weights)?);
        }
        pop.generation = g + 1;
        generations = g + 1;

        prune(&mut archive);
        history.push(archive.len());
        let best_s = archive
            .iter()
            .map(|p| scalarize(&p.objectives, weights))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        scalarized_history.push(best_s);
        if has_converged(&scalarized_history, cfg.stagnation_limit, cfg.stagnation_tol) {
            break;
        }
    }

    let best_scalarized = archive
        .iter()
        .map(|p| (p.x.clone(), scalarize(&p.objectives, weights).unwrap_or(f64::INFINITY)))
        .fold(None::<(Vec<f64>, f64)>, |acc, c| match acc {
            Some(a) if a.1 <= c.1 => Some(a),
            _ => Some(c),
        })
        .ok_or_else(|| Error::State("empty archive".into()))?;
    let pareto_best = pareto_best.ok_or_else(|| Error::State("no trial was evaluated".into()))?;

    Ok(MoResult {
        front: archive,
        best_scalarized,
        pareto_best,
        history,
        scalarized_history,
        n_evaluations,
        generations,
        wall_seconds: started.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominance_examples() {
        assert!(pareto_dominates(&[1.0, 2.0], &[2.0, 3.0]).unwrap());
        assert!(!pareto_dominates(&[1.0, 3.0], &[3.0, 1.0]).unwrap());
        assert!(!pareto_dominates(&[1.0, 2.0], &[1.0, 2.0]).unwrap());
        assert!(matches!(pareto_dominates(&[1.0], &[1.0, 2.0]), Err(Error::Shape { .. })));
    }

    #[test]
    fn scalarize_examples() {
        assert_eq!(scalarize(&[2.0, 4.0], &[0.5, 0.5]).unwrap(), 3.0);
        assert_eq!(scalarize(&[7.5], &[1.0]).unwrap(), 7.5);
        assert!(matches!(scalarize(&[1.0, 2.0], &[0.0, 0.0]), Err(Error::InvalidConfig(_))));
        assert!(matches!(scalarize(&[1.0, 2.0], &[1.0]), Err(Error::Shape { .. })));
    }

    #[test]
    fn filter_examples() {
        assert_eq!(nondominated_filter(&[vec![1.0, 2.0]]), vec![0]);
        let pts = vec![vec![1.0, 2.0], vec![2.0, 1.0], vec![2.0, 2.0]];
        assert_eq!(nondominated_filter(&pts), vec![0, 1]);
        let dup = vec![vec![1.0, 1.0], vec![1.0, 1.0], vec![0.0, 3.0]];
        assert_eq!(nondominated_filter(&dup), vec![0, 1, 2]);
    }

    #[test]
    fn objective_vector_checks() {
        assert!(ObjectiveVector::new(vec![1.0]).is_err());
        assert!(ObjectiveVector::new(vec![1.0, f64::NAN]).is_err());
        assert_eq!(ObjectiveVector::new(vec![1.0, 2.0]).unwrap().values(), &[1.0, 2.0]);
    }
}
