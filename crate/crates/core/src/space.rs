//! Search-space box, candidates and populations.

use crate::error::{check_len, Error, Result};
use crate::rng::RngStream;

/// Smallest population that supports rand/1 with three distinct donors.
pub const MIN_POPULATION: usize = 4;

/// Per-dimension box bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace {
    lows: Vec<f64>,
    highs: Vec<f64>,
}

impl SearchSpace {
    pub fn new(lows: Vec<f64>, highs: Vec<f64>) -> Result<Self> {
        if lows.is_empty() {
            return Err(Error::InvalidSpace("zero dimensions".into()));
        }
        check_len(lows.len(), highs.len())?;
        for (j, (lo, hi)) in lows.iter().zip(&highs).enumerate() {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidSpace(format!("dimension {j} has a non-finite bound")));
            }
            if lo >= hi {
                return Err(Error::InvalidSpace(format!(
                    "dimension {j}: low {lo} is not below high {hi}"
                )));
            }
        }
        Ok(Self { lows, highs })
    }

    /// The same interval repeated over `dim` dimensions.
    pub fn uniform(dim: usize, low: f64, high: f64) -> Result<Self> {
        Self::new(vec![low; dim], vec![high; dim])
    }

    pub fn dim(&self) -> usize {
        self.lows.len()
    }

    pub fn lows(&self) -> &[f64] {
        &self.lows
    }

    pub fn highs(&self) -> &[f64] {
        &self.highs
    }

    /// Length of the box diagonal.
    pub fn diagonal(&self) -> f64 {
        self.lows
            .iter()
            .zip(&self.highs)
            .map(|(lo, hi)| (hi - lo) * (hi - lo))
            .sum::<f64>()
            .sqrt()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lows.iter().zip(&self.highs))
                .all(|(v, (lo, hi))| *lo <= *v && *v <= *hi)
    }

    /// Clamp `x` into the box in place.
    pub fn clamp_in_place(&self, x: &mut [f64]) {
        for ((v, lo), hi) in x.iter_mut().zip(&self.lows).zip(&self.highs) {
            *v = v.clamp(*lo, *hi);
        }
    }
}

/// Clamp each coordinate into its bounds. In-bounds input comes back unchanged.
pub fn clip_to_bounds(x: &[f64], space: &SearchSpace) -> Result<Vec<f64>> {
    check_len(space.dim(), x.len())?;
    let mut out = x.to_vec();
    space.clamp_in_place(&mut out);
    Ok(out)
}

/// A decision vector with its cached objective value.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub x: Vec<f64>,
    pub fitness: Option<f64>,
}

impl Candidate {
    pub fn new(x: Vec<f64>) -> Self {
        Self { x, fitness: None }
    }

    pub fn evaluated(x: Vec<f64>, fitness: f64) -> Self {
        Self {
            x,
            fitness: Some(fitness),
        }
    }

    pub fn fitness(&self) -> Result<f64> {
        self.fitness
            .ok_or_else(|| Error::State("candidate fitness is unset".into()))
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Population {
    pub members: Vec<Candidate>,
    pub generation: usize,
}

impl Population {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn positions(&self) -> impl Iterator<Item = &[f64]> {
        self.members.iter().map(|c| c.x.as_slice())
    }

    /// Index of the member with the lowest fitness (first on ties).
    pub fn best_index(&self) -> Result<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (i, c) in self.members.iter().enumerate() {
            let f = c.fitness()?;
            match best {
                Some((_, bf)) if bf <= f => {}
                _ => best = Some((i, f)),
            }
        }
        best.map(|(i, _)| i)
            .ok_or_else(|| Error::State("empty population".into()))
    }
}

/// `n` candidates drawn uniformly inside the box, fitness unset.
pub fn init_population(space: &SearchSpace, n: usize, rng: &mut RngStream) -> Result<Population> {
    if n < MIN_POPULATION {
        return Err(Error::InvalidConfig(format!(
            "population size {n} is below the minimum of {MIN_POPULATION}"
        )));
    }
    let members = (0..n)
        .map(|_| Candidate::new(random_point(space, rng)))
        .collect();
    Ok(Population {
        members,
        generation: 0,
    })
}

pub(crate) fn random_point(space: &SearchSpace, rng: &mut RngStream) -> Vec<f64> {
    space
        .lows()
        .iter()
        .zip(space.highs())
        .map(|(lo, hi)| rng.uniform_in(*lo, *hi))
        .collect()
}

/// `count` pairwise-distinct indices from `[0, n)`, none of them in `exclude`.
pub fn distinct_indices(
    n: usize,
    count: usize,
    exclude: &[usize],
    rng: &mut RngStream,
) -> Result<Vec<usize>> {
    let mut pool: Vec<usize> = (0..n).filter(|i| !exclude.contains(i)).collect();
    if count > pool.len() {
        return Err(Error::InvalidConfig(format!(
            "cannot draw {count} distinct indices from {} available",
            pool.len()
        )));
    }
    // partial Fisher-Yates
    for k in 0..count {
        let j = k + rng.index(pool.len() - k);
        pool.swap(k, j);
    }
    pool.truncate(count);
    Ok(pool)
}
