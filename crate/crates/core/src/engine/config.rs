use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::variation::{LocalSearchBudget, ScheduleParams, StrategyId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeighborhoodMode {
    /// A fresh random subset of peers for every individual and generation.
    Dynamic,
    /// Every other individual is a neighbor.
    All,
}

impl FromStr for NeighborhoodMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dynamic" => Ok(Self::Dynamic),
            "all" | "all-neighbors" => Ok(Self::All),
            _ => Err(Error::InvalidConfig(format!("unknown neighborhood mode `{s}`"))),
        }
    }
}

impl fmt::Display for NeighborhoodMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Dynamic => "dynamic",
            Self::All => "all",
        })
    }
}

/// How a trial vector is built from the target and its neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialRule {
    /// `x_i + F (r1 - x_i) + F (r2 - r3)`, no crossover.
    AdedDefault,
    /// `x_i + F (n1 - x_i) + F (n2 - x_i)` with two distinct neighbors, no crossover.
    NeighborPair,
    /// Classic donor scheme followed by its crossover.
    Strategy(StrategyId),
}

impl FromStr for TrialRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "aded-default" | "aded_default" => Ok(Self::AdedDefault),
            "neighbor-pair" | "neighbor_pair" => Ok(Self::NeighborPair),
            other => other.parse().map(Self::Strategy),
        }
    }
}

impl fmt::Display for TrialRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AdedDefault => f.write_str("aded-default"),
            Self::NeighborPair => f.write_str("neighbor-pair"),
            Self::Strategy(s) => s.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    pub population_size: usize,
    pub max_generations: usize,
    pub schedule: ScheduleParams,
    pub trial: TrialRule,
    pub neighborhood: NeighborhoodMode,
    pub neighborhood_size: usize,
    pub local_search: LocalSearchBudget,
    pub stagnation_limit: usize,
    pub stagnation_tol: f64,
    pub seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            max_generations: 100,
            schedule: ScheduleParams::scheduled(0.5, 0.5),
            trial: TrialRule::AdedDefault,
            neighborhood: NeighborhoodMode::Dynamic,
            neighborhood_size: 10,
            local_search: LocalSearchBudget::default(),
            stagnation_limit: 10,
            stagnation_tol: 1e-12,
            seed: 0,
        }
    }
}

impl EngineConfig {
    /// Canonical DE baseline: rand/1/bin with F = 0.8, CR = 0.9, no
    /// neighborhoods and no local search. The stagnation window is wider
    /// than ADED's because a single member rarely improves the best value
    /// in consecutive generations.
    pub fn classic_de() -> Self {
        Self {
            schedule: ScheduleParams::fixed(0.8, 0.9),
            trial: TrialRule::Strategy("rand1bin".parse().expect("valid strategy")),
            neighborhood: NeighborhoodMode::All,
            local_search: LocalSearchBudget::disabled(),
            stagnation_limit: 20,
            ..Self::default()
        }
    }

    pub fn with_population(mut self, n: usize) -> Self {
        self.population_size = n;
        self
    }

    pub fn with_generations(mut self, g: usize) -> Self {
        self.max_generations = g;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.population_size < 6 {
            return bad(format!("population_size {} < 6", self.population_size));
        }
        if self.max_generations == 0 {
            return bad("max_generations must be at least 1".into());
        }
        if self.stagnation_limit < 2 {
            return bad(format!("stagnation_limit {} < 2", self.stagnation_limit));
        }
        if self.stagnation_tol.is_nan() || self.stagnation_tol < 0.0 {
            return bad(format!("stagnation_tol {} must be non-negative", self.stagnation_tol));
        }
        if self.neighborhood_size == 0 || self.neighborhood_size > self.population_size - 1 {
            return bad(format!(
                "neighborhood size {} outside [1, {}]",
                self.neighborhood_size,
                self.population_size - 1
            ));
        }
        self.schedule.validate()?;
        self.local_search.validate()
    }
}
