//! Variation operators: F/CR schedules, mutation strategies, crossover and
//! the bounded local refinement step applied to trial vectors.

mod crossover;
mod local;
mod schedule;
mod strategy;

pub use crossover::{
    binomial_mask, crossover, crossover_binomial, crossover_exponential, exponential_mask,
};
pub use local::{finite_difference_gradient, local_refine, LocalResult, LocalSearchBudget};
pub use schedule::{adaptive_crossover_rate, adaptive_mutation_rate, ScheduleMode, ScheduleParams};
pub use strategy::{donor, mutate, Crossover, Mutation, StrategyId};
