use crate::error::{Error, Result};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleMode {
    /// F decays linearly to zero, CR grows linearly from zero.
    Scheduled,
    /// F and CR stay at their initial values for the whole run.
    Fixed,
    /// Like `Fixed`, but F ~ U(0.5, 2.0) and CR ~ U(0.1, 0.9) are drawn
    /// once at the start of each run.
    FixedRandom,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleParams {
    pub initial_f: f64,
    pub initial_cr: f64,
    pub mode: ScheduleMode,
}

impl Default for ScheduleParams {
    fn default() -> Self {
        Self {
            initial_f: 0.5,
            initial_cr: 0.5,
            mode: ScheduleMode::Scheduled,
        }
    }
}

impl ScheduleParams {
    pub fn scheduled(initial_f: f64, initial_cr: f64) -> Self {
        Self {
            initial_f,
            initial_cr,
            mode: ScheduleMode::Scheduled,
        }
    }

    pub fn fixed(f: f64, cr: f64) -> Self {
        Self {
            initial_f: f,
            initial_cr: cr,
            mode: ScheduleMode::Fixed,
        }
    }

    pub fn fixed_random() -> Self {
        Self {
            initial_f: 1.25,
            initial_cr: 0.5,
            mode: ScheduleMode::FixedRandom,
        }
    }

    /// Concrete parameters for one run; draws F and CR in `FixedRandom` mode.
    pub fn resolve(&self, rng: &mut RngStream) -> Self {
        match self.mode {
            ScheduleMode::FixedRandom => {
                let f = rng.uniform_in(0.5, 2.0);
                let cr = rng.uniform_in(0.1, 0.9);
                Self::fixed(f, cr)
            }
            _ => *self,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.initial_f > 0.0 && self.initial_f <= 2.0) {
            return Err(Error::InvalidConfig(format!(
                "initial F {} outside (0, 2]",
                self.initial_f
            )));
        }
        if !(0.0..=1.0).contains(&self.initial_cr) {
            return Err(Error::InvalidConfig(format!(
                "initial CR {} outside [0, 1]",
                self.initial_cr
            )));
        }
        Ok(())
    }

    /// `(F, CR)` in effect at `generation`.
    pub fn rates(&self, generation: usize, max_generations: usize) -> Result<(f64, f64)> {
        match self.mode {
            ScheduleMode::Fixed => Ok((self.initial_f, self.initial_cr)),
            ScheduleMode::FixedRandom => Err(Error::State(
                "random fixed parameters must be resolved before use".into(),
            )),
            ScheduleMode::Scheduled => Ok((
                adaptive_mutation_rate(generation, max_generations, self.initial_f)?,
                adaptive_crossover_rate(generation, max_generations, self.initial_cr)?,
            )),
        }
    }
}

fn progress(generation: usize, max_generations: usize) -> Result<f64> {
    if max_generations == 0 {
        return Err(Error::InvalidConfig("max_generations must be positive".into()));
    }
    if generation > max_generations {
        return Err(Error::InvalidConfig(format!(
            "generation {generation} exceeds max_generations {max_generations}"
        )));
    }
    Ok(generation as f64 / max_generations as f64)
}

/// `initial_f * (1 - generation / max_generations)`.
pub fn adaptive_mutation_rate(generation: usize, max_generations: usize, initial_f: f64) -> Result<f64> {
    Ok(initial_f * (1.0 - progress(generation, max_generations)?))
}

/// `initial_cr * (generation / max_generations)`.
pub fn adaptive_crossover_rate(generation: usize, max_generations: usize, initial_cr: f64) -> Result<f64> {
    Ok(initial_cr * progress(generation, max_generations)?)
}
