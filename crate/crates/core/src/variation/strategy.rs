use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::space::{distinct_indices, Population};

/// Differential mutation schemes.
///
/// + rand/1: `r1 + F (r2 - r3)`
/// + best/1: `best + F (r1 - r2)`
/// + rand/2: `r1 + F (r2 - r3 + r4 - r5)`
/// + best/2: `best + F (r1 - r2 + r3 - r4)`
/// + current-to-rand/1: `x_i + K (r3 - x_i) + F (r1 - r2)`
/// + current-to-best/1: `x_i + K (best - x_i) + F (r1 - r2)`
/// + rand-to-best/1: `r1 + F (best - r1) + F (r2 - r3)`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mutation {
    Rand1,
    Best1,
    Rand2,
    Best2,
    CurrentToRand1,
    CurrentToBest1,
    RandToBest1,
}

impl Mutation {
    /// Number of distinct random members (other than the target) consumed.
    pub fn picks(self) -> usize {
        match self {
            Mutation::Rand1 | Mutation::CurrentToRand1 | Mutation::RandToBest1 => 3,
            Mutation::Best1 | Mutation::CurrentToBest1 => 2,
            Mutation::Rand2 => 5,
            Mutation::Best2 => 4,
        }
    }

    /// Whether the scheme mixes in the current vector with coefficient K.
    pub fn uses_k(self) -> bool {
        matches!(self, Mutation::CurrentToRand1 | Mutation::CurrentToBest1)
    }

    fn name(self) -> &'static str {
        match self {
            Mutation::Rand1 => "rand1",
            Mutation::Best1 => "best1",
            Mutation::Rand2 => "rand2",
            Mutation::Best2 => "best2",
            Mutation::CurrentToRand1 => "currenttorand1",
            Mutation::CurrentToBest1 => "currenttobest1",
            Mutation::RandToBest1 => "randtobest1",
        }
    }

    pub const ALL: [Mutation; 7] = [
        Mutation::Rand1,
        Mutation::Best1,
        Mutation::Rand2,
        Mutation::Best2,
        Mutation::CurrentToRand1,
        Mutation::CurrentToBest1,
        Mutation::RandToBest1,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Crossover {
    Bin,
    Exp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StrategyId {
    pub mutation: Mutation,
    pub crossover: Crossover,
}

impl StrategyId {
    pub const fn new(mutation: Mutation, crossover: Crossover) -> Self {
        Self {
            mutation,
            crossover,
        }
    }

    /// All fourteen mutation/crossover combinations, bin before exp.
    pub fn all() -> Vec<StrategyId> {
        Mutation::ALL
            .iter()
            .flat_map(|m| [Crossover::Bin, Crossover::Exp].map(|c| StrategyId::new(*m, c)))
            .collect()
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.crossover {
            Crossover::Bin => "bin",
            Crossover::Exp => "exp",
        };
        write!(f, "{}{}", self.mutation.name(), c)
    }
}

impl FromStr for StrategyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase().replace(['/', '-', '_'], "");
        let (head, crossover) = if let Some(h) = lower.strip_suffix("bin") {
            (h, Crossover::Bin)
        } else if let Some(h) = lower.strip_suffix("exp") {
            (h, Crossover::Exp)
        } else {
            return Err(Error::InvalidConfig(format!("unknown strategy `{s}`")));
        };
        let mutation = Mutation::ALL
            .into_iter()
            .find(|m| m.name() == head)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown strategy `{s}`")))?;
        Ok(StrategyId::new(mutation, crossover))
    }
}

/// Donor vector from explicitly chosen members. `picks` must hold at least
/// `mutation.picks()` vectors; the donor is not bound-repaired.
pub fn donor(
    mutation: Mutation,
    target: &[f64],
    best: &[f64],
    picks: &[&[f64]],
    f: f64,
    k: f64,
) -> Result<Vec<f64>> {
    if picks.len() < mutation.picks() {
        return Err(Error::InvalidConfig(format!(
            "{} needs {} donors, got {}",
            mutation.name(),
            mutation.picks(),
            picks.len()
        )));
    }
    let r = |n: usize, j: usize| picks[n][j];
    let out = (0..target.len())
        .map(|j| match mutation {
            Mutation::Rand1 => r(0, j) + f * (r(1, j) - r(2, j)),
            Mutation::Best1 => best[j] + f * (r(0, j) - r(1, j)),
            Mutation::Rand2 => r(0, j) + f * (r(1, j) - r(2, j) + r(3, j) - r(4, j)),
            Mutation::Best2 => best[j] + f * (r(0, j) - r(1, j) + r(2, j) - r(3, j)),
            Mutation::CurrentToRand1 => {
                target[j] + k * (r(2, j) - target[j]) + f * (r(0, j) - r(1, j))
            }
            Mutation::CurrentToBest1 => {
                target[j] + k * (best[j] - target[j]) + f * (r(0, j) - r(1, j))
            }
            Mutation::RandToBest1 => r(0, j) + f * (best[j] - r(0, j)) + f * (r(1, j) - r(2, j)),
        })
        .collect();
    Ok(out)
}

/// Donor for member `i`, with the random members drawn from the whole
/// population (distinct, never `i`).
pub fn mutate(
    mutation: Mutation,
    pop: &Population,
    i: usize,
    best: &[f64],
    f: f64,
    k: f64,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    let need = mutation.picks();
    if pop.len() < need + 1 {
        return Err(Error::InvalidConfig(format!(
            "{} needs a population of at least {}, got {}",
            mutation.name(),
            need + 1,
            pop.len()
        )));
    }
    let idx = distinct_indices(pop.len(), need, &[i], rng)?;
    let picks: Vec<&[f64]> = idx.iter().map(|&r| pop.members[r].x.as_slice()).collect();
    donor(mutation, &pop.members[i].x, best, &picks, f, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Candidate;

    fn pop_of(points: &[&[f64]]) -> Population {
        Population {
            members: points.iter().map(|p| Candidate::new(p.to_vec())).collect(),
            generation: 0,
        }
    }

    #[test]
    fn names_round_trip() {
        let all = StrategyId::all();
        assert_eq!(all.len(), 14);
        for s in &all {
            assert_eq!(s.to_string().parse::<StrategyId>().unwrap(), *s);
        }
        assert_eq!(all[0].to_string(), "rand1bin");
        assert_eq!(all[13].to_string(), "randtobest1exp");
        assert_eq!("best/1/bin".parse::<StrategyId>().unwrap().to_string(), "best1bin");
        assert!("best3bin".parse::<StrategyId>().is_err());
        assert!("rand1".parse::<StrategyId>().is_err());
    }

    #[test]
    fn rand1_identical_members() {
        let p = [1.5, -2.0];
        let pop = pop_of(&[&p, &p, &p, &p]);
        let d = mutate(Mutation::Rand1, &pop, 0, &p, 0.8, 0.0, &mut RngStream::new(1)).unwrap();
        assert_eq!(d, p.to_vec());
    }

    #[test]
    fn rand1_arithmetic() {
        let d = donor(
            Mutation::Rand1,
            &[0.0, 0.0],
            &[0.0, 0.0],
            &[&[1.0, 1.0], &[2.0, 0.0], &[0.0, 2.0]],
            0.5,
            0.0,
        )
        .unwrap();
        assert_eq!(d, vec![2.0, 0.0]);
    }

    #[test]
    fn best1_with_zero_f() {
        let pop = pop_of(&[&[0.0], &[1.0], &[2.0], &[3.0]]);
        let d = mutate(Mutation::Best1, &pop, 1, &[7.0], 0.0, 0.3, &mut RngStream::new(2)).unwrap();
        assert_eq!(d, vec![7.0]);
    }

    #[test]
    fn current_to_rand_formula() {
        let d = donor(
            Mutation::CurrentToRand1,
            &[1.0],
            &[0.0],
            &[&[4.0], &[2.0], &[3.0]],
            0.5,
            0.25,
        )
        .unwrap();
        // 1 + 0.25 (3 - 1) + 0.5 (4 - 2)
        assert_eq!(d, vec![2.5]);
    }

    #[test]
    fn population_too_small() {
        let pop = pop_of(&[&[0.0], &[1.0], &[2.0], &[3.0], &[4.0]]);
        let err = mutate(Mutation::Rand2, &pop, 0, &[0.0], 0.5, 0.0, &mut RngStream::new(3));
        assert!(matches!(err, Err(Error::InvalidConfig(_))));
        assert!(mutate(Mutation::Best2, &pop, 0, &[0.0], 0.5, 0.0, &mut RngStream::new(3)).is_ok());
    }

    #[test]
    fn translation_equivariance() {
        let base: Vec<Vec<f64>> = (0..8).map(|i| vec![i as f64, (i * i) as f64 * 0.1]).collect();
        let t = [3.0, -1.25];
        let shifted: Vec<Vec<f64>> = base.iter().map(|p| vec![p[0] + t[0], p[1] + t[1]]).collect();
        for m in [Mutation::Rand1, Mutation::Rand2] {
            let pa = Population {
                members: base.iter().cloned().map(Candidate::new).collect(),
                generation: 0,
            };
            let pb = Population {
                members: shifted.iter().cloned().map(Candidate::new).collect(),
                generation: 0,
            };
            let a = mutate(m, &pa, 2, &[0.0, 0.0], 0.7, 0.0, &mut RngStream::new(17)).unwrap();
            let b = mutate(m, &pb, 2, &[0.0, 0.0], 0.7, 0.0, &mut RngStream::new(17)).unwrap();
            for j in 0..2 {
                assert!((b[j] - a[j] - t[j]).abs() < 1e-12);
            }
        }
    }
}
