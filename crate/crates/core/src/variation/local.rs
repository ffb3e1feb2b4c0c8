//! Bounded limited-memory BFGS used to polish trial vectors.
//!
//! Box constraints are handled by gradient projection: variables sitting on
//! a bound with the gradient pointing outward are frozen for the iteration,
//! the two-loop recursion runs over the remaining free variables, and the
//! backtracking line search follows the projected path `P(x + a d)`.
//! Gradients come from central finite differences with probes kept inside
//! the box.

use std::collections::VecDeque;

use crate::error::{check_len, Error, Result};
use crate::space::SearchSpace;

const MEMORY: usize = 5;
const ARMIJO: f64 = 1e-4;
const MAX_BACKTRACKS: usize = 40;
const PG_TOL: f64 = 1e-12;
const F_REL_TOL: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalSearchBudget {
    pub enabled: bool,
    pub max_iterations: usize,
    /// Relative finite-difference step; the absolute step for coordinate j
    /// is `gradient_step * max(1, |x_j|)`.
    pub gradient_step: f64,
    /// Chance that a given trial is refined at all.
    pub probability: f64,
}

impl Default for LocalSearchBudget {
    fn default() -> Self {
        Self {
            enabled: true,
            max_iterations: 25,
            gradient_step: 1e-6,
            probability: 1.0,
        }
    }
}

impl LocalSearchBudget {
    pub fn disabled() -> Self {
        Self {
            enabled: false,
            ..Self::default()
        }
    }

    pub fn with_iterations(max_iterations: usize) -> Self {
        Self {
            max_iterations,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.enabled && self.max_iterations == 0 {
            return Err(Error::InvalidConfig("local search needs max_iterations >= 1".into()));
        }
        if !(self.gradient_step > 0.0 && self.gradient_step.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "finite-difference step {} must be positive",
                self.gradient_step
            )));
        }
        if !(0.0..=1.0).contains(&self.probability) {
            return Err(Error::InvalidConfig(format!(
                "local search probability {} outside [0, 1]",
                self.probability
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalResult {
    pub x: Vec<f64>,
    pub f: f64,
    /// Objective calls made, including the initial evaluation of `x0`.
    pub evals: usize,
}

/// Central-difference gradient; returns the gradient and the number of
/// objective calls. Probes are clamped into the box.
pub fn finite_difference_gradient<F>(objective: &F, x: &[f64], space: &SearchSpace, rel_step: f64) -> (Vec<f64>, usize)
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let mut probe = x.to_vec();
    let mut grad = Vec::with_capacity(x.len());
    for j in 0..x.len() {
        let h = rel_step * x[j].abs().max(1.0);
        let up = (x[j] + h).min(space.highs()[j]);
        let down = (x[j] - h).max(space.lows()[j]);
        probe[j] = up;
        let fu = objective(&probe);
        probe[j] = down;
        let fd = objective(&probe);
        probe[j] = x[j];
        grad.push((fu - fd) / (up - down));
    }
    (grad, 2 * x.len())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Refine `x0` inside `space`. The returned value never exceeds `objective(x0)`
/// and the returned point never leaves the box.
pub fn local_refine<F>(objective: &F, x0: &[f64], space: &SearchSpace, budget: &LocalSearchBudget) -> Result<LocalResult>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    check_len(space.dim(), x0.len())?;
    let mut x = x0.to_vec();
    space.clamp_in_place(&mut x);
    let mut f = objective(&x);
    let mut evals = 1;
    if !f.is_finite() {
        return Err(Error::Domain(format!("objective is {f} at the starting point")));
    }
    if !budget.enabled {
        return Ok(LocalResult { x, f, evals });
    }

    let (lows, highs) = (space.lows(), space.highs());
    let dim = x.len();
    let (mut g, e) = finite_difference_gradient(objective, &x, space, budget.gradient_step);
    evals += e;
    let mut memory: VecDeque<(Vec<f64>, Vec<f64>)> = VecDeque::with_capacity(MEMORY);

    for _ in 0..budget.max_iterations {
        if g.iter().any(|v| !v.is_finite()) {
            break;
        }
        let free: Vec<bool> = (0..dim)
            .map(|j| !((x[j] <= lows[j] && g[j] > 0.0) || (x[j] >= highs[j] && g[j] < 0.0)))
            .collect();
        let pg = (0..dim)
            .map(|j| ((x[j] - g[j]).clamp(lows[j], highs[j]) - x[j]).abs())
            .fold(0.0, f64::max);
        if pg <= PG_TOL {
            break;
        }

        let masked = |v: &[f64]| -> Vec<f64> {
            v.iter().zip(&free).map(|(a, keep)| if *keep { *a } else { 0.0 }).collect()
        };
        let mut dir = two_loop(&masked(&g), &memory, &masked);
        if dot(&g, &dir) >= 0.0 {
            memory.clear();
            dir = masked(&g).iter().map(|v| -v).collect();
        }

        let mut step = if memory.is_empty() {
            let norm = dot(&masked(&g), &masked(&g)).sqrt();
            (1.0 / norm).min(1.0)
        } else {
            1.0
        };
        let mut accepted = None;
        for _ in 0..MAX_BACKTRACKS {
            let trial: Vec<f64> = (0..dim)
                .map(|j| (x[j] + step * dir[j]).clamp(lows[j], highs[j]))
                .collect();
            if trial == x {
                break;
            }
            let ft = objective(&trial);
            evals += 1;
            let moved: Vec<f64> = trial.iter().zip(&x).map(|(a, b)| a - b).collect();
            if ft.is_finite() && ft <= f + ARMIJO * dot(&g, &moved) && ft <= f {
                accepted = Some((trial, ft));
                break;
            }
            step *= 0.5;
        }
        let Some((x_new, f_new)) = accepted else {
            break;
        };

        let (g_new, e) = finite_difference_gradient(objective, &x_new, space, budget.gradient_step);
        evals += e;
        let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        if dot(&s, &y) > 1e-12 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() {
            if memory.len() == MEMORY {
                memory.pop_front();
            }
            memory.push_back((s, y));
        }

        let decrease = f - f_new;
        let scale = f.abs().max(f_new.abs()).max(1.0);
        x = x_new;
        f = f_new;
        g = g_new;
        if decrease <= F_REL_TOL * scale {
            break;
        }
    }

    Ok(LocalResult { x, f, evals })
}

/// Standard two-loop recursion returning `-H g`, with every stored pair
/// restricted to the free variables.
fn two_loop(
    g: &[f64],
    memory: &VecDeque<(Vec<f64>, Vec<f64>)>,
    masked: &dyn Fn(&[f64]) -> Vec<f64>,
) -> Vec<f64> {
    let mut q = g.to_vec();
    let pairs: Vec<(Vec<f64>, Vec<f64>)> = memory.iter().map(|(s, y)| (masked(s), masked(y))).collect();
    let mut alphas = Vec::with_capacity(pairs.len());
    for (s, y) in pairs.iter().rev() {
        let sy = dot(s, y);
        if sy <= 0.0 {
            alphas.push(0.0);
            continue;
        }
        let a = dot(s, &q) / sy;
        for (qj, yj) in q.iter_mut().zip(y) {
            *qj -= a * yj;
        }
        alphas.push(a);
    }
    let gamma = pairs
        .last()
        .map(|(s, y)| {
            let yy = dot(y, y);
            if yy > 0.0 && dot(s, y) > 0.0 {
                dot(s, y) / yy
            } else {
                1.0
            }
        })
        .unwrap_or(1.0);
    for qj in q.iter_mut() {
        *qj *= gamma;
    }
    for ((s, y), a) in pairs.iter().zip(alphas.iter().rev()) {
        let sy = dot(s, y);
        if sy <= 0.0 {
            continue;
        }
        let b = dot(y, &q) / sy;
        for (qj, sj) in q.iter_mut().zip(s) {
            *qj += (a - b) * sj;
        }
    }
    q.iter().map(|v| -v).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::{rastrigin, rosenbrock, sphere};

    #[test]
    fn sphere_from_three_four() {
        let space = SearchSpace::uniform(2, -10.0, 10.0).unwrap();
        let r = local_refine(&sphere, &[3.0, 4.0], &space, &LocalSearchBudget::with_iterations(50)).unwrap();
        assert!(r.f < 1e-10, "f = {}", r.f);
        assert!(r.x.iter().all(|v| v.abs() < 1e-5));
    }

    #[test]
    fn stationary_start_stays_put() {
        let space = SearchSpace::uniform(2, -5.12, 5.12).unwrap();
        let r = local_refine(&rastrigin, &[0.0, 0.0], &space, &LocalSearchBudget::default()).unwrap();
        assert!(r.f.abs() <= 1e-12);
        assert!(r.x.iter().all(|v| v.abs() < 1e-9));
    }

    #[test]
    fn bound_constrained_minimum() {
        let space = SearchSpace::uniform(1, 1.0, 2.0).unwrap();
        let r = local_refine(&sphere, &[1.5], &space, &LocalSearchBudget::default()).unwrap();
        assert_eq!(r.x, vec![1.0]);
        assert_eq!(r.f, 1.0);
    }

    #[test]
    fn counts_every_call() {
        use std::cell::Cell;
        let calls = Cell::new(0usize);
        let counted = |x: &[f64]| {
            calls.set(calls.get() + 1);
            rosenbrock(x)
        };
        let space = SearchSpace::uniform(2, -5.0, 10.0).unwrap();
        let r = local_refine(&counted, &[-1.2, 1.0], &space, &LocalSearchBudget::default()).unwrap();
        assert_eq!(r.evals, calls.get());
        assert!(r.f < rosenbrock(&[-1.2, 1.0]));
    }

    #[test]
    fn disabled_only_evaluates() {
        let space = SearchSpace::uniform(2, -10.0, 10.0).unwrap();
        let r = local_refine(&sphere, &[3.0, 4.0], &space, &LocalSearchBudget::disabled()).unwrap();
        assert_eq!((r.x, r.f, r.evals), (vec![3.0, 4.0], 25.0, 1));
    }

    #[test]
    fn non_finite_start_is_a_domain_error() {
        let space = SearchSpace::uniform(1, -1.0, 1.0).unwrap();
        let bad = |_: &[f64]| f64::NAN;
        assert!(matches!(
            local_refine(&bad, &[0.0], &space, &LocalSearchBudget::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn fd_gradient_matches_analytic() {
        let space = SearchSpace::uniform(3, -5.0, 10.0).unwrap();
        let x = [0.7, -1.3, 2.2];
        let (g, evals) = finite_difference_gradient(&sphere, &x, &space, 1e-6);
        assert_eq!(evals, 6);
        for j in 0..3 {
            assert!((g[j] - 2.0 * x[j]).abs() <= 1e-5 * (2.0 * x[j]).abs());
        }
    }
}
