use std::cell::Cell;

use aded::benchmarks::{sphere, zdt1};
use aded::engine::dynamic_neighborhood;
use aded::moo::{mo_config, pareto_dominates};
use aded::{
    run_aded, run_aded_mo, run_classic_de, EngineConfig, Error, LocalSearchBudget, NeighborhoodMode, RngStream,
    SearchSpace, Termination,
};

fn square(lo: f64, hi: f64) -> SearchSpace {
    SearchSpace::uniform(2, lo, hi).unwrap()
}

#[test]
fn neighborhoods_are_uniform() {
    let (n, k, i) = (20, 5, 7);
    let trials = 40_000;
    let mut rng = RngStream::new(3);
    let mut counts = vec![0usize; n];
    for _ in 0..trials {
        let nb = dynamic_neighborhood(i, n, k, &mut rng).unwrap();
        assert_eq!(nb.len(), k);
        assert!(!nb.contains(&i));
        let mut s = nb.clone();
        s.sort_unstable();
        s.dedup();
        assert_eq!(s.len(), k);
        for j in nb {
            counts[j] += 1;
        }
    }
    let expected = trials as f64 * k as f64 / (n - 1) as f64;
    let chi2: f64 = (0..n)
        .filter(|&j| j != i)
        .map(|j| (counts[j] as f64 - expected).powi(2) / expected)
        .sum();
    // 18 degrees of freedom; 0.999 quantile is about 42.3
    assert!(chi2 < 42.3, "chi2 = {chi2}");
    assert_eq!(counts[i], 0);
}

#[test]
fn neighborhood_caps_at_population() {
    let mut rng = RngStream::new(0);
    let nb = dynamic_neighborhood(0, 4, 10, &mut rng).unwrap();
    assert_eq!(nb.len(), 3);
    assert!(dynamic_neighborhood(0, 1, 3, &mut rng).is_err());
}

#[test]
fn same_seed_same_run() {
    let space = square(-5.12, 5.12);
    let cfg = EngineConfig::default().with_population(20).with_generations(20).with_seed(9);
    let a = run_aded(&aded::benchmarks::rastrigin, &space, &cfg).unwrap();
    let b = run_aded(&aded::benchmarks::rastrigin, &space, &cfg).unwrap();
    assert_eq!(a.best_x, b.best_x);
    assert_eq!(a.best_f_history, b.best_f_history);
    assert_eq!(a.diversity_history, b.diversity_history);
    assert_eq!(a.n_evaluations, b.n_evaluations);
    let c = run_aded(&aded::benchmarks::rastrigin, &space, &cfg.clone().with_seed(10)).unwrap();
    assert_ne!(a.best_f_history, c.best_f_history);
}

/// Objective that turns constant once `switch` evaluations have happened.
fn flat_after(switch: usize, calls: &Cell<usize>) -> impl Fn(&[f64]) -> f64 + '_ {
    move |x: &[f64]| {
        calls.set(calls.get() + 1);
        if calls.get() > switch {
            -1.0e6
        } else {
            sphere(x)
        }
    }
}

#[test]
fn stagnation_halts_both_engines() {
    let (n, g, limit) = (20, 15, 7);
    let space = square(-10.0, 10.0);
    // Without local search every generation costs exactly n evaluations, so
    // the switch lands at the end of generation g.
    let switch = n * (g + 1);
    let aded_cfg = EngineConfig {
        local_search: LocalSearchBudget::disabled(),
        stagnation_limit: limit,
        ..EngineConfig::default().with_population(n).with_generations(500)
    };
    let de_cfg = EngineConfig {
        stagnation_limit: limit,
        ..EngineConfig::classic_de().with_population(n).with_generations(500)
    };
    for label in ["aded", "classic"] {
        let calls = Cell::new(0);
        let f = flat_after(switch, &calls);
        let r = if label == "aded" {
            run_aded(&f, &space, &aded_cfg)
        } else {
            run_classic_de(&f, &space, &de_cfg)
        }
        .unwrap();
        assert_eq!(r.terminated_by, Termination::Stagnation, "{label}");
        assert!(r.generations <= g + limit, "{label}: {} > {}", r.generations, g + limit);
    }
}

#[test]
fn runs_to_max_generations_when_improving() {
    let space = square(-5.0, 5.0);
    let cfg = EngineConfig {
        local_search: LocalSearchBudget::disabled(),
        ..EngineConfig::default().with_population(12).with_generations(3)
    };
    let r = run_aded(&sphere, &space, &cfg).unwrap();
    assert_eq!(r.generations, 3);
    assert_eq!(r.terminated_by, Termination::MaxGenerations);
    assert_eq!(r.n_evaluations, 12 * 4);
}

#[test]
fn non_finite_objective_is_reported() {
    let space = square(-1.0, 1.0);
    let calls = Cell::new(0);
    let f = |x: &[f64]| {
        calls.set(calls.get() + 1);
        if calls.get() == 15 {
            f64::NAN
        } else {
            sphere(x)
        }
    };
    let cfg = EngineConfig {
        local_search: LocalSearchBudget::disabled(),
        ..EngineConfig::default().with_population(12).with_generations(5)
    };
    match run_aded(&f, &space, &cfg) {
        Err(Error::Objective {
            generation,
            individual,
            value,
        }) => {
            assert_eq!((generation, individual), (1, 2));
            assert!(value.is_nan());
        }
        other => panic!("expected objective error, got {other:?}"),
    }
}

#[test]
fn config_validation() {
    let space = square(-1.0, 1.0);
    let tiny = EngineConfig::default().with_population(3);
    assert!(matches!(run_aded(&sphere, &space, &tiny), Err(Error::InvalidConfig(_))));
    let dynamic_de = EngineConfig {
        neighborhood: NeighborhoodMode::Dynamic,
        ..EngineConfig::classic_de()
    };
    assert!(matches!(run_classic_de(&sphere, &space, &dynamic_de), Err(Error::InvalidConfig(_))));
    let ls_de = EngineConfig {
        local_search: LocalSearchBudget::default(),
        ..EngineConfig::classic_de()
    };
    assert!(matches!(run_classic_de(&sphere, &space, &ls_de), Err(Error::InvalidConfig(_))));
}

#[test]
fn multi_objective_front_is_nondominated() {
    let space = SearchSpace::uniform(30, 0.0, 1.0).unwrap();
    let cfg = mo_config().with_population(30).with_generations(10).with_seed(4);
    let calls = Cell::new(0usize);
    let f = |x: &[f64]| {
        calls.set(calls.get() + 1);
        zdt1(x)
    };
    let r = run_aded_mo(&f, &space, &cfg, &[0.5, 0.5]).unwrap();
    let objs = r.front_objectives();
    assert!(!objs.is_empty());
    for a in &objs {
        for b in &objs {
            assert!(!pareto_dominates(a, b).unwrap());
        }
    }
    assert_eq!(r.history.len(), r.generations);
    assert!(r.scalarized_history.windows(2).all(|w| w[1] <= w[0]));
    // The scalarized local search calls the objective once per probe.
    assert_eq!(r.n_evaluations, calls.get());
    assert!(r.front.iter().all(|p| space.contains(&p.x)));
}
