use aded::benchmarks::analytic_front;
use aded::metrics::{generational_distance, FrontPair};
use aded::stats::compare_batches;
use aded::{EngineConfig, LocalSearchBudget};
use aded_harness::exec::{mo_base, run_batch, to_batch, VARIANTS};
use aded_harness::plan::{Algorithm, ExperimentPlan, Settings};

fn plan(name: &str) -> ExperimentPlan {
    let base = if name == "paper-zdt" { mo_base() } else { EngineConfig::default() };
    ExperimentPlan::from_settings(Settings::preset(name).unwrap(), base, Some("unused".into())).unwrap()
}

fn shape(p: &ExperimentPlan) -> (usize, usize, Option<(f64, f64)>, usize) {
    (p.engine.population_size, p.engine.max_generations, p.bounds, p.n_runs)
}

#[test]
fn paper_presets_snapshot() {
    let p = plan("paper-sinusoidal");
    assert_eq!(p.benchmarks, ["sinusoidal"]);
    assert_eq!(shape(&p), (50, 100, Some((-10.0, 10.0)), 10));
    assert!(p.engine.local_search.enabled);

    let p = plan("paper-table10");
    assert_eq!(p.benchmarks, ["sphere", "sinusoidal"]);
    assert_eq!(shape(&p), (300, 200, Some((-10.0, 10.0)), 30));
    assert_eq!((p.baseline.schedule.initial_f, p.baseline.schedule.initial_cr), (0.8, 0.9));
    assert_eq!((p.baseline.population_size, p.baseline.max_generations), (300, 200));

    let p = plan("paper-table14");
    assert_eq!(p.benchmarks.len(), 11);
    assert!(p.benchmarks.iter().any(|b| b == "rastrigin") && p.benchmarks.iter().any(|b| b == "eggholder"));
    assert_eq!(shape(&p), (300, 200, None, 30));

    for (name, ids) in [
        ("paper-table16", vec!["booth", "matyas", "mccormick"]),
        ("paper-table18", vec!["three_hump_camel", "six_hump_camel", "rosenbrock", "dixon_price"]),
        ("paper-table20", vec!["beale", "goldstein_price", "forrester", "devilliersglasser02_paper"]),
    ] {
        let p = plan(name);
        assert_eq!(p.benchmarks, ids, "{name}");
        assert_eq!(shape(&p), (300, 200, None, 30), "{name}");
    }

    let p = plan("paper-tournament");
    assert_eq!(p.benchmarks, ["sphere", "sinusoidal"]);
    assert_eq!(p.n_runs, 30);

    let p = plan("paper-zdt");
    assert_eq!(p.algorithm, Algorithm::AdedMo);
    assert_eq!(p.benchmarks, ["zdt1", "zdt2", "dltz1"]);
    assert_eq!(shape(&p), (100, 100, None, 1));
}

#[test]
fn flags_override_file_override_preset() {
    let mut s = Settings::preset("paper-sinusoidal").unwrap();
    s.overlay(&Settings::parse("pop = 30\ngens = 40\n").unwrap());
    s.set("gens", "7").unwrap();
    let p = ExperimentPlan::from_settings(s, EngineConfig::default(), None).unwrap();
    assert_eq!(shape(&p), (30, 7, Some((-10.0, 10.0)), 10));
}

#[test]
fn tournament_variant_names() {
    let names: Vec<&str> = VARIANTS.iter().map(|v| v.0).collect();
    assert_eq!(names.len(), 14);
    assert_eq!(names[0], "rand1bin");
    assert_eq!(names[13], "randtobest1exp");
    for n in names {
        n.parse::<aded::StrategyId>().unwrap();
    }
}

#[test]
fn self_comparison_has_zero_t() {
    let mut s = Settings::preset("default").unwrap();
    s.set("runs", "4").unwrap();
    s.set("pop", "12").unwrap();
    s.set("gens", "5").unwrap();
    let p = ExperimentPlan::from_settings(s, EngineConfig::default(), None).unwrap();
    let cfg = EngineConfig {
        local_search: LocalSearchBudget::disabled(),
        ..p.engine.clone()
    };
    let runs = run_batch(&p, "sphere", Algorithm::Aded, &cfg, Some(2)).unwrap();
    let b = to_batch("sphere", &runs);
    let row = compare_batches("sphere", "a", &b, "a", &b).unwrap();
    assert_eq!((row.t, row.p), (0.0, 1.0));
}

#[test]
fn gd_of_reference_against_itself_is_zero() {
    for id in ["zdt1", "zdt2", "dltz1"] {
        let front = analytic_front(id, 1000).unwrap();
        let pair = FrontPair::new(front.clone(), front).unwrap();
        assert_eq!(generational_distance(&pair), 0.0, "{id}");
    }
}
