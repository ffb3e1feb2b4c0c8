//! Experiment plans: named presets, flat `key = value` config files and
//! command-line overrides, merged in that order.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use aded::benchmarks::{self, Benchmark};
use aded::{EngineConfig, LocalSearchBudget, NeighborhoodMode, ScheduleParams, SearchSpace, TrialRule};

use crate::error::{HarnessError, HarnessResult};

pub const OUT_DIR_ENV: &str = "ADED_OUT_DIR";
pub const DEFAULT_OUT_DIR: &str = "aded-out";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Aded,
    ClassicDe,
    AdedMo,
}

impl FromStr for Algorithm {
    type Err = HarnessError;

    fn from_str(s: &str) -> HarnessResult<Self> {
        match s {
            "aded" => Ok(Self::Aded),
            "classic_de" | "classic-de" | "de" => Ok(Self::ClassicDe),
            "aded_mo" | "aded-mo" => Ok(Self::AdedMo),
            _ => Err(HarnessError::Config(format!("unknown algorithm `{s}`"))),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Aded => "aded",
            Self::ClassicDe => "classic_de",
            Self::AdedMo => "aded_mo",
        })
    }
}

/// Every key a preset, config file or flag may set.
pub const KEYS: &[&str] = &[
    "benchmark",
    "algorithm",
    "pop",
    "gens",
    "runs",
    "seed",
    "dim",
    "bounds",
    "strategy",
    "schedule",
    "f",
    "cr",
    "neighborhood",
    "neighborhood_size",
    "local_search",
    "ls_iterations",
    "ls_probability",
    "stagnation_limit",
    "stagnation_tol",
    "de_f",
    "de_cr",
    "de_stagnation_limit",
];

const TABLE14: &str = "rastrigin,ackley,cross_in_tray,eggholder,drop_wave,levy_n13,schwefel,schaffer_n2,bukin_n6,shubert,himmelblau";
const PAPER_BATCH: [(&str, &str); 3] = [("pop", "300"), ("gens", "200"), ("runs", "30")];

fn preset_pairs(name: &str) -> Option<Vec<(&'static str, &'static str)>> {
    let mut kv: Vec<(&str, &str)> = match name {
        "default" => vec![("benchmark", "sphere"), ("runs", "10")],
        "paper-sinusoidal" => vec![
            ("benchmark", "sinusoidal"),
            ("pop", "50"),
            ("gens", "100"),
            ("bounds", "-10,10"),
            ("runs", "10"),
            ("local_search", "on"),
        ],
        "paper-table10" => {
            let mut v = vec![
                ("benchmark", "sphere,sinusoidal"),
                ("bounds", "-10,10"),
                ("schedule", "fixed-random"),
                ("de_f", "0.8"),
                ("de_cr", "0.9"),
            ];
            v.extend(PAPER_BATCH);
            v
        }
        "paper-table14" => [vec![("benchmark", TABLE14)], PAPER_BATCH.to_vec()].concat(),
        "paper-table16" => [vec![("benchmark", "booth,matyas,mccormick")], PAPER_BATCH.to_vec()].concat(),
        "paper-table18" => [
            vec![("benchmark", "three_hump_camel,six_hump_camel,rosenbrock,dixon_price")],
            PAPER_BATCH.to_vec(),
        ]
        .concat(),
        "paper-table20" => [
            vec![("benchmark", "beale,goldstein_price,forrester,devilliersglasser02_paper")],
            PAPER_BATCH.to_vec(),
        ]
        .concat(),
        "paper-tournament" => vec![("benchmark", "sphere,sinusoidal"), ("runs", "30")],
        "paper-zdt" => vec![
            ("benchmark", "zdt1,zdt2,dltz1"),
            ("algorithm", "aded_mo"),
            ("pop", "100"),
            ("gens", "100"),
            ("runs", "1"),
        ],
        _ => return None,
    };
    kv.sort_by_key(|(k, _)| *k);
    Some(kv)
}

pub fn preset_names() -> Vec<&'static str> {
    vec![
        "default",
        "paper-sinusoidal",
        "paper-table10",
        "paper-table14",
        "paper-table16",
        "paper-table18",
        "paper-table20",
        "paper-tournament",
        "paper-zdt",
    ]
}

/// Layered key/value settings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    pub fn preset(name: &str) -> HarnessResult<Self> {
        let pairs = preset_pairs(name).ok_or_else(|| {
            HarnessError::Config(format!(
                "unknown preset `{name}`; available: {}",
                preset_names().join(", ")
            ))
        })?;
        let mut s = Settings::default();
        for (k, v) in pairs {
            s.values.insert(k.to_string(), v.to_string());
        }
        Ok(s)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> HarnessResult<()> {
        if !KEYS.contains(&key) {
            return Err(HarnessError::Config(format!("unknown setting `{key}`")));
        }
        self.values.insert(key.to_string(), value.into());
        Ok(())
    }

    /// Later layers win.
    pub fn overlay(&mut self, other: &Settings) {
        for (k, v) in &other.values {
            self.values.insert(k.clone(), v.clone());
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Parse a config file body. `preset = name` pulls in a preset beneath
    /// the file's own keys; `#` starts a comment.
    pub fn parse(text: &str) -> HarnessResult<Self> {
        let mut own = Settings::default();
        let mut base = Settings::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                HarnessError::Config(format!("line {}: expected `key = value`", n + 1))
            })?;
            let (k, v) = (k.trim(), v.trim());
            if k == "preset" {
                base = Settings::preset(v)?;
            } else {
                own.set(k, v)
                    .map_err(|e| HarnessError::Config(format!("line {}: {e}", n + 1)))?;
            }
        }
        base.overlay(&own);
        Ok(base)
    }

    pub fn load(path: &Path) -> HarnessResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn parsed<T: FromStr>(&self, key: &str) -> HarnessResult<Option<T>>
    where
        T::Err: fmt::Display,
    {
        self.get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| HarnessError::Config(format!("`{key}` = `{v}`: {e}")))
            })
            .transpose()
    }

    fn on_off(&self, key: &str) -> HarnessResult<Option<bool>> {
        match self.get(key) {
            None => Ok(None),
            Some("on" | "true" | "yes") => Ok(Some(true)),
            Some("off" | "false" | "no") => Ok(Some(false)),
            Some(v) => Err(HarnessError::Config(format!("`{key}` must be on or off, got `{v}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub benchmarks: Vec<String>,
    pub algorithm: Algorithm,
    /// Configuration of the algorithm under test.
    pub engine: EngineConfig,
    /// Classic DE configuration used as the comparison baseline.
    pub baseline: EngineConfig,
    pub dim: Option<usize>,
    pub bounds: Option<(f64, f64)>,
    pub n_runs: usize,
    pub base_seed: u64,
    pub out_dir: PathBuf,
    pub settings: Settings,
}

fn parse_bounds(v: &str) -> HarnessResult<(f64, f64)> {
    let bad = || HarnessError::Config(format!("bounds must be `lo,hi`, got `{v}`"));
    let (a, b) = v.split_once(',').ok_or_else(bad)?;
    let lo: f64 = a.trim().parse().map_err(|_| bad())?;
    let hi: f64 = b.trim().parse().map_err(|_| bad())?;
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn parse_schedule(v: &str, f: Option<f64>, cr: Option<f64>, base: ScheduleParams) -> HarnessResult<ScheduleParams> {
    let f = f.unwrap_or(base.initial_f);
    let cr = cr.unwrap_or(base.initial_cr);
    match v {
        "scheduled" | "adaptive" => Ok(ScheduleParams::scheduled(f, cr)),
        "fixed" => Ok(ScheduleParams::fixed(f, cr)),
        "fixed-random" | "fixed_random" => Ok(ScheduleParams::fixed_random()),
        _ => Err(HarnessError::Config(format!("unknown schedule `{v}`"))),
    }
}

impl ExperimentPlan {
    /// Resolve settings into a plan. `engine_base` is the configuration the
    /// settings modify.
    pub fn from_settings(settings: Settings, engine_base: EngineConfig, out_dir: Option<PathBuf>) -> HarnessResult<Self> {
        let s = &settings;
        let benchmarks: Vec<String> = s
            .get("benchmark")
            .unwrap_or("sphere")
            .split(',')
            .map(|b| b.trim().to_string())
            .filter(|b| !b.is_empty())
            .collect();
        if benchmarks.is_empty() {
            return Err(HarnessError::Config("no benchmark given".into()));
        }
        for b in &benchmarks {
            benchmarks::lookup(b).map_err(|e| HarnessError::Config(e.to_string()))?;
        }
        let algorithm = s.parsed::<Algorithm>("algorithm")?.unwrap_or(Algorithm::Aded);

        let mut engine = match algorithm {
            Algorithm::ClassicDe => EngineConfig::classic_de(),
            _ => engine_base,
        };
        let mut baseline = EngineConfig::classic_de();
        if let Some(v) = s.parsed::<usize>("pop")? {
            engine.population_size = v;
            baseline.population_size = v;
        }
        if let Some(v) = s.parsed::<usize>("gens")? {
            engine.max_generations = v;
            baseline.max_generations = v;
        }
        let f = s.parsed::<f64>("f")?;
        let cr = s.parsed::<f64>("cr")?;
        if let Some(v) = s.get("schedule") {
            engine.schedule = parse_schedule(v, f, cr, engine.schedule)?;
        } else {
            if let Some(f) = f {
                engine.schedule.initial_f = f;
            }
            if let Some(cr) = cr {
                engine.schedule.initial_cr = cr;
            }
        }
        if let Some(v) = s.parsed::<TrialRule>("strategy")? {
            engine.trial = v;
        }
        if let Some(v) = s.parsed::<NeighborhoodMode>("neighborhood")? {
            engine.neighborhood = v;
        }
        if let Some(v) = s.parsed::<usize>("neighborhood_size")? {
            engine.neighborhood_size = v;
        }
        if let Some(on) = s.on_off("local_search")? {
            engine.local_search = if on {
                LocalSearchBudget {
                    enabled: true,
                    ..engine.local_search
                }
            } else {
                LocalSearchBudget::disabled()
            };
        }
        if let Some(v) = s.parsed::<usize>("ls_iterations")? {
            engine.local_search.max_iterations = v;
        }
        if let Some(v) = s.parsed::<f64>("ls_probability")? {
            engine.local_search.probability = v;
        }
        if let Some(v) = s.parsed::<usize>("stagnation_limit")? {
            engine.stagnation_limit = v;
        }
        if let Some(v) = s.parsed::<f64>("stagnation_tol")? {
            engine.stagnation_tol = v;
            baseline.stagnation_tol = v;
        }
        let de_f = s.parsed::<f64>("de_f")?.unwrap_or(baseline.schedule.initial_f);
        let de_cr = s.parsed::<f64>("de_cr")?.unwrap_or(baseline.schedule.initial_cr);
        baseline.schedule = ScheduleParams::fixed(de_f, de_cr);
        if let Some(v) = s.parsed::<usize>("de_stagnation_limit")? {
            baseline.stagnation_limit = v;
        }

        let n_runs = s.parsed::<usize>("runs")?.unwrap_or(10);
        if n_runs == 0 {
            return Err(HarnessError::Config("runs must be at least 1".into()));
        }
        let base_seed = s.parsed::<u64>("seed")?.unwrap_or(0);
        let dim = s.parsed::<usize>("dim")?;
        let bounds = s.get("bounds").map(parse_bounds).transpose()?;

        engine.validate().map_err(|e| HarnessError::Config(e.to_string()))?;
        baseline.validate().map_err(|e| HarnessError::Config(e.to_string()))?;

        let out_dir = out_dir
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));

        let plan = Self {
            benchmarks,
            algorithm,
            engine,
            baseline,
            dim,
            bounds,
            n_runs,
            base_seed,
            out_dir,
            settings,
        };
        for b in &plan.benchmarks {
            if let Benchmark::Single(_) = benchmarks::lookup(b).expect("checked above") {
                plan.space_for(b)?;
            }
        }
        Ok(plan)
    }

    pub fn seed(&self, run: usize) -> u64 {
        self.base_seed.wrapping_add(run as u64)
    }

    /// Search box for a single-objective benchmark, with the plan's
    /// dimension and bounds overrides applied.
    pub fn space_for(&self, id: &str) -> HarnessResult<SearchSpace> {
        let spec = benchmarks::lookup_single(id).map_err(|e| HarnessError::Config(e.to_string()))?;
        let dim = self.dim.unwrap_or(spec.dim_rule.default_dim());
        let space = spec.space(dim).map_err(|e| HarnessError::Config(format!("{id}: {e}")))?;
        match self.bounds {
            Some((lo, hi)) => SearchSpace::uniform(space.dim(), lo, hi).map_err(|e| HarnessError::Config(e.to_string())),
            None => Ok(space),
        }
    }

    /// Canonical `key=value` listing of the merged settings.
    pub fn canonical(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.settings.iter() {
            out.push_str(k);
            out.push('=');
            out.push_str(v);
            out.push('\n');
        }
        out
    }
}
