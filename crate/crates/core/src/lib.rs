//! Adaptive differential evolution with dynamic neighborhoods, crowding
//! selection and bounded local refinement, plus the classic DE baseline,
//! a benchmark catalog, multi-objective support, diagnostics and
//! statistical comparison tools.
//!
//! ```
//! use aded::{benchmarks, run_aded, EngineConfig};
//!
//! let spec = benchmarks::lookup_single("sphere").unwrap();
//! let space = spec.space(2).unwrap();
//! let cfg = EngineConfig::default().with_population(20).with_generations(30).with_seed(1);
//! let result = run_aded(&spec.function(), &space, &cfg).unwrap();
//! assert!(result.best_f < 1e-6);
//! ```

pub mod benchmarks;
pub mod engine;
pub mod error;
pub mod metrics;
pub mod moo;
pub mod rng;
pub mod space;
pub mod stats;
pub mod variation;

pub use engine::{run_aded, run_classic_de, EngineConfig, NeighborhoodMode, RunResult, Termination, TrialRule};
pub use error::{Error, Result};
pub use metrics::{FrontPair, RunBatch};
pub use moo::{run_aded_mo, MoResult};
pub use rng::RngStream;
pub use space::{Candidate, Population, SearchSpace};
pub use variation::{LocalSearchBudget, ScheduleMode, ScheduleParams, StrategyId};
