//! Single-objective evolution loops: ADED and the classic DE baseline.

mod config;
mod neighborhood;
mod run;

pub use config::{EngineConfig, NeighborhoodMode, TrialRule};
pub use neighborhood::{dynamic_neighborhood, update_neighborhoods, NeighborhoodState};
pub use run::{crowding_select, has_converged, run_aded, run_classic_de, RunResult, Termination};
pub(crate) use run::{build_trial, draw_neighbors};
