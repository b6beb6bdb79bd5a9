//! Scenario orchestration and report emission.

pub mod report;
pub mod runs;
pub mod scenario;

pub use report::{Bound, CheckResult, Metric, Report, Status};
pub use runs::{
    covariance_paths, default_jobs, run_bas_sweep, run_classical_suite, run_covariance, run_jobs,
    run_momentum_consistency, run_order_study, run_scenario, Job,
};
pub use scenario::{load_scenario, load_scenarios, Scenario, ScenarioConfig, TransformName};
