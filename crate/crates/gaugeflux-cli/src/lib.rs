//! Scenario runner for the `gaugeflux` solvers: parses scenario files,
//! dispatches their tasks and renders the results.

pub mod catalog;
pub mod report;
pub mod run;
pub mod scenario;

pub use report::{Report, Row, TaskReport, CSV_COLUMNS};
pub use run::{run_file, run_scenario};
pub use scenario::Scenario;
