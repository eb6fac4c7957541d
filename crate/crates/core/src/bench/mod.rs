//! Benchmark harness: ATLAS CSV ingestion, the three stages, the
//! gradient-variance probe and JSON/CSV report emission.

mod data;
mod plateau;
mod report;
mod stage;

pub use data::{load_atlas_csv, FEATURE_COLUMNS};
pub use plateau::{run_plateau_probe, PlateauEntry, PlateauReport, MIN_PLATEAU_SAMPLES};
pub use report::{
    emit_plateau, emit_reports, emit_stage, read_json, read_plateau_csv, read_report, read_scatter, write_json,
    write_scatter,
};
pub use stage::{
    load_imputed, prepare_data, run_stage, run_stage_on, run_sweep, train_stage, BenchReport, PreparedData, ScatterRow,
    Seeds, StageConfig, StageId, StageOutcome, SweepSummary, DEFAULT_DATA_SEED, DEFAULT_MAXITER, EVENTS_PER_CLASS,
    TEST_FRACTION,
};
