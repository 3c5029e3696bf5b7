//! Experiment orchestration: configuration, seeded streams, simulation,
//! CSV output and charts.

pub mod chart;
pub mod config;
pub mod experiment;
pub mod normal;
pub mod stream;

pub use chart::{emit_chart, read_curves, render_svg, Curve};
pub use config::{Algorithm, ExperimentConfig, Problem, ScheduleKind};
pub use experiment::{
    checkpoints, run_experiment, simulate, write_records, write_summary, AlgorithmTrace,
    ExperimentOutput, ExperimentRecord, OutputFiles, SummaryRow, CHECKPOINTS, RECORD_HEADER,
};
pub use normal::{coverage_z, normal_cdf, normal_quantile, standard_normal};
pub use stream::{generate_search_stream, generate_ski_stream, run_rng, SearchRound, SkiRound};
