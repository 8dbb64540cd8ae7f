//! Oracle search on sector models: schedules of reversible steps, paired
//! runs with and without the oracle, and the displacement bounds.

mod bounds;
mod progress;
mod schedule;
mod sweep;
mod trajectory;

pub use bounds::{
    asymptotic_floor, finite_n_lower_threshold, first_success_k, grover_count, lower_bound_check,
    upper_bound_check, LowerBoundCheck, SuccessMode, UpperBoundCheck, ASYMPTOTIC_C,
};
pub use progress::{
    progress_all_items, progress_measures, progress_streaming, ProgressReport, ProgressStep,
};
pub use schedule::{
    build_schedule, default_k_max, reflection_about, step_seed, uniform_start, Provenance,
    Schedule, Strategy,
};
pub use sweep::{
    first_success_step, log_log_slope, scaling_sweep, ModelFamily, SweepRow, SweepTable,
};
pub use trajectory::{
    displacement_sum, run_search, success_probability, TrajectoryPair, MAX_STORED_COORDS,
};
