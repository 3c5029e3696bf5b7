//! One-way trading with probabilistic interval predictions on the peak price.
//!
//! A seller holds one divisible unit and sees prices in `[m, M]` one at a
//! time. A protection function `G` commits the seller to have sold `G(v)`
//! once the running maximum reaches `v`; the DRCR-optimal `G` is found on a
//! geometric price grid.

mod grid;
mod oracle;
mod pfa;
mod protection;

pub use grid::{build_grid, build_grid_with_points, grid_from_points, PriceGrid};
pub use oracle::{drcr_oracle_search, hard_instance, ORACLE_EXTRA_PEAKS};
pub use pfa::{
    continuous_worst_ratios, discrete_worst_ratios, pfa_run, solve_pfa, solve_pfa_on_grid,
    PfaOptions, PfaProgram, SearchDrcrSolution,
};
pub use protection::{worst_case_alpha, worst_case_level, worst_case_protection, ProtectionFunction};
