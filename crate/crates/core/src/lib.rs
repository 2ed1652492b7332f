//! Grid-map Bayesian optimization for automated level exploration.
//!
//! A testing agent walks a level while every visited cell is folded into a
//! fixed-size grid model. Kernel convolution of that model yields a smoothed
//! prediction `f`, a confidence `c` and an uncertainty `u = (1 - c) * sigma_f`.
//! The next exploration target minimizes the lower confidence bound `f - u`
//! over the cells the navigation mesh marks as walkable, and the agent takes
//! random exploratory actions with probability `1 - c` on its way there.
//!
//! Module map:
//!
//! - [`grid`] / [`kernel`]: dense scalar grids and truncated Gaussian convolution.
//! - [`surrogate`]: the grid model (occupancy, heat, derived fields, masking).
//! - [`acquisition`]: LCB field and target selection.
//! - [`level`]: ASCII grid-world levels with ghost-wall bugs.
//! - [`policy`]: shortest-path navigation mixed with random actions.
//! - [`metrics`]: coverage, distance to uniform, baseline normalization.
//! - [`harness`]: trial loop, ablation matrix, file outputs.

pub mod acquisition;
pub mod error;
pub mod grid;
pub mod harness;
pub mod kernel;
pub mod level;
pub mod metrics;
pub mod policy;
pub mod surrogate;

pub use error::{Error, Result};
pub use grid::{Cell, ScalarGrid};
pub use kernel::Kernel;
