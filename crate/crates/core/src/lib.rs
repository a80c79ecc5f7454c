//! Boundary layers of power-law fluids past a flat plate.
//!
//! Solves `P(P+1) f''' + f (f'')^(2-P) = 0` with `f(0) = f'(0) = 0`,
//! `f'(∞) = 1` without iteration: one initial-value problem is integrated in
//! scaled variables and the result is mapped back through the scaling group
//! that leaves the equation and the wall conditions invariant. A classical
//! shooting solver is provided as an independent check.
//!
//! ```
//! use powerlaw_bl::{default_grid, solve, Boundary, ModelParameter};
//!
//! let param = ModelParameter::new(1.0).unwrap();
//! let result = solve(&param, Boundary::Fixed(default_grid(&param))).unwrap();
//! assert!((result.skin_friction - 0.332057336215).abs() < 1e-8);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail the positivity checks

pub mod error;
pub mod export;
pub mod model;
pub mod reference;
pub mod rk;
pub mod shooting;
pub mod transform;

pub use error::{Error, Result};
pub use export::{format_significant, profile_csv_string, write_profile_csv, CSV_HEADER};
pub use model::{pohlhausen_skin_friction, ModelParameter, Triple};
pub use reference::{reference_row, reference_table, ReferenceRow, BLASIUS_SKIN_FRICTION};
pub use rk::{integrate, single_step, ButcherTableau, GridSpec, StateVector};
pub use shooting::{shoot, solve_by_shooting, ShootingConfig};
pub use transform::{
    default_grid, default_step, find_truncated_boundary, integrate_starred, recover_lambda,
    rescale_profile, solve, AutoBoundary, Boundary, Frame, InvariantCheck, SolutionProfile,
    TransformResult,
};
