//! Shooting on the unknown wall curvature f''(0).
//!
//! Used as an independent check of the transformation method: it shares the
//! integrator and the model with [`crate::transform`], but finds f''(0) by
//! root-finding on the far-field residual `f'(η∞) - 1` instead of by scaling.

use crate::error::{Error, Result};
use crate::model::ModelParameter;
use crate::rk::{ButcherTableau, GridSpec};

/// Bracket width below which bisection hands over to the secant method.
const SECANT_HANDOVER: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    bracket_low: f64,
    bracket_high: f64,
    residual_tol: f64,
    max_iterations: usize,
    grid: GridSpec,
}

impl ShootingConfig {
    pub fn new(
        bracket_low: f64,
        bracket_high: f64,
        residual_tol: f64,
        max_iterations: usize,
        grid: GridSpec,
    ) -> Result<Self> {
        if !(bracket_low > 0.0 && bracket_low < bracket_high && bracket_high.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "bracket [{bracket_low}, {bracket_high}] must satisfy 0 < low < high"
            )));
        }
        if !(residual_tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "residual tolerance must be positive, got {residual_tol}"
            )));
        }
        if max_iterations == 0 {
            return Err(Error::InvalidArgument(
                "max_iterations must be positive".into(),
            ));
        }
        Ok(Self {
            bracket_low,
            bracket_high,
            residual_tol,
            max_iterations,
            grid,
        })
    }

    /// Bracket `[0.05, 5]`, residual tolerance `1e-10`, 200 iterations.
    pub fn with_grid(grid: GridSpec) -> Self {
        Self::new(0.05, 5.0, 1e-10, 200, grid).expect("default shooting config is valid")
    }

    pub fn bracket(&self) -> (f64, f64) {
        (self.bracket_low, self.bracket_high)
    }

    pub fn residual_tol(&self) -> f64 {
        self.residual_tol
    }

    pub fn max_iterations(&self) -> usize {
        self.max_iterations
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }
}

/// Far-field residual `f'(η∞) - 1` for the wall curvature `guess`.
pub fn shoot(param: &ModelParameter, guess: f64, grid: &GridSpec) -> Result<f64> {
    if !(guess > 0.0 && guess.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "guess must be positive, got {guess}"
        )));
    }
    let mut slope = f64::NAN;
    param
        .visit_ivp(guess, grid, &ButcherTableau::cooper_verner8(), |_, y| {
            slope = y[1];
            std::ops::ControlFlow::Continue(())
        })
        .map_err(|source| Error::ShotDiverged {
            guess,
            source: Box::new(source),
        })?;
    Ok(slope - 1.0)
}

/// Finds f''(0) with `|f'(η∞) - 1| < residual_tol`: bisection until the
/// bracket is narrower than `1e-3`, then secant steps kept inside the bracket.
pub fn solve_by_shooting(param: &ModelParameter, config: &ShootingConfig) -> Result<f64> {
    let (mut low, mut high) = config.bracket();
    let grid = config.grid();
    let tol = config.residual_tol();
    let mut r_low = shoot(param, low, grid)?;
    let r_high = shoot(param, high, grid)?;
    if r_low.abs() < tol {
        return Ok(low);
    }
    if r_high.abs() < tol {
        return Ok(high);
    }
    if r_low.signum() == r_high.signum() {
        return Err(Error::BracketInvalid {
            low,
            high,
            residual_low: r_low,
            residual_high: r_high,
        });
    }

    // last two iterates for the secant phase
    let (mut x0, mut r0) = (low, r_low);
    let (mut x1, mut r1) = (high, r_high);
    let mut last_residual = r_low.abs().min(r_high.abs());
    for _ in 0..config.max_iterations() {
        let mid = 0.5 * (low + high);
        let candidate = if high - low < SECANT_HANDOVER && r1 != r0 {
            let x = x1 - r1 * (x1 - x0) / (r1 - r0);
            if x > low && x < high {
                x
            } else {
                mid
            }
        } else {
            mid
        };
        let r = shoot(param, candidate, grid)?;
        last_residual = r.abs();
        if last_residual < tol {
            return Ok(candidate);
        }
        if r.signum() == r_low.signum() {
            low = candidate;
            r_low = r;
        } else {
            high = candidate;
        }
        (x0, r0) = (x1, r1);
        (x1, r1) = (candidate, r);
        if high - low <= f64::EPSILON * high {
            break;
        }
    }
    Err(Error::NoConvergence {
        iterations: config.max_iterations(),
        residual: last_residual,
    })
}
