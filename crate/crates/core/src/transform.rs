//! Non-iterative transformation method.
//!
//! The starred problem `f*(0) = f*'(0) = 0, f*''(0) = 1` is integrated once on
//! `[0, η*∞]`. The group parameter that restores `f'(∞) = 1` follows from the
//! transformation law of the slope, `f*' = λ^(1-δ) f'`:
//!
//! ```text
//! λ      = f*'(η*∞)^(1/(1-δ)) = f*'(η*∞)^((2P-1)/(P+1))
//! f''(0) = λ^(2δ-1) f*''(0)   = f*'(η*∞)^(-3/(P+1))
//! ```
//!
//! and the physical profile is the starred one mapped back through the group:
//! `η = λ^-δ η*`, `f = λ^-1 f*`, `f' = λ^(δ-1) f*'`, `f'' = λ^(2δ-1) f*''`.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::model::{ModelParameter, Triple};
use crate::rk::{ButcherTableau, GridSpec};

/// Step used for `P > 0.1`.
pub const DEFAULT_STEP: f64 = 1e-3;
/// Step used for `P ≤ 0.1`, where `1/(P(P+1))` makes the problem stiffer.
pub const SMALL_P_STEP: f64 = 1e-4;
/// Default truncated boundary η*∞.
pub const DEFAULT_TRUNCATED_BOUNDARY: f64 = 10.0;

const UNIFORM_SPACING_TOL: f64 = 1e-12;

/// Number of doublings allowed by the truncated-boundary search.
const MAX_DOUBLINGS: u32 = 10;

/// Which variables a profile is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Starred,
    Physical,
}

/// `(η, f, f', f'')` on a uniform grid starting at the wall.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionProfile {
    frame: Frame,
    abscissae: Vec<f64>,
    values: Vec<Triple>,
}

impl SolutionProfile {
    /// Builds a profile from `(η, state)` nodes, checking the grid and wall
    /// invariants of the frame.
    pub fn from_nodes(frame: Frame, nodes: Vec<(f64, Triple)>) -> Result<Self> {
        let (abscissae, values): (Vec<f64>, Vec<Triple>) = nodes.into_iter().unzip();
        let profile = Self {
            frame,
            abscissae,
            values,
        };
        profile.validate()?;
        Ok(profile)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.abscissae.len() < 2 {
            return bad("profile needs at least two nodes".into());
        }
        if self.abscissae[0] != 0.0 {
            return bad(format!(
                "first abscissa is {}, expected 0",
                self.abscissae[0]
            ));
        }
        let spacing = self.spacing();
        if !(spacing > 0.0) {
            return bad("abscissae must be strictly increasing".into());
        }
        for (i, &eta) in self.abscissae.iter().enumerate() {
            let expected = i as f64 * spacing;
            if (eta - expected).abs() > UNIFORM_SPACING_TOL * expected.max(spacing) {
                return bad(format!(
                    "abscissa {i} = {eta} breaks uniform spacing {spacing}"
                ));
            }
        }
        let wall = self.values[0];
        let wall_ok = match self.frame {
            Frame::Starred => wall.into_inner() == [0.0, 0.0, 1.0],
            Frame::Physical => wall[0] == 0.0 && wall[1] == 0.0 && wall[2] > 0.0,
        };
        if !wall_ok {
            return bad(format!(
                "wall state {wall:?} invalid for {:?} frame",
                self.frame
            ));
        }
        if let Some((i, y)) = self.values.iter().enumerate().find(|(_, y)| !(y[2] >= 0.0)) {
            return bad(format!("negative curvature {} at node {i}", y[2]));
        }
        Ok(())
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn abscissae(&self) -> &[f64] {
        &self.abscissae
    }

    pub fn values(&self) -> &[Triple] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Nominal node spacing.
    pub fn spacing(&self) -> f64 {
        let n = self.abscissae.len() - 1;
        self.abscissae[n] / n as f64
    }

    pub fn final_abscissa(&self) -> f64 {
        *self.abscissae.last().expect("profile is non-empty")
    }

    pub fn final_state(&self) -> Triple {
        *self.values.last().expect("profile is non-empty")
    }

    /// The uniform grid this profile lives on.
    pub fn grid(&self) -> Result<GridSpec> {
        GridSpec::with_steps(self.spacing(), self.len() - 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &Triple)> + '_ {
        self.abscissae.iter().copied().zip(&self.values)
    }

    /// Largest magnitude over interior nodes of `P(P+1) f''' + f (f'')^(2-P)`,
    /// with f''' taken as the centred difference of f''.
    pub fn max_residual(&self, param: &ModelParameter) -> f64 {
        let exponent = 2.0 - param.p();
        (1..self.len() - 1)
            .map(|i| {
                let third = (self.values[i + 1][2] - self.values[i - 1][2])
                    / (self.abscissae[i + 1] - self.abscissae[i - 1]);
                let y = &self.values[i];
                (param.coefficient() * third + y[0] * y[2].powf(exponent)).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Outcome of a non-iterative solve.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformResult {
    pub param: ModelParameter,
    /// f*'(η*∞).
    pub starred_slope_at_infinity: f64,
    pub lambda: f64,
    /// f''(0).
    pub skin_friction: f64,
    pub starred: SolutionProfile,
    pub physical: SolutionProfile,
    /// η*∞ actually used.
    pub truncated_boundary: f64,
}

/// Measured defects of a [`TransformResult`]; thresholds are left to callers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantCheck {
    /// Relative error of `λ = s^(1/(1-δ))`.
    pub lambda_identity: f64,
    /// Relative error of `f''(0) = λ^(2δ-1)`.
    pub skin_friction_identity: f64,
    /// `|f''(0) · s^(3/(P+1)) - 1|`, which eliminates λ entirely.
    pub elimination_identity: f64,
    /// `|f(0)| + |f'(0)|` on the physical profile.
    pub wall_defect: f64,
    /// `|f'(η∞) - 1|` on the physical profile.
    pub far_field_defect: f64,
    /// See [`SolutionProfile::max_residual`], physical profile.
    pub max_residual: f64,
    /// Largest decrease of f*' between consecutive starred nodes.
    pub slope_decrease: f64,
    /// Largest increase of f*'' between consecutive starred nodes.
    pub curvature_increase: f64,
    /// Most negative curvature in either profile (0 if none).
    pub min_curvature: f64,
}

impl TransformResult {
    pub fn invariants(&self) -> InvariantCheck {
        let s = self.starred_slope_at_infinity;
        let p = self.param.p();
        let delta = self.param.delta();
        let rel = |a: f64, b: f64| ((a - b) / b).abs();
        let wall = self.physical.values()[0];
        let starred = self.starred.values();
        let slope_decrease = starred
            .windows(2)
            .map(|w| w[0][1] - w[1][1])
            .fold(0.0, f64::max);
        let curvature_increase = starred
            .windows(2)
            .map(|w| w[1][2] - w[0][2])
            .fold(0.0, f64::max);
        let min_curvature = starred
            .iter()
            .chain(self.physical.values())
            .map(|y| y[2])
            .fold(0.0, f64::min);
        InvariantCheck {
            lambda_identity: rel(self.lambda, s.powf(1.0 / (1.0 - delta))),
            skin_friction_identity: rel(self.skin_friction, self.lambda.powf(2.0 * delta - 1.0)),
            elimination_identity: (self.skin_friction * s.powf(3.0 / (p + 1.0)) - 1.0).abs(),
            wall_defect: wall[0].abs() + wall[1].abs(),
            far_field_defect: (self.physical.final_state()[1] - 1.0).abs(),
            max_residual: self.physical.max_residual(&self.param),
            slope_decrease,
            curvature_increase,
            min_curvature,
        }
    }
}

/// How the truncated boundary is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Boundary {
    Fixed(GridSpec),
    Auto(AutoBoundary),
}

/// Parameters of the plateau search in [`find_truncated_boundary`].
///
/// The default tolerance `1e-6` lands `P = 1` on η*∞ = 10. For `P < 1` the
/// curvature decays only algebraically, so small `P` may need a looser
/// tolerance or a fixed boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutoBoundary {
    pub step: f64,
    pub tol: f64,
    pub start: f64,
}

impl Default for AutoBoundary {
    fn default() -> Self {
        Self {
            step: DEFAULT_STEP,
            tol: 1e-6,
            start: 5.0,
        }
    }
}

/// Default integration step for `param`.
pub fn default_step(param: &ModelParameter) -> f64 {
    if param.p() <= 0.1 {
        SMALL_P_STEP
    } else {
        DEFAULT_STEP
    }
}

/// Default grid: the step from [`default_step`] up to η*∞ = 10.
pub fn default_grid(param: &ModelParameter) -> GridSpec {
    GridSpec::new(default_step(param), DEFAULT_TRUNCATED_BOUNDARY).expect("default grid is valid")
}

/// Integrates the starred problem with the order-8 scheme.
pub fn integrate_starred(param: &ModelParameter, grid: &GridSpec) -> Result<SolutionProfile> {
    let nodes = param.integrate_ivp(1.0, grid, &ButcherTableau::cooper_verner8())?;
    SolutionProfile::from_nodes(Frame::Starred, nodes)
}

/// Finds η*∞ by trial: the first `E` in `start, 2·start, 4·start, …` whose
/// slope f*'(E) changes by less than `tol` when the boundary is doubled to
/// `2E`. The integration never runs past `2¹⁰·start`.
///
/// A `tol` below the rounding floor of the slope cannot certify a plateau and
/// yields [`Error::NoPlateau`].
pub fn find_truncated_boundary(
    param: &ModelParameter,
    step: f64,
    tol: f64,
    start: f64,
) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if !(start >= 10.0 * step) {
        return Err(Error::InvalidArgument(format!(
            "start {start} must be at least ten steps of {step}"
        )));
    }
    let start_grid = GridSpec::new(step, start)?;
    let cap = start * f64::from(1u32 << MAX_DOUBLINGS);
    let grid = GridSpec::with_steps(step, start_grid.steps() << MAX_DOUBLINGS)?;
    let no_plateau = Error::NoPlateau { cap, tol };

    let mut next_check = start_grid.steps();
    let mut previous: Option<(usize, f64)> = None;
    let mut outcome = Err(no_plateau.clone());
    let mut index = 0usize;
    param.visit_ivp(1.0, &grid, &ButcherTableau::cooper_verner8(), |_, y| {
        let i = index;
        index += 1;
        if i != next_check {
            return ControlFlow::Continue(());
        }
        let slope = y[1];
        if let Some((prev_index, prev_slope)) = previous {
            if tol <= f64::EPSILON * slope.abs() {
                return ControlFlow::Break(());
            }
            if (slope - prev_slope).abs() < tol {
                outcome = Ok(grid.abscissa(prev_index));
                return ControlFlow::Break(());
            }
        }
        previous = Some((i, slope));
        next_check *= 2;
        ControlFlow::Continue(())
    })?;
    outcome
}

/// `λ = s^(1/(1-δ))`, written as `s^((2P-1)/(P+1))`.
pub fn recover_lambda(param: &ModelParameter, starred_slope: f64) -> Result<f64> {
    if !(starred_slope > 0.0 && starred_slope.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "starred slope must be positive, got {starred_slope}"
        )));
    }
    let p = param.p();
    Ok(starred_slope.powf((2.0 * p - 1.0) / (p + 1.0)))
}

/// Maps a starred profile to physical variables through the group with
/// parameter `lambda`. Node count is preserved; spacing becomes `λ^-δ·step`.
pub fn rescale_profile(
    starred: &SolutionProfile,
    param: &ModelParameter,
    lambda: f64,
) -> Result<SolutionProfile> {
    if starred.frame() != Frame::Starred {
        return Err(Error::InvalidArgument(
            "rescale_profile expects a starred profile".into(),
        ));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let delta = param.delta();
    let eta_scale = lambda.powf(-delta);
    let f_scale = 1.0 / lambda;
    let slope_scale = lambda.powf(delta - 1.0);
    let curvature_scale = lambda.powf(2.0 * delta - 1.0);
    let nodes = starred
        .iter()
        .map(|(eta, y)| {
            (
                eta_scale * eta,
                [f_scale * y[0], slope_scale * y[1], curvature_scale * y[2]].into(),
            )
        })
        .collect();
    SolutionProfile::from_nodes(Frame::Physical, nodes)
}

/// Solves the boundary-value problem by one starred integration and a rescaling.
pub fn solve(param: &ModelParameter, boundary: Boundary) -> Result<TransformResult> {
    let grid = match boundary {
        Boundary::Fixed(grid) => grid,
        Boundary::Auto(auto) => {
            let eta_inf = find_truncated_boundary(param, auto.step, auto.tol, auto.start)?;
            GridSpec::new(auto.step, eta_inf)?
        }
    };
    let starred = integrate_starred(param, &grid)?;
    let starred_slope_at_infinity = starred.final_state()[1];
    let lambda = recover_lambda(param, starred_slope_at_infinity)?;
    // f*''(0) = 1
    let skin_friction = lambda.powf(2.0 * param.delta() - 1.0);
    let physical = rescale_profile(&starred, param, lambda)?;
    Ok(TransformResult {
        param: *param,
        starred_slope_at_infinity,
        lambda,
        skin_friction,
        starred,
        physical,
        truncated_boundary: grid.endpoint(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn param(p: f64) -> ModelParameter {
        ModelParameter::new(p).unwrap()
    }

    fn two_node(frame: Frame, second: [f64; 3]) -> SolutionProfile {
        SolutionProfile::from_nodes(
            frame,
            vec![(0.0, [0.0, 0.0, 1.0].into()), (1.0, second.into())],
        )
        .unwrap()
    }

    #[test]
    fn lambda_examples() {
        assert_relative_eq!(
            recover_lambda(&param(1.0), 4.0).unwrap(),
            2.0,
            max_relative = 1e-15
        );
        // sqrt(2.08540) = 1.44409140984911339510607338647
        assert_relative_eq!(
            recover_lambda(&param(1.0), 2.08540).unwrap(),
            1.444_091_409_849_113_4,
            max_relative = 1e-14
        );
        // 2^(-0.4/1.3) = 0.807933072014572736647646780243
        assert_relative_eq!(
            recover_lambda(&param(0.3), 2.0).unwrap(),
            0.807_933_072_014_572_7,
            max_relative = 1e-14
        );
        assert!(recover_lambda(&param(1.0), 0.0).is_err());
        assert!(recover_lambda(&param(1.0), -1.0).is_err());
    }

    #[test]
    fn rescale_identity() {
        let starred = two_node(Frame::Starred, [2.0, 4.0, 8.0]);
        let physical = rescale_profile(&starred, &param(0.3), 1.0).unwrap();
        assert_eq!(physical.frame(), Frame::Physical);
        assert_eq!(physical.abscissae(), starred.abscissae());
        assert_eq!(physical.values(), starred.values());
    }

    #[test]
    fn rescale_blasius_node() {
        let starred = two_node(Frame::Starred, [2.0, 4.0, 8.0]);
        let physical = rescale_profile(&starred, &param(1.0), 2.0).unwrap();
        assert_eq!(physical.abscissae(), &[0.0, 2.0]);
        assert_eq!(physical.values()[1].into_inner(), [1.0, 1.0, 1.0]);
        assert_eq!(physical.values()[0].into_inner(), [0.0, 0.0, 0.125]);
    }

    #[test]
    fn rescale_rejects_bad_input() {
        let starred = two_node(Frame::Starred, [2.0, 4.0, 8.0]);
        assert!(rescale_profile(&starred, &param(1.0), 0.0).is_err());
        let physical = rescale_profile(&starred, &param(1.0), 2.0).unwrap();
        assert!(rescale_profile(&physical, &param(1.0), 2.0).is_err());
    }

    #[test]
    fn profile_validation() {
        let nodes = |a: f64, b: f64, c: f64| {
            vec![
                (0.0, [0.0, 0.0, 1.0].into()),
                (a, [1.0, 1.0, 0.5].into()),
                (b, [2.0, 1.5, c].into()),
            ]
        };
        assert!(SolutionProfile::from_nodes(Frame::Starred, nodes(1.0, 2.0, 0.1)).is_ok());
        assert!(SolutionProfile::from_nodes(Frame::Starred, nodes(1.0, 2.5, 0.1)).is_err());
        assert!(SolutionProfile::from_nodes(Frame::Starred, nodes(1.0, 2.0, -0.1)).is_err());
        let off_wall = vec![(0.0, [0.0, 0.0, 0.5].into()), (1.0, [1.0, 1.0, 0.5].into())];
        assert!(SolutionProfile::from_nodes(Frame::Starred, off_wall.clone()).is_err());
        assert!(SolutionProfile::from_nodes(Frame::Physical, off_wall).is_ok());
    }

    #[test]
    fn auto_boundary_validation() {
        assert!(find_truncated_boundary(&param(1.0), 0.001, 0.0, 5.0).is_err());
        assert!(find_truncated_boundary(&param(1.0), 0.001, 1e-8, 0.005).is_err());
    }

    #[test]
    fn default_steps() {
        assert_eq!(default_step(&param(0.05)), SMALL_P_STEP);
        assert_eq!(default_step(&param(0.1)), SMALL_P_STEP);
        assert_eq!(default_step(&param(0.2)), DEFAULT_STEP);
        assert_eq!(default_grid(&param(1.0)).steps(), 10_000);
    }
}
