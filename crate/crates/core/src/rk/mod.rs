//! Fixed-step explicit Runge–Kutta integration.
//!
//! The integrator works on small fixed-length states and a uniform grid whose
//! abscissae are computed as `i * step`, so that long runs (10⁴–10⁵ steps) do
//! not accumulate drift in the independent variable.

mod tableau;

use std::ops::{ControlFlow, Index};

pub use tableau::ButcherTableau;

use crate::error::{Error, Result};

/// Magnitude beyond which an integration is considered divergent.
pub const STATE_BLOW_UP: f64 = 1e12;

/// Smallest number of steps a grid may have.
const MIN_STEPS: f64 = 10.0;

/// Fixed-length state of a first-order system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector<const N: usize>([f64; N]);

impl<const N: usize> StateVector<N> {
    /// Builds a state, rejecting non-finite components.
    pub fn new(components: [f64; N]) -> Result<Self> {
        if components.iter().all(|x| x.is_finite()) {
            Ok(Self(components))
        } else {
            Err(Error::InvalidState(format!(
                "non-finite component in {components:?}"
            )))
        }
    }

    pub fn components(&self) -> &[f64; N] {
        &self.0
    }

    pub fn into_inner(self) -> [f64; N] {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `self + scale * other`, component-wise.
    fn add_scaled(&self, scale: f64, other: &[f64; N]) -> Self {
        let mut out = self.0;
        for (o, d) in out.iter_mut().zip(other) {
            *o += scale * d;
        }
        Self(out)
    }
}

impl<const N: usize> From<[f64; N]> for StateVector<N> {
    fn from(components: [f64; N]) -> Self {
        Self(components)
    }
}

impl<const N: usize> Index<usize> for StateVector<N> {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Uniform grid `0, step, 2·step, …, endpoint`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    step: f64,
    endpoint: f64,
    steps: usize,
}

impl GridSpec {
    pub fn new(step: f64, endpoint: f64) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "step must be positive, got {step}"
            )));
        }
        if !(endpoint.is_finite() && endpoint > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "endpoint must be positive, got {endpoint}"
            )));
        }
        let ratio = endpoint / step;
        if ratio < MIN_STEPS {
            return Err(Error::InvalidGrid(format!(
                "endpoint/step = {ratio} is below {MIN_STEPS}"
            )));
        }
        let steps = ratio.round();
        if (ratio - steps).abs() > 1e-12 * ratio {
            return Err(Error::InvalidGrid(format!(
                "endpoint {endpoint} is not an integer multiple of step {step}"
            )));
        }
        Ok(Self {
            step,
            endpoint,
            steps: steps as usize,
        })
    }

    /// Grid with `steps` intervals of width `step`.
    pub fn with_steps(step: f64, steps: usize) -> Result<Self> {
        Self::new(step, step * steps as f64)
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn endpoint(&self) -> f64 {
        self.endpoint
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn node_count(&self) -> usize {
        self.steps + 1
    }

    /// Abscissa of node `i`; the last node is the endpoint itself.
    pub fn abscissa(&self, i: usize) -> f64 {
        if i == self.steps {
            self.endpoint
        } else {
            i as f64 * self.step
        }
    }
}

/// Advances `y` from `t` by one step of size `h`.
pub fn single_step<const N: usize, F>(
    rhs: &mut F,
    tableau: &ButcherTableau,
    t: f64,
    y: &StateVector<N>,
    h: f64,
) -> Result<StateVector<N>>
where
    F: FnMut(f64, &StateVector<N>) -> Result<StateVector<N>>,
{
    let mut stages = Vec::with_capacity(tableau.stage_count());
    step_with_buffer(rhs, tableau, t, y, h, &mut stages)
}

fn step_with_buffer<const N: usize, F>(
    rhs: &mut F,
    tableau: &ButcherTableau,
    t: f64,
    y: &StateVector<N>,
    h: f64,
    stages: &mut Vec<[f64; N]>,
) -> Result<StateVector<N>>
where
    F: FnMut(f64, &StateVector<N>) -> Result<StateVector<N>>,
{
    if !(h > 0.0) {
        return Err(Error::InvalidGrid(format!(
            "step must be positive, got {h}"
        )));
    }
    stages.clear();
    for (i, &node) in tableau.nodes().iter().enumerate() {
        let row = tableau.coupling_row(i);
        let mut stage_state = *y;
        for (k, &a) in stages.iter().zip(row) {
            if a != 0.0 {
                stage_state = stage_state.add_scaled(h * a, k);
            }
        }
        let stage_t = t + node * h;
        let k = rhs(stage_t, &stage_state)?;
        if !k.is_finite() {
            return Err(Error::RhsBlowUp {
                t: stage_t,
                stage: i,
            });
        }
        stages.push(k.0);
    }
    let mut out = *y;
    for (k, &b) in stages.iter().zip(tableau.weights()) {
        if b != 0.0 {
            out = out.add_scaled(h * b, k);
        }
    }
    Ok(out)
}

/// Integrates over `grid` and returns every node, starting with `(0, y0)`.
pub fn integrate<const N: usize, F>(
    rhs: F,
    tableau: &ButcherTableau,
    grid: &GridSpec,
    y0: StateVector<N>,
) -> Result<Vec<(f64, StateVector<N>)>>
where
    F: FnMut(f64, &StateVector<N>) -> Result<StateVector<N>>,
{
    integrate_projected(rhs, tableau, grid, y0, |_, _| Ok(()))
}

/// Like [`integrate`], but applies `project` to every new node before it is
/// stored and used as the start of the next step.
pub fn integrate_projected<const N: usize, F, P>(
    rhs: F,
    tableau: &ButcherTableau,
    grid: &GridSpec,
    y0: StateVector<N>,
    project: P,
) -> Result<Vec<(f64, StateVector<N>)>>
where
    F: FnMut(f64, &StateVector<N>) -> Result<StateVector<N>>,
    P: FnMut(f64, &mut StateVector<N>) -> Result<()>,
{
    let mut samples = Vec::with_capacity(grid.node_count());
    for_each_node(rhs, tableau, grid, y0, project, |t, y| {
        samples.push((t, *y));
        ControlFlow::Continue(())
    })?;
    Ok(samples)
}

/// Streams the nodes of a projected integration to `visit` without storing
/// them. Integration stops early when `visit` breaks.
pub fn for_each_node<const N: usize, F, P, V>(
    mut rhs: F,
    tableau: &ButcherTableau,
    grid: &GridSpec,
    y0: StateVector<N>,
    mut project: P,
    mut visit: V,
) -> Result<()>
where
    F: FnMut(f64, &StateVector<N>) -> Result<StateVector<N>>,
    P: FnMut(f64, &mut StateVector<N>) -> Result<()>,
    V: FnMut(f64, &StateVector<N>) -> ControlFlow<()>,
{
    if !y0.is_finite() {
        return Err(Error::InvalidState(format!(
            "initial state {y0:?} is not finite"
        )));
    }
    if visit(0.0, &y0).is_break() {
        return Ok(());
    }
    let mut stages = Vec::with_capacity(tableau.stage_count());
    let mut y = y0;
    for i in 0..grid.steps() {
        let t = grid.abscissa(i);
        let t_next = grid.abscissa(i + 1);
        y = step_with_buffer(&mut rhs, tableau, t, &y, t_next - t, &mut stages)?;
        if !y.is_finite() || y.max_abs() > STATE_BLOW_UP {
            return Err(Error::StateBlowUp { t: t_next });
        }
        project(t_next, &mut y)?;
        if visit(t_next, &y).is_break() {
            break;
        }
    }
    Ok(())
}
