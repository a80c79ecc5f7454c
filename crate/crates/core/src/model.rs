//! The extended Blasius equation for power-law fluids,
//!
//! ```text
//! P(P+1) f''' + f (f'')^(2-P) = 0,   f(0) = f'(0) = 0,   f'(∞) = 1,
//! ```
//!
//! together with its scaling exponent and the Pohlhausen estimate of f''(0).
//!
//! The equation and the two wall conditions are invariant under
//! `f* = λ f, η* = λ^δ η` exactly when `δ = (P - 2)/(2P - 1)`.

use crate::error::{Error, Result};
use std::ops::ControlFlow;

use crate::rk::{for_each_node, ButcherTableau, GridSpec, StateVector};

/// `(f, f', f'')`.
pub type Triple = StateVector<3>;

/// Curvatures in `[-CURVATURE_CLAMP, 0)` are rounding noise and read as zero.
pub const CURVATURE_CLAMP: f64 = 1e-12;

/// Upper end of the accepted range of the power-law index.
pub const LAMINAR_LIMIT: f64 = 2.0;

/// Power-law index `P` with its scaling exponent `δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParameter {
    p: f64,
    delta: f64,
}

impl ModelParameter {
    /// Accepts `0 < P < 2` with `P ≠ 1/2`.
    pub fn new(p: f64) -> Result<Self> {
        check_index(p)?;
        if p == 0.5 {
            return Err(Error::SingularScalingExponent { p });
        }
        Ok(Self {
            p,
            delta: (p - 2.0) / (2.0 * p - 1.0),
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Scaling exponent δ of the invariance group.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `P(P+1)`, the coefficient of f'''.
    pub fn coefficient(&self) -> f64 {
        self.p * (self.p + 1.0)
    }

    /// True when f'' reaches zero at a finite η (sublinear power, `P > 1`).
    /// Past that point the solution continues with `f'' ≡ 0`.
    pub fn has_finite_extinction(&self) -> bool {
        self.p > 1.0
    }

    /// First-order form `(f', f'', -f (f'')^(2-P) / (P(P+1)))`.
    ///
    /// Curvatures in `[-1e-12, 0)` are clamped to zero; anything more
    /// negative is an error since the power is fractional.
    pub fn rhs(&self, y: &Triple) -> Result<Triple> {
        let curvature = y[2];
        if curvature < -CURVATURE_CLAMP {
            return Err(Error::NegativeCurvature { value: curvature });
        }
        Ok(self.rhs_unchecked(y[0], y[1], curvature.max(0.0)))
    }

    /// Right-hand side on the physical branch past extinction: the power is
    /// applied to the positive part of f''.
    pub fn rhs_positive_part(&self, y: &Triple) -> Triple {
        self.rhs_unchecked(y[0], y[1], y[2].max(0.0))
    }

    fn rhs_unchecked(&self, f: f64, slope: f64, curvature: f64) -> Triple {
        let third = -f * curvature.powf(2.0 - self.p) / self.coefficient();
        [slope, curvature, third].into()
    }

    /// Integrates the initial-value problem `f(0) = f'(0) = 0, f''(0) = wall_curvature`
    /// over `grid`.
    ///
    /// For `P ≤ 1` a curvature below `-1e-12` at any stage or node is a
    /// [`Error::CurvatureSignLoss`]; smaller negative values at nodes are
    /// zeroed. For `P > 1` the positive-part right-hand side is used and
    /// negative node curvatures (overshoot past extinction) are projected to
    /// zero.
    pub fn integrate_ivp(
        &self,
        wall_curvature: f64,
        grid: &GridSpec,
        tableau: &ButcherTableau,
    ) -> Result<Vec<(f64, Triple)>> {
        let mut nodes = Vec::with_capacity(grid.node_count());
        self.visit_ivp(wall_curvature, grid, tableau, |eta, y| {
            nodes.push((eta, *y));
            ControlFlow::Continue(())
        })?;
        Ok(nodes)
    }

    /// Streaming form of [`integrate_ivp`](Self::integrate_ivp).
    pub fn visit_ivp<V>(
        &self,
        wall_curvature: f64,
        grid: &GridSpec,
        tableau: &ButcherTableau,
        visit: V,
    ) -> Result<()>
    where
        V: FnMut(f64, &Triple) -> ControlFlow<()>,
    {
        let y0 = Triple::new([0.0, 0.0, wall_curvature])?;
        let extinct = self.has_finite_extinction();
        let rhs = |eta: f64, y: &Triple| {
            if extinct {
                Ok(self.rhs_positive_part(y))
            } else {
                self.rhs(y).map_err(|e| match e {
                    Error::NegativeCurvature { value } => Error::CurvatureSignLoss { eta, value },
                    other => other,
                })
            }
        };
        let project = |eta: f64, y: &mut Triple| {
            let [f, slope, curvature] = y.into_inner();
            if curvature < 0.0 {
                if !extinct && curvature < -CURVATURE_CLAMP {
                    return Err(Error::CurvatureSignLoss {
                        eta,
                        value: curvature,
                    });
                }
                *y = [f, slope, 0.0].into();
            }
            Ok(())
        };
        for_each_node(rhs, tableau, grid, y0, project, visit)
    }
}

fn check_index(p: f64) -> Result<()> {
    if p.is_nan() {
        return Err(Error::InvalidArgument("power-law index is NaN".into()));
    }
    if p <= 0.0 {
        return Err(Error::NonpositiveIndex { p });
    }
    if p >= LAMINAR_LIMIT {
        return Err(Error::OutsideLaminarRange { p });
    }
    Ok(())
}

/// Pohlhausen momentum-integral estimate of f''(0),
/// `[(39/280)(1.5/(P+1))]^(P²/(P+1))`.
///
/// Defined for `0 < P < 2`, including `P = 1/2`.
pub fn pohlhausen_skin_friction(p: f64) -> Result<f64> {
    check_index(p)?;
    let base = 39.0 / 280.0 * (1.5 / (p + 1.0));
    Ok(base.powf(p * p / (p + 1.0)))
}
