use crate::profile::ProfileFunction;
use crate::surface::{Domain, Jet2, SurfaceGraph, SurfaceKind};
use crate::{Error, Result};

/// Parameters of an entire zero-COT graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCotFamily {
    pub c1: f64,
    pub c2: f64,
    pub profile: ProfileFunction,
}

impl ZeroCotFamily {
    pub(crate) fn jet(&self, x: f64, y: f64) -> Jet2 {
        let (c1, c2) = (self.c1, self.c2);
        if c2 == 0.0 {
            // xy/2 + F(x)
            let fj = self.profile.eval(x);
            return Jet2 {
                x,
                y,
                f: 0.5 * x * y + fj.value,
                fx: 0.5 * y + fj.d1,
                fy: 0.5 * x,
                fxx: fj.d2,
                fxy: 0.5,
                fyy: 0.0,
            };
        }
        let fj = self.profile.eval(c1 * x - c2 * y);
        let k = c1 / c2;
        Jet2 {
            x,
            y,
            f: 0.5 * k * x * x - 0.5 * x * y + fj.value,
            fx: k * x - 0.5 * y + c1 * fj.d1,
            fy: -0.5 * x - c2 * fj.d1,
            fxx: k + c1 * c1 * fj.d2,
            fxy: -0.5 - c1 * c2 * fj.d2,
            fyy: c2 * c2 * fj.d2,
        }
    }
}

/// The zero-COT graph with constants `(c1, c2)` and profile `F`.
pub fn zero_cot_solution(c1: f64, c2: f64, profile: ProfileFunction) -> Result<SurfaceGraph> {
    if !(c1.is_finite() && c2.is_finite()) {
        return Err(Error::DegenerateParams(format!("non-finite constants c1={c1}, c2={c2}")));
    }
    if c1 == 0.0 && c2 == 0.0 {
        return Err(Error::DegenerateParams("c1 and c2 cannot both vanish".into()));
    }
    Ok(SurfaceGraph::new(
        SurfaceKind::ZeroCot(ZeroCotFamily { c1, c2, profile }),
        Domain::ENTIRE,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub enum BernsteinBranch {
    /// `f = a x + b y + c`
    Linear { a: f64, b: f64, c: f64 },
    /// Quadratic family along the direction `(a, b)`; see [`bernstein`].
    Quadratic { a: f64, b: f64, g: ProfileFunction },
}

/// Global p-minimal graphs.
///
/// The quadratic branch is the classical family
/// `u = -ab x^2 + (a^2 - b^2) xy + ab y^2 + g(-bx + ay)` for the
/// normalization `u = -2f`, with `(a, b)` rescaled to a unit vector:
///
/// ```text
/// f = -(1/2) (-ab x^2 + (a^2 - b^2) xy + ab y^2 + g(-bx + ay)),   a^2 + b^2 = 1.
/// ```
///
/// Without both adjustments the quadratic part does not solve the equation.
pub fn bernstein(branch: BernsteinBranch) -> Result<SurfaceGraph> {
    match branch {
        BernsteinBranch::Linear { a, b, c } => Ok(SurfaceGraph::plane(a, b, c)),
        BernsteinBranch::Quadratic { a, b, g } => {
            let n = a.hypot(b);
            if !(n > 0.0 && n.is_finite()) {
                return Err(Error::DegenerateParams(format!(
                    "quadratic Bernstein direction (a, b) = ({a}, {b}) must be nonzero"
                )));
            }
            Ok(SurfaceGraph::new(
                SurfaceKind::BernsteinQuadratic { a: a / n, b: b / n, g },
                Domain::ENTIRE,
            ))
        }
    }
}
