use serde::Serialize;

use crate::ode::rk4_step;
use crate::{Error, Result};

/// `|a|` beyond which the numerical solution is declared blown up.
pub const BLOWUP_CUTOFF: f64 = 1e8;

/// Steps are limited to `STIFFNESS / |a|` so the approach to a pole is
/// resolved geometrically.
const STIFFNESS: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CotSign {
    Positive,
    Zero,
    Negative,
}

/// Solution of `c' = c^2 + k` with `c(0) = a0` for constant `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiccatiBound {
    pub k: f64,
    pub a0: f64,
    pub case: CotSign,
    /// First positive time where the denominator vanishes.
    pub blowup_t: Option<f64>,
    /// Last negative time where the denominator vanishes.
    pub backward_blowup_t: Option<f64>,
}

/// `cot^{-1}` with range `(0, pi)`.
fn acot(z: f64) -> f64 {
    std::f64::consts::FRAC_PI_2 - z.atan()
}

/// `coth^{-1}` for `|z| > 1`.
fn acoth(z: f64) -> f64 {
    0.5 * ((z + 1.0) / (z - 1.0)).ln()
}

impl RiccatiBound {
    pub fn new(a0: f64, k: f64) -> Self {
        let case = if k > 0.0 {
            CotSign::Positive
        } else if k < 0.0 {
            CotSign::Negative
        } else {
            CotSign::Zero
        };
        let (blowup_t, backward_blowup_t) = match case {
            CotSign::Positive => {
                let s = k.sqrt();
                let base = acot(a0 / s) / s;
                (Some(base), Some(base - std::f64::consts::PI / s))
            }
            CotSign::Zero => {
                if a0 > 0.0 {
                    (Some(1.0 / a0), None)
                } else if a0 < 0.0 {
                    (None, Some(1.0 / a0))
                } else {
                    (None, None)
                }
            }
            CotSign::Negative => {
                let m = (-k).sqrt();
                if a0 > m {
                    (Some(acoth(a0 / m) / m), None)
                } else if a0 < -m {
                    (None, Some(acoth(a0 / m) / m))
                } else {
                    (None, None)
                }
            }
        };
        RiccatiBound { k, a0, case, blowup_t, backward_blowup_t }
    }

    /// The three-case closed form, valid strictly between the backward and
    /// forward blow-up times.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if let Some(b) = self.blowup_t {
            if t >= b {
                return Err(Error::BeyondBlowup { t, blowup: b });
            }
        }
        if let Some(b) = self.backward_blowup_t {
            if t <= b {
                return Err(Error::BeyondBlowup { t, blowup: b });
            }
        }
        if t == 0.0 {
            return Ok(self.a0);
        }
        let a0 = self.a0;
        Ok(match self.case {
            CotSign::Positive => {
                let s = self.k.sqrt();
                let (sn, cs) = (t * s).sin_cos();
                s * (cs * a0 + s * sn) / (-sn * a0 + s * cs)
            }
            CotSign::Zero => a0 / (1.0 - a0 * t),
            CotSign::Negative => {
                let m = (-self.k).sqrt();
                let (sh, ch) = ((t * m).sinh(), (t * m).cosh());
                m * (ch * a0 - m * sh) / (-sh * a0 + m * ch)
            }
        })
    }
}

pub fn riccati_closed_form(a0: f64, k: f64, t: f64) -> Result<f64> {
    RiccatiBound::new(a0, k).eval(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RiccatiOutcome {
    Completed,
    /// `|a|` exceeded [`BLOWUP_CUTOFF`]; `t_star` extrapolates `-1/a` to zero.
    BlowUp { t_star: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RiccatiSolution {
    pub points: Vec<(f64, f64)>,
    pub outcome: RiccatiOutcome,
}

impl RiccatiSolution {
    /// Piecewise-linear interpolation of the solution at `t`.
    pub fn at(&self, t: f64) -> Option<f64> {
        let pts = &self.points;
        let fwd = pts.len() < 2 || pts[1].0 >= pts[0].0;
        let i = pts.partition_point(|&(s, _)| if fwd { s < t } else { s > t });
        if i < pts.len() && pts[i].0 == t {
            return Some(pts[i].1);
        }
        if i == 0 || i >= pts.len() {
            return None;
        }
        let (t0, a0) = pts[i - 1];
        let (t1, a1) = pts[i];
        Some(a0 + (a1 - a0) * (t - t0) / (t1 - t0))
    }
}

/// Solves `a' = a^2 + r(t)` from `t_span.0` to `t_span.1` (either direction)
/// with RK4, shortening steps as `|a|` grows.
pub fn riccati_integrate<R>(a0: f64, r_of_t: R, t_span: (f64, f64), step: f64) -> Result<RiccatiSolution>
where
    R: Fn(f64) -> f64,
{
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {step}")));
    }
    let (t0, t1) = t_span;
    let sign = if t1 >= t0 { 1.0 } else { -1.0 };
    let rhs = |t: f64, a: f64| a * a + r_of_t(t);
    let mut points = vec![(t0, a0)];
    let (mut t, mut a) = (t0, a0);
    let tail = 1e-12 * (t1 - t0).abs().max(1.0);
    loop {
        let remaining = (t1 - t).abs();
        if remaining <= tail {
            return Ok(RiccatiSolution { points, outcome: RiccatiOutcome::Completed });
        }
        let h = step.min(remaining).min(STIFFNESS / a.abs().max(f64::MIN_POSITIVE));
        a = rk4_step(rhs, t, a, sign * h);
        t += sign * h;
        points.push((t, a));
        if !(a.abs() <= BLOWUP_CUTOFF) {
            let t_star = extrapolate_pole(&points);
            return Ok(RiccatiSolution { points, outcome: RiccatiOutcome::BlowUp { t_star } });
        }
    }
}

/// Zero of the line through the last two `(t, -1/a)` points.
fn extrapolate_pole(points: &[(f64, f64)]) -> f64 {
    let n = points.len();
    let (t1, a1) = points[n - 1];
    if n < 2 || !a1.is_finite() {
        return t1;
    }
    let (t0, a0) = points[n - 2];
    let (w0, w1) = (-1.0 / a0, -1.0 / a1);
    if w1 == w0 {
        return t1;
    }
    t1 - w1 * (t1 - t0) / (w1 - w0)
}
