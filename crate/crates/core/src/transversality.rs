//! DOT, COT and the residuals of the zero-COT and p-minimal graph equations.
//!
//! For a graph, DOT is `a = -2 / sqrt(D)` and COT is `r = v1(a) - a^2`, where
//! `v1 = (p, q) / sqrt(D)` acts on functions of `(x, y)`. Along a unit-speed
//! characteristic this makes `da/dt = a^2 + r` hold identically.
//!
//! The closed form that is often quoted for graph COT,
//!
//! ```text
//! [4pq(f_yy - f_xx) + 2(1 - 2f_xy) q^2 + 2(1 + 2f_xy) p^2] / D^2,
//! ```
//!
//! is the *negative* of `v1(a) - a^2`. It is available as [`cot_printed`];
//! [`cot`] is the sign that satisfies the Riccati equation. Both vanish on the
//! same set, so the zero-COT equation is unaffected.

use crate::surface::{transversality_data, Jet2, SurfaceGraph, TransversalityData};
use crate::{Error, Result, SINGULAR_EPS};

fn singular(td: &TransversalityData) -> Error {
    Error::SingularPoint { x: td.x, y: td.y, sqrt_d: td.sqrt_d() }
}

/// DOT `a = -2 / sqrt(D)`.
pub fn dot(td: &TransversalityData) -> Result<f64> {
    dot_with(td, SINGULAR_EPS)
}

pub fn dot_with(td: &TransversalityData, eps: f64) -> Result<f64> {
    let s = td.sqrt_d();
    if s < eps {
        return Err(singular(td));
    }
    Ok(-2.0 / s)
}

/// `|a|` for a level-set surface `{g = const}`, given the Euclidean
/// gradient of `g`: `|v0 g| / |grad_H g|` with `v0 = -dz`,
/// `u1 g = g_x - (y/2) g_z` and `u2 g = g_y + (x/2) g_z`.
pub fn dot_level_set<G>(grad: G, point: [f64; 3]) -> Result<f64>
where
    G: Fn([f64; 3]) -> [f64; 3],
{
    let [x, y, _] = point;
    let [gx, gy, gz] = grad(point);
    let u1 = gx - 0.5 * y * gz;
    let u2 = gy + 0.5 * x * gz;
    let horizontal = u1.hypot(u2);
    if horizontal < SINGULAR_EPS {
        return Err(Error::SingularPoint { x, y, sqrt_d: horizontal });
    }
    Ok(gz.abs() / horizontal)
}

/// COT at a jet, computed as `v1(a) - a^2` from the gradient of `a`.
pub fn cot_jet(jet: &Jet2) -> Result<f64> {
    cot_jet_with(jet, SINGULAR_EPS)
}

pub fn cot_jet_with(jet: &Jet2, eps: f64) -> Result<f64> {
    let td = transversality_data(jet);
    let a = dot_with(&td, eps)?;
    let (p, q, d) = (td.p, td.q, td.d);
    let [[px, py], [qx, qy]] = jet.pq_jacobian();
    // a = -2 D^{-1/2}  =>  grad a = D^{-3/2} grad D,  grad D = 2 (p grad p + q grad q)
    let dx = 2.0 * (p * px + q * qx);
    let dy = 2.0 * (p * py + q * qy);
    let s = d.sqrt();
    let d32 = d * s;
    let (ax, ay) = (dx / d32, dy / d32);
    let v1a = (p * ax + q * ay) / s;
    Ok(v1a - a * a)
}

pub fn cot(surface: &SurfaceGraph, x: f64, y: f64) -> Result<f64> {
    cot_jet(&surface.eval_jet(x, y)?)
}

/// The commonly printed closed form for graph COT (opposite sign to [`cot_jet`]).
pub fn cot_printed_jet(jet: &Jet2) -> Result<f64> {
    let td = transversality_data(jet);
    if td.sqrt_d() < SINGULAR_EPS {
        return Err(singular(&td));
    }
    let (p, q, d) = (td.p, td.q, td.d);
    let num = 4.0 * p * q * (jet.fyy - jet.fxx) + 2.0 * (1.0 - 2.0 * jet.fxy) * q * q;
    let num2 = 2.0 * p * p * (1.0 + 2.0 * jet.fxy);
    Ok(num / (d * d) + num2 / (d * d))
}

pub fn cot_printed(surface: &SurfaceGraph, x: f64, y: f64) -> Result<f64> {
    cot_printed_jet(&surface.eval_jet(x, y)?)
}

/// Left side of the zero-COT equation
/// `2pq(f_yy - f_xx) + (1 - 2f_xy) q^2 + (1 + 2f_xy) p^2`.
/// At regular points it equals `-(D^2 / 2) * cot`.
pub fn zcot_residual(jet: &Jet2) -> f64 {
    let (p, q) = (jet.p(), jet.q());
    2.0 * p * q * (jet.fyy - jet.fxx) + (1.0 - 2.0 * jet.fxy) * q * q + p * p * (1.0 + 2.0 * jet.fxy)
}

/// Left side of the p-minimal graph equation `p^2 f_xx + 2pq f_xy + q^2 f_yy`.
pub fn pminimal_residual(jet: &Jet2) -> f64 {
    let (p, q) = (jet.p(), jet.q());
    p * p * jet.fxx + 2.0 * p * q * jet.fxy + q * q * jet.fyy
}

/// `zcot_residual / D^2`; `NaN` at singular points. For heatmaps.
pub fn zcot_residual_normalized(jet: &Jet2) -> f64 {
    normalized(zcot_residual(jet), jet)
}

/// `pminimal_residual / D^2`; `NaN` at singular points.
pub fn pminimal_residual_normalized(jet: &Jet2) -> f64 {
    normalized(pminimal_residual(jet), jet)
}

fn normalized(v: f64, jet: &Jet2) -> f64 {
    let d = transversality_data(jet).d;
    if d.sqrt() < SINGULAR_EPS {
        f64::NAN
    } else {
        v / (d * d)
    }
}

/// `p, q, D` plus DOT and COT (both `None` at singular points).
pub fn evaluate(jet: &Jet2, eps: f64) -> TransversalityData {
    let mut td = transversality_data(jet);
    td.a = dot_with(&td, eps).ok();
    td.r = cot_jet_with(jet, eps).ok();
    td
}
