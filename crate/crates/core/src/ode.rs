//! Classical fourth-order Runge-Kutta steps.

/// One RK4 step for a planar autonomous system; the first failing stage's
/// error is returned.
pub(crate) fn rk4_step_2d<F, E>(field: F, pos: (f64, f64), h: f64) -> Result<(f64, f64), E>
where
    F: Fn(f64, f64) -> Result<(f64, f64), E>,
{
    let (x, y) = pos;
    let k1 = field(x, y)?;
    let k2 = field(x + 0.5 * h * k1.0, y + 0.5 * h * k1.1)?;
    let k3 = field(x + 0.5 * h * k2.0, y + 0.5 * h * k2.1)?;
    let k4 = field(x + h * k3.0, y + h * k3.1)?;
    Ok((
        x + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        y + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    ))
}

/// One RK4 step for a scalar non-autonomous equation `u' = f(t, u)`.
pub(crate) fn rk4_step<F>(f: F, t: f64, u: f64, h: f64) -> f64
where
    F: Fn(f64, f64) -> f64,
{
    let k1 = f(t, u);
    let k2 = f(t + 0.5 * h, u + 0.5 * h * k1);
    let k3 = f(t + 0.5 * h, u + 0.5 * h * k2);
    let k4 = f(t + h, u + h * k3);
    u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}
