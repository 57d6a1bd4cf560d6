use super::{Domain, Jet2};
use crate::{Error, Result};

/// `1e-4 * max(1, |x|, |y|)`.
pub fn default_fd_step(x: f64, y: f64) -> f64 {
    1e-4 * 1f64.max(x.abs()).max(y.abs())
}

/// Central-difference 2-jet on the 9-point stencil, with no domain
/// restriction beyond the field returning finite values.
pub fn finite_diff_jet<F>(field: F, x: f64, y: f64, h: f64) -> Result<Jet2>
where
    F: Fn(f64, f64) -> f64,
{
    finite_diff_jet_with(field, x, y, h, &Domain::ENTIRE)
}

/// Central-difference 2-jet; every stencil node must lie in `domain` and
/// produce a finite value.
pub fn finite_diff_jet_with<F>(field: F, x: f64, y: f64, h: f64, domain: &Domain) -> Result<Jet2>
where
    F: Fn(f64, f64) -> f64,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidArgument(format!("finite-difference step must be positive, got {h}")));
    }
    let stencil_err = || Error::StencilOutOfDomain { x, y, h };
    let mut s = [[0.0; 3]; 3];
    for (i, row) in s.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let (u, w) = (x + (i as f64 - 1.0) * h, y + (j as f64 - 1.0) * h);
            if !domain.contains(u, w) {
                return Err(stencil_err());
            }
            *v = field(u, w);
            if !v.is_finite() {
                return Err(stencil_err());
            }
        }
    }
    // s[i][j] = f(x + (i-1)h, y + (j-1)h)
    let c = s[1][1];
    let h2 = h * h;
    Ok(Jet2 {
        x,
        y,
        f: c,
        fx: (s[2][1] - s[0][1]) / (2.0 * h),
        fy: (s[1][2] - s[1][0]) / (2.0 * h),
        fxx: (s[2][1] - 2.0 * c + s[0][1]) / h2,
        fxy: (s[2][2] - s[2][0] - s[0][2] + s[0][0]) / (4.0 * h2),
        fyy: (s[1][2] - 2.0 * c + s[1][0]) / h2,
    })
}
