use std::fmt;
use std::sync::Arc;

use crate::surface::{default_fd_step, SurfaceGraph};
use crate::{Error, Result, SINGULAR_EPS};

/// Which ratio of `p = x - 2f_y` and `q = y + 2f_x` a field carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `g = q / p`
    G,
    /// `h = p / q`
    H,
}

impl Branch {
    fn tag(self) -> char {
        match self {
            Branch::G => 'g',
            Branch::H => 'h',
        }
    }
}

/// Which inviscid Burgers equation the field is expected to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// Zero-COT graphs: `g_y = g g_x`, `h_x = h h_y`.
    Backward,
    /// p-minimal graphs: `g_x = -g g_y`, `h_y = -h h_x`.
    Forward,
}

/// Default branch at a point: `G` when `|p| >= |q|`, `H` otherwise.
pub fn select_branch(p: f64, q: f64) -> Branch {
    if p.abs() >= q.abs() {
        Branch::G
    } else {
        Branch::H
    }
}

#[derive(Clone)]
enum Source {
    Surface(SurfaceGraph),
    Explicit(Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>),
}

/// Pointwise evaluator for `g` or `h` with finite-difference gradients.
#[derive(Clone)]
pub struct BurgersField {
    source: Source,
    pub branch: Branch,
    pub convention: Convention,
    /// Denominators below this make the branch undefined.
    pub eps: f64,
}

impl fmt::Debug for BurgersField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let src = match &self.source {
            Source::Surface(s) => s.provenance(),
            Source::Explicit(_) => "explicit".into(),
        };
        f.debug_struct("BurgersField")
            .field("source", &src)
            .field("branch", &self.branch)
            .field("convention", &self.convention)
            .finish()
    }
}

pub fn burgers_field(surface: &SurfaceGraph, branch: Branch, convention: Convention) -> BurgersField {
    BurgersField { source: Source::Surface(surface.clone()), branch, convention, eps: SINGULAR_EPS }
}

impl BurgersField {
    /// A field given directly as a function of `(x, y)`.
    pub fn from_fn<F>(branch: Branch, convention: Convention, field: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        BurgersField { source: Source::Explicit(Arc::new(field)), branch, convention, eps: SINGULAR_EPS }
    }

    pub fn value(&self, x: f64, y: f64) -> Result<f64> {
        match &self.source {
            Source::Explicit(f) => {
                let v = f(x, y);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::BranchUndefined { x, y, branch: self.branch.tag() })
                }
            }
            Source::Surface(s) => {
                let td = s.transversality_data(x, y)?;
                let (num, den) = match self.branch {
                    Branch::G => (td.q, td.p),
                    Branch::H => (td.p, td.q),
                };
                if den.abs() < self.eps {
                    return Err(Error::BranchUndefined { x, y, branch: self.branch.tag() });
                }
                Ok(num / den)
            }
        }
    }

    /// Central-difference gradient `(d/dx, d/dy)`.
    pub fn gradient(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        let h = 0.1 * default_fd_step(x, y);
        let gx = (self.value(x + h, y)? - self.value(x - h, y)?) / (2.0 * h);
        let gy = (self.value(x, y + h)? - self.value(x, y - h)?) / (2.0 * h);
        Ok((gx, gy))
    }
}

/// Residual of the field's Burgers equation at a point:
///
/// | branch | backward          | forward           |
/// |--------|-------------------|-------------------|
/// | G      | `g_y - g g_x`     | `g_x + g g_y`     |
/// | H      | `h_x - h h_y`     | `h_y + h h_x`     |
pub fn burgers_residual(field: &BurgersField, x: f64, y: f64) -> Result<f64> {
    let v = field.value(x, y)?;
    let (vx, vy) = field.gradient(x, y)?;
    Ok(match (field.branch, field.convention) {
        (Branch::G, Convention::Backward) => vy - v * vx,
        (Branch::G, Convention::Forward) => vx + v * vy,
        (Branch::H, Convention::Backward) => vx - v * vy,
        (Branch::H, Convention::Forward) => vy + v * vx,
    })
}

/// A line `point + t * direction`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub point: (f64, f64),
    pub direction: (f64, f64),
}

impl Line {
    pub fn at(&self, t: f64) -> (f64, f64) {
        (self.point.0 + t * self.direction.0, self.point.1 + t * self.direction.1)
    }

    /// `y = -h (x - a) + b`, the line used where `g` is infinite.
    pub fn h_branch(base: (f64, f64), h: f64) -> Self {
        Line { point: base, direction: (1.0, -h) }
    }

    /// Characteristic of the forward equation `g_x + g g_y = 0` through
    /// `base`: direction `(1, g)`.
    pub fn forward(base: (f64, f64), g: f64) -> Self {
        Line { point: base, direction: (1.0, g) }
    }
}

/// The line `x = -g (y - b) + a` through `(a, b)`, along which a backward
/// Burgers solution is constant.
pub fn characteristic_line(base: (f64, f64), g: f64) -> Line {
    Line { point: base, direction: (-g, 1.0) }
}

/// `max |v(sample) - v(base)|` over `n` equally spaced parameters in
/// `t_range` on `line`.
pub fn constancy_along_line(field: &BurgersField, line: &Line, t_range: (f64, f64), n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two samples along the line".into()));
    }
    let base = field.value(line.point.0, line.point.1)?;
    let (t0, t1) = t_range;
    let mut worst = 0.0f64;
    for i in 0..n {
        let t = t0 + (t1 - t0) * i as f64 / (n - 1) as f64;
        let (x, y) = line.at(t);
        worst = worst.max((field.value(x, y)? - base).abs());
    }
    Ok(worst)
}
