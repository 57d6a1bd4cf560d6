//! Rectangular sampling grids and per-node surface reports.

use serde::Serialize;

use crate::construct::BurgersField;
use crate::par;
use crate::surface::{Jet2, SurfaceGraph};
use crate::transversality::{evaluate, pminimal_residual, zcot_residual};
use crate::{Error, Result};

/// `nx * ny` nodes spanning `[x_min, x_max] x [y_min, y_max]`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Grid {
    pub fn square(lo: f64, hi: f64, n: usize) -> Self {
        Grid { x_min: lo, x_max: hi, y_min: lo, y_max: hi, nx: n, ny: n }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::InvalidArgument(format!("grid needs at least 2x2 nodes, got {}x{}", self.nx, self.ny)));
        }
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max].iter().all(|v| v.is_finite());
        if !finite || self.x_min >= self.x_max || self.y_min >= self.y_max {
            return Err(Error::InvalidArgument("grid bounds must be finite with min < max".into()));
        }
        Ok(())
    }

    pub fn spacing(&self) -> (f64, f64) {
        (
            (self.x_max - self.x_min) / (self.nx - 1) as f64,
            (self.y_max - self.y_min) / (self.ny - 1) as f64,
        )
    }

    /// Nodes in row-major order: `y` outer, `x` inner.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let (hx, hy) = self.spacing();
        let mut pts = Vec::with_capacity(self.nx * self.ny);
        for j in 0..self.ny {
            let y = if j + 1 == self.ny { self.y_max } else { self.y_min + j as f64 * hy };
            for i in 0..self.nx {
                let x = if i + 1 == self.nx { self.x_max } else { self.x_min + i as f64 * hx };
                pts.push((x, y));
            }
        }
        pts
    }
}

/// One row of the `eval` output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSample {
    pub x: f64,
    pub y: f64,
    pub f: f64,
    pub p: f64,
    pub q: f64,
    /// `-inf` at singular points.
    pub a: f64,
    /// `NaN` at singular points.
    pub r: f64,
    pub zcot_residual: f64,
    pub pminimal_residual: f64,
}

impl GridSample {
    pub fn from_jet(jet: &Jet2, eps: f64) -> Self {
        let td = evaluate(jet, eps);
        GridSample {
            x: jet.x,
            y: jet.y,
            f: jet.f,
            p: td.p,
            q: td.q,
            a: td.a.unwrap_or(f64::NEG_INFINITY),
            r: td.r.unwrap_or(f64::NAN),
            zcot_residual: zcot_residual(jet),
            pminimal_residual: pminimal_residual(jet),
        }
    }
}

/// One row of the `solve` output: the full jet plus both Burgers ratios.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolutionSample {
    pub x: f64,
    pub y: f64,
    pub f: f64,
    pub fx: f64,
    pub fy: f64,
    pub fxx: f64,
    pub fxy: f64,
    pub fyy: f64,
    /// `q / p`, `NaN` where `p` vanishes.
    pub g: f64,
    /// `p / q`, `NaN` where `q` vanishes.
    pub h: f64,
}

fn ratio(num: f64, den: f64, eps: f64) -> f64 {
    if den.abs() < eps { f64::NAN } else { num / den }
}

impl SolutionSample {
    pub fn from_jet(jet: &Jet2, eps: f64) -> Self {
        let (p, q) = (jet.p(), jet.q());
        SolutionSample {
            x: jet.x,
            y: jet.y,
            f: jet.f,
            fx: jet.fx,
            fy: jet.fy,
            fxx: jet.fxx,
            fxy: jet.fxy,
            fyy: jet.fyy,
            g: ratio(q, p, eps),
            h: ratio(p, q, eps),
        }
    }
}

fn collect<T>(rows: Vec<Result<T>>) -> Result<Vec<T>> {
    rows.into_iter().collect()
}

/// Samples every grid node; fails on the first node outside the domain.
pub fn sample_grid(surface: &SurfaceGraph, grid: &Grid, eps: f64) -> Result<Vec<GridSample>> {
    grid.validate()?;
    let pts = grid.points();
    collect(par::map(&pts, |&(x, y)| surface.eval_jet(x, y).map(|j| GridSample::from_jet(&j, eps))))
}

/// Sequential twin of [`sample_grid`].
pub fn sample_grid_seq(surface: &SurfaceGraph, grid: &Grid, eps: f64) -> Result<Vec<GridSample>> {
    grid.validate()?;
    let pts = grid.points();
    collect(par::map_seq(&pts, |&(x, y)| surface.eval_jet(x, y).map(|j| GridSample::from_jet(&j, eps))))
}

pub fn sample_solution(surface: &SurfaceGraph, grid: &Grid, eps: f64) -> Result<Vec<SolutionSample>> {
    grid.validate()?;
    let pts = grid.points();
    collect(par::map(&pts, |&(x, y)| surface.eval_jet(x, y).map(|j| SolutionSample::from_jet(&j, eps))))
}

/// Jets at every node (parallel).
pub fn jets(surface: &SurfaceGraph, grid: &Grid) -> Result<Vec<Jet2>> {
    grid.validate()?;
    let pts = grid.points();
    collect(par::map(&pts, |&(x, y)| surface.eval_jet(x, y)))
}

/// Applies `f` to every node's jet, skipping nodes where evaluation fails.
pub fn map_jets<U, F>(surface: &SurfaceGraph, grid: &Grid, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(&Jet2) -> U + Sync + Send,
{
    let pts = grid.points();
    par::map(&pts, |&(x, y)| surface.eval_jet(x, y).ok().map(|j| f(&j)))
        .into_iter()
        .flatten()
        .collect()
}

/// Values of a Burgers branch at every node where it is defined.
pub fn burgers_values(field: &BurgersField, grid: &Grid) -> Vec<((f64, f64), f64)> {
    let pts = grid.points();
    par::map(&pts, |&(x, y)| field.value(x, y).ok().map(|v| ((x, y), v)))
        .into_iter()
        .flatten()
        .collect()
}
