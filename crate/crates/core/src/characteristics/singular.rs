use serde::Serialize;

use super::comparison::Sense;
use super::riccati::RiccatiBound;
use super::trace::{CharacteristicTrace, Termination};
use crate::grid::Grid;
use crate::par;
use crate::surface::{transversality_data, SurfaceGraph};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SingularConclusion {
    NoSingular,
    AtMostOne,
    /// Upper bound on the first forward singular time.
    ForwardBound(f64),
    /// Bound on the first backward singular time.
    BackwardBound(f64),
    /// Two singular points, joined by a characteristic of length at most the value.
    TwoSingularWithLengthBound(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularVerdict {
    pub conclusions: Vec<SingularConclusion>,
}

impl SingularVerdict {
    pub fn contains(&self, c: &SingularConclusion) -> bool {
        self.conclusions.contains(c)
    }
}

/// Conclusions about singular points along a characteristic with initial DOT
/// `a0`, given `r <= k` (`Upper`) or `r >= k` (`Lower`) along the whole curve.
/// For `Upper` with `k <= 0`, `|a0| < sqrt(-k)` rules singular points out;
/// the boundary `|a0| = sqrt(-k)` is reported as `AtMostOne`.
pub fn singular_verdict(a0: f64, k: f64, sense: Sense) -> SingularVerdict {
    let mut conclusions = Vec::new();
    match sense {
        Sense::Upper => {
            if k <= 0.0 {
                if a0.abs() < (-k).sqrt() {
                    conclusions.push(SingularConclusion::NoSingular);
                } else {
                    conclusions.push(SingularConclusion::AtMostOne);
                }
            }
        }
        Sense::Lower => {
            let b = RiccatiBound::new(a0, k);
            if let Some(t) = b.blowup_t {
                conclusions.push(SingularConclusion::ForwardBound(t));
            }
            if let Some(t) = b.backward_blowup_t {
                conclusions.push(SingularConclusion::BackwardBound(t));
            }
            if k > 0.0 {
                conclusions.push(SingularConclusion::TwoSingularWithLengthBound(std::f64::consts::PI / k.sqrt()));
            }
        }
    }
    SingularVerdict { conclusions }
}

const FIT_SAMPLES: usize = 4;

/// Extrapolated singular time of a trace that ended near a singular point,
/// from a least-squares line through the last few `(t, -1/a)`.
pub fn detect_blowup(trace: &CharacteristicTrace) -> Result<f64> {
    if trace.termination != Termination::SingularApproach {
        return Err(Error::NotApplicable(format!(
            "trace terminated with {:?}, not a singular approach",
            trace.termination
        )));
    }
    let n = trace.samples.len();
    let tail = &trace.samples[n.saturating_sub(FIT_SAMPLES)..];
    if tail.len() < 2 {
        return Ok(trace.last().t);
    }
    let m = tail.len() as f64;
    let (st, sw) = tail.iter().fold((0.0, 0.0), |(st, sw), s| (st + s.t, sw + (-1.0 / s.a)));
    let (tm, wm) = (st / m, sw / m);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for s in tail {
        let dt = s.t - tm;
        sxy += dt * (-1.0 / s.a - wm);
        sxx += dt * dt;
    }
    if sxx == 0.0 || sxy == 0.0 {
        return Ok(trace.last().t);
    }
    let slope = sxy / sxx;
    Ok(tm - wm / slope)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularPoint {
    pub x: f64,
    pub y: f64,
    pub sqrt_d: f64,
    /// No other singular point was found within the scan's refinement radius.
    pub isolated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularScan {
    pub points: Vec<SingularPoint>,
    /// Probe radius used for the non-isolation check.
    pub radius: f64,
}

const REFINE_ITERS: usize = 50;
const PROBES: usize = 8;

/// Drives `(p, q)` to zero from `start`: Newton where the Jacobian is
/// well conditioned, a minimum-norm rank-one step where it is not.
fn refine(surface: &SurfaceGraph, start: (f64, f64), eps: f64, max_step: f64) -> Option<(f64, f64, f64)> {
    let (mut x, mut y) = start;
    for _ in 0..REFINE_ITERS {
        let jet = surface.eval_jet(x, y).ok()?;
        let td = transversality_data(&jet);
        let s = td.sqrt_d();
        if s < eps {
            return Some((x, y, s));
        }
        let [[a, b], [c, d]] = jet.pq_jacobian();
        let norm2 = a * a + b * b + c * c + d * d;
        if norm2 == 0.0 {
            return None;
        }
        let det = a * d - b * c;
        let (dx, dy) = if det.abs() > 1e-8 * norm2 {
            ((-d * td.p + b * td.q) / det, (c * td.p - a * td.q) / det)
        } else {
            (-(a * td.p + c * td.q) / norm2, -(b * td.p + d * td.q) / norm2)
        };
        let len = dx.hypot(dy);
        let scale = if len > max_step { max_step / len } else { 1.0 };
        x += scale * dx;
        y += scale * dy;
    }
    None
}

/// Finds singular points in the grid's rectangle and checks each for
/// singular neighbours.
pub fn singular_set_scan(surface: &SurfaceGraph, grid: &Grid, eps: f64) -> Result<SingularScan> {
    grid.validate()?;
    let (hx, hy) = grid.spacing();
    let diag = hx.hypot(hy);
    let radius = hx.max(hy);
    let max_step = 2.0 * diag;

    let candidates: Vec<(f64, f64)> = par::map(&grid.points(), |&(x, y)| {
        let jet = surface.eval_jet(x, y).ok()?;
        let [[a, b], [c, d]] = jet.pq_jacobian();
        let bound = (a * a + b * b + c * c + d * d).sqrt() * diag * 1.1 + eps;
        (transversality_data(&jet).sqrt_d() <= bound).then_some((x, y))
    })
    .into_iter()
    .flatten()
    .collect();

    let inside = |x: f64, y: f64| x >= grid.x_min && x <= grid.x_max && y >= grid.y_min && y <= grid.y_max;
    let refined = par::map(&candidates, |&c| refine(surface, c, eps, max_step));
    let merge = 0.25 * hx.min(hy);
    let mut found: Vec<(f64, f64, f64)> = Vec::new();
    for (x, y, s) in refined.into_iter().flatten() {
        if inside(x, y) && !found.iter().any(|&(u, v, _)| (u - x).hypot(v - y) < merge) {
            found.push((x, y, s));
        }
    }

    let points = par::map(&found, |&(x, y, sqrt_d)| {
        let neighbour = (0..PROBES).any(|i| {
            let th = std::f64::consts::TAU * i as f64 / PROBES as f64;
            let start = (x + radius * th.cos(), y + radius * th.sin());
            match refine(surface, start, eps, max_step) {
                Some((u, v, _)) => {
                    let dist = (u - x).hypot(v - y);
                    dist > 0.25 * radius && dist <= 2.0 * radius
                }
                None => false,
            }
        });
        SingularPoint { x, y, sqrt_d, isolated: !neighbour }
    });
    Ok(SingularScan { points, radius })
}
