use std::io;

use serde::Serialize;

use crate::ode::rk4_step_2d;
use crate::par;
use crate::surface::{transversality_data, SurfaceGraph};
use crate::transversality::cot_jet_with;
use crate::{Error, Result, SINGULAR_EPS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Backward => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Termination {
    MaxTime,
    SingularApproach,
    OutOfDomain,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceSample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub a: f64,
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicTrace {
    pub samples: Vec<TraceSample>,
    /// Nominal step; steps are shortened near singular points.
    pub step: f64,
    pub direction: Direction,
    pub termination: Termination,
}

impl CharacteristicTrace {
    pub fn last(&self) -> &TraceSample {
        self.samples.last().expect("a trace always holds its start sample")
    }

    /// Writes `t,x,y,a,r` CSV.
    pub fn write_csv<W: io::Write>(&self, w: W) -> Result<()> {
        crate::export::write_trace_csv(self, w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceOptions {
    pub direction: Direction,
    pub step: f64,
    /// Trace stops once `|t|` reaches this.
    pub max_t: f64,
    /// Trace stops once `sqrt(D)` drops below this.
    pub approach_eps: f64,
    /// Steps are halved until `step <= shrink * sqrt(D)`.
    pub shrink: f64,
}

impl TraceOptions {
    pub fn new(direction: Direction, step: f64, max_t: f64) -> Self {
        TraceOptions { direction, step, max_t, approach_eps: SINGULAR_EPS, shrink: 0.25 }
    }

    pub fn forward(step: f64, max_t: f64) -> Self {
        Self::new(Direction::Forward, step, max_t)
    }

    pub fn backward(step: f64, max_t: f64) -> Self {
        Self::new(Direction::Backward, step, max_t)
    }
}

enum Stop {
    Domain,
    Singular,
}

const MAX_SAMPLES: usize = 50_000_000;
const MAX_RETRIES: usize = 60;

/// Integrates `(x', y') = (p, q) / sqrt(D)` from `start` with RK4, recording
/// DOT and COT at every accepted step.
pub fn trace(surface: &SurfaceGraph, start: (f64, f64), opts: &TraceOptions) -> Result<CharacteristicTrace> {
    if !(opts.step > 0.0 && opts.step.is_finite()) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {}", opts.step)));
    }
    if !(opts.max_t > 0.0) {
        return Err(Error::InvalidArgument(format!("max_t must be positive, got {}", opts.max_t)));
    }
    let sign = opts.direction.sign();
    let velocity = |x: f64, y: f64| -> std::result::Result<(f64, f64), Stop> {
        let td = surface.transversality_data(x, y).map_err(|_| Stop::Domain)?;
        let s = td.sqrt_d();
        if !(s > 0.0) {
            return Err(Stop::Singular);
        }
        Ok((td.p / s, td.q / s))
    };

    let jet = surface.eval_jet(start.0, start.1)?;
    let td = transversality_data(&jet);
    let mut sqrt_d = td.sqrt_d();
    if sqrt_d < opts.approach_eps {
        return Err(Error::StartSingular { x: start.0, y: start.1 });
    }
    let sample = |t: f64, jet: &crate::Jet2, s: f64| TraceSample {
        t,
        x: jet.x,
        y: jet.y,
        a: -2.0 / s,
        r: cot_jet_with(jet, 0.0).unwrap_or(f64::NAN),
    };
    let mut samples = vec![sample(0.0, &jet, sqrt_d)];
    let (mut t, mut pos) = (0.0f64, start);
    let tail = 1e-12 * opts.max_t.max(1.0);

    let termination = loop {
        let remaining = opts.max_t - t.abs();
        if remaining <= tail || samples.len() >= MAX_SAMPLES {
            break Termination::MaxTime;
        }
        let mut h = opts.step.min(remaining);
        while h > opts.shrink * sqrt_d {
            h *= 0.5;
        }
        let mut retries = 0;
        let next = loop {
            match rk4_step_2d(velocity, pos, sign * h) {
                Ok(p) => break Ok(p),
                Err(Stop::Domain) => break Err(Termination::OutOfDomain),
                Err(Stop::Singular) if retries < MAX_RETRIES && h > f64::EPSILON * t.abs().max(1.0) => {
                    h *= 0.5;
                    retries += 1;
                }
                Err(Stop::Singular) => break Err(Termination::SingularApproach),
            }
        };
        let np = match next {
            Ok(p) => p,
            Err(reason) => break reason,
        };
        let jet = match surface.eval_jet(np.0, np.1) {
            Ok(j) => j,
            Err(_) => break Termination::OutOfDomain,
        };
        let s = transversality_data(&jet).sqrt_d();
        if s == 0.0 {
            break Termination::SingularApproach;
        }
        t += sign * h;
        pos = np;
        sqrt_d = s;
        samples.push(sample(t, &jet, s));
        if s < opts.approach_eps {
            break Termination::SingularApproach;
        }
    };

    Ok(CharacteristicTrace { samples, step: opts.step, direction: opts.direction, termination })
}

/// Traces every start point (in parallel with the `parallel` feature).
pub fn trace_many(
    surface: &SurfaceGraph,
    starts: &[(f64, f64)],
    opts: &TraceOptions,
) -> Vec<Result<CharacteristicTrace>> {
    par::map(starts, |&s| trace(surface, s, opts))
}
