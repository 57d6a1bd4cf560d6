use serde::Serialize;

use super::riccati::BLOWUP_CUTOFF;
use super::trace::{CharacteristicTrace, Direction};
use crate::ode::rk4_step;
use crate::{Error, Result};

/// Which side of `k(t)` the COT is assumed to lie on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    /// `r <= k`, giving `a <= c` for `t >= 0` and `a >= c` for `t <= 0`.
    Upper,
    /// `r >= k`, giving `a >= c` for `t >= 0` and `a <= c` for `t <= 0`.
    Lower,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub holds: bool,
    /// Largest signed amount by which the predicted inequality fails
    /// (negative when it holds with room to spare).
    pub max_violation: f64,
    /// Largest tolerance used, `1e-6` plus the accumulated step-doubling
    /// error estimate of `c`.
    pub tolerance: f64,
    pub checked: usize,
    /// Index of the first sample after which `c` diverged in the direction
    /// that makes the bound vacuous, if it did.
    pub vacuous_from: Option<usize>,
    /// `(t, a, c)` at every checked sample.
    pub series: Vec<(f64, f64, f64)>,
}

const BASE_TOLERANCE: f64 = 1e-6;

/// Integrates `c' = c^2 + k(t)`, `c(0) = a(0)`, on the trace's time grid
/// and checks the comparison inequality at every sample.
///
/// Fails with `HypothesisViolated` when a sampled COT is on the wrong side of
/// `k(t)`. Only the sampled COT values are checked.
pub fn comparison_check<K>(trace: &CharacteristicTrace, k_of_t: K, sense: Sense) -> Result<ComparisonReport>
where
    K: Fn(f64) -> f64,
{
    let samples = &trace.samples;
    for s in samples {
        if s.r.is_nan() {
            continue;
        }
        let k = k_of_t(s.t);
        let slack = 1e-12 * k.abs().max(s.r.abs()).max(1.0);
        let ok = match sense {
            Sense::Upper => s.r <= k + slack,
            Sense::Lower => s.r >= k - slack,
        };
        if !ok {
            return Err(Error::HypothesisViolated { t: s.t, r: s.r, k });
        }
    }

    // v = sigma (a - c) must stay <= tolerance.
    let sigma = match (sense, trace.direction) {
        (Sense::Upper, Direction::Forward) | (Sense::Lower, Direction::Backward) => 1.0,
        (Sense::Lower, Direction::Forward) | (Sense::Upper, Direction::Backward) => -1.0,
    };
    let rhs = |t: f64, c: f64| c * c + k_of_t(t);

    let mut c = samples[0].a;
    let mut err = 0.0;
    let mut report = ComparisonReport {
        holds: true,
        max_violation: 0.0,
        tolerance: BASE_TOLERANCE,
        checked: 1,
        vacuous_from: None,
        series: vec![(samples[0].t, samples[0].a, c)],
    };
    for (i, w) in samples.windows(2).enumerate() {
        let (t0, t1) = (w[0].t, w[1].t);
        let h = t1 - t0;
        let full = rk4_step(rhs, t0, c, h);
        let mid = rk4_step(rhs, t0, c, 0.5 * h);
        let half = rk4_step(rhs, t0 + 0.5 * h, mid, 0.5 * h);
        c = half;
        err += (full - half).abs();
        if !(c.abs() <= BLOWUP_CUTOFF) {
            if sigma * c > 0.0 {
                report.vacuous_from = Some(i + 1);
            } else {
                report.holds = false;
                report.max_violation = f64::INFINITY;
            }
            break;
        }
        let tol = BASE_TOLERANCE + err;
        let v = sigma * (w[1].a - c);
        report.max_violation = report.max_violation.max(v);
        report.tolerance = report.tolerance.max(tol);
        if v > tol {
            report.holds = false;
        }
        report.checked += 1;
        report.series.push((t1, w[1].a, c));
    }
    Ok(report)
}
