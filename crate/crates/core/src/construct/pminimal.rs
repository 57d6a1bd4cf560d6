//! Local p-minimal graph around a regular point, in implicit form:
//!
//! ```text
//! f(x, y) = (1/2)(-Y + x0 F(Y)) (x - x0) + G(Y),
//! y       = (x - x0) F(Y) + Y,                      Y = Y(x, y).
//! ```
//!
//! `Y` is found by a safeguarded Newton iteration on
//! `Phi(Y) = (x - x0) F(Y) + Y - y`, and the jet of `f` follows from implicit
//! differentiation of `Phi = 0`.

use crate::profile::ProfileFunction;
use crate::surface::{Domain, Jet2, SurfaceGraph, SurfaceKind};
use crate::{Error, Result};

const ROOT_TOL: f64 = 1e-12;
const MAX_ITER: usize = 60;
/// Margin subtracted from `1 / sup|F'|` when sizing the validity strip.
const STRIP_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct PMinimalLocal {
    pub x0: f64,
    pub f_profile: ProfileFunction,
    pub g_profile: ProfileFunction,
}

/// Outcome of solving `Phi(Y) = 0` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSolve {
    pub value: f64,
    /// `|Phi(Y)|` at the returned root.
    pub residual: f64,
    /// `d(Phi)/dY = 1 + (x - x0) F'(Y)`.
    pub slope: f64,
    pub iterations: usize,
}

/// Builds the local solution. The declared domain is the strip
/// `|x - x0| < 1/(sup|F'| + margin)` when `sup|F'|` is known in closed form;
/// otherwise the whole plane, with validity checked per point through the
/// sign of `d(Phi)/dY` at the root.
pub fn pminimal_local(x0: f64, f_profile: ProfileFunction, g_profile: ProfileFunction) -> SurfaceGraph {
    let domain = match f_profile.sup_abs_derivative() {
        Some(s) if s > 0.0 => {
            let half = 1.0 / (s + STRIP_MARGIN);
            Domain::rect(x0 - half, x0 + half, f64::NEG_INFINITY, f64::INFINITY)
        }
        _ => Domain::ENTIRE,
    };
    SurfaceGraph::new(SurfaceKind::PMinimalLocal(PMinimalLocal { x0, f_profile, g_profile }), domain)
}

impl PMinimalLocal {
    fn phi(&self, s: f64, y: f64, u: f64) -> (f64, f64) {
        let fj = self.f_profile.eval(u);
        (s * fj.value + u - y, 1.0 + s * fj.d1)
    }

    /// Solves `(x - x0) F(Y) + Y = y` for `Y`, seeded at `Y = y`.
    pub fn tilde_y(&self, x: f64, y: f64) -> Result<RootSolve> {
        let s = x - self.x0;
        if s == 0.0 {
            return Ok(RootSolve { value: y, residual: 0.0, slope: 1.0, iterations: 0 });
        }
        let (mut u, mut iters) = (y, 0usize);
        let (mut val, mut slope) = self.phi(s, y, u);
        // Plain Newton while it is well behaved; near x0 this converges in a
        // handful of steps.
        while val.abs() >= ROOT_TOL && iters < 8 && slope > 0.0 {
            let next = u - val / slope;
            let (nv, ns) = self.phi(s, y, next);
            if !(nv.abs() < val.abs()) {
                break;
            }
            u = next;
            val = nv;
            slope = ns;
            iters += 1;
        }
        if val.abs() >= ROOT_TOL {
            let (root, n) = self.bracketed(s, x, y, u)?;
            u = root;
            iters += n;
            (val, slope) = self.phi(s, y, u);
        }
        if !(slope > 0.0) {
            return Err(Error::ValidityViolated { x, y, slope });
        }
        Ok(RootSolve { value: u, residual: val.abs(), slope, iterations: iters })
    }

    /// Newton safeguarded by bisection on a bracket grown outward from `seed`.
    fn bracketed(&self, s: f64, x: f64, y: f64, seed: f64) -> Result<(f64, usize)> {
        let f = |u: f64| self.phi(s, y, u).0;
        let f_seed = f(seed);
        let mut width = 1e-3 * (1.0 + seed.abs());
        let (mut lo, mut hi) = (seed, seed);
        let mut found = false;
        for _ in 0..64 {
            let (a, b) = (seed - width, seed + width);
            if f(a).signum() != f_seed.signum() || f(a) == 0.0 {
                (lo, hi) = (a, seed);
                found = true;
                break;
            }
            if f(b).signum() != f_seed.signum() || f(b) == 0.0 {
                (lo, hi) = (seed, b);
                found = true;
                break;
            }
            width *= 2.0;
        }
        if !found {
            return Err(Error::RootNotBracketed { x, y });
        }
        let mut f_lo = f(lo);
        let mut u = 0.5 * (lo + hi);
        for n in 1..=MAX_ITER {
            let (v, d) = self.phi(s, y, u);
            if v.abs() < ROOT_TOL {
                return Ok((u, n));
            }
            if v.signum() == f_lo.signum() {
                lo = u;
                f_lo = v;
            } else {
                hi = u;
            }
            let newton = u - v / d;
            u = if d != 0.0 && newton > lo.min(hi) && newton < lo.max(hi) {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if (hi - lo).abs() <= f64::EPSILON * u.abs().max(1.0) {
                return Ok((u, n));
            }
        }
        Ok((u, MAX_ITER))
    }

    pub fn value(&self, x: f64, y: f64) -> Result<f64> {
        let root = self.tilde_y(x, y)?;
        let u = root.value;
        let s = x - self.x0;
        let fv = self.f_profile.value(u);
        Ok(0.5 * (-u + self.x0 * fv) * s + self.g_profile.value(u))
    }

    /// `g = q/p` of this surface in closed form: `F(Y(x, y))`.
    pub fn burgers_g(&self, x: f64, y: f64) -> Result<f64> {
        Ok(self.f_profile.value(self.tilde_y(x, y)?.value))
    }

    pub(crate) fn jet(&self, x: f64, y: f64) -> Result<Jet2> {
        let root = self.tilde_y(x, y)?;
        let u = root.value;
        let s = x - self.x0;
        let x0 = self.x0;
        let fj = self.f_profile.eval(u);
        let gj = self.g_profile.eval(u);

        // Implicit derivatives of Y from Phi(Y; x, y) = s F(Y) + Y - y = 0.
        let pp = 1.0 + s * fj.d1;
        let ux = -fj.value / pp;
        let uy = 1.0 / pp;
        let ppx = fj.d1 + s * fj.d2 * ux; // d/dx of Phi'
        let ppy = s * fj.d2 * uy;
        let uxx = -(fj.d1 * ux * pp - fj.value * ppx) / (pp * pp);
        let uxy = -(fj.d1 * uy * pp - fj.value * ppy) / (pp * pp);
        let uyy = -ppy / (pp * pp);

        // f = A(Y, x) with A = (1/2)(-Y + x0 F(Y)) s + G(Y);
        // K = dA/dY, A_x = (1/2)(-Y + x0 F(Y)), K_x = dK/dx = dA_x/dY.
        let k = 0.5 * (-1.0 + x0 * fj.d1) * s + gj.d1;
        let k_x = 0.5 * (-1.0 + x0 * fj.d1);
        let k_u = 0.5 * x0 * fj.d2 * s + gj.d2;
        let a_x = 0.5 * (-u + x0 * fj.value);

        Ok(Jet2 {
            x,
            y,
            f: a_x * s + gj.value,
            fx: a_x + k * ux,
            fy: k * uy,
            fxx: 2.0 * k_x * ux + k_u * ux * ux + k * uxx,
            fxy: k_x * uy + k_u * ux * uy + k * uxy,
            fyy: k_u * uy * uy + k * uyy,
        })
    }
}
