//! Graph surfaces `z = f(x, y)` over the xy-plane in the Heisenberg group.
//!
//! The Heisenberg horizontal frame is `u1 = dx - (y/2) dz`, `u2 = dy + (x/2) dz`
//! and the Reeb field of a graph is `v0 = -dz`. Every quantity in this module
//! is built from the 2-jet of `f` and the two functions
//!
//! ```text
//! p = x - 2 f_y,    q = y + 2 f_x,    D = p^2 + q^2.
//! ```
//!
//! A point is singular exactly when `p = q = 0`.

mod fd;

use std::fmt;
use std::sync::Arc;

use crate::construct::{PMinimalLocal, ZeroCotFamily};
use crate::profile::ProfileFunction;
use crate::{Error, Result, SINGULAR_EPS};

pub use fd::{finite_diff_jet, finite_diff_jet_with, default_fd_step};

/// Value and partial derivatives up to order two of a graph function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub x: f64,
    pub y: f64,
    pub f: f64,
    pub fx: f64,
    pub fy: f64,
    pub fxx: f64,
    pub fxy: f64,
    pub fyy: f64,
}

impl Jet2 {
    pub fn is_finite(&self) -> bool {
        [self.x, self.y, self.f, self.fx, self.fy, self.fxx, self.fxy, self.fyy]
            .iter()
            .all(|v| v.is_finite())
    }

    /// `x - 2 f_y`
    pub fn p(&self) -> f64 {
        self.x - 2.0 * self.fy
    }

    /// `y + 2 f_x`
    pub fn q(&self) -> f64 {
        self.y + 2.0 * self.fx
    }

    /// Jacobian of `(p, q)` with respect to `(x, y)`, row-major.
    pub fn pq_jacobian(&self) -> [[f64; 2]; 2] {
        [
            [1.0 - 2.0 * self.fxy, -2.0 * self.fyy],
            [2.0 * self.fxx, 1.0 + 2.0 * self.fxy],
        ]
    }
}

/// Transversality quantities at a point.
///
/// `a` (DOT) and `r` (COT) are `None` until filled by
/// [`crate::transversality::evaluate`], and stay `None` at singular points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransversalityData {
    pub x: f64,
    pub y: f64,
    pub p: f64,
    pub q: f64,
    pub d: f64,
    pub a: Option<f64>,
    pub r: Option<f64>,
}

impl TransversalityData {
    pub fn sqrt_d(&self) -> f64 {
        self.d.sqrt()
    }
}

/// `p`, `q` and `D` from a jet.
pub fn transversality_data(jet: &Jet2) -> TransversalityData {
    let p = jet.p();
    let q = jet.q();
    TransversalityData { x: jet.x, y: jet.y, p, q, d: p * p + q * q, a: None, r: None }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    Regular,
    Singular,
}

/// Singular iff `sqrt(D) < eps`.
pub fn classify_point(td: &TransversalityData, eps: f64) -> PointClass {
    if td.sqrt_d() < eps {
        PointClass::Singular
    } else {
        PointClass::Regular
    }
}

/// Adapted frame at a regular point, in `(dx, dy, dz)` components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub v0: [f64; 3],
    pub v1: [f64; 3],
    pub v2: [f64; 3],
}

pub fn adapted_frame_graph(jet: &Jet2) -> Result<Frame> {
    adapted_frame_graph_with(jet, SINGULAR_EPS)
}

pub fn adapted_frame_graph_with(jet: &Jet2, eps: f64) -> Result<Frame> {
    let td = transversality_data(jet);
    let s = td.sqrt_d();
    if classify_point(&td, eps) == PointClass::Singular {
        return Err(Error::SingularPoint { x: jet.x, y: jet.y, sqrt_d: s });
    }
    let (x, y) = (jet.x, jet.y);
    let v1 = [td.p / s, td.q / s, (x * jet.fx + y * jet.fy) / s];
    let v2 = [
        -td.q / s,
        td.p / s,
        0.5 * (y * y + 2.0 * y * jet.fx + x * x - 2.0 * x * jet.fy) / s,
    ];
    Ok(Frame { v0: [0.0, 0.0, -1.0], v1, v2 })
}

/// Axis-aligned region where a surface may be evaluated. Infinite bounds
/// are allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Domain {
    pub const ENTIRE: Domain = Domain {
        x_min: f64::NEG_INFINITY,
        x_max: f64::INFINITY,
        y_min: f64::NEG_INFINITY,
        y_max: f64::INFINITY,
    };

    pub fn rect(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        Domain { x_min, x_max, y_min, y_max }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x_min && x <= self.x_max && y >= self.y_min && y <= self.y_max
    }

    pub fn intersect(&self, other: &Domain) -> Domain {
        Domain {
            x_min: self.x_min.max(other.x_min),
            x_max: self.x_max.min(other.x_max),
            y_min: self.y_min.max(other.y_min),
            y_max: self.y_max.min(other.y_max),
        }
    }
}

/// Bivariate polynomial `sum c * x^i * y^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly2 {
    pub terms: Vec<(u32, u32, f64)>,
}

impl Poly2 {
    pub fn new(terms: Vec<(u32, u32, f64)>) -> Self {
        Poly2 { terms }
    }

    fn jet(&self, x: f64, y: f64) -> Jet2 {
        // d^k/dx^k x^i at x as (coefficient, power)
        fn d(i: u32, k: u32, x: f64) -> f64 {
            if k > i {
                return 0.0;
            }
            let c: f64 = (0..k).map(|m| (i - m) as f64).product();
            c * x.powi((i - k) as i32)
        }
        let mut j = Jet2 { x, y, f: 0.0, fx: 0.0, fy: 0.0, fxx: 0.0, fxy: 0.0, fyy: 0.0 };
        for &(i, k, c) in &self.terms {
            j.f += c * d(i, 0, x) * d(k, 0, y);
            j.fx += c * d(i, 1, x) * d(k, 0, y);
            j.fy += c * d(i, 0, x) * d(k, 1, y);
            j.fxx += c * d(i, 2, x) * d(k, 0, y);
            j.fxy += c * d(i, 1, x) * d(k, 1, y);
            j.fyy += c * d(i, 0, x) * d(k, 2, y);
        }
        j
    }
}

pub type ScalarField = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Which family or constructor produced a surface, with its analytic rule.
#[derive(Clone)]
pub enum SurfaceKind {
    /// `f = 0`
    Zero,
    /// `f = a x + b y + c`
    Plane { a: f64, b: f64, c: f64 },
    /// `f = x y / 2`
    HalfXy,
    Polynomial(Poly2),
    ZeroCot(ZeroCotFamily),
    /// `f = -(1/2)(-ab x^2 + (a^2 - b^2) x y + ab y^2 + g(-b x + a y))` with `a^2 + b^2 = 1`.
    BernsteinQuadratic { a: f64, b: f64, g: ProfileFunction },
    PMinimalLocal(PMinimalLocal),
    /// A user-supplied function; jets by central finite differences.
    Sampled { name: String, field: ScalarField, step: Option<f64> },
}

impl fmt::Debug for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::Zero => write!(f, "Zero"),
            SurfaceKind::Plane { a, b, c } => write!(f, "Plane {{ a: {a}, b: {b}, c: {c} }}"),
            SurfaceKind::HalfXy => write!(f, "HalfXy"),
            SurfaceKind::Polynomial(p) => write!(f, "Polynomial({p:?})"),
            SurfaceKind::ZeroCot(z) => write!(f, "ZeroCot({z:?})"),
            SurfaceKind::BernsteinQuadratic { a, b, g } => {
                write!(f, "BernsteinQuadratic {{ a: {a}, b: {b}, g: {g} }}")
            }
            SurfaceKind::PMinimalLocal(p) => write!(f, "PMinimalLocal({p:?})"),
            SurfaceKind::Sampled { name, step, .. } => {
                write!(f, "Sampled {{ name: {name:?}, step: {step:?} }}")
            }
        }
    }
}

/// An evaluatable graph surface with a declared domain.
#[derive(Debug, Clone)]
pub struct SurfaceGraph {
    kind: SurfaceKind,
    domain: Domain,
}

impl SurfaceGraph {
    pub fn new(kind: SurfaceKind, domain: Domain) -> Self {
        SurfaceGraph { kind, domain }
    }

    pub fn zero() -> Self {
        Self::new(SurfaceKind::Zero, Domain::ENTIRE)
    }

    pub fn plane(a: f64, b: f64, c: f64) -> Self {
        Self::new(SurfaceKind::Plane { a, b, c }, Domain::ENTIRE)
    }

    /// `f = x y / 2`, on which `p` vanishes identically.
    pub fn half_xy() -> Self {
        Self::new(SurfaceKind::HalfXy, Domain::ENTIRE)
    }

    pub fn polynomial(terms: Vec<(u32, u32, f64)>) -> Self {
        Self::new(SurfaceKind::Polynomial(Poly2::new(terms)), Domain::ENTIRE)
    }

    /// Wraps an arbitrary function; derivatives come from [`finite_diff_jet`].
    pub fn from_fn<F>(name: impl Into<String>, field: F, domain: Domain) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(
            SurfaceKind::Sampled { name: name.into(), field: Arc::new(field), step: None },
            domain,
        )
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn kind(&self) -> &SurfaceKind {
        &self.kind
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Short tag naming the family that produced this surface.
    pub fn provenance(&self) -> String {
        match &self.kind {
            SurfaceKind::Zero => "zero".into(),
            SurfaceKind::Plane { a, b, c } => format!("plane(a={a:?},b={b:?},c={c:?})"),
            SurfaceKind::HalfXy => "xy2".into(),
            SurfaceKind::Polynomial(p) => format!("poly({:?})", p.terms),
            SurfaceKind::ZeroCot(z) => {
                format!("zero-cot(c1={:?},c2={:?},F={})", z.c1, z.c2, z.profile)
            }
            SurfaceKind::BernsteinQuadratic { a, b, g } => {
                format!("bernstein-quadratic(a={a:?},b={b:?},g={g})")
            }
            SurfaceKind::PMinimalLocal(p) => {
                format!("pminimal-local(x0={:?},F={},G={})", p.x0, p.f_profile, p.g_profile)
            }
            SurfaceKind::Sampled { name, .. } => format!("sampled({name})"),
        }
    }

    /// Value of `f` only.
    pub fn value(&self, x: f64, y: f64) -> Result<f64> {
        if !self.domain.contains(x, y) {
            return Err(Error::OutOfDomain { x, y });
        }
        match &self.kind {
            SurfaceKind::Sampled { field, .. } => Ok(field(x, y)),
            SurfaceKind::PMinimalLocal(p) => p.value(x, y),
            _ => self.eval_jet(x, y).map(|j| j.f),
        }
    }

    /// The 2-jet at `(x, y)`: exact for closed-form families, central
    /// differences for sampled surfaces.
    pub fn eval_jet(&self, x: f64, y: f64) -> Result<Jet2> {
        if !self.domain.contains(x, y) {
            return Err(Error::OutOfDomain { x, y });
        }
        let zero = Jet2 { x, y, f: 0.0, fx: 0.0, fy: 0.0, fxx: 0.0, fxy: 0.0, fyy: 0.0 };
        let jet = match &self.kind {
            SurfaceKind::Zero => zero,
            SurfaceKind::Plane { a, b, c } => Jet2 { f: a * x + b * y + c, fx: *a, fy: *b, ..zero },
            SurfaceKind::HalfXy => Jet2 { f: 0.5 * x * y, fx: 0.5 * y, fy: 0.5 * x, fxy: 0.5, ..zero },
            SurfaceKind::Polynomial(p) => p.jet(x, y),
            SurfaceKind::ZeroCot(z) => z.jet(x, y),
            SurfaceKind::BernsteinQuadratic { a, b, g } => bernstein_quadratic_jet(*a, *b, g, x, y),
            SurfaceKind::PMinimalLocal(p) => p.jet(x, y)?,
            SurfaceKind::Sampled { field, step, .. } => {
                let h = step.unwrap_or_else(|| default_fd_step(x, y));
                finite_diff_jet_with(|u, v| field(u, v), x, y, h, &self.domain)?
            }
        };
        Ok(jet)
    }

    pub fn transversality_data(&self, x: f64, y: f64) -> Result<TransversalityData> {
        self.eval_jet(x, y).map(|j| transversality_data(&j))
    }
}

/// Jet of the quadratic Bernstein family; `(a, b)` must already be a unit vector.
fn bernstein_quadratic_jet(a: f64, b: f64, g: &ProfileFunction, x: f64, y: f64) -> Jet2 {
    let gj = g.eval(-b * x + a * y);
    let (ab, d) = (a * b, a * a - b * b);
    Jet2 {
        x,
        y,
        f: -0.5 * (-ab * x * x + d * x * y + ab * y * y + gj.value),
        fx: -0.5 * (-2.0 * ab * x + d * y - b * gj.d1),
        fy: -0.5 * (d * x + 2.0 * ab * y + a * gj.d1),
        fxx: -0.5 * (-2.0 * ab + b * b * gj.d2),
        fxy: -0.5 * (d - a * b * gj.d2),
        fyy: -0.5 * (2.0 * ab + a * a * gj.d2),
    }
}
