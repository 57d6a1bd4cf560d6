//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails. Oracles are written out here rather than taken
//! from the library wherever a closed form exists.

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dotcot::characteristics::{
    comparison_check, detect_blowup, riccati_closed_form, riccati_integrate, singular_set_scan, singular_verdict,
    trace, CharacteristicTrace, Direction, RiccatiBound, RiccatiOutcome, Sense, SingularConclusion, Termination,
    TraceOptions,
};
use dotcot::construct::{
    bernstein, burgers_field, burgers_residual, characteristic_line, constancy_along_line, pminimal_local,
    zero_cot_solution, BernsteinBranch, Branch, Convention, Line, PMinimalLocal,
};
use dotcot::grid::Grid;
use dotcot::models::{
    cot_from_constants, jacobi_sum, structure_constants, su2_example_surface, unitarity_defect, ModelSpace, Q,
};
use dotcot::surface::{finite_diff_jet, SurfaceKind};
use dotcot::transversality::{cot_jet, cot_printed_jet, pminimal_residual, zcot_residual};
use dotcot::{Jet2, ProfileFunction, SurfaceGraph};

type TracePair<'a> = (&'a str, CharacteristicTrace, CharacteristicTrace);

/// `r -> [F, F', F'']`
type ProfileOracle<'a> = &'a dyn Fn(f64) -> [f64; 3];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

// ---------------------------------------------------------------------------
// shared oracles

/// Independent analytic jet of `c1 x^2/(2 c2) - xy/2 + F(c1 x - c2 y)`
/// (or `xy/2 + F(x)` when `c2 = 0`) for profiles given as closures.
fn zero_cot_oracle_jet(c1: f64, c2: f64, f: &dyn Fn(f64) -> [f64; 3], x: f64, y: f64) -> Jet2 {
    if c2 == 0.0 {
        let [v, d1, d2] = f(x);
        return Jet2 { x, y, f: x * y / 2.0 + v, fx: y / 2.0 + d1, fy: x / 2.0, fxx: d2, fxy: 0.5, fyy: 0.0 };
    }
    let [v, d1, d2] = f(c1 * x - c2 * y);
    let k = c1 / c2;
    Jet2 {
        x,
        y,
        f: k * x * x / 2.0 - x * y / 2.0 + v,
        fx: k * x - y / 2.0 + c1 * d1,
        fy: -x / 2.0 - c2 * d1,
        fxx: k + c1 * c1 * d2,
        fxy: -0.5 - c1 * c2 * d2,
        fyy: c2 * c2 * d2,
    }
}

fn oracle_zcot(j: &Jet2) -> f64 {
    let p = j.x - 2.0 * j.fy;
    let q = j.y + 2.0 * j.fx;
    2.0 * p * q * (j.fyy - j.fxx) + (1.0 - 2.0 * j.fxy) * q * q + (1.0 + 2.0 * j.fxy) * p * p
}

fn oracle_pminimal(j: &Jet2) -> f64 {
    let p = j.x - 2.0 * j.fy;
    let q = j.y + 2.0 * j.fx;
    p * p * j.fxx + 2.0 * p * q * j.fxy + q * q * j.fyy
}

fn sqrt_d(j: &Jet2) -> f64 {
    (j.x - 2.0 * j.fy).hypot(j.y + 2.0 * j.fx)
}

/// Built-in surfaces used for random traces.
fn trace_families() -> Vec<(&'static str, SurfaceGraph)> {
    vec![
        ("zero", SurfaceGraph::zero()),
        ("xy2", SurfaceGraph::half_xy()),
        ("poly", SurfaceGraph::polynomial(vec![(2, 0, 0.3), (1, 1, -0.2), (0, 2, 0.1), (3, 0, 0.05)])),
        ("zero-cot", zero_cot_solution(1.0, 2.0, ProfileFunction::sin()).unwrap()),
        (
            "bernstein-quadratic",
            bernstein(BernsteinBranch::Quadratic { a: 0.6, b: 0.8, g: ProfileFunction::cos() }).unwrap(),
        ),
        ("pminimal-local", pminimal_local(0.0, ProfileFunction::sin(), ProfileFunction::cos())),
    ]
}

/// Draws a regular start point with `sqrt(D) >= min_sqrt_d`.
fn regular_start(rng: &mut ChaCha8Rng, s: &SurfaceGraph, min_sqrt_d: f64) -> (f64, f64) {
    loop {
        let (x, y) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if let Ok(j) = s.eval_jet(x, y) {
            if sqrt_d(&j) >= min_sqrt_d {
                return (x, y);
            }
        }
    }
}

/// Uniform-step traces at `h` and `h/2` from the same start, both ending at
/// `max_t` without step shrinking.
fn paired_traces(
    rng: &mut ChaCha8Rng,
    count: usize,
    h: f64,
    max_t: f64,
) -> Vec<TracePair<'static>> {
    let families = trace_families();
    let mut out = Vec::new();
    let mut i = 0;
    while out.len() < count {
        let (name, s) = &families[i % families.len()];
        i += 1;
        let start = regular_start(rng, s, 0.5);
        let dir = if rng.gen_bool(0.5) { Direction::Forward } else { Direction::Backward };
        let coarse = trace(s, start, &TraceOptions::new(dir, h, max_t));
        let fine = trace(s, start, &TraceOptions::new(dir, h / 2.0, max_t));
        let n = (max_t / h).round() as usize;
        if let (Ok(c), Ok(f)) = (coarse, fine) {
            let uniform = c.termination == Termination::MaxTime
                && f.termination == Termination::MaxTime
                && c.samples.len() == n + 1
                && f.samples.len() == 2 * n + 1;
            if uniform {
                out.push((*name, c, f));
            }
        }
    }
    out
}

/// Max over interior coarse times of the centered-difference Riccati defect,
/// using COT values `r_of(sample index)`.
fn riccati_defect(tr: &CharacteristicTrace, stride: usize, r: &[f64]) -> f64 {
    let s = &tr.samples;
    let mut worst = 0.0f64;
    let mut i = stride;
    while i + 1 < s.len() {
        let dt = s[i + 1].t - s[i - 1].t;
        let da = (s[i + 1].a - s[i - 1].a) / dt;
        worst = worst.max((da - (s[i].a * s[i].a + r[i])).abs());
        i += stride;
    }
    worst
}

/// `max |a'''|` from third differences of the fine trace.
fn third_derivative_bound(tr: &CharacteristicTrace) -> f64 {
    let s = &tr.samples;
    let h = (s[1].t - s[0].t).abs();
    s.windows(4)
        .map(|w| ((w[3].a - 3.0 * w[2].a + 3.0 * w[1].a - w[0].a) / (h * h * h)).abs())
        .fold(0.0, f64::max)
}

struct RiccatiRates {
    worst_ratio_dev: f64,
    ratios: (f64, f64),
    bound_ok: usize,
    total: usize,
}

/// Criterion 2 on paired traces for the given COT extractor.
fn riccati_rates<F>(pairs: &[TracePair], step: f64, r_of: F) -> RiccatiRates
where
    F: Fn(&CharacteristicTrace) -> Vec<f64>,
{
    let mut rates = RiccatiRates { worst_ratio_dev: 0.0, ratios: (f64::INFINITY, 0.0), bound_ok: 0, total: 0 };
    for (_, coarse, fine) in pairs {
        let dc = riccati_defect(coarse, 1, &r_of(coarse));
        // fine samples at even indices coincide with the coarse times
        let df = riccati_defect(fine, 2, &r_of(fine));
        let ratio = dc / df;
        let c = third_derivative_bound(fine) / 6.0;
        let bound = 1.5 * c * step * step + 1e-12;
        rates.total += 1;
        if dc <= bound && df <= 1.5 * c * (step / 2.0).powi(2) + 1e-12 {
            rates.bound_ok += 1;
        }
        rates.ratios.0 = rates.ratios.0.min(ratio);
        rates.ratios.1 = rates.ratios.1.max(ratio);
        let dev = if ratio.is_finite() { (ratio / 4.0 - 1.0).abs() } else { f64::INFINITY };
        rates.worst_ratio_dev = rates.worst_ratio_dev.max(dev);
    }
    rates
}

fn sampled_cot(tr: &CharacteristicTrace) -> Vec<f64> {
    tr.samples.iter().map(|s| s.r).collect()
}

fn printed_cot(s: &SurfaceGraph) -> impl Fn(&CharacteristicTrace) -> Vec<f64> + '_ {
    move |tr| tr.samples.iter().map(|p| cot_printed_jet(&s.eval_jet(p.x, p.y).unwrap()).unwrap()).collect()
}

// ---------------------------------------------------------------------------
// criteria

fn criterion_1() -> Outcome {
    let tol = 1e-9;
    let sin = |r: f64| [r.sin(), r.cos(), -r.sin()];
    let cos = |r: f64| [r.cos(), -r.sin(), -r.cos()];
    let cubic = |r: f64| [0.5 - r + 0.25 * r * r + 0.1 * r * r * r, -1.0 + 0.5 * r + 0.3 * r * r, 0.5 + 0.6 * r];
    let half_sq = |r: f64| [0.5 * r * r, r, 1.0];
    let cases: Vec<(f64, f64, ProfileFunction, ProfileOracle)> = vec![
        (1.0, 2.0, ProfileFunction::sin(), &sin),
        (0.0, 1.0, ProfileFunction::cos(), &cos),
        (2.0, -1.0, ProfileFunction::Polynomial(vec![0.5, -1.0, 0.25, 0.1]), &cubic),
        (1.0, 0.0, ProfileFunction::Polynomial(vec![0.0, 0.0, 0.5]), &half_sq),
        (3.0, 0.0, ProfileFunction::sin(), &sin),
    ];
    let grid = Grid::square(-2.0, 2.0, 41);
    let mut worst_lib = 0.0f64;
    let mut worst_oracle = 0.0f64;
    let mut jet_mismatch = 0.0f64;
    for (c1, c2, prof, f) in &cases {
        let s = zero_cot_solution(*c1, *c2, prof.clone()).unwrap();
        for (x, y) in grid.points() {
            let oj = zero_cot_oracle_jet(*c1, *c2, *f, x, y);
            if sqrt_d(&oj) < 1e-3 {
                continue;
            }
            let lj = s.eval_jet(x, y).unwrap();
            worst_lib = worst_lib.max(zcot_residual(&lj).abs());
            worst_oracle = worst_oracle.max(oracle_zcot(&oj).abs());
            for (a, b) in [(lj.fx, oj.fx), (lj.fy, oj.fy), (lj.fxx, oj.fxx), (lj.fxy, oj.fxy), (lj.fyy, oj.fyy)] {
                jet_mismatch = jet_mismatch.max((a - b).abs());
            }
        }
    }
    // Global p-minimal families, with an oracle jet of the normalized
    // quadratic form f = -(1/2)(-ab x^2 + (a^2 - b^2) xy + ab y^2 + g(-bx + ay)).
    let (a, b) = (0.6, 0.8);
    let quad = bernstein(BernsteinBranch::Quadratic { a, b, g: ProfileFunction::cos() }).unwrap();
    let lin = bernstein(BernsteinBranch::Linear { a: 1.5, b: -0.5, c: 2.0 }).unwrap();
    let mut worst_pmin = 0.0f64;
    for (x, y) in grid.points() {
        let r = -b * x + a * y;
        let (g, g2) = (r.cos(), -r.cos());
        let g1 = -r.sin();
        let oj = Jet2 {
            x,
            y,
            f: -0.5 * (-a * b * x * x + (a * a - b * b) * x * y + a * b * y * y + g),
            fx: -0.5 * (-2.0 * a * b * x + (a * a - b * b) * y - b * g1),
            fy: -0.5 * ((a * a - b * b) * x + 2.0 * a * b * y + a * g1),
            fxx: -0.5 * (-2.0 * a * b + b * b * g2),
            fxy: -0.5 * ((a * a - b * b) - a * b * g2),
            fyy: -0.5 * (2.0 * a * b + a * a * g2),
        };
        worst_pmin = worst_pmin.max(oracle_pminimal(&oj).abs());
        worst_pmin = worst_pmin.max(pminimal_residual(&quad.eval_jet(x, y).unwrap()).abs());
        worst_pmin = worst_pmin.max(pminimal_residual(&lin.eval_jet(x, y).unwrap()).abs());
    }
    let pass = worst_lib < tol && worst_oracle < tol && jet_mismatch < 1e-12 && worst_pmin < tol;
    outcome(
        pass,
        format!(
            "exact-family residuals: zcot max {worst_lib:.2e} (oracle {worst_oracle:.2e}, jet mismatch {jet_mismatch:.1e}), \
             pminimal max {worst_pmin:.2e}; tol {tol:e}"
        ),
    )
}

fn criterion_2(pairs: &[TracePair], step: f64) -> Outcome {
    let rates = riccati_rates(pairs, step, sampled_cot);
    let pass = rates.worst_ratio_dev <= 0.2 && rates.bound_ok == rates.total;
    outcome(
        pass,
        format!(
            "Riccati identity on {} traces: defect ratio in [{:.3}, {:.3}] (need 4 +/- 20%), defect <= C step^2 on {}/{}",
            rates.total, rates.ratios.0, rates.ratios.1, rates.bound_ok, rates.total
        ),
    )
}

/// Independent constant-COT solution via tan/tanh/coth.
fn riccati_oracle(a0: f64, k: f64, t: f64) -> f64 {
    if k > 0.0 {
        let s = k.sqrt();
        s * (s * t + (a0 / s).atan()).tan()
    } else if k == 0.0 {
        a0 / (1.0 - a0 * t)
    } else {
        let m = (-k).sqrt();
        let z = a0 / m;
        if z.abs() < 1.0 {
            -m * (m * t - z.atanh()).tanh()
        } else if z.abs() > 1.0 {
            let acoth = 0.5 * ((z + 1.0) / (z - 1.0)).ln();
            -m / (m * t - acoth).tanh()
        } else {
            a0
        }
    }
}

/// Independent first positive blow-up time.
fn blowup_oracle(a0: f64, k: f64) -> Option<f64> {
    if k > 0.0 {
        let s = k.sqrt();
        // tan argument reaches pi/2
        Some((FRAC_PI_2 - (a0 / s).atan()) / s)
    } else if k == 0.0 {
        (a0 > 0.0).then(|| 1.0 / a0)
    } else {
        let m = (-k).sqrt();
        (a0 > m).then(|| 0.5 * ((a0 + m) / (a0 - m)).ln() / m)
    }
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let tol = 1e-7;
    let mut worst_numeric = 0.0f64;
    let mut worst_closed = 0.0f64;
    let mut worst_blowup = 0.0f64;
    let mut cases = [0usize; 3];
    for i in 0..50 {
        let k = match i % 3 {
            0 => rng.gen_range(0.05..4.0),
            1 => 0.0,
            _ => -rng.gen_range(0.05..4.0),
        };
        let a0 = rng.gen_range(-3.0..3.0);
        cases[i % 3] += 1;
        let bound = RiccatiBound::new(a0, k);
        let oracle_bu = blowup_oracle(a0, k);
        match (bound.blowup_t, oracle_bu) {
            (Some(a), Some(b)) => worst_blowup = worst_blowup.max((a - b).abs()),
            (None, None) => {}
            _ => worst_blowup = f64::INFINITY,
        }
        let end = oracle_bu.map_or(2.0, |b| 0.9 * b);
        let sol = riccati_integrate(a0, |_| k, (0.0, end), 1e-3).unwrap();
        if sol.outcome != RiccatiOutcome::Completed {
            worst_numeric = f64::INFINITY;
        }
        for &(t, a) in &sol.points {
            let exact = riccati_oracle(a0, k, t);
            worst_numeric = worst_numeric.max((a - exact).abs());
            let closed = riccati_closed_form(a0, k, t).unwrap();
            worst_closed = worst_closed.max((closed - exact).abs() / exact.abs().max(1.0));
        }
    }
    let pass = worst_numeric < tol && worst_closed < 1e-12 && worst_blowup < 1e-12;
    outcome(
        pass,
        format!(
            "closed form vs numeric Riccati over {}/{}/{} cases (k>0/k=0/k<0): sup error {worst_numeric:.2e} (tol {tol:e}); \
             closed form vs oracle {worst_closed:.1e}; blow-up times {worst_blowup:.1e}",
            cases[0], cases[1], cases[2]
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut worst = 0.0f64;
    for r0 in [0.5, 1.0, 2.0] {
        let tr = trace(&SurfaceGraph::zero(), (r0, 0.0), &TraceOptions::backward(1e-3, 10.0)).unwrap();
        let t = detect_blowup(&tr).map_or(f64::INFINITY, |t| (t + r0).abs());
        worst = worst.max(t);
    }
    let verdict = singular_verdict(2.0, 0.0, Sense::Lower);
    let exact = verdict.conclusions == vec![SingularConclusion::ForwardBound(0.5)];
    outcome(
        worst < 1e-4 && exact,
        format!("singular time error max {worst:.2e} (tol 1e-4); verdict(a0=2, k=0) = {:?}", verdict.conclusions),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let families = trace_families();
    let mut violations = 0;
    let mut worst = f64::NEG_INFINITY;
    let mut n = 0;
    let mut i = 0;
    while n < 100 {
        let (_, s) = &families[i % families.len()];
        i += 1;
        let start = regular_start(&mut rng, s, 0.3);
        let opts = if rng.gen_bool(0.5) { TraceOptions::forward(1e-2, 1.0) } else { TraceOptions::backward(1e-2, 1.0) };
        let Ok(tr) = trace(s, start, &opts) else { continue };
        if tr.samples.len() < 5 {
            continue;
        }
        let k = tr.samples.iter().map(|p| p.r).filter(|r| !r.is_nan()).fold(f64::NEG_INFINITY, f64::max);
        let rep = comparison_check(&tr, |_| k, Sense::Upper).unwrap();
        n += 1;
        if !rep.holds {
            violations += 1;
        }
        worst = worst.max(rep.max_violation - rep.tolerance);
    }
    let tr = trace(&SurfaceGraph::half_xy(), (0.0, 1.0), &TraceOptions::forward(1e-2, 1.5)).unwrap();
    let rep = comparison_check(&tr, |_| 0.0, Sense::Upper).unwrap();
    let a0 = tr.samples[0].a;
    let eq = rep
        .series
        .iter()
        .map(|&(t, a, c)| (a - c).abs().max((c - a0 / (1.0 - a0 * t)).abs()))
        .fold(0.0, f64::max);
    outcome(
        violations == 0 && eq < 1e-7,
        format!(
            "comparison on {n} traces: {violations} violations (max violation minus tolerance {worst:.1e}); \
             equality case |a - c| max {eq:.1e} (tol 1e-7)"
        ),
    )
}

/// Y~ by bisection for the local p-minimal solution with x0 = 0, F = sin.
fn tilde_y_bisect(x: f64, y: f64) -> f64 {
    let phi = |u: f64| x * u.sin() + u - y;
    let (mut lo, mut hi) = (y - 2.0, y + 2.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if phi(mid) > 0.0 {
            hi = mid
        } else {
            lo = mid
        }
    }
    0.5 * (lo + hi)
}

fn criterion_6() -> Outcome {
    let grid = Grid::square(-1.5, 1.5, 13);
    let mut backward = 0.0f64;
    let mut constancy = 0.0f64;
    let mut g_value = 0.0f64;
    for (c1, c2, prof) in [
        (1.0, 2.0, ProfileFunction::sin()),
        (2.0, -1.0, ProfileFunction::Polynomial(vec![0.5, -1.0, 0.25, 0.1])),
        (-0.5, 1.5, ProfileFunction::cos()),
    ] {
        let s = zero_cot_solution(c1, c2, prof).unwrap();
        let field = burgers_field(&s, Branch::G, Convention::Backward);
        for (x, y) in grid.points() {
            let Ok(g) = field.value(x, y) else { continue };
            g_value = g_value.max((g - c1 / c2).abs());
            backward = backward.max(burgers_residual(&field, x, y).unwrap().abs());
            let dev = constancy_along_line(&field, &characteristic_line((x, y), g), (-1.0, 1.0), 21);
            if let Ok(d) = dev {
                constancy = constancy.max(d);
            }
        }
    }
    // c2 = 0: the h branch vanishes and is constant along horizontal lines
    let s = zero_cot_solution(1.0, 0.0, ProfileFunction::sin()).unwrap();
    let hfield = burgers_field(&s, Branch::H, Convention::Backward);
    for (x, y) in grid.points() {
        if let Ok(h) = hfield.value(x, y) {
            backward = backward.max(burgers_residual(&hfield, x, y).unwrap().abs());
            if let Ok(d) = constancy_along_line(&hfield, &Line::h_branch((x, y), h), (-1.0, 1.0), 21) {
                constancy = constancy.max(d);
            }
        }
    }

    let s = pminimal_local(0.0, ProfileFunction::sin(), ProfileFunction::cos());
    let field = burgers_field(&s, Branch::G, Convention::Forward);
    let mut forward = 0.0f64;
    let mut forward_oracle = 0.0f64;
    let h = 1e-5;
    let g_oracle = |x: f64, y: f64| tilde_y_bisect(x, y).sin();
    for i in 0..9 {
        for j in 0..10 {
            let (x, y) = (-0.3 + 0.075 * i as f64, -1.0 + 2.0 * (j as f64 + 0.5) / 10.0);
            forward = forward.max(burgers_residual(&field, x, y).map_or(f64::INFINITY, f64::abs));
            let g = g_oracle(x, y);
            let gx = (g_oracle(x + h, y) - g_oracle(x - h, y)) / (2.0 * h);
            let gy = (g_oracle(x, y + h) - g_oracle(x, y - h)) / (2.0 * h);
            forward_oracle = forward_oracle.max((gx + g * gy).abs());
        }
    }
    let pass = backward < 1e-6 && g_value < 1e-12 && constancy < 1e-8 && forward < 1e-5 && forward_oracle < 1e-5;
    outcome(
        pass,
        format!(
            "Burgers splitting: backward residual {backward:.1e} (tol 1e-6), g = c1/c2 to {g_value:.1e}, \
             constancy along lines {constancy:.1e} (tol 1e-8), forward residual {forward:.1e} (oracle {forward_oracle:.1e}, tol 1e-5)"
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut closed = 0.0f64;
    // F = c, G = cos: f = (1/2)(-yx + c x^2) + G(y - cx)
    let c = 0.7;
    let s = pminimal_local(0.0, ProfileFunction::Constant(c), ProfileFunction::cos());
    for _ in 0..200 {
        let (x, y) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let expected = 0.5 * (-y * x + c * x * x) + (y - c * x).cos();
        closed = closed.max((s.value(x, y).unwrap() - expected).abs());
    }
    // F(r) = c1 r + c0, G(r) = d1 r + d0: f = (-x/2 + d1)(y - c0 x)/(c1 x + 1) + d0
    let (c1, c0, d1, d0) = (0.4, -0.3, 1.2, 0.5);
    let s = pminimal_local(
        0.0,
        ProfileFunction::Linear { slope: c1, intercept: c0 },
        ProfileFunction::Linear { slope: d1, intercept: d0 },
    );
    for _ in 0..200 {
        let (x, y) = (rng.gen_range(-2.0..2.0), rng.gen_range(-3.0..3.0));
        let expected = (-x / 2.0 + d1) * (y - c0 * x) / (c1 * x + 1.0) + d0;
        closed = closed.max((s.value(x, y).unwrap() - expected).abs());
    }

    let s = pminimal_local(0.0, ProfileFunction::sin(), ProfileFunction::cos());
    let SurfaceKind::PMinimalLocal(p) = s.kind() else { unreachable!() };
    let p: &PMinimalLocal = p;
    let mut root = 0.0f64;
    let mut root_vs_bisect = 0.0f64;
    let mut residual = 0.0f64;
    let mut residual_fd = 0.0f64;
    for _ in 0..200 {
        // validity region: |x| < 1 / sup|F'| = 1
        let (x, y) = (rng.gen_range(-0.9..0.9), rng.gen_range(-3.0..3.0));
        let sol = p.tilde_y(x, y).unwrap();
        root = root.max((x * sol.value.sin() + sol.value - y).abs());
        root_vs_bisect = root_vs_bisect.max((sol.value - tilde_y_bisect(x, y)).abs());
        residual = residual.max(pminimal_residual(&s.eval_jet(x, y).unwrap()).abs());
        // Independent cross-check: finite differences of the closed form
        // built on the bisection root, away from the strip edge where the
        // higher derivatives blow up.
        if x.abs() <= 0.5 {
            let oracle = |u: f64, v: f64| {
                let r = tilde_y_bisect(u, v);
                -0.5 * r * u + r.cos()
            };
            let fd = finite_diff_jet(oracle, x, y, 1e-4).unwrap();
            residual_fd = residual_fd.max(oracle_pminimal(&fd).abs());
        }
    }
    let pass = closed < 1e-10 && root < 1e-12 && root_vs_bisect < 1e-10 && residual < 1e-5 && residual_fd < 1e-5;
    outcome(
        pass,
        format!(
            "local p-minimal solution: closed forms {closed:.1e} (tol 1e-10), root residual {root:.1e} (tol 1e-12, \
             bisection gap {root_vs_bisect:.1e}), pminimal residual {residual:.1e} / finite differences {residual_fd:.1e} (tol 1e-5)"
        ),
    )
}

type C = [f64; 2];

fn cm(a: C, b: C) -> C {
    [a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]]
}

fn mat_comm(x: [[C; 2]; 2], y: [[C; 2]; 2]) -> [[C; 2]; 2] {
    let mul = |a: [[C; 2]; 2], b: [[C; 2]; 2]| {
        let mut o = [[[0.0; 2]; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let (u, v) = (cm(a[i][0], b[0][j]), cm(a[i][1], b[1][j]));
                o[i][j] = [u[0] + v[0], u[1] + v[1]];
            }
        }
        o
    };
    let (p, q) = (mul(x, y), mul(y, x));
    let mut o = [[[0.0; 2]; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            o[i][j] = [p[i][j][0] - q[i][j][0], p[i][j][1] - q[i][j][1]];
        }
    }
    o
}

fn neg(m: [[C; 2]; 2]) -> [[C; 2]; 2] {
    m.map(|r| r.map(|z| [-z[0], -z[1]]))
}

fn criterion_8() -> Outcome {
    let int = Q::from_integer;
    let mut ok = true;
    let mut notes = Vec::new();
    for (model, a01_2, r) in [(ModelSpace::su2(), -1, 1), (ModelSpace::sl2(), 1, -1)] {
        let k = structure_constants(&model).unwrap();
        let exact = k.get(0, 1, 2) == int(a01_2)
            && k.get(1, 2, 2) == int(0)
            && k.get(1, 2, 0) == int(-1)
            && k.get(0, 1, 0) == int(0)
            && k.get(0, 2, 0) == int(0);
        let cot = [int(-5), Q::new(1, 3), int(0), int(7)].iter().all(|&a| cot_from_constants(&k, a) == int(r));
        let jacobi = jacobi_sum(&model).unwrap().is_zero();
        ok &= exact && cot && jacobi;
        notes.push(format!("{}: a01^2={} cot={} jacobi={}", model.name, k.get(0, 1, 2), r, jacobi));
    }
    let h = structure_constants(&ModelSpace::heisenberg()).unwrap();
    ok &= h.get(1, 2, 0) == int(-1) && (0..3).all(|i| h.get(0, 1, i) == int(0) && h.get(0, 2, i) == int(0));
    ok &= jacobi_sum(&ModelSpace::heisenberg()).unwrap().is_zero();

    // Hand-entered frames; dyadic entries make f64 commutators exact.
    let z = [0.0, 0.0];
    let su2_v0 = [[[0.0, -0.5], z], [z, [0.0, 0.5]]];
    let su2_v1 = [[z, [0.5, 0.0]], [[-0.5, 0.0], z]];
    let su2_v2 = [[z, [0.0, 0.5]], [[0.0, 0.5], z]];
    ok &= mat_comm(su2_v0, su2_v1) == neg(su2_v2) && mat_comm(su2_v1, su2_v2) == neg(su2_v0);
    let sl2_v0 = [[z, [-0.5, 0.0]], [[0.5, 0.0], z]];
    let sl2_v1 = [[[0.5, 0.0], z], [z, [-0.5, 0.0]]];
    let sl2_v2 = [[z, [0.5, 0.0]], [[0.5, 0.0], z]];
    ok &= mat_comm(sl2_v0, sl2_v1) == sl2_v2 && mat_comm(sl2_v1, sl2_v2) == neg(sl2_v0);

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut unit = 0.0f64;
    let mut det = 0.0f64;
    for _ in 0..1000 {
        let u = su2_example_surface(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        unit = unit.max(unitarity_defect(&u));
        det = det.max((u[0][0] * u[1][1] - u[0][1] * u[1][0] - 1.0).norm());
    }
    ok &= unit < 1e-14 && det < 1e-14;
    outcome(ok, format!("model spaces: {}; SU2 surface unitarity {unit:.1e}, |det - 1| {det:.1e} (tol 1e-14)", notes.join("; ")))
}

fn criterion_9() -> Outcome {
    let s = zero_cot_solution(1.0, 0.0, ProfileFunction::Polynomial(vec![0.0, 0.0, 0.5])).unwrap();
    let scan = singular_set_scan(&s, &Grid::square(-1.0, 1.0, 41), 1e-8).unwrap();
    let off_line = scan.points.iter().map(|p| (p.x + p.y).abs() / 2f64.sqrt()).fold(0.0, f64::max);
    let isolated = scan.points.iter().filter(|p| p.isolated).count();
    let pass = scan.points.len() >= 10 && off_line < 1e-6 && isolated == 0;
    outcome(
        pass,
        format!(
            "singular set of xy/2 + x^2/2: {} points, max distance to y = -x {off_line:.1e} (tol 1e-6), {isolated} isolated \
             (refinement radius {:.3})",
            scan.points.len(),
            scan.radius
        ),
    )
}

fn criterion_10(pairs: &[TracePair], step: f64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let families = trace_families();
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let (_, s) = &families[i % families.len()];
        let (x, y) = regular_start(&mut rng, s, 1e-2);
        let j = s.eval_jet(x, y).unwrap();
        let (c, cp) = (cot_jet(&j).unwrap(), cot_printed_jet(&j).unwrap());
        let d = sqrt_d(&j).powi(2);
        worst = worst.max((cp + c).abs() / c.abs().max(1.0 / d));
    }
    let right = riccati_rates(pairs, step, sampled_cot);
    // With the printed sign, traces carrying nonzero COT leave a defect of
    // about 2|r| that does not shrink with the step.
    let mut printed_fail = 0;
    let mut nontrivial = 0;
    for (name, coarse, fine) in pairs {
        if coarse.samples.iter().all(|p| p.r.abs() < 1e-3) {
            continue;
        }
        nontrivial += 1;
        let s = &families.iter().find(|(n, _)| n == name).unwrap().1;
        let wrong = riccati_rates(&[(name, coarse.clone(), fine.clone())], step, printed_cot(s));
        if wrong.bound_ok == 0 || wrong.worst_ratio_dev > 0.2 {
            printed_fail += 1;
        }
    }
    let pass = worst < 1e-12 && right.bound_ok == right.total && right.worst_ratio_dev <= 0.2 && printed_fail == nontrivial;
    outcome(
        pass,
        format!(
            "sign regression: |printed + cot| relative max {worst:.1e} (tol 1e-12) at 1000 samples; cot passes the Riccati \
             check on {}/{} traces, printed sign fails it on {printed_fail}/{nontrivial} traces with nonzero COT",
            right.bound_ok, right.total
        ),
    )
}

fn main() {
    let step = 1e-2;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pairs = paired_traces(&mut rng, 100, step, 0.5);

    let results = vec![
        (1, criterion_1()),
        (2, criterion_2(&pairs, step)),
        (3, criterion_3()),
        (4, criterion_4()),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, criterion_7()),
        (8, criterion_8()),
        (9, criterion_9()),
        (10, criterion_10(&pairs, step)),
    ];
    let mut failed = 0;
    for (n, o) in &results {
        println!("criterion {n:>2}: {} - {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {}/{} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
