//! Parametrized surfaces of constant COT in SU(2) and SL(2).

use num_complex::Complex64;

pub type C2x2 = [[Complex64; 2]; 2];

fn mul(a: &C2x2, b: &C2x2) -> C2x2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Rotation by `theta1 / 2` times the `i`-twisted rotation by `theta2 / 2`.
pub fn su2_example_surface(theta1: f64, theta2: f64) -> C2x2 {
    let (s1, c1) = (0.5 * theta1).sin_cos();
    let (s2, c2) = (0.5 * theta2).sin_cos();
    let a = [[re(c1), re(s1)], [re(-s1), re(c1)]];
    let b = [[re(c2), Complex64::new(0.0, s2)], [Complex64::new(0.0, s2), re(c2)]];
    mul(&a, &b)
}

/// `exp(theta1 v1) exp(theta2 v2)` for the SL(2) frame.
pub fn sl2_example_surface(theta1: f64, theta2: f64) -> C2x2 {
    let e = (0.5 * theta1).exp();
    let (sh, ch) = ((0.5 * theta2).sinh(), (0.5 * theta2).cosh());
    let a = [[re(e), re(0.0)], [re(0.0), re(1.0 / e)]];
    let b = [[re(ch), re(sh)], [re(sh), re(ch)]];
    mul(&a, &b)
}

pub fn determinant(m: &C2x2) -> Complex64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Max-entry norm of `U U* - I`.
pub fn unitarity_defect(m: &C2x2) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let v = m[i][0] * m[j][0].conj() + m[i][1] * m[j][1].conj();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - re(target)).norm());
        }
    }
    worst
}
