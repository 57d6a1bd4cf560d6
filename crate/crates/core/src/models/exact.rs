//! Exact matrices over `Q[i]` and polynomial vector fields over `Q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Q = Rational64;
pub type Qi = Complex<Rational64>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn qi(re: Q, im: Q) -> Qi {
    Complex::new(re, im)
}

pub(crate) fn fmt_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub(crate) fn fmt_qi(z: &Qi) -> String {
    let (re, im) = (z.re, z.im);
    let imag = |v: &Q| {
        if *v == Q::one() {
            "i".to_string()
        } else if *v == -Q::one() {
            "-i".to_string()
        } else if v.is_integer() {
            format!("{}i", v.numer())
        } else if v.numer().abs() == 1 {
            format!("{}i/{}", if v.is_negative() { "-" } else { "" }, v.denom())
        } else {
            format!("{}i/{}", v.numer(), v.denom())
        }
    };
    match (re.is_zero(), im.is_zero()) {
        (_, true) => fmt_q(&re),
        (true, false) => imag(&im),
        (false, false) => {
            let sign = if im.is_negative() { "-" } else { "+" };
            format!("{}{}{}", fmt_q(&re), sign, imag(&im.abs()))
        }
    }
}

/// Square matrix with entries in `Q[i]`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<Qi>,
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<Vec<Qi>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix rows must form a non-empty square".into()));
        }
        Ok(ExactMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn zero(n: usize) -> Self {
        ExactMatrix { n, entries: vec![Qi::zero(); n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Qi {
        self.entries[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn scale(&self, s: Q) -> Self {
        ExactMatrix { n: self.n, entries: self.entries.iter().map(|e| e * s).collect() }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("{}x{} vs {}x{}", self.n, self.n, other.n, other.n)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(ExactMatrix { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.n;
        let mut out = ExactMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Qi::zero();
                for k in 0..n {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.entries[i * n + j] = acc;
            }
        }
        Ok(out)
    }

    /// Real and imaginary parts of every entry, in a fixed order.
    pub(crate) fn coords(&self) -> Vec<Q> {
        self.entries.iter().flat_map(|e| [e.re, e.im]).collect()
    }

    pub fn rows_display(&self) -> Vec<Vec<String>> {
        (0..self.n).map(|i| (0..self.n).map(|j| fmt_qi(&self.get(i, j))).collect()).collect()
    }
}

/// Commutator `XY - YX`.
pub fn bracket(x: &ExactMatrix, y: &ExactMatrix) -> Result<ExactMatrix> {
    let xy = x.try_mul(y)?;
    let yx = y.try_mul(x)?;
    xy.try_add(&yx.scale(-Q::one()))
}

/// Polynomial in `x, y, z` with rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Poly3 {
    terms: BTreeMap<[u32; 3], Q>,
}

impl Poly3 {
    pub fn constant(c: Q) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: Q, exps: [u32; 3]) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly3 { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Poly3::default();
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut e2 = *e;
                e2[var] -= 1;
                out.add_term(e2, c * Q::from_integer(e[var] as i64));
            }
        }
        out
    }

    fn add_term(&mut self, e: [u32; 3], c: Q) {
        let v = self.terms.entry(e).or_insert_with(Q::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: [u32; 3]) -> Q {
        self.terms.get(&e).copied().unwrap_or_else(Q::zero)
    }
}

impl Add for &Poly3 {
    type Output = Poly3;
    fn add(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, *c);
        }
        out
    }
}

impl Neg for &Poly3 {
    type Output = Poly3;
    fn neg(self) -> Poly3 {
        Poly3 { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Sub for &Poly3 {
    type Output = Poly3;
    fn sub(self, rhs: &Poly3) -> Poly3 {
        self + &(-rhs)
    }
}

impl Mul for &Poly3 {
    type Output = Poly3;
    fn mul(self, rhs: &Poly3) -> Poly3 {
        let mut out = Poly3::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let vars: Vec<String> = ["x", "y", "z"]
                .iter()
                .zip(e)
                .filter(|(_, &p)| p > 0)
                .map(|(v, &p)| if p == 1 { v.to_string() } else { format!("{v}^{p}") })
                .collect();
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(sign)?;
            if vars.is_empty() || !mag.is_one() {
                f.write_str(&fmt_q(&mag))?;
                if !vars.is_empty() {
                    f.write_str("*")?;
                }
            }
            f.write_str(&vars.join("*"))?;
        }
        Ok(())
    }
}

/// `X = X^0 d/dx + X^1 d/dy + X^2 d/dz` with polynomial coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VectorField(pub [Poly3; 3]);

impl VectorField {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Poly3::is_zero)
    }

    pub fn scale(&self, s: Q) -> Self {
        let c = Poly3::constant(s);
        VectorField([&self.0[0] * &c, &self.0[1] * &c, &self.0[2] * &c])
    }

    /// Coefficients of every component on the union of the given monomials.
    pub(crate) fn coords(&self, monomials: &[[u32; 3]]) -> Vec<Q> {
        self.0.iter().flat_map(|p| monomials.iter().map(|m| p.coefficient(*m))).collect()
    }

    pub(crate) fn monomials(&self) -> Vec<[u32; 3]> {
        self.0.iter().flat_map(|p| p.terms().map(|(e, _)| *e)).collect()
    }

    pub fn components_display(&self) -> Vec<String> {
        self.0.iter().map(|p| p.to_string()).collect()
    }
}

/// Vector-field bracket `[X, Y]^k = X(Y^k) - Y(X^k)`.
pub fn vf_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    let apply = |v: &VectorField, p: &Poly3| {
        (0..3).fold(Poly3::default(), |acc, j| &acc + &(&v.0[j] * &p.derivative(j)))
    };
    VectorField(std::array::from_fn(|k| &apply(x, &y.0[k]) - &apply(y, &x.0[k])))
}

/// Solves `sum_k c_k basis[k] = target` over `Q` by exact elimination.
/// Returns `None` if the basis is dependent or the system is inconsistent.
pub(crate) fn solve_in_basis(basis: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let m = basis.len();
    let rows = target.len();
    // augmented matrix: rows x (m + 1)
    let mut a: Vec<Vec<Q>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Q> = basis.iter().map(|b| b[r]).collect();
            row.push(target[r]);
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(m);
    for col in 0..m {
        let p = (pivot_row..rows).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot_row, p);
        let inv = a[pivot_row][col].recip();
        for v in a[pivot_row].iter_mut() {
            *v *= inv;
        }
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let factor = a[r][col];
                let pivot = a[pivot_row].clone();
                for (v, pv) in a[r].iter_mut().zip(&pivot) {
                    *v -= factor * pv;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| a[r][m]).collect())
}
