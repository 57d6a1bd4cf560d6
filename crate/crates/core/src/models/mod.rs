//! Heisenberg, SU(2) and SL(2) with exact brackets and structure constants.

mod exact;
mod surfaces;

use std::fmt;

use num_traits::{One, Zero};

pub use exact::{bracket, q, qi, vf_bracket, ExactMatrix, Poly3, VectorField, Q, Qi};
pub use surfaces::{determinant, sl2_example_surface, su2_example_surface, unitarity_defect, C2x2};

use crate::{Error, Result};
use exact::solve_in_basis;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelName {
    Heisenberg,
    Su2,
    Sl2,
}

impl fmt::Display for ModelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelName::Heisenberg => "heisenberg",
            ModelName::Su2 => "su2",
            ModelName::Sl2 => "sl2",
        })
    }
}

/// Frame element: a Lie algebra matrix or a polynomial vector field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    Matrix(ExactMatrix),
    Field(VectorField),
}

impl Element {
    pub fn is_zero(&self) -> bool {
        match self {
            Element::Matrix(m) => m.is_zero(),
            Element::Field(v) => v.is_zero(),
        }
    }

    fn scale(&self, s: Q) -> Element {
        match self {
            Element::Matrix(m) => Element::Matrix(m.scale(s)),
            Element::Field(v) => Element::Field(v.scale(s)),
        }
    }

    /// Printable entries: matrix rows, or the three vector-field components.
    pub fn display_entries(&self) -> Vec<String> {
        match self {
            Element::Matrix(m) => m.rows_display().into_iter().map(|r| format!("[{}]", r.join(", "))).collect(),
            Element::Field(v) => v.components_display(),
        }
    }
}

/// Bracket of two frame elements of the same kind.
pub fn element_bracket(a: &Element, b: &Element) -> Result<Element> {
    match (a, b) {
        (Element::Matrix(x), Element::Matrix(y)) => Ok(Element::Matrix(bracket(x, y)?)),
        (Element::Field(x), Element::Field(y)) => Ok(Element::Field(vf_bracket(x, y))),
        _ => Err(Error::DimensionMismatch("cannot bracket a matrix with a vector field".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSpace {
    pub name: ModelName,
    /// `[v0, v1, v2]`: Reeb field first, then the adapted horizontal frame.
    pub frame: [Element; 3],
}

fn mat(rows: [[(i64, i64, i64, i64); 2]; 2]) -> Element {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|&(a, b, c, d)| qi(q(a, b), q(c, d))).collect())
        .collect();
    Element::Matrix(ExactMatrix::from_rows(rows).expect("2x2 literal"))
}

impl ModelSpace {
    /// `v1 = d/dx - y/2 d/dz`, `v2 = d/dy + x/2 d/dz`, `v0 = -d/dz`.
    pub fn heisenberg() -> Self {
        let one = Poly3::constant(Q::one());
        let zero = Poly3::default();
        let v0 = VectorField([zero.clone(), zero.clone(), Poly3::constant(-Q::one())]);
        let v1 = VectorField([one.clone(), zero.clone(), Poly3::monomial(q(-1, 2), [0, 1, 0])]);
        let v2 = VectorField([zero, one, Poly3::monomial(q(1, 2), [1, 0, 0])]);
        ModelSpace { name: ModelName::Heisenberg, frame: [Element::Field(v0), Element::Field(v1), Element::Field(v2)] }
    }

    pub fn su2() -> Self {
        let z = (0, 1, 0, 1);
        let v0 = mat([[(0, 1, -1, 2), z], [z, (0, 1, 1, 2)]]);
        let v1 = mat([[z, (1, 2, 0, 1)], [(-1, 2, 0, 1), z]]);
        let v2 = mat([[z, (0, 1, 1, 2)], [(0, 1, 1, 2), z]]);
        ModelSpace { name: ModelName::Su2, frame: [v0, v1, v2] }
    }

    pub fn sl2() -> Self {
        let z = (0, 1, 0, 1);
        let v0 = mat([[z, (-1, 2, 0, 1)], [(1, 2, 0, 1), z]]);
        let v1 = mat([[(1, 2, 0, 1), z], [z, (-1, 2, 0, 1)]]);
        let v2 = mat([[z, (1, 2, 0, 1)], [(1, 2, 0, 1), z]]);
        ModelSpace { name: ModelName::Sl2, frame: [v0, v1, v2] }
    }

    pub fn by_name(name: ModelName) -> Self {
        match name {
            ModelName::Heisenberg => Self::heisenberg(),
            ModelName::Su2 => Self::su2(),
            ModelName::Sl2 => Self::sl2(),
        }
    }

    pub fn bracket(&self, i: usize, j: usize) -> Result<Element> {
        element_bracket(&self.frame[i], &self.frame[j])
    }

    /// Coordinates of `e` in the frame basis.
    pub fn decompose(&self, e: &Element) -> Result<[Q; 3]> {
        let (basis, target): (Vec<Vec<Q>>, Vec<Q>) = match e {
            Element::Matrix(m) => {
                let basis = self
                    .frame
                    .iter()
                    .map(|v| match v {
                        Element::Matrix(b) if b.dim() == m.dim() => Ok(b.coords()),
                        _ => Err(Error::DimensionMismatch("frame and element differ in kind or size".into())),
                    })
                    .collect::<Result<_>>()?;
                (basis, m.coords())
            }
            Element::Field(f) => {
                let mut monos = f.monomials();
                for v in &self.frame {
                    match v {
                        Element::Field(b) => monos.extend(b.monomials()),
                        _ => return Err(Error::DimensionMismatch("frame and element differ in kind".into())),
                    }
                }
                monos.sort_unstable();
                monos.dedup();
                if monos.is_empty() {
                    monos.push([0, 0, 0]);
                }
                let basis = self
                    .frame
                    .iter()
                    .map(|v| match v {
                        Element::Field(b) => b.coords(&monos),
                        Element::Matrix(_) => unreachable!(),
                    })
                    .collect();
                (basis, f.coords(&monos))
            }
        };
        let c = solve_in_basis(&basis, &target)
            .ok_or_else(|| Error::FrameNotBasis(format!("{} frame does not span the bracket", self.name)))?;
        Ok([c[0], c[1], c[2]])
    }
}

/// `a_ij^k` for `0 <= i < j <= 2`, with `[v_i, v_j] = sum_k a_ij^k v_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureConstants {
    /// Rows are the pairs `(0,1)`, `(0,2)`, `(1,2)`.
    pub table: [[Q; 3]; 3],
}

pub const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

impl StructureConstants {
    /// `a_ij^k`, antisymmetric in `(i, j)`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Q {
        if i == j {
            return Q::zero();
        }
        let (a, b, sign) = if i < j { (i, j, Q::one()) } else { (j, i, -Q::one()) };
        let row = PAIRS.iter().position(|&p| p == (a, b)).expect("index below 3");
        sign * self.table[row][k]
    }
}

pub fn structure_constants(model: &ModelSpace) -> Result<StructureConstants> {
    let mut table = [[Q::zero(); 3]; 3];
    for (row, &(i, j)) in PAIRS.iter().enumerate() {
        table[row] = model.decompose(&model.bracket(i, j)?)?;
    }
    Ok(StructureConstants { table })
}

/// `[v0,[v1,v2]] + [v1,[v2,v0]] + [v2,[v0,v1]]`; zero for every Lie algebra.
pub fn jacobi_sum(model: &ModelSpace) -> Result<Element> {
    let f = &model.frame;
    let t1 = element_bracket(&f[0], &model.bracket(1, 2)?)?;
    let t2 = element_bracket(&f[1], &model.bracket(2, 0)?)?;
    let t3 = element_bracket(&f[2], &model.bracket(0, 1)?)?;
    Ok(match (t1, t2, t3) {
        (Element::Matrix(a), Element::Matrix(b), Element::Matrix(c)) => {
            Element::Matrix(a.try_add(&b)?.try_add(&c)?)
        }
        (Element::Field(a), Element::Field(b), Element::Field(c)) => {
            let s: [Poly3; 3] = std::array::from_fn(|k| &(&a.0[k] + &b.0[k]) + &c.0[k]);
            Element::Field(VectorField(s))
        }
        _ => unreachable!("brackets preserve the element kind"),
    })
}

/// COT of a surface foliated by integral curves of `v1`: `-a01^2 - a * a12^2`.
pub fn cot_from_constants(c: &StructureConstants, a: Q) -> Q {
    -c.get(0, 1, 2) - a * c.get(1, 2, 2)
}

/// Floating-point variant of [`cot_from_constants`].
pub fn cot_from_constants_f64(c: &StructureConstants, a: f64) -> f64 {
    let f = |v: Q| *v.numer() as f64 / *v.denom() as f64;
    -f(c.get(0, 1, 2)) - a * f(c.get(1, 2, 2))
}

/// Rescales the horizontal frame to `(lam v1, lam v2)` and recomputes the
/// Reeb field as `-[v1', v2']`, keeping `a12^0 = -1`.
pub fn rescale(model: &ModelSpace, lam: Q) -> Result<ModelSpace> {
    if lam <= Q::zero() {
        return Err(Error::InvalidArgument("scale must be positive".into()));
    }
    let c = structure_constants(model)?;
    if !c.get(1, 2, 1).is_zero() || !c.get(1, 2, 2).is_zero() {
        return Err(Error::NotApplicable("[v1, v2] has horizontal part; the Reeb field is not -[v1, v2]".into()));
    }
    let v1 = model.frame[1].scale(lam);
    let v2 = model.frame[2].scale(lam);
    let v0 = element_bracket(&v1, &v2)?.scale(-Q::one());
    Ok(ModelSpace { name: model.name, frame: [v0, v1, v2] })
}

/// Constant COT of the rescaled structure, measured through its structure
/// constants.
pub fn rescale_check(model: &ModelSpace, lam: Q) -> Result<Q> {
    let scaled = rescale(model, lam)?;
    let c = structure_constants(&scaled)?;
    if !c.get(1, 2, 2).is_zero() {
        return Err(Error::NotApplicable("a12^2 is not zero after rescaling".into()));
    }
    Ok(cot_from_constants(&c, Q::zero()))
}
