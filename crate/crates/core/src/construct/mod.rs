//! Exact solution families and their Burgers splittings.
//!
//! * [`zero_cot_solution`]: entire graphs with vanishing COT,
//!   `c1 x^2/(2 c2) - xy/2 + F(c1 x - c2 y)` or `xy/2 + F(x)`.
//! * [`bernstein`]: the two global families of p-minimal graphs.
//! * [`pminimal_local`]: the implicit local p-minimal solution around a
//!   regular point.
//! * [`burgers_field`]: the ratios `g = q/p` and `h = p/q`, which solve
//!   inviscid Burgers equations on solutions of either equation.

mod burgers;
mod families;
mod pminimal;

pub use burgers::{
    burgers_field, burgers_residual, characteristic_line, constancy_along_line, select_branch,
    Branch, BurgersField, Convention, Line,
};
pub use families::{bernstein, zero_cot_solution, BernsteinBranch, ZeroCotFamily};
pub use pminimal::{pminimal_local, PMinimalLocal, RootSolve};
