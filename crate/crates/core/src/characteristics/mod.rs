//! Characteristic curves and the Riccati evolution of DOT along them.
//!
//! Along a unit-speed characteristic `gamma`, DOT obeys `da/dt = a^2 + r`.
//! Comparing with `dc/dt = c^2 + k(t)` bounds DOT from above (COT `<= k`) or
//! below (COT `>= k`), and the constant-`k` solutions locate the singular
//! points where DOT blows up.

mod comparison;
mod riccati;
mod singular;
mod trace;

pub use comparison::{comparison_check, ComparisonReport, Sense};
pub use riccati::{
    riccati_closed_form, riccati_integrate, CotSign, RiccatiBound, RiccatiOutcome, RiccatiSolution,
    BLOWUP_CUTOFF,
};
pub use singular::{
    detect_blowup, singular_set_scan, singular_verdict, SingularConclusion, SingularPoint, SingularScan,
    SingularVerdict,
};
pub use trace::{trace, trace_many, CharacteristicTrace, Direction, Termination, TraceOptions, TraceSample};
