//! CSV writers. Floats use the shortest representation that round-trips;
//! undefined values are written as `NaN`, singular DOT as `-inf`.

use std::io;

use crate::characteristics::CharacteristicTrace;
use crate::grid::{GridSample, SolutionSample};
use crate::Result;

pub const TRACE_HEADER: [&str; 5] = ["t", "x", "y", "a", "r"];
pub const GRID_HEADER: [&str; 9] = ["x", "y", "f", "p", "q", "a", "r", "zcot_residual", "pminimal_residual"];
pub const SOLUTION_HEADER: [&str; 10] = ["x", "y", "f", "fx", "fy", "fxx", "fxy", "fyy", "g", "h"];

/// Shortest round-trip decimal.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

fn write_rows<W, const N: usize, I>(w: W, header: [&str; N], rows: I) -> Result<()>
where
    W: io::Write,
    I: IntoIterator<Item = [f64; N]>,
{
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header)?;
    for row in rows {
        out.write_record(row.iter().map(|&v| fmt_f64(v)))?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_trace_csv<W: io::Write>(trace: &CharacteristicTrace, w: W) -> Result<()> {
    write_rows(w, TRACE_HEADER, trace.samples.iter().map(|s| [s.t, s.x, s.y, s.a, s.r]))
}

pub fn write_grid_csv<W: io::Write>(rows: &[GridSample], w: W) -> Result<()> {
    write_rows(
        w,
        GRID_HEADER,
        rows.iter().map(|s| [s.x, s.y, s.f, s.p, s.q, s.a, s.r, s.zcot_residual, s.pminimal_residual]),
    )
}

pub fn write_solution_csv<W: io::Write>(rows: &[SolutionSample], w: W) -> Result<()> {
    write_rows(
        w,
        SOLUTION_HEADER,
        rows.iter().map(|s| [s.x, s.y, s.f, s.fx, s.fy, s.fxx, s.fxy, s.fyy, s.g, s.h]),
    )
}
