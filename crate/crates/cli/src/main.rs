use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use dotcot::characteristics::{trace, Direction, TraceOptions};
use dotcot::construct::{bernstein, pminimal_local, zero_cot_solution, BernsteinBranch};
use dotcot::export::{write_grid_csv, write_solution_csv, write_trace_csv};
use dotcot::grid::{sample_grid, sample_solution, Grid};
use dotcot::models::{structure_constants, ModelName, ModelSpace, Q, PAIRS};
use dotcot::verify::{run_suite, Suite};
use dotcot::{Error, ProfileFunction, SurfaceGraph, SINGULAR_EPS};

#[derive(Parser)]
#[command(name = "dotcot", version, about = "DOT/COT evaluation, characteristic traces and model tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample f, p, q, DOT, COT and both PDE residuals on a grid.
    Eval {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Trace one characteristic curve.
    Trace {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long, allow_hyphen_values = true)]
        y0: f64,
        #[arg(long, value_enum, default_value_t = DirectionArg::Forward)]
        direction: DirectionArg,
        #[arg(long, default_value_t = 1e-3, value_parser = positive)]
        step: f64,
        #[arg(long = "max-t", default_value_t = 1.0, value_parser = positive)]
        max_t: f64,
        #[arg(long, default_value_t = SINGULAR_EPS, value_parser = positive)]
        eps: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Build a solution family and sample its jet and Burgers ratios.
    Solve {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a verification suite and write a JSON report.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print bracket tables and structure constants as JSON.
    Models {
        #[arg(long, value_enum, default_value_t = ModelArg::All)]
        model: ModelArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Zero,
    Plane,
    Xy2,
    ZeroCot,
    BernsteinLinear,
    BernsteinQuadratic,
    PminimalLocal,
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    b: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    c: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    c1: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    c2: f64,
    /// Profile F: const:c | linear:s,i | poly:c0,c1,... | sin[:amp,freq,phase] | cos[...] | zero
    #[arg(long, default_value = "zero", value_parser = profile)]
    profile: ProfileFunction,
    /// Profile g (quadratic Bernstein) or G (local p-minimal).
    #[arg(long = "g-profile", default_value = "zero", value_parser = profile)]
    g_profile: ProfileFunction,
    /// x0 of the local p-minimal solution.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    center: f64,
}

impl SurfaceArgs {
    fn build(&self) -> dotcot::Result<SurfaceGraph> {
        let (f, g) = (self.profile.clone(), self.g_profile.clone());
        match self.family {
            Family::Zero => Ok(SurfaceGraph::zero()),
            Family::Plane => Ok(SurfaceGraph::plane(self.a, self.b, self.c)),
            Family::Xy2 => Ok(SurfaceGraph::half_xy()),
            Family::ZeroCot => zero_cot_solution(self.c1, self.c2, f),
            Family::BernsteinLinear => bernstein(BernsteinBranch::Linear { a: self.a, b: self.b, c: self.c }),
            Family::BernsteinQuadratic => bernstein(BernsteinBranch::Quadratic { a: self.a, b: self.b, g }),
            Family::PminimalLocal => Ok(pminimal_local(self.center, f, g)),
        }
    }
}

#[derive(Args)]
struct GridArgs {
    #[arg(long = "x-min", default_value_t = -1.0, allow_hyphen_values = true)]
    x_min: f64,
    #[arg(long = "x-max", default_value_t = 1.0, allow_hyphen_values = true)]
    x_max: f64,
    #[arg(long = "y-min", default_value_t = -1.0, allow_hyphen_values = true)]
    y_min: f64,
    #[arg(long = "y-max", default_value_t = 1.0, allow_hyphen_values = true)]
    y_max: f64,
    /// Nodes per axis.
    #[arg(long, default_value_t = 41, value_parser = clap::value_parser!(u32).range(2..))]
    n: u32,
    #[arg(long, default_value_t = SINGULAR_EPS, value_parser = positive)]
    eps: f64,
}

impl GridArgs {
    fn grid(&self) -> Grid {
        let n = self.n as usize;
        Grid { x_min: self.x_min, x_max: self.x_max, y_min: self.y_min, y_max: self.y_max, nx: n, ny: n }
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Forward,
    Backward,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Riccati,
    Families,
    Burgers,
    Models,
    Comparison,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Heisenberg,
    Su2,
    Sl2,
    All,
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("expected a positive number, got {s}"))
    }
}

fn profile(s: &str) -> Result<ProfileFunction, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Core(Error),
    Io(io::Error),
    Json(serde_json::Error),
    ChecksFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Json(e)
    }
}

fn sink(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, value: &T) -> Result<(), Failure> {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn rational(v: &Q) -> Value {
    if v.is_integer() {
        json!(*v.numer())
    } else {
        json!(format!("{}/{}", v.numer(), v.denom()))
    }
}

fn model_table(name: ModelName) -> Result<Value, Failure> {
    let model = ModelSpace::by_name(name);
    let consts = structure_constants(&model)?;
    let mut brackets = Map::new();
    let mut constants = Map::new();
    for (row, &(i, j)) in PAIRS.iter().enumerate() {
        let b = model.bracket(i, j)?;
        brackets.insert(format!("[v{i},v{j}]"), json!(b.display_entries()));
        constants.insert(format!("a{i}{j}"), Value::Array(consts.table[row].iter().map(rational).collect()));
    }
    Ok(json!({ "model": name.to_string(), "brackets": brackets, "constants": constants }))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Eval { surface, grid, out } => {
            let rows = sample_grid(&surface.build()?, &grid.grid(), grid.eps)?;
            match out.format {
                Format::Csv => {
                    let mut w = sink(&out.out)?;
                    write_grid_csv(&rows, &mut w)?;
                    w.flush()?;
                }
                Format::Json => write_json(&out.out, &rows)?,
            }
        }
        Command::Trace { surface, x0, y0, direction, step, max_t, eps, out } => {
            let direction = match direction {
                DirectionArg::Forward => Direction::Forward,
                DirectionArg::Backward => Direction::Backward,
            };
            let mut opts = TraceOptions::new(direction, step, max_t);
            opts.approach_eps = eps;
            let tr = trace(&surface.build()?, (x0, y0), &opts)?;
            match out.format {
                Format::Csv => {
                    let mut w = sink(&out.out)?;
                    write_trace_csv(&tr, &mut w)?;
                    w.flush()?;
                }
                Format::Json => write_json(
                    &out.out,
                    &json!({ "termination": tr.termination, "direction": tr.direction, "step": tr.step, "samples": tr.samples }),
                )?,
            }
        }
        Command::Solve { surface, grid, out } => {
            let rows = sample_solution(&surface.build()?, &grid.grid(), grid.eps)?;
            match out.format {
                Format::Csv => {
                    let mut w = sink(&out.out)?;
                    write_solution_csv(&rows, &mut w)?;
                    w.flush()?;
                }
                Format::Json => write_json(&out.out, &rows)?,
            }
        }
        Command::Verify { suite, out } => {
            let suite = match suite {
                SuiteArg::Riccati => Suite::Riccati,
                SuiteArg::Families => Suite::Families,
                SuiteArg::Burgers => Suite::Burgers,
                SuiteArg::Models => Suite::Models,
                SuiteArg::Comparison => Suite::Comparison,
            };
            let report = run_suite(suite);
            write_json(&out, &report)?;
            if !report.all_passed() {
                return Err(Failure::ChecksFailed);
            }
        }
        Command::Models { model, out } => {
            let names: &[ModelName] = match model {
                ModelArg::Heisenberg => &[ModelName::Heisenberg],
                ModelArg::Su2 => &[ModelName::Su2],
                ModelArg::Sl2 => &[ModelName::Sl2],
                ModelArg::All => &[ModelName::Heisenberg, ModelName::Su2, ModelName::Sl2],
            };
            let tables = names.iter().map(|&n| model_table(n)).collect::<Result<Vec<_>, _>>()?;
            if tables.len() == 1 {
                write_json(&out, &tables[0])?;
            } else {
                write_json(&out, &tables)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            if e.is_domain_error() {
                ExitCode::from(3)
            } else if matches!(e, Error::InvalidArgument(_) | Error::DegenerateParams(_)) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Json(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::ChecksFailed) => {
            eprintln!("error: verification checks failed");
            ExitCode::from(1)
        }
    }
}
