//! `rectihull`: seeds, rectification pipelines, measure tables, probes and mesh export.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rectihull_core::io::{polygon_to_off_string, read_off, to_obj_string, to_off_string};
use rectihull_core::measure::{measure, polygon_series, prism_rect_volume_report, MeasureReport};
use rectihull_core::polar::{
    check_lemma1, inradius_normalized, probe_conjecture1, probe_conjecture3, probe_mahler,
};
use rectihull_core::polyhedron::validate;
use rectihull_core::tolerance::EPS_REL_ENV;
use rectihull_core::{
    iterate, seed_polygon, seed_shape, Error, FVector, Polyhedron, ProbeResult, Shape,
    TolerancePolicy, Verdict,
};

#[derive(Parser, Debug)]
#[command(
    name = "rectihull",
    version,
    about = "Iterated rectification of convex polytopes"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Relative tolerance for geometric predicates.
    #[arg(long, global = true, env = EPS_REL_ENV)]
    eps_rel: Option<f64>,
    /// Absolute tolerance floor.
    #[arg(long, global = true)]
    eps_abs: Option<f64>,
    /// Report format on stdout.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Off,
    Obj,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a seed solid (or `polygon N` for a regular n-gon of area 1).
    Seed {
        /// tetrahedron, cube, octahedron, icosahedron, dodecahedron, prism, polygon
        name: String,
        /// Side count for `prism` and `polygon`.
        param: Option<usize>,
        /// Write the mesh here (.obj for OBJ, OFF otherwise).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Rectify a solid k times and report every member of the sequence.
    Rectify {
        /// OFF file or seed name (e.g. cube, prism5).
        input: String,
        #[arg(short = 'k', long = "steps", default_value_t = 1)]
        steps: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Closed-form vs measured areas and sides of the rectified regular n-gon.
    PolygonSeries {
        n: usize,
        #[arg(short = 'k', long = "steps", default_value_t = 6)]
        steps: usize,
    },
    /// Volume, surface area and edge statistics of a solid.
    Measure {
        /// OFF file or seed name.
        #[arg(required_unless_present = "prism_rect")]
        input: Option<String>,
        /// Compare readings of the rectified n-prism volume instead.
        #[arg(long, value_name = "N", conflicts_with = "input")]
        prism_rect: Option<usize>,
    },
    /// Numerical probe of a polar-duality statement.
    Probe {
        #[arg(value_enum)]
        kind: ProbeKind,
        /// OFF file or seed name.
        #[arg(long)]
        seed: String,
        /// Scaling applied to the solid before probing.
        #[arg(long, value_enum, default_value_t = Normalize::Inradius)]
        normalize: Normalize,
    },
    /// Write R_k of a solid as OFF or OBJ.
    Export {
        /// OFF file or seed name.
        input: String,
        #[arg(short = 'k', long = "steps", default_value_t = 0)]
        steps: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ProbeKind {
    Conj1,
    Conj3,
    Lemma1,
    Mahler,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Normalize {
    /// Centre at the centroid and scale to inradius 1 (the cube becomes [-1,1]^3).
    Inradius,
    /// Use the solid as given.
    None,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
    #[error("serializing report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("probe verdict is inconclusive")]
    Inconclusive,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Inconclusive => 4,
            CliError::Json(_) => 1,
            CliError::Core(e) => match e {
                Error::InvalidParameter(_)
                | Error::Parse { .. }
                | Error::Io(_)
                | Error::Validation(_) => 2,
                Error::Degenerate { .. }
                | Error::Infeasible(_)
                | Error::DecompositionNotExact { .. }
                | Error::FVectorMismatch { .. } => 3,
                Error::Internal(_) => 1,
            },
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Inconclusive) => ExitCode::from(4),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn tolerance(g: &GlobalOpts) -> CliResult<TolerancePolicy> {
    let d = TolerancePolicy::default();
    Ok(TolerancePolicy::new(
        g.eps_rel.unwrap_or(d.rel_eps),
        g.eps_abs.unwrap_or(d.abs_eps),
    )?)
}

fn format(g: &GlobalOpts) -> Format {
    if g.json {
        Format::Json
    } else {
        g.format.unwrap_or(Format::Table)
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let tol = tolerance(&cli.global)?;
    let fmt = format(&cli.global);
    match cli.command {
        Command::Seed { name, param, out } => cmd_seed(&name, param, out.as_deref(), fmt, tol),
        Command::Rectify { input, steps, out } => {
            cmd_rectify(&input, steps, out.as_deref(), fmt, tol)
        }
        Command::PolygonSeries { n, steps } => {
            let series = polygon_series(n, steps, tol)?;
            emit(fmt, &series, || series.to_table())
        }
        Command::Measure { input, prism_rect } => match (input, prism_rect) {
            (_, Some(n)) => {
                let r = prism_rect_volume_report(n, tol)?;
                emit(fmt, &r, || r.to_table())
            }
            (Some(input), None) => {
                let p = load(&input, tol)?;
                let r = MeasureOutput {
                    fvector: p.fvector(),
                    measure: measure(&p, tol)?,
                };
                if let Some(text) = mesh_text(fmt, &p) {
                    print!("{text}");
                    return Ok(());
                }
                emit(fmt, &r, || {
                    format!("f-vector      {}\n{}", r.fvector, r.measure.to_table())
                })
            }
            (None, None) => Err(CliError::Usage(
                "measure needs an input or --prism-rect".into(),
            )),
        },
        Command::Probe {
            kind,
            seed,
            normalize,
        } => cmd_probe(kind, &seed, normalize, fmt, tol),
        Command::Export { input, steps, out } => {
            let p = load(&input, tol)?;
            let last = iterate(&p, steps, tol)?.last;
            match out {
                Some(path) => write_mesh(&path, &last),
                None => {
                    let text = match fmt {
                        Format::Obj => to_obj_string(&last),
                        _ => to_off_string(&last),
                    };
                    print!("{text}");
                    Ok(())
                }
            }
        }
    }
}

#[derive(Serialize)]
struct MeasureOutput {
    fvector: FVector,
    measure: MeasureReport,
}

#[derive(Serialize)]
struct SeedOutput {
    shape: String,
    fvector: FVector,
    measure: MeasureReport,
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct PolygonSeedOutput {
    n: usize,
    vertices: Vec<[f64; 2]>,
    area: f64,
    perimeter: f64,
    out: Option<PathBuf>,
}

fn cmd_seed(
    name: &str,
    param: Option<usize>,
    out: Option<&Path>,
    fmt: Format,
    tol: TolerancePolicy,
) -> CliResult<()> {
    if name.eq_ignore_ascii_case("polygon") {
        let n = param.ok_or_else(|| CliError::Usage("polygon needs a side count".into()))?;
        let poly = seed_polygon(n, 1.0)?;
        let off = polygon_to_off_string(&poly);
        if let Some(path) = out {
            std::fs::write(path, &off)?;
        }
        if matches!(fmt, Format::Off | Format::Obj) {
            print!("{off}");
            return Ok(());
        }
        let r = PolygonSeedOutput {
            n,
            vertices: poly.vertices().iter().map(|v| [v.x, v.y]).collect(),
            area: poly.area(),
            perimeter: poly.perimeter(),
            out: out.map(Path::to_path_buf),
        };
        return emit(fmt, &r, || {
            let mut s = format!("regular {n}-gon\n");
            for v in &r.vertices {
                s.push_str(&format!("{:>22.15} {:>22.15}\n", v[0], v[1]));
            }
            s.push_str(&format!(
                "area       {:.15}\nperimeter  {:.15}\n",
                r.area, r.perimeter
            ));
            s
        });
    }
    let shape = Shape::from_name(name, param)?;
    let p = seed_shape(shape)?;
    if let Some(path) = out {
        write_mesh(path, &p)?;
    }
    if let Some(text) = mesh_text(fmt, &p) {
        print!("{text}");
        return Ok(());
    }
    let r = SeedOutput {
        shape: shape.to_string(),
        fvector: p.fvector(),
        measure: measure(&p, tol)?,
        out: out.map(Path::to_path_buf),
    };
    emit(fmt, &r, || {
        format!(
            "{}\nf-vector      {}\n{}",
            r.shape,
            r.fvector,
            r.measure.to_table()
        )
    })
}

fn cmd_rectify(
    input: &str,
    steps: usize,
    out: Option<&Path>,
    fmt: Format,
    tol: TolerancePolicy,
) -> CliResult<()> {
    let p = load(input, tol)?;
    let report = iterate(&p, steps, tol)?;
    if let Some(path) = out {
        write_mesh(path, &report.last)?;
    }
    if let Some(text) = mesh_text(fmt, &report.last) {
        print!("{text}");
        return Ok(());
    }
    emit(fmt, &report, || report.to_table())
}

fn cmd_probe(
    kind: ProbeKind,
    seed: &str,
    normalize: Normalize,
    fmt: Format,
    tol: TolerancePolicy,
) -> CliResult<()> {
    let mut p = load(seed, tol)?;
    let mut scale = 1.0;
    if normalize == Normalize::Inradius {
        (p, scale) = inradius_normalized(&p, tol)?;
    }
    let mut r: ProbeResult = match kind {
        ProbeKind::Conj1 => probe_conjecture1(&p, tol)?,
        ProbeKind::Conj3 => probe_conjecture3(&p, tol)?,
        ProbeKind::Lemma1 => check_lemma1(&p, tol)?,
        ProbeKind::Mahler => probe_mahler(&p, tol)?,
    };
    if normalize == Normalize::Inradius {
        r.notes.push(format!(
            "input centred and scaled by {scale} to inradius 1 about its centroid"
        ));
    }
    emit(fmt, &r, || r.to_table())?;
    if r.verdict == Verdict::Inconclusive {
        return Err(CliError::Inconclusive);
    }
    Ok(())
}

/// An OFF path if one exists, otherwise a seed name such as `cube` or `prism5`.
fn load(input: &str, tol: TolerancePolicy) -> CliResult<Polyhedron> {
    let path = Path::new(input);
    if path.exists() {
        let p = read_off(path)?;
        validate(&p, tol).into_result()?;
        return Ok(p);
    }
    match Shape::from_name(input, None) {
        Ok(shape) => Ok(seed_shape(shape)?),
        Err(_) => Err(CliError::Usage(format!(
            "{input:?} is neither a readable OFF file nor a seed name"
        ))),
    }
}

fn write_mesh(path: &Path, p: &Polyhedron) -> CliResult<()> {
    let is_obj = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("obj"));
    let text = if is_obj {
        to_obj_string(p)
    } else {
        to_off_string(p)
    };
    std::fs::write(path, text)?;
    Ok(())
}

fn mesh_text(fmt: Format, p: &Polyhedron) -> Option<String> {
    match fmt {
        Format::Off => Some(to_off_string(p)),
        Format::Obj => Some(to_obj_string(p)),
        _ => None,
    }
}

fn emit<T: Serialize>(fmt: Format, value: &T, table: impl FnOnce() -> String) -> CliResult<()> {
    match fmt {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(value)?);
        }
        _ => print!("{}", table()),
    }
    Ok(())
}
