use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use okounkov_core::exactnum::int;
use okounkov_core::io::{self, InputError};
use okounkov_core::okounkov::{mu, mu_quadratic_certificate, okounkov_polygon, volume_checks};
use okounkov_core::slices::{
    assemble_slice_body, builtin, builtin_models, nonpolyhedrality_certificate, uniform_samples, BuiltinSlice,
};
use okounkov_core::surface::models::k3_quartic;
use okounkov_core::surface::{validate_flag, validate_surface, DivisorClass, FlagData, SurfaceModel};
use okounkov_core::toric::{okounkov_via_psi, realize_polygon, toric_forward_polygon, ToricSurface};
use okounkov_core::zariski::{segment_walk, zariski_decompose};
use okounkov_core::{svg, verify, Error};

/// Exact Zariski decompositions, Okounkov polygons, toric realizations and
/// slice bodies.
///
/// Arguments taking JSON accept either a file path or an inline document.
/// Divisors and sample lists may also be given as comma-separated rationals.
#[derive(Parser, Debug)]
#[command(name = "okounkov", version)]
struct Cli {
    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a surface model (and optionally a flag) for consistency.
    Validate {
        /// Surface model JSON, inline or as a file path.
        #[arg(long)]
        surface: String,
        /// Flag JSON to check against the surface.
        #[arg(long)]
        flag: Option<String>,
    },
    /// Zariski decomposition of a pseudo-effective class.
    Decompose {
        /// Surface model JSON, inline or as a file path.
        #[arg(long)]
        surface: String,
        /// Class coefficients: `a,b,c`, a JSON array or a file.
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Piecewise-linear Zariski decomposition of D − tC along the flag curve.
    Walk {
        /// Surface model JSON, inline or as a file path.
        #[arg(long)]
        surface: String,
        /// Class coefficients: `a,b,c`, a JSON array or a file.
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        /// `{"curve": [...], "multiplicities": {"E": 1}}`, inline or a file.
        #[arg(long)]
        flag: String,
    },
    /// Okounkov polygon of a big class for a flag.
    Body {
        /// Surface model JSON, inline or as a file path.
        #[arg(long)]
        surface: String,
        /// Class coefficients: `a,b,c`, a JSON array or a file.
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        /// `{"curve": [...], "multiplicities": {"E": 1}}`, inline or a file.
        #[arg(long)]
        flag: String,
        /// Also write the polygon as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Shift t by −ν so the polygon starts at t = 0.
        #[arg(long)]
        translate_canonical: bool,
    },
    /// Toric fan and divisor whose invariant-flag body is the given polygon.
    Realize {
        /// `{"vertices": [[t, y], ...]}` listed counterclockwise.
        #[arg(long)]
        polygon: String,
    },
    /// Okounkov polygon of a toric divisor for an invariant flag.
    ToricBody {
        /// `{"rays": [[x, y], ...], "a": [...], "flag": [i1, i2]}`.
        #[arg(long)]
        input: String,
        /// Also write the polygon as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Slice body of a threefold: sampled f, the affine g and the certificate.
    Slice {
        /// Built-in slice: fano, cutkosky or toric-control.
        #[arg(long, conflicts_with_all = ["surface", "path", "curve"])]
        model: Option<String>,
        /// Surface model JSON, inline or as a file path.
        #[arg(long, requires_all = ["path", "curve"])]
        surface: Option<String>,
        /// `{"v0": [...], "w": [...], "range": [lo, hi]}`.
        #[arg(long)]
        path: Option<String>,
        /// Class of the flag curve on the slice surface.
        #[arg(long)]
        curve: Option<String>,
        /// Comma-separated r values; defaults to 21 equally spaced samples.
        #[arg(long, allow_hyphen_values = true)]
        samples: Option<String>,
        /// Also write the graph of f as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Built-in examples with their verification results.
    Examples {
        #[arg(value_enum)]
        name: ExampleName,
    },
    /// Runs the verification suite; exit status 0 iff every check passes.
    Verify {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExampleName {
    Fano,
    K3,
}

enum Failure {
    Input(InputError),
    Domain(Error),
    Unreadable(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<okounkov_core::exactnum::ExactError> for Failure {
    fn from(e: okounkov_core::exactnum::ExactError) -> Self {
        Failure::Domain(e.into())
    }
}

impl From<okounkov_core::surface::SurfaceError> for Failure {
    fn from(e: okounkov_core::surface::SurfaceError) -> Self {
        Failure::Domain(e.into())
    }
}

type Run<T> = Result<T, Failure>;

/// Output document plus the process status to exit with.
struct Outcome {
    json: Value,
    success: bool,
}

impl From<Value> for Outcome {
    fn from(json: Value) -> Self {
        Self { json, success: true }
    }
}

fn load(arg: &str) -> Run<Value> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(io::parse_json(arg)?);
    }
    let text = fs::read_to_string(arg).map_err(|e| Failure::Unreadable(format!("{arg}: {e}")))?;
    Ok(io::parse_json(&text)?)
}

/// A rational vector given inline as `1,-2,1/2`, as a JSON array, or as a
/// file holding a JSON array.
fn load_vector(arg: &str) -> Run<Vec<okounkov_core::Rational>> {
    let t = arg.trim_start();
    if t.starts_with('[') || Path::new(arg).is_file() {
        return Ok(io::rational_vec_from_json(&load(arg)?, "vector")?);
    }
    Ok(io::rational_list(arg)?)
}

fn load_surface(arg: &str) -> Run<SurfaceModel> {
    let s = io::surface_from_json(&load(arg)?)?;
    let problems = validate_surface(&s);
    if !problems.is_empty() {
        return Err(Error::Surface(okounkov_core::surface::SurfaceError::Invalid(problems.join("; "))).into());
    }
    Ok(s)
}

fn load_flag(s: &SurfaceModel, arg: &str) -> Run<FlagData> {
    let flag = io::flag_from_json(&load(arg)?)?;
    let problems = validate_flag(s, &flag);
    if !problems.is_empty() {
        return Err(Error::InvalidFlag(problems.join("; ")).into());
    }
    Ok(flag)
}

fn load_divisor(s: &SurfaceModel, arg: &str) -> Run<DivisorClass> {
    let d = DivisorClass(load_vector(arg)?);
    if d.dim() != s.rank() {
        return Err(InputError::schema(format!("divisor has {} coordinates for rank {}", d.dim(), s.rank())).into());
    }
    Ok(d)
}

fn write_svg(path: &Path, text: &str) -> Run<()> {
    fs::write(path, text).map_err(|e| Failure::Domain(Error::Io(format!("{}: {e}", path.display()))))
}

fn slice_output(b: &BuiltinSlice, samples: &[okounkov_core::Rational], svg_path: Option<&Path>) -> Run<Value> {
    let body = assemble_slice_body(&b.model, &b.path, &b.c, samples)?;
    let cert = match nonpolyhedrality_certificate(&body) {
        Ok(c) => Some(c),
        Err(Error::InsufficientSamples { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    if let Some(p) = svg_path {
        write_svg(p, &svg::slice_svg(&body, b.name))?;
    }
    let mut out = io::slice_body_to_json(&body, cert.as_ref());
    if cert.is_none() {
        out["certificate"] = Value::String("INCONCLUSIVE".into());
    }
    Ok(out)
}

fn run(command: Command) -> Run<Outcome> {
    match command {
        Command::Validate { surface, flag } => {
            let s = io::surface_from_json(&load(&surface)?)?;
            let mut problems = validate_surface(&s);
            if problems.is_empty() {
                if let Some(f) = flag {
                    let f = io::flag_from_json(&load(&f)?)?;
                    problems.extend(validate_flag(&s, &f).into_iter().map(|p| format!("flag: {p}")));
                }
            }
            Ok(Outcome {
                success: problems.is_empty(),
                json: json!({"valid": problems.is_empty(), "problems": problems}),
            })
        }
        Command::Decompose { surface, divisor } => {
            let s = load_surface(&surface)?;
            let d = load_divisor(&s, &divisor)?;
            Ok(io::decomposition_to_json(&zariski_decompose(&s, &d)?).into())
        }
        Command::Walk { surface, divisor, flag } => {
            let s = load_surface(&surface)?;
            let d = load_divisor(&s, &divisor)?;
            let flag = load_flag(&s, &flag)?;
            Ok(io::walk_to_json(&segment_walk(&s, &d, &flag)?).into())
        }
        Command::Body {
            surface,
            divisor,
            flag,
            svg: svg_path,
            translate_canonical,
        } => {
            let s = load_surface(&surface)?;
            let d = load_divisor(&s, &divisor)?;
            let flag = load_flag(&s, &flag)?;
            let p = okounkov_polygon(&s, &d, &flag)?;
            let vertices = if translate_canonical {
                p.translate_canonical()?
            } else {
                p.vertices.clone()
            };
            if let Some(path) = svg_path {
                write_svg(&path, &svg::polygon_svg(&vertices, "Okounkov polygon"))?;
            }
            let mut out = io::okounkov_polygon_to_json(&p, &vertices);
            let v = volume_checks(&s, &d, &p)?;
            out["volume"] = io::exact_to_json(&v.volume);
            Ok(out.into())
        }
        Command::Realize { polygon } => {
            let pts = io::points_from_json(&load(&polygon)?)?;
            Ok(io::realization_to_json(&realize_polygon(&pts)?).into())
        }
        Command::ToricBody { input, svg: svg_path } => {
            let (rays, a, flag) = io::toric_divisor_from_json(&load(&input)?)?;
            let fan = ToricSurface::new(rays)?;
            let (i1, i2) = flag.unwrap_or((0, fan.next(0)));
            if i1 >= fan.len() || i2 >= fan.len() {
                return Err(InputError::schema("flag ray index out of range").into());
            }
            let psi = okounkov_via_psi(&fan, &a, i1, i2)?;
            let forward = toric_forward_polygon(&fan, &a, i1, i2)?;
            if let Some(path) = svg_path {
                write_svg(&path, &svg::polygon_svg(&psi, "toric Okounkov polygon"))?;
            }
            let mut out = io::okounkov_polygon_to_json(&forward, &psi);
            out["forward_agrees"] = Value::Bool(forward.vertices == psi);
            Ok(out.into())
        }
        Command::Slice {
            model,
            surface,
            path,
            curve,
            samples,
            svg: svg_path,
        } => {
            let b = match (model, surface, path, curve) {
                (Some(name), ..) => builtin(&name).ok_or_else(|| {
                    let names: Vec<&str> = builtin_models().iter().map(|b| b.name).collect();
                    InputError::schema(format!("unknown model {name:?}; expected one of {names:?}"))
                })?,
                (None, Some(surface), Some(path), Some(curve)) => {
                    let s = load_surface(&surface)?;
                    let path = io::path_from_json(&load(&path)?)?;
                    let c = load_divisor(&s, &curve)?;
                    if path.v0.dim() != s.rank() || path.w.dim() != s.rank() {
                        return Err(InputError::schema("path classes must match the rank").into());
                    }
                    BuiltinSlice {
                        name: "slice",
                        description: "user model",
                        model: s,
                        path,
                        c,
                    }
                }
                _ => return Err(InputError::schema("give --model, or --surface with --path and --curve").into()),
            };
            let samples = match samples {
                Some(list) => io::rational_list(&list)?,
                None => uniform_samples(&b.path.r_lo, &b.path.r_hi, 20),
            };
            Ok(slice_output(&b, &samples, svg_path.as_deref())?.into())
        }
        Command::Examples { name } => match name {
            ExampleName::Fano => {
                let b = builtin("fano").expect("built in");
                let samples = uniform_samples(&int(0), &int(1), 20);
                let slice = slice_output(&b, &samples, None)?;
                let checks = [verify::fano_exactness(), verify::certificate()];
                Ok(Outcome {
                    success: checks.iter().all(|c| c.passed),
                    json: json!({
                        "model": io::surface_to_json(&b.model),
                        "path": io::path_to_json(&b.path),
                        "curve": io::rational_vec_to_json(b.c.coeffs()),
                        "f": "4 - 3r - sqrt(9r^2 - 15r + 7)",
                        "g": "24 - 18r - 6t",
                        "slice": slice,
                        "checks": checks.iter().map(|c| c.line()).collect::<Vec<_>>(),
                    }),
                })
            }
            ExampleName::K3 => {
                let s = k3_quartic();
                let d = DivisorClass::from_ints(&[1, 0, 0]);
                let c = DivisorClass::from_ints(&[2, 1, 1]);
                let m = mu(&s, &d, &c)?;
                let cert = mu_quadratic_certificate(&s, &d, &c)?;
                let check = verify::k3_root();
                Ok(Outcome {
                    success: check.passed,
                    json: json!({
                        "model": io::surface_to_json(&s),
                        "divisor": io::rational_vec_to_json(d.coeffs()),
                        "curve": io::rational_vec_to_json(c.coeffs()),
                        "mu": io::quad_to_json(&m),
                        "certificate": cert,
                        "checks": [check.line()],
                    }),
                })
            }
        },
        Command::Verify { seed } => {
            let checks = verify::run_all(seed);
            for c in &checks {
                eprintln!("{}", c.line());
            }
            let passed = checks.iter().all(|c| c.passed);
            Ok(Outcome {
                success: passed,
                json: json!({"passed": passed, "checks": checks}),
            })
        }
    }
}

fn emit(output: Option<&Path>, v: &Value) -> bool {
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    match output {
        Some(p) => match fs::write(p, text + "\n") {
            Ok(()) => true,
            Err(e) => {
                println!(
                    "{}",
                    json!({"error": "IOError", "detail": format!("{}: {e}", p.display())})
                );
                false
            }
        },
        None => {
            let mut out = std::io::stdout().lock();
            !matches!(writeln!(out, "{text}"), Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    let result = std::panic::catch_unwind(|| run(cli.command));
    match result {
        Ok(Ok(outcome)) => {
            let written = emit(output.as_deref(), &outcome.json);
            if outcome.success && written {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Err(Failure::Domain(e))) => {
            println!("{}", json!({"error": e.code(), "detail": e.to_string()}));
            ExitCode::from(1)
        }
        Ok(Err(Failure::Input(e))) => {
            let code = if e.line.is_some() { "ParseError" } else { "SchemaError" };
            println!(
                "{}",
                json!({"error": code, "detail": {"message": e.message, "line": e.line, "column": e.column}})
            );
            ExitCode::from(2)
        }
        Ok(Err(Failure::Unreadable(detail))) => {
            println!("{}", json!({"error": "IOError", "detail": detail}));
            ExitCode::from(2)
        }
        Err(_) => {
            println!("{}", json!({"error": "InternalError", "detail": "unexpected failure"}));
            ExitCode::from(1)
        }
    }
}
