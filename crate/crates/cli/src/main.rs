//! Batch command-line frontend for the Morse and Legendrian homology
//! pipelines.
//!
//! Exit codes: 0 success, 1 usage/IO errors, 2 domain errors (non-Morse
//! input, broken genericity, invalid fronts, …).  Domain diagnostics are
//! written to stderr as `error[CODE]: message` with a distinct CODE per
//! error path.

mod render;

use chain_core::serial::complex_to_text;
use chain_core::Ring;
use clap::{Parser, Subcommand, ValueEnum};
use dga_core::serial::dga_to_text;
use dga_core::{
    format_polynomial, normalized_augmentation_count, poincare_polynomial, FreeDGA,
};
use lch_front::{front_to_dga, thurston_bennequin, FrontDiagram, ResolvedDiagram, SearchLimits};
use maslov::LagrangianLinePath;
use morse_engine::{
    build_morse_complex, continuation_map, MorseError, MorseRun, Problem, Schedule, Tolerances,
};
use num_traits::ToPrimitive;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Environment variable holding the default worker-thread count.
const THREADS_ENV: &str = "HOMCALC_THREADS";

#[derive(Parser)]
#[command(
    name = "homcalc",
    about = "Morse homology of level surfaces and Legendrian contact homology of knot fronts",
    version
)]
struct Cli {
    /// Worker threads for the numerical pipelines (default: HOMCALC_THREADS
    /// or all cores).  Outputs are identical for every thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    Z2,
    Z,
}

impl RingArg {
    fn ring(self) -> Ring {
        match self {
            RingArg::Z2 => Ring::Z2,
            RingArg::Z => Ring::Z,
        }
    }
}

#[derive(clap::Args, Clone, Copy, Default)]
struct TolArgs {
    /// Projected-gradient threshold at critical points.
    #[arg(long)]
    tol_crit: Option<f64>,
    /// Smallest intrinsic-Hessian eigenvalue still considered nondegenerate.
    #[arg(long)]
    tol_degenerate: Option<f64>,
    /// Bound on |F| along trajectories.
    #[arg(long)]
    tol_surface: Option<f64>,
    /// Capture radius around critical points.
    #[arg(long)]
    r_cap: Option<f64>,
}

impl TolArgs {
    fn apply(&self, mut tols: Tolerances) -> Result<Tolerances, CliError> {
        let set = |name: &str, value: Option<f64>, slot: &mut f64| {
            if let Some(v) = value {
                if !(v > 0.0) {
                    return Err(CliError::usage(format!("{name} must be positive, got {v}")));
                }
                *slot = v;
            }
            Ok(())
        };
        set("--tol-crit", self.tol_crit, &mut tols.tol_crit)?;
        set("--tol-degenerate", self.tol_degenerate, &mut tols.tol_degenerate)?;
        set("--tol-surface", self.tol_surface, &mut tols.tol_surface)?;
        set("--r-cap", self.r_cap, &mut tols.r_cap)?;
        Ok(tols)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the Morse pipeline on a problem file and report critical
    /// points, flow-line counts, and homology.
    Morse {
        /// Problem file (surface/function/box/grid/labels).
        input: PathBuf,
        #[arg(long, value_enum, default_value = "z2")]
        ring: RingArg,
        #[command(flatten)]
        tols: TolArgs,
        /// Directory for report.json, complex.txt (and flow.svg with --plot).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also render a flow-line SVG (requires --out).
        #[arg(long)]
        plot: bool,
    },
    /// Build the continuation chain map between two problem files sharing
    /// a surface.
    MorseContinue {
        source: PathBuf,
        target: PathBuf,
        #[command(flatten)]
        tols: TolArgs,
        /// Directory for continuation.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Legendrian-front pipeline on a .front file.
    Lch {
        #[command(subcommand)]
        action: LchAction,
    },
    /// Maslov index of a loop of Lagrangian lines given as a whitespace-
    /// separated angle list (radians).
    Maslov {
        /// File of angle samples.
        input: PathBuf,
        /// Treat the samples as an open path and close it with the
        /// standard anticlockwise interpolation first.
        #[arg(long)]
        open: bool,
    },
    /// Homology of a serialized chain complex.
    Homology {
        /// complex.txt as written by `morse --out`.
        input: PathBuf,
    },
    /// Deterministic SVG renderings.
    Plot {
        #[command(subcommand)]
        target: PlotTarget,
    },
}

#[derive(Subcommand)]
enum LchAction {
    /// Validate a front and print its classical invariants.
    Parse { input: PathBuf },
    /// List DGA generators with their grades.
    Grade { input: PathBuf },
    /// Print (and optionally write) the full differential graded algebra.
    Dga {
        input: PathBuf,
        /// Directory for dga.txt.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count augmentations (raw and normalized).
    Augs { input: PathBuf },
    /// Linearized Poincaré polynomial of every augmentation.
    Linearize { input: PathBuf },
}

#[derive(Subcommand)]
enum PlotTarget {
    /// Flow lines and critical points of a Morse problem file.
    Morse {
        input: PathBuf,
        #[command(flatten)]
        tols: TolArgs,
        /// Directory for flow.svg.
        #[arg(long)]
        out: PathBuf,
    },
    /// A front diagram and its resolved Lagrangian projection.
    Front {
        input: PathBuf,
        /// Directory for front.svg.
        #[arg(long)]
        out: PathBuf,
    },
}

/// Usage errors exit 1; domain errors exit 2 with a stable machine code.
struct CliError {
    code: Option<String>,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: None,
            message: message.into(),
        }
    }

    fn domain(code: &str, message: impl std::fmt::Display) -> CliError {
        CliError {
            code: Some(code.to_string()),
            message: message.to_string(),
        }
    }
}

fn morse_code(e: &MorseError) -> &'static str {
    match e {
        MorseError::Expression(_) => "morse.expression",
        MorseError::Domain(_) => "morse.eval-domain",
        MorseError::IrregularSurface { .. } => "morse.irregular-surface",
        MorseError::ProjectionFailed { .. } => "morse.projection-failed",
        MorseError::NotMorse { .. } => "morse.not-morse",
        MorseError::NoCriticalPoints => "morse.no-critical-points",
        MorseError::NonGenericPair { .. } => "morse.non-generic-pair",
        MorseError::Unresolved { .. } => "morse.unresolved",
        MorseError::NotRigid { .. } => "morse.not-rigid",
        MorseError::NonGenericHomotopy(_) => "morse.non-generic-homotopy",
        MorseError::Problem(_) => "morse.problem-file",
        MorseError::Chain(_) => "morse.chain",
    }
}

impl From<MorseError> for CliError {
    fn from(e: MorseError) -> CliError {
        CliError::domain(morse_code(&e), e)
    }
}

impl From<lch_front::FrontError> for CliError {
    fn from(e: lch_front::FrontError) -> CliError {
        use lch_front::FrontError as F;
        let code = match e {
            F::Parse { .. } => "lch.parse",
            F::Empty => "lch.empty",
            F::NotClosed { .. } => "lch.not-closed",
            F::MultipleComponents { .. } => "lch.multiple-components",
            F::PotentialInconsistent { .. } => "lch.potential",
            F::EulerCheck { .. } => "lch.euler-check",
            F::UnboundedFaces { .. } => "lch.faces",
            F::DiskSearchBudget { .. } => "lch.disk-budget",
            F::DgaInvalid { .. } => "lch.dga-invalid",
            F::Dga(_) => "lch.dga",
        };
        CliError::domain(code, e)
    }
}

impl From<maslov::MaslovError> for CliError {
    fn from(e: maslov::MaslovError) -> CliError {
        use maslov::MaslovError as M;
        let code = match e {
            M::SamplingTooCoarse { .. } => "maslov.sampling",
            M::NotClosed => "maslov.not-closed",
            M::EndpointsNotTransverse => "maslov.not-transverse",
            M::Empty => "maslov.empty",
        };
        CliError::domain(code, e)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

fn write_out(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::usage(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}

fn load_problem(path: &Path) -> Result<Problem, CliError> {
    Problem::parse(&read(path)?).map_err(CliError::from)
}

fn ranks_json(complex: &chain_core::GradedComplex) -> Result<serde_json::Value, CliError> {
    let ranks = complex
        .homology_ranks()
        .map_err(|e| CliError::domain("homology.compute", e))?;
    let mut obj = serde_json::Map::new();
    for (g, r) in ranks {
        obj.insert(
            g.to_string(),
            json!({
                "betti": r.betti,
                "torsion": r.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            }),
        );
    }
    Ok(serde_json::Value::Object(obj))
}

fn matrix_json(m: &chain_core::IntMatrix) -> serde_json::Value {
    let rows: Vec<Vec<i64>> = (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| m[(i, j)].to_i64().expect("small entries"))
                .collect()
        })
        .collect();
    json!(rows)
}

fn run_morse(
    input: &Path,
    ring: Ring,
    tols: TolArgs,
    out: Option<&Path>,
    plot: bool,
) -> Result<(), CliError> {
    if plot && out.is_none() {
        return Err(CliError::usage("--plot requires --out"));
    }
    let problem = load_problem(input)?;
    let surface = problem.surface()?;
    let f = problem.function()?;
    let tols = tols.apply(problem.tolerances(Tolerances::default()))?;
    let run = build_morse_complex(&surface, &f, problem.grid, &problem.labels, ring, &tols)?;

    for c in &run.critical_points {
        println!(
            "{}: index {} at ({:.8}, {:.8}, {:.8}) f={:.8}",
            c.label, c.index, c.position.x, c.position.y, c.position.z, c.value
        );
    }
    for m in &run.moduli {
        println!(
            "lines {} -> {}: {} (signed {})",
            m.source, m.target, m.n_lines, m.signed_count
        );
    }
    println!("euler characteristic {}", run.euler_characteristic());
    let ranks = run
        .complex
        .homology_ranks()
        .map_err(|e| CliError::domain("homology.compute", e))?;
    for (g, r) in &ranks {
        println!("H_{g}: betti {} torsion {:?}", r.betti, r.torsion);
    }

    if let Some(dir) = out {
        let report = json!({
            "input": input.display().to_string(),
            "ring": run.complex.ring().name(),
            "critical_points": run.critical_points.iter().map(|c| json!({
                "label": c.label,
                "index": c.index,
                "position": [c.position.x, c.position.y, c.position.z],
                "value": c.value,
                "eigenvalues": c.eigenvalues,
            })).collect::<Vec<_>>(),
            "moduli": run.moduli.iter().map(|m| json!({
                "source": m.source,
                "target": m.target,
                "lines": m.n_lines,
                "signed": m.signed_count,
            })).collect::<Vec<_>>(),
            "euler_characteristic": run.euler_characteristic(),
            "homology": ranks_json(&run.complex)?,
        });
        write_out(dir, "report.json", &pretty(&report))?;
        write_out(dir, "complex.txt", &complex_to_text(&run.complex))?;
        if plot {
            let svg = render::morse_svg(&surface, &f, &run, &tols)?;
            write_out(dir, "flow.svg", &svg)?;
        }
    }
    Ok(())
}

fn run_continue(
    source: &Path,
    target: &Path,
    tols: TolArgs,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let p0 = load_problem(source)?;
    let p1 = load_problem(target)?;
    let surface = p0.surface()?;
    let f0 = p0.function()?;
    let f1 = p1.function()?;
    let tols = tols.apply(p0.tolerances(Tolerances::default()))?;
    let build = |p: &Problem, f| -> Result<MorseRun, CliError> {
        Ok(build_morse_complex(
            &surface, f, p.grid, &p.labels, Ring::Z2, &tols,
        )?)
    };
    let run0 = build(&p0, &f0)?;
    let run1 = build(&p1, &f1)?;
    let map = continuation_map(&surface, &f0, &f1, &run0, &run1, Schedule::default(), &tols)?;
    let violations = map.verify();
    for g in map.grades() {
        println!("grade {g}: {:?}", map.matrix(g));
    }
    println!("chain-map violations: {}", violations.len());
    if !violations.is_empty() {
        return Err(CliError::domain(
            "continuation.chain-condition",
            format!("{} chain-condition violations", violations.len()),
        ));
    }
    let ranks = map
        .induced_ranks()
        .map_err(|e| CliError::domain("continuation.induced", e))?;
    for (g, r) in &ranks {
        println!("induced rank on H_{g}: {r}");
    }
    if let Some(dir) = out {
        let mut maps = serde_json::Map::new();
        for g in map.grades() {
            maps.insert(g.to_string(), matrix_json(&map.matrix(g)));
        }
        let mut induced = serde_json::Map::new();
        for (g, r) in &ranks {
            induced.insert(g.to_string(), json!(r));
        }
        let report = json!({
            "source": source.display().to_string(),
            "target": target.display().to_string(),
            "maps": maps,
            "induced_ranks": induced,
        });
        write_out(dir, "continuation.json", &pretty(&report))?;
    }
    Ok(())
}

fn load_dga(input: &Path) -> Result<(String, FreeDGA), CliError> {
    let text = read(input)?;
    let dga = front_to_dga(&text, SearchLimits::default())?;
    Ok((text, dga))
}

fn run_lch(action: &LchAction) -> Result<(), CliError> {
    match action {
        LchAction::Parse { input } => {
            let text = read(input)?;
            let front = FrontDiagram::parse(&text)?;
            let diagram = ResolvedDiagram::build(&front)?;
            println!("events {}", front.events().len());
            println!("rotation {}", front.rotation_number());
            println!("tb {}", thurston_bennequin(&front));
            println!("grading modulus {}", front.grading_modulus());
            println!("determinant {}", lch_front::knot::determinant(&diagram));
        }
        LchAction::Grade { input } => {
            let (_, dga) = load_dga(input)?;
            for (i, label) in dga.labels().iter().enumerate() {
                println!("{label}: grade {}", dga.grade(i));
            }
        }
        LchAction::Dga { input, out } => {
            let (_, dga) = load_dga(input)?;
            let text = dga_to_text(&dga);
            print!("{text}");
            if let Some(dir) = out {
                write_out(dir, "dga.txt", &text)?;
            }
        }
        LchAction::Augs { input } => {
            let (_, dga) = load_dga(input)?;
            let raw = dga.augmentations().len();
            let (count, k) = normalized_augmentation_count(&dga);
            println!("{raw} augmentations");
            println!("normalized {count} / 2^{k}");
        }
        LchAction::Linearize { input } => {
            let (_, dga) = load_dga(input)?;
            for a in dga.augmentations() {
                let complex = dga
                    .linearized_complex(&a)
                    .map_err(|e| CliError::domain("lch.linearize", e))?;
                let poly = poincare_polynomial(&complex)
                    .map_err(|e| CliError::domain("lch.linearize", e))?;
                let values: Vec<u8> = a.values().iter().map(|&b| b as u8).collect();
                println!("{values:?} -> {}", format_polynomial(&poly));
            }
        }
    }
    Ok(())
}

fn run_maslov(input: &Path, open: bool) -> Result<(), CliError> {
    let text = read(input)?;
    let samples: Result<Vec<f64>, _> = text
        .split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| CliError::usage(format!("bad angle sample `{t}`")))
        })
        .collect();
    let path = LagrangianLinePath::new(&samples?, !open)?;
    let path = if open { path.close_path()? } else { path };
    println!("maslov index {}", path.maslov_index()?);
    Ok(())
}

fn run_homology(input: &Path) -> Result<(), CliError> {
    let complex = chain_core::serial::complex_from_text(&read(input)?)
        .map_err(|e| CliError::domain("homology.parse", e))?;
    let bad = complex.verify_d_squared();
    if !bad.is_empty() {
        return Err(CliError::domain(
            "homology.d-squared",
            format!("{} entries of D² are nonzero", bad.len()),
        ));
    }
    let ranks = complex
        .homology_ranks()
        .map_err(|e| CliError::domain("homology.compute", e))?;
    for (g, r) in &ranks {
        println!("H_{g}: betti {} torsion {:?}", r.betti, r.torsion);
    }
    Ok(())
}

fn run_plot(target: &PlotTarget) -> Result<(), CliError> {
    match target {
        PlotTarget::Morse { input, tols, out } => {
            let problem = load_problem(input)?;
            let surface = problem.surface()?;
            let f = problem.function()?;
            let tols = tols.apply(problem.tolerances(Tolerances::default()))?;
            let run = build_morse_complex(
                &surface,
                &f,
                problem.grid,
                &problem.labels,
                Ring::Z2,
                &tols,
            )?;
            let svg = render::morse_svg(&surface, &f, &run, &tols)?;
            write_out(out, "flow.svg", &svg)?;
            println!("{}", out.join("flow.svg").display());
        }
        PlotTarget::Front { input, out } => {
            let front = FrontDiagram::parse(&read(input)?)?;
            let diagram = ResolvedDiagram::build(&front)?;
            let svg = render::front_svg(&front, &diagram);
            write_out(out, "front.svg", &svg)?;
            println!("{}", out.join("front.svg").display());
        }
    }
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let threads = match cli.threads {
        Some(n) => Some(n),
        None => std::env::var(THREADS_ENV)
            .ok()
            .map(|v| {
                v.parse::<usize>()
                    .map_err(|_| CliError::usage(format!("bad {THREADS_ENV} value `{v}`")))
            })
            .transpose()?,
    };
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::usage(format!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Morse {
            input,
            ring,
            tols,
            out,
            plot,
        } => run_morse(input, ring.ring(), *tols, out.as_deref(), *plot),
        Command::MorseContinue {
            source,
            target,
            tols,
            out,
        } => run_continue(source, target, *tols, out.as_deref()),
        Command::Lch { action } => run_lch(action),
        Command::Maslov { input, open } => run_maslov(input, *open),
        Command::Homology { input } => run_homology(input),
        Command::Plot { target } => run_plot(target),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Let clap print help/version requests normally (exit 0).
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError {
            code: Some(code),
            message,
        }) => {
            eprintln!("error[{code}]: {message}");
            ExitCode::from(2)
        }
        Err(CliError {
            code: None,
            message,
        }) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
