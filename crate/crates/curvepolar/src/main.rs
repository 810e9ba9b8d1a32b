//! Command-line interface: polar constructions, singularity reports,
//! component maps, coverage verdicts, SVG figures, and corpus verification.
//!
//! Exit codes: `0` — every requested verdict is covered / every fact
//! verified; `2` — results computed but a proposition hypothesis is unmet
//! or some component is uncovered; `1` — computational or usage error.

use clap::{Args, Parser, Subcommand};
use curvepolar::corpus;
use curvepolar::polar::{
    classical_polar, polar_point, quadric_for_center, reciprocal_polar, Flag2D, ProjLine,
    ProjPoint, Quadric,
};
use curvepolar::poly::{Interval, Poly, Rat};
use curvepolar::render::{
    MarkerKind, Scene, CURVE_FILL, POLAR_FILL, SINGULAR_COLOR, WITNESS_COLOR,
};
use curvepolar::report::{
    component_map_value, coverage_value, header, singularity_value, solution_set_value, Report,
    Value,
};
use curvepolar::singular::{classify, SingKind, SingularityReport};
use curvepolar::solve::{singular_points, solve_system, SolutionSet};
use curvepolar::topology::{component_map, verify_coverage, ComponentMap, CoverageReport};
use num_traits::{One, Zero};
use std::error::Error;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "curvepolar",
    version,
    about = "Polar varieties of real affine plane curves: certified witnesses, \
             singularities, component coverage, SVG figures."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classical polar witnesses and component coverage.
    Polar(JobArgs),
    /// Reciprocal (distance-critical) polar witnesses and coverage.
    Reciprocal(JobArgs),
    /// Locate and classify the real singular points.
    Singular(JobArgs),
    /// Connected-component census of the curve in a window.
    Components(JobArgs),
    /// Render the curve (optionally with a polar overlay) as SVG.
    Render(JobArgs),
    /// Check the embedded examples against their documented facts.
    Verify {
        /// Corpus id, or `all`.
        #[arg(long, default_value = "all")]
        corpus: String,
    },
}

#[derive(Args)]
struct JobArgs {
    /// Curve as polynomial text in X1, X2 (rational coefficients).
    #[arg(long, conflicts_with = "corpus")]
    curve: Option<String>,
    /// Curve from the embedded corpus (ex1..ex5, counterexample-h, ...).
    #[arg(long)]
    corpus: Option<String>,
    /// Flag direction a,b: the point (0 : a : b) on the line at infinity.
    #[arg(long)]
    direction: Option<String>,
    /// Center x,y for a re-centered distance quadric.
    #[arg(long, conflicts_with = "quadric")]
    center: Option<String>,
    /// Quadric: `standard` or homogeneous degree-2 text in X0, X1, X2.
    #[arg(long)]
    quadric: Option<String>,
    /// Window x0,x1,y0,y1 (rationals). Defaults to the corpus window,
    /// or -5,5,-5,5 for --curve.
    #[arg(long = "box")]
    window: Option<String>,
    /// Subdivision resolution (power of two).
    #[arg(long)]
    resolution: Option<u32>,
    /// Report output path (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG output path.
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Box<dyn Error>> {
    match cli.cmd {
        Cmd::Polar(a) => cmd_polar(&a, false),
        Cmd::Reciprocal(a) => cmd_polar(&a, true),
        Cmd::Singular(a) => cmd_singular(&a),
        Cmd::Components(a) => cmd_components(&a),
        Cmd::Render(a) => cmd_render(&a),
        Cmd::Verify { corpus } => cmd_verify(&corpus),
    }
}

// ---------------------------------------------------------------------------
// Argument resolution.

struct Job {
    curve: Poly,
    curve_name: String,
    window: (Interval, Interval),
    resolution: u32,
}

fn parse_rat(s: &str) -> Result<Rat, Box<dyn Error>> {
    Rat::from_str(s.trim()).map_err(|e| format!("bad rational {s:?}: {e}").into())
}

fn parse_rats<const N: usize>(s: &str, what: &str) -> Result<[Rat; N], Box<dyn Error>> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(format!("{what} needs {N} comma-separated rationals, got {s:?}").into());
    }
    let mut out: Vec<Rat> = vec![];
    for p in parts {
        out.push(parse_rat(p)?);
    }
    Ok(out.try_into().unwrap())
}

fn resolve_job(args: &JobArgs) -> Result<Job, Box<dyn Error>> {
    let (curve, curve_name, default_window, default_res) = match (&args.corpus, &args.curve) {
        (Some(id), None) => {
            let e = corpus::get(id).ok_or_else(|| format!("unknown corpus id {id:?}"))?;
            let (x0, x1, y0, y1) = e.window;
            (
                e.poly.clone(),
                id.clone(),
                (
                    Interval::new(Rat::from_integer(x0.into()), Rat::from_integer(x1.into())),
                    Interval::new(Rat::from_integer(y0.into()), Rat::from_integer(y1.into())),
                ),
                e.resolution,
            )
        }
        (None, Some(text)) => {
            let five = Rat::from_integer(5.into());
            (
                Poly::parse(text)?,
                "custom".to_string(),
                (
                    Interval::new(-five.clone(), five.clone()),
                    Interval::new(-five.clone(), five),
                ),
                256,
            )
        }
        _ => return Err("exactly one of --corpus or --curve is required".into()),
    };
    let window = match &args.window {
        Some(s) => {
            let [x0, x1, y0, y1] = parse_rats::<4>(s, "--box")?;
            (Interval::new(x0, x1), Interval::new(y0, y1))
        }
        None => default_window,
    };
    Ok(Job {
        curve,
        curve_name,
        window,
        resolution: args.resolution.unwrap_or(default_res),
    })
}

fn resolve_flag(args: &JobArgs) -> Result<Flag2D, Box<dyn Error>> {
    match &args.direction {
        Some(s) => {
            let [a, b] = parse_rats::<2>(s, "--direction")?;
            if a.is_zero() && b.is_zero() {
                return Err("--direction must not be 0,0".into());
            }
            Ok(Flag2D::direction(a, b))
        }
        None => Ok(Flag2D::direction(Rat::zero(), Rat::one())),
    }
}

fn resolve_quadric(args: &JobArgs) -> Result<Quadric, Box<dyn Error>> {
    if let Some(s) = &args.center {
        let [x, y] = parse_rats::<2>(s, "--center")?;
        return Ok(quadric_for_center(&ProjPoint::affine(x, y))?);
    }
    match args.quadric.as_deref() {
        None | Some("standard") => Ok(Quadric::standard()),
        Some(text) => Ok(Quadric::new(Poly::parse3(text)?)?),
    }
}

// ---------------------------------------------------------------------------
// Shared pipeline pieces.

fn classify_all(
    f: &Poly,
) -> Result<(SolutionSet, Vec<SingularityReport>), Box<dyn Error>> {
    let set = singular_points(f)?;
    let reports = set
        .points
        .iter()
        .map(|p| classify(f, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((set, reports))
}

fn exit_code(cov: &CoverageReport) -> u8 {
    let hyp_ok = cov.hypotheses.all_components_compact
        && cov.hypotheses.all_singularities_ordinary
        && cov.hypotheses.pole_off_curve != Some(false);
    if cov.all_covered() && hyp_ok {
        0
    } else {
        2
    }
}

fn emit(report: &Report, out: &Option<PathBuf>) -> Result<(), Box<dyn Error>> {
    let text = report.serialize();
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_svg(scene: &Scene, path: &Option<PathBuf>) -> Result<(), Box<dyn Error>> {
    if let Some(p) = path {
        std::fs::write(p, scene.to_svg())?;
    }
    Ok(())
}

fn base_scene(job: &Job, map: &ComponentMap) -> Scene {
    let mut scene = Scene::new(&job.window, 800);
    scene.add_cells(map, CURVE_FILL);
    scene
}

fn witness_markers(scene: &mut Scene, sols: &SolutionSet, sing: &[SingularityReport]) {
    scene.add_markers(
        sols.points.iter().map(|p| p.approx()),
        MarkerKind::Circle,
        WITNESS_COLOR,
    );
    scene.add_markers(
        sing.iter().map(|s| s.location.approx()),
        MarkerKind::Cross,
        SINGULAR_COLOR,
    );
}

// ---------------------------------------------------------------------------
// Commands.

fn cmd_polar(args: &JobArgs, reciprocal: bool) -> Result<u8, Box<dyn Error>> {
    let job = resolve_job(args)?;
    let f = &job.curve;
    let fh = f.homogenize();

    let (polar_aff, mut report, pole) = if reciprocal {
        let q = resolve_quadric(args)?;
        let pole = polar_point(&q, &ProjLine::at_infinity());
        if fh.eval_rat(&pole.canonical()).is_zero() {
            return Err(format!(
                "the pole of the line at infinity w.r.t. this quadric lies on the \
                 curve, so distance witnesses degenerate there; re-center the \
                 quadric with --center x,y at an affine point off the curve \
                 (this builds (1+x²+y²)X0² − 2xX0X1 − 2yX0X2 + X1² + X2²)"
            )
            .into());
        }
        let r = reciprocal_polar(&fh, &q, &ProjPoint::from_ints(1, 0, 0))?;
        let mut rep = header("reciprocal");
        rep.push_scalar("quadric", q.q.to_string());
        (r.set_x0_one(), rep, Some(pole))
    } else {
        let flag = resolve_flag(args)?;
        let p = classical_polar(&fh, &flag.point)?;
        let mut rep = header("polar");
        let [a0, a1, a2] = flag.point.canonical();
        rep.push_scalar("flag-point", format!("({a0} : {a1} : {a2})"));
        (p.set_x0_one(), rep, None)
    };

    report.push_scalar("curve-id", &job.curve_name);
    report.push_scalar("curve", f.to_string());
    report.push_scalar("polar", polar_aff.to_string());

    let sols = solve_system(f, &polar_aff, Some((&job.window.0, &job.window.1)))?;
    let (_, sing) = classify_all(f)?;
    let map = component_map(f, &job.window, job.resolution)?;
    let cov = verify_coverage(f, &sols, &sing, &map, pole.as_ref());

    report.push("witness-set", solution_set_value(&sols));
    report.push(
        "singularities",
        Value::List(sing.iter().map(singularity_value).collect()),
    );
    report.push("components", component_map_value(&map));
    report.push("coverage", coverage_value(&cov));
    emit(&report, &args.out)?;

    if args.svg.is_some() {
        let polar_map = component_map(&polar_aff, &job.window, job.resolution);
        let mut scene = base_scene(&job, &map);
        if let Ok(pm) = polar_map {
            scene.add_cells(&pm, POLAR_FILL);
        }
        witness_markers(&mut scene, &sols, &sing);
        emit_svg(&scene, &args.svg)?;
    }
    Ok(exit_code(&cov))
}

fn cmd_singular(args: &JobArgs) -> Result<u8, Box<dyn Error>> {
    let job = resolve_job(args)?;
    let (_, sing) = classify_all(&job.curve)?;
    let mut report = header("singular");
    report.push_scalar("curve-id", &job.curve_name);
    report.push_scalar("curve", job.curve.to_string());
    report.push_scalar("singular-count", sing.len().to_string());
    report.push(
        "singularities",
        Value::List(sing.iter().map(singularity_value).collect()),
    );
    emit(&report, &args.out)?;
    let all_classified = sing.iter().all(|s| s.kind != SingKind::Unclassified);
    Ok(if all_classified { 0 } else { 2 })
}

fn cmd_components(args: &JobArgs) -> Result<u8, Box<dyn Error>> {
    let job = resolve_job(args)?;
    let map = component_map(&job.curve, &job.window, job.resolution)?;
    let mut report = header("components");
    report.push_scalar("curve-id", &job.curve_name);
    report.push_scalar("curve", job.curve.to_string());
    report.push("components", component_map_value(&map));
    emit(&report, &args.out)?;
    if args.svg.is_some() {
        emit_svg(&base_scene(&job, &map), &args.svg)?;
    }
    Ok(0)
}

fn cmd_render(args: &JobArgs) -> Result<u8, Box<dyn Error>> {
    let job = resolve_job(args)?;
    let f = &job.curve;
    let fh = f.homogenize();
    let map = component_map(f, &job.window, job.resolution)?;
    let mut scene = base_scene(&job, &map);

    let overlay = if args.center.is_some() || args.quadric.is_some() {
        let q = resolve_quadric(args)?;
        Some(reciprocal_polar(&fh, &q, &ProjPoint::from_ints(1, 0, 0))?.set_x0_one())
    } else if args.direction.is_some() {
        let flag = resolve_flag(args)?;
        Some(classical_polar(&fh, &flag.point)?.set_x0_one())
    } else {
        None
    };
    if let Some(polar_aff) = overlay {
        if let Ok(pm) = component_map(&polar_aff, &job.window, job.resolution) {
            scene.add_cells(&pm, POLAR_FILL);
        }
        let sols = solve_system(f, &polar_aff, Some((&job.window.0, &job.window.1)))?;
        let (_, sing) = classify_all(f)?;
        witness_markers(&mut scene, &sols, &sing);
    }

    let path = args
        .svg
        .clone()
        .or_else(|| args.out.clone())
        .unwrap_or_else(|| PathBuf::from("out.svg"));
    std::fs::write(&path, scene.to_svg())?;
    println!("wrote {}", path.display());
    Ok(0)
}

fn cmd_verify(which: &str) -> Result<u8, Box<dyn Error>> {
    let entries: Vec<&corpus::CorpusEntry> = if which == "all" {
        corpus::all().iter().collect()
    } else {
        vec![corpus::get(which).ok_or_else(|| format!("unknown corpus id {which:?}"))?]
    };
    let mut all_ok = true;
    for e in entries {
        let mut ok = true;
        let mut notes: Vec<String> = vec![];
        if e.poly.degree() != Some(e.expected.degree) {
            ok = false;
            notes.push(format!(
                "degree {:?}, expected {}",
                e.poly.degree(),
                e.expected.degree
            ));
        }
        let (x0, x1, y0, y1) = e.window;
        let window = (
            Interval::new(Rat::from_integer(x0.into()), Rat::from_integer(x1.into())),
            Interval::new(Rat::from_integer(y0.into()), Rat::from_integer(y1.into())),
        );
        let map = component_map(&e.poly, &window, e.resolution)?;
        if map.component_count() != e.expected.components as usize {
            ok = false;
            notes.push(format!(
                "{} components, expected {}",
                map.component_count(),
                e.expected.components
            ));
        }
        let compact = map.components().iter().all(|c| c.compact_in_box);
        if compact != e.expected.all_compact {
            ok = false;
            notes.push(format!(
                "all-compact {compact}, expected {}",
                e.expected.all_compact
            ));
        }
        let (set, sing) = classify_all(&e.poly)?;
        if set.points.len() != e.expected.singular_count as usize {
            ok = false;
            notes.push(format!(
                "{} singular points, expected {}",
                set.points.len(),
                e.expected.singular_count
            ));
        }
        if let Some(kind) = &e.expected.singular_kind {
            if !sing.iter().all(|s| s.kind == *kind) {
                ok = false;
                notes.push(format!("singularity kinds differ from {kind}"));
            }
        }
        all_ok &= ok;
        let status = if ok { "ok" } else { "FAIL" };
        let detail = if notes.is_empty() {
            String::new()
        } else {
            format!(" ({})", notes.join("; "))
        };
        println!("{}: {status}{detail}", e.id);
    }
    Ok(if all_ok { 0 } else { 2 })
}
