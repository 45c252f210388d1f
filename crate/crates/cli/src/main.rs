//! `fibfrac`: words, curves, dimension tables, IFS attractors and
//! verification reports for the generalized Fibonacci word fractals.

mod angle;
mod output;
mod verify;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fibfrac::analysis::{
    alpha_grid, dim_table, dim_table_csv, hausdorff_dimension, ScalingProfile,
};
use fibfrac::fmt::g17;
use fibfrac::geom::Point;
use fibfrac::ifs::{
    attractor, attractor_budget, default_n_ref, derive_ifs, derive_ifs_report, verify_osc, Ifs,
};
use fibfrac::metrics::{box_counting_dimension, default_scales, DimensionReport};
use fibfrac::turtle::export::{svg, write_csv, SvgOptions};
use fibfrac::turtle::{check_alpha, draw, subcurves, word_stats, OrientedBox, TurnConvention};
use fibfrac::words::{encode_binary, encode_text, fib_length, word_by_substitution, word_concat};
use output::{emit, extension};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use verify::{Level, VerifyOptions};

/// Largest curve, in vertices, that `curve` will hold in memory.
const MAX_CURVE_VERTICES: u64 = 1 << 27;

#[derive(Parser, Debug)]
#[command(
    name = "fibfrac",
    version,
    about = "Generalized Fibonacci word fractals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the word f_n of family i.
    Word(WordArgs),
    /// Draw the curve of f_n as CSV vertices or SVG.
    Curve(CurveArgs),
    /// Chord width, height, aspect ratio and net angle of a curve.
    Stats(StatsArgs),
    /// Scaling ratio and Hausdorff dimension over a grid of angles.
    Dim(DimArgs),
    /// Derive the five-map IFS as JSON.
    Ifs(IfsArgs),
    /// Iterate an IFS and write the attractor points.
    Attractor(AttractorArgs),
    /// Run verification checks; exits with 1 when any check fails.
    Verify(VerifyArgs),
    /// Per-angle summary over a grid: analytic values, OSC and box counting.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct Family {
    /// Family index, at least 2.
    #[arg(long, default_value_t = 2)]
    i: u64,
}

#[derive(Args, Debug)]
struct AngleArg {
    /// Drawing angle in [0, π/2]: radians or a literal such as pi/2 or 2pi/12.
    #[arg(long, default_value = "pi/2", value_parser = angle::parse_angle, allow_hyphen_values = true)]
    alpha: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum WordFormat {
    Txt,
    Bin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum WordMethod {
    Concat,
    Substitution,
}

#[derive(Args, Debug)]
struct WordArgs {
    #[command(flatten)]
    family: Family,
    /// Word order, counted from f_1 = 0 and f_2 = 0^{i-1}1.
    #[arg(long)]
    n: u64,
    /// Output format; inferred from the output extension when omitted.
    #[arg(long, value_enum)]
    format: Option<WordFormat>,
    #[arg(long, value_enum, default_value_t = WordMethod::Concat)]
    method: WordMethod,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CurveFormat {
    Svg,
    Csv,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[command(flatten)]
    family: Family,
    #[arg(long)]
    n: u64,
    #[command(flatten)]
    angle: AngleArg,
    #[arg(long, value_enum)]
    format: Option<CurveFormat>,
    /// Shorthand for `--format svg --out PATH`.
    #[arg(long, conflicts_with_all = ["out", "csv"])]
    svg: Option<PathBuf>,
    /// Shorthand for `--format csv --out PATH`.
    #[arg(long, conflicts_with = "out")]
    csv: Option<PathBuf>,
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Overlay the chord-aligned bounding box (SVG only).
    #[arg(long)]
    bbox: bool,
    /// Overlay the bounding boxes of the five sub-curves (SVG only).
    #[arg(long)]
    parts: bool,
    /// Stroke width in drawing units; 0.5% of the viewBox width by default.
    #[arg(long)]
    stroke: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[command(flatten)]
    family: Family,
    #[arg(long)]
    n: u64,
    #[command(flatten)]
    angle: AngleArg,
    #[arg(long, value_enum)]
    format: Option<ReportFormat>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DimArgs {
    /// Number of evenly spaced angles from 0 to π/2.
    #[arg(long, default_value_t = 91, conflicts_with = "alphas")]
    grid: usize,
    /// Explicit comma-separated angles instead of a grid.
    #[arg(long, value_delimiter = ',', value_parser = angle::parse_angle)]
    alphas: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    format: Option<ReportFormat>,
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Also write an SVG plot of the dimension against the angle.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct IfsArgs {
    #[command(flatten)]
    family: Family,
    #[command(flatten)]
    angle: AngleArg,
    /// Reference curve order; the family's second self-similar order by default.
    #[arg(long)]
    n_ref: Option<u64>,
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Write derivation diagnostics as JSON to this file.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AttractorArgs {
    #[command(flatten)]
    family: Family,
    #[command(flatten)]
    angle: AngleArg,
    /// Read the IFS from a JSON file instead of deriving it.
    #[arg(long)]
    ifs: Option<PathBuf>,
    /// Iteration depth; the sample has 2·5^depth points.
    #[arg(long, conflicts_with = "budget")]
    depth: Option<u32>,
    /// Deepest iteration with at most this many points.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<CurveFormat>,
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Write a box-counting report (JSON, or CSV by extension) to this file.
    #[arg(long)]
    dimension: Option<PathBuf>,
    /// Box sizes for the dimension report.
    #[arg(long, default_value_t = 12)]
    levels: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    family: Family,
    #[command(flatten)]
    angle: AngleArg,
    #[arg(long, value_enum, default_value_t = Level::Full)]
    level: Level,
    /// Draw the reference curve with the mirrored turn convention (negative control).
    #[arg(long)]
    swap_parity: bool,
    /// Attractor depth for the metric checks.
    #[arg(long, default_value_t = 9)]
    depth: u32,
    /// Tolerance on the box-counting slope.
    #[arg(long, default_value_t = 0.05)]
    dim_tol: f64,
    /// Tolerance on the relative deviation of the curve parts from their templates.
    #[arg(long, default_value_t = 1e-9)]
    fit_tol: f64,
    /// Tolerance on the measured chord ratio.
    #[arg(long)]
    ratio_tol: Option<f64>,
    /// Report file; stdout when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    family: Family,
    /// Number of evenly spaced angles from 0 to π/2.
    #[arg(long, default_value_t = 11)]
    grid: usize,
    /// Attractor depth for OSC and box counting.
    #[arg(long, default_value_t = 7)]
    depth: u32,
    #[arg(long, value_enum)]
    format: Option<ReportFormat>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

/// A usage error: bad flags or values outside a module's domain.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Some verification check failed; the report has been written.
#[derive(Debug)]
struct VerificationFailed;

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for VerificationFailed {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Usage(msg.into()))
}

/// Turns a library error raised while validating inputs into a usage error.
fn valid<T>(r: fibfrac::Result<T>) -> Result<T> {
    r.map_err(|e| usage(e.to_string()))
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("FIBFRAC_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        usage(format!(
            "FIBFRAC_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("cannot start worker threads")?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match configure_threads().and_then(|()| run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<VerificationFailed>() => {
            eprintln!("fibfrac: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("fibfrac: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Word(a) => cmd_word(a),
        Command::Curve(a) => cmd_curve(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Dim(a) => cmd_dim(a),
        Command::Ifs(a) => cmd_ifs(a),
        Command::Attractor(a) => cmd_attractor(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
    }
}

fn check_family(i: u64) -> Result<()> {
    valid(fib_length(i, 1)).map(|_| ())
}

fn cmd_word(a: WordArgs) -> Result<()> {
    valid(fib_length(a.family.i, a.n))?;
    let format = match (a.format, extension(a.out.as_deref()).as_deref()) {
        (Some(f), _) => f,
        (None, Some("bin")) => WordFormat::Bin,
        (None, _) => WordFormat::Txt,
    };
    let word = valid(match a.method {
        WordMethod::Concat => word_concat(a.family.i, a.n),
        WordMethod::Substitution => word_by_substitution(a.family.i, a.n),
    })?;
    let bytes = match format {
        WordFormat::Txt => encode_text(word.symbols()).into_bytes(),
        WordFormat::Bin => encode_binary(word.symbols()),
    };
    emit(a.out.as_deref(), &bytes)
}

fn curve_format(
    explicit: Option<CurveFormat>,
    out: Option<&Path>,
    default: CurveFormat,
) -> CurveFormat {
    explicit.unwrap_or(match extension(out).as_deref() {
        Some("svg") => CurveFormat::Svg,
        Some("csv") => CurveFormat::Csv,
        _ => default,
    })
}

fn report_format(
    explicit: Option<ReportFormat>,
    out: Option<&Path>,
    default: ReportFormat,
) -> ReportFormat {
    explicit.unwrap_or(match extension(out).as_deref() {
        Some("json") => ReportFormat::Json,
        Some("csv") => ReportFormat::Csv,
        _ => default,
    })
}

fn points_csv(points: &[Point]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_csv(points, &mut buf).expect("writing to memory cannot fail");
    buf
}

fn cmd_curve(a: CurveArgs) -> Result<()> {
    let i = a.family.i;
    let alpha = a.angle.alpha;
    valid(check_alpha(alpha))?;
    let len = valid(fib_length(i, a.n))?;
    if len + 1 > MAX_CURVE_VERTICES {
        return Err(usage(format!(
            "curve of order {} has {} vertices, more than {MAX_CURVE_VERTICES}",
            a.n,
            len + 1
        )));
    }
    if a.stroke.is_some_and(|s| !(s > 0.0 && s.is_finite())) {
        return Err(usage("stroke width must be positive"));
    }
    let (out, format) = match (&a.svg, &a.csv) {
        (Some(p), _) => (Some(p.clone()), CurveFormat::Svg),
        (_, Some(p)) => (Some(p.clone()), CurveFormat::Csv),
        _ => (
            a.out.clone(),
            curve_format(a.format, a.out.as_deref(), CurveFormat::Svg),
        ),
    };
    if a.parts && a.n < 7 {
        return Err(usage("sub-curve boxes need n >= 7"));
    }
    let curve = valid(draw(&word_concat(i, a.n)?, alpha, 1.0))?;
    let bytes = match format {
        CurveFormat::Csv => points_csv(&curve.points),
        CurveFormat::Svg => {
            let mut overlays = Vec::new();
            if a.bbox {
                overlays.push(OrientedBox::chord_aligned(&curve.points));
            }
            if a.parts {
                overlays.extend(valid(subcurves(i, a.n, alpha))?.boxes);
            }
            svg(
                &curve.points,
                &SvgOptions {
                    stroke_width: a.stroke,
                    overlays,
                },
            )
            .into_bytes()
        }
    };
    emit(out.as_deref(), &bytes)
}

#[derive(Serialize)]
struct StatsRecord {
    i: u64,
    n: u64,
    alpha: f64,
    vertices: u64,
    width: f64,
    height: f64,
    aspect: Option<f64>,
    aspect_limit: Option<f64>,
    net_angle: f64,
}

fn cmd_stats(a: StatsArgs) -> Result<()> {
    let (i, n, alpha) = (a.family.i, a.n, a.angle.alpha);
    valid(check_alpha(alpha))?;
    let len = valid(fib_length(i, n))?;
    let st = valid(word_stats(
        &word_concat(i, n)?,
        alpha,
        1.0,
        TurnConvention::EvenLeft,
    ))?;
    let rec = StatsRecord {
        i,
        n,
        alpha,
        vertices: len + 1,
        width: st.width,
        height: st.height,
        aspect: st.aspect.is_finite().then_some(st.aspect),
        aspect_limit: fibfrac::analysis::aspect_limit(alpha).ok(),
        net_angle: st.net_angle,
    };
    let text = match report_format(a.format, a.out.as_deref(), ReportFormat::Json) {
        ReportFormat::Json => serde_json::to_string_pretty(&rec)? + "\n",
        ReportFormat::Csv => format!(
            "i,n,alpha,vertices,width,height,aspect,aspect_limit,net_angle\n{},{},{},{},{},{},{},{},{}\n",
            i,
            n,
            g17(alpha),
            rec.vertices,
            g17(st.width),
            g17(st.height),
            g17(st.aspect),
            g17(rec.aspect_limit.unwrap_or(f64::INFINITY)),
            g17(st.net_angle)
        ),
    };
    emit(a.out.as_deref(), text.as_bytes())
}

fn cmd_dim(a: DimArgs) -> Result<()> {
    let alphas = match a.alphas {
        Some(v) => v,
        None => {
            if a.grid < 2 {
                return Err(usage("--grid needs at least 2 angles"));
            }
            alpha_grid(a.grid)
        }
    };
    for &alpha in &alphas {
        valid(check_alpha(alpha))?;
    }
    let rows = valid(dim_table(&alphas))?;
    let text = match report_format(a.format, a.out.as_deref(), ReportFormat::Csv) {
        ReportFormat::Csv => dim_table_csv(&rows),
        ReportFormat::Json => serde_json::to_string_pretty(&rows)? + "\n",
    };
    if let Some(plot) = &a.plot {
        let pts: Vec<Point> = rows
            .iter()
            .map(|r| Point::new(r.alpha, r.dimension))
            .collect();
        output::write_atomic(plot, svg(&pts, &SvgOptions::default()).as_bytes())?;
    }
    emit(a.out.as_deref(), text.as_bytes())
}

fn resolve_n_ref(i: u64, n_ref: Option<u64>) -> u64 {
    n_ref.unwrap_or_else(|| default_n_ref(i))
}

fn cmd_ifs(a: IfsArgs) -> Result<()> {
    let (i, alpha) = (a.family.i, a.angle.alpha);
    check_family(i)?;
    valid(check_alpha(alpha))?;
    let n_ref = resolve_n_ref(i, a.n_ref);
    let (ifs, report) = derive_ifs_report(i, alpha, n_ref).map_err(|e| match e {
        fibfrac::Error::Domain(m) => usage(m),
        other => anyhow!(other),
    })?;
    if let Some(p) = &a.report {
        output::write_atomic(
            p,
            (serde_json::to_string_pretty(&report)? + "\n").as_bytes(),
        )?;
    }
    emit(a.out.as_deref(), ifs.to_json().as_bytes())
}

fn load_or_derive(i: u64, alpha: f64, path: Option<&Path>) -> Result<Ifs> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("cannot read {}", p.display()))?;
            Ifs::from_json(&text).map_err(|e| usage(e.to_string()))
        }
        None => {
            check_family(i)?;
            valid(check_alpha(alpha))?;
            Ok(derive_ifs(i, alpha, default_n_ref(i))?)
        }
    }
}

fn cmd_attractor(a: AttractorArgs) -> Result<()> {
    if a.depth.is_some_and(|d| d > 11) {
        return Err(usage("--depth is limited to 11 (about 98 million points)"));
    }
    if a.levels < 5 {
        return Err(usage("--levels must be at least 5"));
    }
    let ifs = load_or_derive(a.family.i, a.angle.alpha, a.ifs.as_deref())?;
    let points = match a.budget {
        Some(b) => valid(attractor_budget(&ifs, b))?.0,
        None => attractor(&ifs, a.depth.unwrap_or(8)),
    };
    let bytes = match curve_format(a.format, a.out.as_deref(), CurveFormat::Csv) {
        CurveFormat::Csv => points_csv(&points),
        CurveFormat::Svg => svg(&points, &SvgOptions::default()).into_bytes(),
    };
    if let Some(path) = &a.dimension {
        let (hi, lo) = valid(default_scales(&points))?;
        let mut report = valid(box_counting_dimension(&points, hi, lo, a.levels))?;
        if let Ok(s) = hausdorff_dimension(ifs.alpha) {
            report = report.with_analytic(ifs.alpha, s);
        }
        let text = match extension(Some(path)).as_deref() {
            Some("csv") => report.to_csv(),
            _ => report.to_json(),
        };
        output::write_atomic(path, text.as_bytes())?;
    }
    emit(a.out.as_deref(), &bytes)
}

fn cmd_verify(a: VerifyArgs) -> Result<()> {
    check_family(a.family.i)?;
    valid(check_alpha(a.angle.alpha))?;
    if a.depth > 10 {
        return Err(usage("--depth is limited to 10 for verification"));
    }
    for (name, v) in [
        ("--dim-tol", a.dim_tol),
        ("--fit-tol", a.fit_tol),
        ("--ratio-tol", a.ratio_tol.unwrap_or(1.0)),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(usage(format!("{name} must be positive")));
        }
    }
    let opts = VerifyOptions {
        i: a.family.i,
        alpha: a.angle.alpha,
        level: a.level,
        swap_parity: a.swap_parity,
        depth: a.depth,
        dim_tol: a.dim_tol,
        fit_tol: a.fit_tol,
        ratio_tol: a.ratio_tol,
    };
    let report = verify::run(&opts)?;
    emit(a.out.as_deref(), report.to_json().as_bytes())?;
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!(
            "FAIL {}: value {} tolerance {} ({})",
            c.name, c.value, c.tolerance, c.detail
        );
    }
    if report.passed {
        Ok(())
    } else {
        bail!(VerificationFailed)
    }
}

#[derive(Serialize)]
struct SweepRow {
    alpha: f64,
    r: f64,
    dimension: f64,
    aspect_limit: Option<f64>,
    scale_error: f64,
    osc_margin: Option<f64>,
    boxcount_s: Option<f64>,
    fit_r2: Option<f64>,
}

fn sweep_row(i: u64, alpha: f64, depth: u32) -> Result<SweepRow> {
    let p = ScalingProfile::at(alpha)?;
    let ifs = derive_ifs(i, alpha, default_n_ref(i))?;
    let want = [p.r * p.r, p.r, p.r, p.r, p.r];
    let scale_error = ifs
        .sorted_scales()
        .iter()
        .zip(want)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let osc_margin = (alpha > 0.0).then(|| verify_osc(&ifs).margin);
    let pts = attractor(&ifs, depth);
    let fit: Option<DimensionReport> = default_scales(&pts)
        .ok()
        .and_then(|(hi, lo)| box_counting_dimension(&pts, hi, lo, 12).ok());
    Ok(SweepRow {
        alpha,
        r: p.r,
        dimension: p.dimension,
        aspect_limit: p.aspect_limit,
        scale_error,
        osc_margin,
        boxcount_s: fit.as_ref().map(|f| f.boxcount_s),
        fit_r2: fit.as_ref().map(|f| f.fit_r2),
    })
}

fn cmd_sweep(a: SweepArgs) -> Result<()> {
    check_family(a.family.i)?;
    if a.grid < 2 {
        return Err(usage("--grid needs at least 2 angles"));
    }
    if a.depth > 10 {
        return Err(usage("--depth is limited to 10 for sweeps"));
    }
    let rows: Vec<SweepRow> = alpha_grid(a.grid)
        .into_iter()
        .map(|alpha| sweep_row(a.family.i, alpha, a.depth))
        .collect::<Result<_>>()?;
    let text = match report_format(a.format, a.out.as_deref(), ReportFormat::Csv) {
        ReportFormat::Json => serde_json::to_string_pretty(&rows)? + "\n",
        ReportFormat::Csv => {
            let opt = |v: Option<f64>| v.map(g17).unwrap_or_default();
            let mut s = String::from(
                "alpha,R,dimension,aspect_limit,scale_error,osc_margin,boxcount_s,fit_r2\n",
            );
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    g17(r.alpha),
                    g17(r.r),
                    g17(r.dimension),
                    opt(r.aspect_limit),
                    g17(r.scale_error),
                    opt(r.osc_margin),
                    opt(r.boxcount_s),
                    opt(r.fit_r2)
                ));
            }
            s
        }
    };
    emit(a.out.as_deref(), text.as_bytes())
}
