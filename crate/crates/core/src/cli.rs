//! The `bohmian-earth` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::audit::audit_table;
use crate::error::Error;
use crate::field::{sample_grid, trace_streamline, FieldConfig, FieldMode, FIELD_LENGTH_UNIT};
use crate::io::config::{ConfigFile, MagneticChoice, ResolvedConfig};
use crate::io::csv::{density_table, grid_table, streamline_table, trajectory_table, Table};
use crate::io::csv::{DENSITY_HEADER, STREAMLINE_HEADER, TRAJECTORY_HEADER};
use crate::io::manifest::{sidecar_path, RunManifest};
use crate::io::svg::{emit_svg, PlotKind, PlotSpec, Scale, Series};
use crate::io::IoError;
use crate::ode::Method;
use crate::quantum::{
    coupling_a, energy_level_log, gravitational_bohr_length, magnetic_from_period, principal_from_semimajor,
    relative_level_gap,
};
use crate::trajectory::{trajectory_cartesian, uniform_grid, Branch, IntegratorConfig, PhiMode, RadiusSource, TrajectoryOptions};
use crate::units::JULIAN_YEAR;
use crate::wavefunction::{log_radial_density, most_probable_radius, RadialDensitySpec};

#[derive(Debug, Parser)]
#[command(name = "bohmian-earth", version, about = "Bohmian trajectories of the Earth around the Sun")]
#[command(arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Quantum numbers, coupling and energy levels.
    QuantumNumbers(QuantumArgs),
    /// Sample a trajectory to CSV.
    Trajectory(TrajectoryArgs),
    /// Sample the planar velocity field or trace streamlines.
    Field(FieldArgs),
    /// Radial probability density on an r grid.
    Wavefunction(WaveArgs),
    /// Compare recomputed table quantities with the published ones.
    Audit(AuditArgs),
    /// Render CSV output as SVG.
    Plot(PlotArgs),
    /// Re-run the command recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Args, Serialize, Clone, Default)]
struct Scenario {
    /// Config file with `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Semi-major axis, m.
    #[arg(long)]
    a: Option<f64>,
    /// Plane offset Z_h, m.
    #[arg(long)]
    zh: Option<f64>,
    #[arg(long)]
    xi: Option<f64>,
    /// Equilibrium radius, m (default xi * Z_h).
    #[arg(long)]
    r_eq: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    phi0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<f64>,
    /// `period`, `table` or a number.
    #[arg(long)]
    magnetic: Option<MagneticChoice>,
}

impl Scenario {
    fn resolve(&self) -> Result<ResolvedConfig, IoError> {
        let base = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let overrides = ConfigFile {
            a: self.a,
            z_h: self.zh,
            xi: self.xi,
            r_eq: self.r_eq,
            phi0: self.phi0,
            tau: self.tau,
            magnetic: self.magnetic,
            ..Default::default()
        };
        ResolvedConfig::resolve(&base.overridden_by(&overrides))
    }
}

#[derive(Debug, Args, Serialize)]
struct QuantumArgs {
    #[command(flatten)]
    scenario: Scenario,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
enum SourceArg {
    ClosedForm,
    Numeric,
    Riccati,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
enum MethodArg {
    Rk4,
    Rk2,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
enum PhiArg {
    Guided,
    Uniform,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
enum BranchArg {
    Minus,
    Plus,
}

#[derive(Debug, Args, Serialize)]
struct TrajectoryArgs {
    #[command(flatten)]
    scenario: Scenario,
    #[arg(long, value_enum, default_value = "closed-form")]
    source: SourceArg,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t_start: f64,
    #[arg(long)]
    t_end: f64,
    /// Output spacing, s.
    #[arg(long)]
    dt: f64,
    /// Largest integration sub-step for the numeric sources, s.
    #[arg(long, default_value_t = 1e4)]
    max_step: f64,
    #[arg(long, value_enum, default_value = "rk4")]
    method: MethodArg,
    /// Starting radius for the numeric sources, m.
    #[arg(long)]
    r0: Option<f64>,
    #[arg(long, value_enum, default_value = "guided")]
    phi_mode: PhiArg,
    #[arg(long, value_enum, default_value = "minus")]
    branch: BranchArg,
    /// Stop at closed-form samples before the real branch instead of skipping them.
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a radius-versus-time SVG.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
enum FieldModeArg {
    Verbatim,
    Si,
}

#[derive(Debug, Args, Serialize)]
struct FieldArgs {
    #[command(flatten)]
    scenario: Scenario,
    #[arg(long, value_enum, default_value = "verbatim")]
    mode: FieldModeArg,
    /// Sample an N x N grid instead of tracing streamlines.
    #[arg(long, conflicts_with_all = ["seeds", "svg"])]
    grid: Option<usize>,
    /// Streamline seed `x,y` in field units (1e11 m); repeatable.
    #[arg(long = "seed", value_parser = parse_pair, allow_hyphen_values = true)]
    seeds: Vec<(f64, f64)>,
    /// Streamline time step in field time units.
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    #[arg(long, default_value_t = 2000)]
    max_steps: usize,
    /// Drop the radial term, leaving the pure rotation.
    #[arg(long)]
    no_radial: bool,
    /// Half width of the box in field units (1e11 m).
    #[arg(long, default_value_t = 3.0)]
    half_width: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct WaveArgs {
    #[command(flatten)]
    scenario: Scenario,
    /// Principal numbers; several values give one CSV each.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    n: Vec<f64>,
    /// Length scale b, m.
    #[arg(long, default_value_t = 1e-7)]
    b: f64,
    #[arg(long)]
    r_min: Option<f64>,
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long, default_value_t = 400)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct AuditArgs {
    #[command(flatten)]
    scenario: Scenario,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
enum PlotKindArg {
    RadiusVsTime,
    OrbitXy,
    FieldStream,
    RadialDensity,
}

#[derive(Debug, Args, Serialize)]
struct PlotArgs {
    /// CSV written by another subcommand; repeatable.
    #[arg(long = "input", required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, value_enum)]
    kind: PlotKindArg,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    log_y: bool,
}

#[derive(Debug, Args, Serialize)]
struct ReplayArgs {
    #[arg(long)]
    manifest: PathBuf,
    /// Write to this path instead of the recorded one.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected `x,y`, got `{s}`"))?;
    let p = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
    Ok((p(x)?, p(y)?))
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] IoError),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Io(IoError::Model(e))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(IoError::Io(e))
    }
}

/// Runs the CLI on `argv` (program name included) and returns the exit code:
/// 0 on success, 1 on a domain or I/O error, 2 on a usage error.
pub fn run(argv: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let rest = argv.get(1..).unwrap_or_default();
    match dispatch(cli.command, rest) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("usage: bohmian-earth <quantum-numbers|trajectory|field|wavefunction|audit|plot|replay> [options]");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(command: Command, argv: &[String]) -> Result<(), CliError> {
    match command {
        Command::QuantumNumbers(a) => quantum_numbers(&a, argv),
        Command::Trajectory(a) => trajectory(&a, argv),
        Command::Field(a) => field(&a, argv),
        Command::Wavefunction(a) => wavefunction(&a, argv),
        Command::Audit(a) => audit(&a, argv),
        Command::Plot(a) => plot(&a),
        Command::Replay(a) => replay(&a),
    }
}

/// Writes `text` to `out` with a manifest sidecar, or to stdout.
fn emit(
    text: &str,
    out: Option<&Path>,
    subcommand: &str,
    argv: &[String],
    config: &ResolvedConfig,
    settings: &impl Serialize,
) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            let settings = serde_json::to_value(settings).map_err(IoError::from)?;
            RunManifest::new(subcommand, argv, *config, settings).write(&sidecar_path(path))?;
        }
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[derive(Serialize)]
struct QuantumReport {
    schema_version: u32,
    b: f64,
    n: f64,
    l: f64,
    log10_n: f64,
    m_period: f64,
    m_table: f64,
    m_used: f64,
    a_period: f64,
    a_table: f64,
    energy_j: f64,
    log10_abs_energy: f64,
    relative_gap: f64,
    notes: Vec<String>,
}

fn quantum_numbers(args: &QuantumArgs, argv: &[String]) -> Result<(), CliError> {
    let cfg = args.scenario.resolve()?;
    let c = &cfg.constants;
    let b = gravitational_bohr_length(c);
    let (n, log10_n) = principal_from_semimajor(cfg.geometry.a, b)?;
    let m_period = magnetic_from_period(c, cfg.geometry.a, JULIAN_YEAR)?;
    let m_table = crate::audit::table::M;
    let energy = energy_level_log(n, c)?;
    let report = QuantumReport {
        schema_version: 1,
        b,
        n,
        l: n,
        log10_n,
        m_period,
        m_table,
        m_used: cfg.m,
        a_period: coupling_a(m_period, c)?,
        a_table: coupling_a(m_table, c)?,
        energy_j: energy.value(),
        log10_abs_energy: energy.log10_magnitude,
        relative_gap: relative_level_gap(n)?,
        notes: vec![
            format!("m from a one-year period is {:.3} times the tabulated m", m_period / m_table),
            "the tabulated A ~ 1e31 corresponds to the period-derived m".into(),
        ],
    };
    let text = if args.json {
        serde_json::to_string_pretty(&report).map_err(IoError::from)? + "\n"
    } else {
        let mut t = String::new();
        for (k, v) in [
            ("b (m)", report.b),
            ("n", report.n),
            ("l", report.l),
            ("m (period)", report.m_period),
            ("m (table)", report.m_table),
            ("A from m (period) (m^4/s^2)", report.a_period),
            ("A from m (table) (m^4/s^2)", report.a_table),
            ("E_n (J)", report.energy_j),
            ("relative level gap", report.relative_gap),
        ] {
            t.push_str(&format!("{k:<30} {v:.6e}\n"));
        }
        for note in &report.notes {
            t.push_str(&format!("note: {note}\n"));
        }
        t
    };
    emit(&text, args.out.as_deref(), "quantum-numbers", argv, &cfg, args)
}

fn trajectory(args: &TrajectoryArgs, argv: &[String]) -> Result<(), CliError> {
    let cfg = args.scenario.resolve()?;
    if !(args.dt > 0.0) || !(args.t_end > args.t_start) {
        return Err(CliError::Usage("need --dt > 0 and --t-end > --t-start".into()));
    }
    let grid = uniform_grid(args.t_start, args.t_end, args.dt)?;
    let mut opts = TrajectoryOptions::new(match args.source {
        SourceArg::ClosedForm => RadiusSource::ClosedForm,
        SourceArg::Numeric => RadiusSource::Numeric,
        SourceArg::Riccati => RadiusSource::Riccati,
    });
    opts.phi_mode = match args.phi_mode {
        PhiArg::Guided => PhiMode::Guided,
        PhiArg::Uniform => PhiMode::Uniform,
    };
    opts.branch = match args.branch {
        BranchArg::Minus => Branch::Minus,
        BranchArg::Plus => Branch::Plus,
    };
    let method = match args.method {
        MethodArg::Rk4 => Method::Rk4,
        MethodArg::Rk2 => Method::Rk2,
    };
    opts.integrator = IntegratorConfig::new(args.max_step, 1, method, 1e-12)?;
    opts.r0 = args.r0;
    opts.skip_leading_invalid = !args.strict;
    let traj = trajectory_cartesian(&grid, &cfg.geometry, cfg.m, &cfg.constants, &opts)?;
    if traj.skipped > 0 {
        eprintln!(
            "note: skipped {} leading samples where the closed form is complex (first kept t = {})",
            traj.skipped,
            traj.samples.first().map_or("none".to_string(), |s| format!("{:e} s", s.t))
        );
    }
    if let Some(e) = &traj.truncated {
        eprintln!("note: trajectory truncated after {} samples: {e}", traj.samples.len());
    }
    if traj.samples.is_empty() {
        return Err(match traj.truncated {
            Some(e) => e.into(),
            None => Error::Domain(crate::error::DomainError::Invalid("no valid samples on the time grid".into())).into(),
        });
    }
    let table = trajectory_table(&traj.samples);
    emit(&table.to_text(), args.out.as_deref(), "trajectory", argv, &cfg, args)?;
    if let Some(svg) = &args.svg {
        let series = Series {
            label: series_label(args.out.as_deref(), &format!("Z_h = {:e} m", cfg.geometry.z_h)),
            points: traj.samples.iter().map(|s| (s.t, s.r)).collect(),
        };
        emit_svg(&PlotSpec::new(PlotKind::RadiusVsTime, vec![series]), svg)?;
    }
    Ok(())
}

fn series_label(path: Option<&Path>, fallback: &str) -> String {
    path.and_then(|p| p.file_stem())
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| fallback.to_string())
}

const DEFAULT_SEEDS: [(f64, f64); 6] = [(1.496, 0.0), (0.0, 1.496), (-1.496, 0.0), (0.0, -1.496), (0.8, 0.0), (-0.8, 0.0)];

fn field(args: &FieldArgs, argv: &[String]) -> Result<(), CliError> {
    let cfg = args.scenario.resolve()?;
    let (mode, unit) = match args.mode {
        FieldModeArg::Verbatim => (FieldMode::VerbatimYearUnits, 1.0),
        FieldModeArg::Si => (FieldMode::SiAngular, FIELD_LENGTH_UNIT),
    };
    let mut fc = FieldConfig::from_si(cfg.geometry.z_h, cfg.geometry.a, &cfg.constants, mode);
    fc.radial_term = !args.no_radial;
    fc.half_width = args.half_width * unit;
    fc.validate()?;
    if let Some(n) = args.grid {
        let table = grid_table(&sample_grid(&fc, n)?);
        return emit(&table.to_text(), args.out.as_deref(), "field", argv, &cfg, args);
    }
    let seeds: Vec<(f64, f64)> = if args.seeds.is_empty() { DEFAULT_SEEDS.to_vec() } else { args.seeds.clone() };
    // step is given in field time units; SI mode integrates in seconds
    let step = match mode {
        FieldMode::VerbatimYearUnits => args.step,
        FieldMode::SiAngular => args.step * JULIAN_YEAR,
    };
    let mut lines = Vec::with_capacity(seeds.len());
    for (i, &(x, y)) in seeds.iter().enumerate() {
        let line = trace_streamline((x * unit, y * unit), &fc, step, args.max_steps)?;
        eprintln!(
            "note: streamline {i} from ({x}, {y}): {} points, stopped by {:?}",
            line.points.len(),
            line.terminated_by
        );
        lines.push(line);
    }
    emit(&streamline_table(&lines).to_text(), args.out.as_deref(), "field", argv, &cfg, args)?;
    if let Some(svg) = &args.svg {
        let mut spec = PlotSpec::new(
            PlotKind::FieldStream,
            lines
                .iter()
                .enumerate()
                .map(|(i, l)| Series {
                    label: format!("seed {i}"),
                    points: l.points.iter().map(|&(x, y)| (x / unit, y / unit)).collect(),
                })
                .collect(),
        );
        spec.markers = seeds;
        emit_svg(&spec, svg)?;
    }
    Ok(())
}

fn per_n_path(out: &Path, n: f64) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let ext = out.extension().map(|e| format!(".{}", e.to_string_lossy())).unwrap_or_default();
    out.with_file_name(format!("{stem}.n{n}{ext}"))
}

fn wavefunction(args: &WaveArgs, argv: &[String]) -> Result<(), CliError> {
    let cfg = args.scenario.resolve()?;
    if args.n.is_empty() {
        return Err(CliError::Usage("--n needs at least one value".into()));
    }
    if args.n.len() > 1 && args.out.is_none() {
        return Err(CliError::Usage("several --n values need --out (one CSV per n)".into()));
    }
    if args.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let specs = args
        .n
        .iter()
        .map(|&n| RadialDensitySpec::new(n, args.b))
        .collect::<Result<Vec<_>, _>>()?;
    let r_max = args.r_max.unwrap_or_else(|| {
        specs
            .iter()
            .map(|s| most_probable_radius(s.n, s.b) + 10.0 * s.std_dev())
            .fold(0.0, f64::max)
    });
    let r_min = args.r_min.unwrap_or(r_max / args.points as f64);
    if !(r_min > 0.0 && r_max > r_min) {
        return Err(CliError::Usage("need 0 < r-min < r-max".into()));
    }
    let h = (r_max - r_min) / (args.points - 1) as f64;
    let mut series = Vec::new();
    for spec in &specs {
        let rows = (0..args.points)
            .map(|i| {
                let r = r_min + i as f64 * h;
                let l = log_radial_density(r, spec)?;
                Ok((r, l, l.exp()))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let text = density_table(&rows).to_text();
        let out = match (&args.out, specs.len()) {
            (Some(p), 1) => Some(p.clone()),
            (Some(p), _) => Some(per_n_path(p, spec.n)),
            (None, _) => None,
        };
        emit(&text, out.as_deref(), "wavefunction", argv, &cfg, args)?;
        series.push(Series {
            label: format!("n = {}", spec.n),
            points: rows.iter().map(|&(r, _, d)| (r, d)).collect(),
        });
    }
    if let Some(svg) = &args.svg {
        emit_svg(&PlotSpec::new(PlotKind::RadialDensity, series), svg)?;
    }
    Ok(())
}

fn audit(args: &AuditArgs, argv: &[String]) -> Result<(), CliError> {
    let cfg = args.scenario.resolve()?;
    let report = audit_table(&cfg.constants)?;
    for item in report.flagged() {
        eprintln!(
            "flag: {} published {:e}, recomputed {:e} (ratio {:.4e}); {}",
            item.symbol, item.published, item.recomputed, item.ratio, item.note
        );
    }
    let text = serde_json::to_string_pretty(&report).map_err(IoError::from)? + "\n";
    emit(&text, args.out.as_deref(), "audit", argv, &cfg, args)
}

fn plot(args: &PlotArgs) -> Result<(), CliError> {
    let kind = match args.kind {
        PlotKindArg::RadiusVsTime => PlotKind::RadiusVsTime,
        PlotKindArg::OrbitXy => PlotKind::OrbitXy,
        PlotKindArg::FieldStream => PlotKind::FieldStream,
        PlotKindArg::RadialDensity => PlotKind::RadialDensity,
    };
    let mut series = Vec::new();
    let mut markers = Vec::new();
    for input in &args.inputs {
        let text = std::fs::read_to_string(input)?;
        let table = Table::parse(&text, &input.display().to_string())?;
        let label = series_label(Some(input), "series");
        let pair = |xs: &str, ys: &str| -> Result<Vec<(f64, f64)>, IoError> {
            Ok(table.column(xs)?.into_iter().zip(table.column(ys)?).collect())
        };
        let wrong = |expected: &str| {
            CliError::Usage(format!("{} is not a {expected} CSV", input.display()))
        };
        match kind {
            PlotKind::RadiusVsTime | PlotKind::OrbitXy => {
                if !table.has_header(&TRAJECTORY_HEADER) {
                    return Err(wrong("trajectory"));
                }
                let points = if kind == PlotKind::RadiusVsTime { pair("t_s", "r_m")? } else { pair("x_m", "y_m")? };
                series.push(Series { label, points });
            }
            PlotKind::FieldStream => {
                if !table.has_header(&STREAMLINE_HEADER) {
                    return Err(wrong("streamline"));
                }
                let mut current: Option<(f64, Vec<(f64, f64)>)> = None;
                for row in &table.rows {
                    match &mut current {
                        Some((id, pts)) if *id == row[0] => pts.push((row[2], row[3])),
                        _ => {
                            if let Some((id, pts)) = current.take() {
                                series.push(Series { label: format!("seed {id}"), points: pts });
                            }
                            markers.push((row[2], row[3]));
                            current = Some((row[0], vec![(row[2], row[3])]));
                        }
                    }
                }
                if let Some((id, pts)) = current {
                    series.push(Series { label: format!("seed {id}"), points: pts });
                }
            }
            PlotKind::RadialDensity => {
                if !table.has_header(&DENSITY_HEADER) {
                    return Err(wrong("density"));
                }
                series.push(Series {
                    label,
                    points: pair("r_m", "density_normalized")?,
                });
            }
        }
    }
    let mut spec = PlotSpec::new(kind, series);
    spec.markers = markers;
    if args.log_y {
        spec.y_scale = Scale::Log;
    }
    emit_svg(&spec, &args.out)?;
    Ok(())
}

/// Drops `--flag value` and `--flag=value` occurrences.
fn strip_flag(argv: &[String], flag: &str) -> Vec<String> {
    let mut out = Vec::with_capacity(argv.len());
    let mut skip = false;
    let prefix = format!("{flag}=");
    for a in argv {
        if skip {
            skip = false;
        } else if a == flag {
            skip = true;
        } else if !a.starts_with(&prefix) {
            out.push(a.clone());
        }
    }
    out
}

fn replay(args: &ReplayArgs) -> Result<(), CliError> {
    let manifest = RunManifest::load(&args.manifest)?;
    if manifest.subcommand == "replay" || manifest.argv.first().map(String::as_str) != Some(manifest.subcommand.as_str()) {
        return Err(CliError::Usage("manifest does not record a replayable command".into()));
    }
    let dir = tempfile_dir()?;
    let cfg_path = dir.join("resolved.cfg");
    std::fs::write(&cfg_path, manifest.config.to_config_text())?;
    let mut argv = strip_flag(&manifest.argv, "--config");
    argv.push("--config".into());
    argv.push(cfg_path.display().to_string());
    if let Some(out) = &args.out {
        argv = strip_flag(&argv, "--out");
        argv.push("--out".into());
        argv.push(out.display().to_string());
    }
    let mut full = vec!["bohmian-earth".to_string()];
    full.extend(argv);
    let code = run(&full);
    let _ = std::fs::remove_dir_all(&dir);
    match code {
        0 => Ok(()),
        _ => Err(CliError::Io(IoError::Invalid(format!("replayed command exited with {code}")))),
    }
}

fn tempfile_dir() -> Result<PathBuf, CliError> {
    let nanos = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_nanos())
        .unwrap_or(0);
    let dir = std::env::temp_dir().join(format!("bohmian-earth-replay-{}-{nanos}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    Ok(dir)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        std::iter::once("bohmian-earth").chain(s.split_whitespace()).map(String::from).collect()
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(&args("")), 2);
        assert_eq!(run(&args("nonsense")), 2);
        assert_eq!(run(&args("trajectory --dt 1")), 2);
    }

    #[test]
    fn domain_errors_exit_one() {
        assert_eq!(run(&args("trajectory --xi 9 --t-end 10 --dt 1")), 1);
    }

    #[test]
    fn strip_flag_forms() {
        let v: Vec<String> = ["a", "--out", "x", "--out=y", "b"].iter().map(|s| s.to_string()).collect();
        assert_eq!(strip_flag(&v, "--out"), vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn pair_parser() {
        assert_eq!(parse_pair("1.5,-2").unwrap(), (1.5, -2.0));
        assert!(parse_pair("1.5").is_err());
    }

    #[test]
    fn per_n_naming() {
        assert_eq!(per_n_path(Path::new("d/fig4.csv"), 2.0), PathBuf::from("d/fig4.n2.csv"));
    }
}
