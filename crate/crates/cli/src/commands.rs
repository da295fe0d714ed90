use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use adiashort::analysis::{energy_track, transfer_report};
use adiashort::integrator::StepStats;
use adiashort::models::{synthesize_profile, Sign};
use adiashort::verify::{run_all, run_criterion, Options, CRITERIA};
use adiashort::{integrate, GammaPolicy, SimulationConfig, TrajectoryRecord};
use clap::Args;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Format, GammaSpec, ModelSpec, Params, RunArgs};
use crate::error::{classify, CliError, CliResult};
use crate::output::{manifest_path, write_atomic, write_json, RunManifest};

fn lib_err(e: adiashort::Error) -> CliError {
    CliError::run(e.to_string())
}

fn write_trajectory(path: &Path, traj: &TrajectoryRecord, format: Format) -> CliResult<()> {
    write_atomic(path, |w| {
        match format {
            Format::Csv => traj.write_csv(w),
            Format::Json => traj.write_json(w),
        }
        .map_err(lib_err)
    })
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Trajectory output file; without it only the summary is printed
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

pub fn simulate(args: &SimulateArgs) -> CliResult<()> {
    let cfg = args.run.config(args.run.single()?)?;
    let start = Instant::now();
    let traj = integrate(&cfg).map_err(lib_err)?;
    let elapsed = start.elapsed();
    if let Some(out) = &args.out {
        write_trajectory(out, &traj, args.format)?;
        RunManifest::new(&cfg, vec![out.clone()], traj.stats, elapsed).write(&manifest_path(out))?;
    }
    let r = transfer_report(&traj).map_err(lib_err)?;
    println!(
        "final P1 = {:.10}  P2 = {:.10}  norm = {:.10}  max|a-| = {:.3e}",
        r.final_p1, r.final_p2, r.final_norm, r.max_abs_a_minus
    );
    Ok(())
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Directory receiving one trajectory per parameter point, summary.csv
    /// and manifest.json
    #[arg(long)]
    pub out_dir: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Serialize)]
struct ScanRow {
    params: [Option<f64>; 3],
    file: PathBuf,
    outcome: Result<ScanResult, String>,
}

#[derive(Debug, Clone, Copy, Serialize)]
struct ScanResult {
    final_p1: f64,
    final_p2: f64,
    norm: f64,
    max_abs_a_minus: f64,
    peak_abs_gamma: f64,
    stats: StepStats,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn scan_file_name(model: &ModelSpec, p: Params, format: Format) -> String {
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    match model {
        ModelSpec::Lz => format!("lz_omega={}.{ext}", p.omega),
        ModelSpec::Ae => format!("ae_alpha={}_delta={}.{ext}", p.alpha, p.delta),
        ModelSpec::Table(_) => format!("table.{ext}"),
    }
}

/// Thread count from `ADIASHORT_THREADS`, or `None` for rayon's default.
pub fn thread_limit() -> CliResult<Option<usize>> {
    match std::env::var("ADIASHORT_THREADS") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::usage(format!("ADIASHORT_THREADS must be a positive integer, got {s:?}"))),
        },
        Err(_) => Ok(None),
    }
}

pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> CliResult<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_limit()? {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::run(e.to_string()))?;
    Ok(pool.install(f))
}

pub fn scan(args: &ScanArgs) -> CliResult<()> {
    let grid = args.run.grid();
    // validate every point before touching the filesystem
    let configs: Vec<(Params, SimulationConfig)> =
        grid.iter().map(|&p| Ok((p, args.run.config(p)?))).collect::<CliResult<_>>()?;
    std::fs::create_dir_all(&args.out_dir)
        .map_err(|e| CliError::run(format!("{}: {e}", args.out_dir.display())))?;

    let start = Instant::now();
    let rows: Vec<ScanRow> = with_pool(|| {
        configs
            .par_iter()
            .map(|(p, cfg)| {
                let file = args.out_dir.join(scan_file_name(&args.run.model, *p, args.format));
                let outcome = integrate(cfg).map_err(lib_err).and_then(|traj| {
                    write_trajectory(&file, &traj, args.format)?;
                    let r = transfer_report(&traj).map_err(lib_err)?;
                    Ok(ScanResult {
                        final_p1: r.final_p1,
                        final_p2: r.final_p2,
                        norm: r.final_norm,
                        max_abs_a_minus: r.max_abs_a_minus,
                        peak_abs_gamma: traj.peak_abs_gamma(),
                        stats: traj.stats,
                    })
                });
                ScanRow {
                    params: [finite(p.omega), finite(p.alpha), finite(p.delta)],
                    file,
                    outcome: outcome.map_err(|e| e.to_string()),
                }
            })
            .collect()
    })?;
    let elapsed = start.elapsed();

    let summary = args.out_dir.join("summary.csv");
    write_atomic(&summary, |w| write_summary(w, &rows).map_err(|e| CliError::run(e.to_string())))?;
    write_summary(std::io::stdout().lock(), &rows).map_err(|e| CliError::run(e.to_string()))?;

    let mut outputs: Vec<PathBuf> = rows.iter().filter(|r| r.outcome.is_ok()).map(|r| r.file.clone()).collect();
    outputs.push(summary);
    let cfgs: Vec<&SimulationConfig> = configs.iter().map(|(_, c)| c).collect();
    let stats: Vec<Option<StepStats>> = rows.iter().map(|r| r.outcome.as_ref().ok().map(|o| o.stats)).collect();
    RunManifest::new(cfgs, outputs, stats, elapsed).write(&args.out_dir.join("manifest.json"))?;

    let failed: Vec<String> = rows
        .iter()
        .filter_map(|r| r.outcome.as_ref().err().map(|e| format!("{}: {e}", r.file.display())))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::run(format!("{} of {} rows failed:\n{}", failed.len(), rows.len(), failed.join("\n"))))
    }
}

fn write_summary(out: impl Write, rows: &[ScanRow]) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record([
        "omega", "alpha", "delta", "final_p1", "final_p2", "norm", "max_abs_a_minus", "peak_abs_gamma", "file",
        "error",
    ])?;
    let opt = |x: Option<f64>| x.map(|v| format!("{v:?}")).unwrap_or_default();
    for r in rows {
        let mut rec: Vec<String> = r.params.iter().map(|&p| opt(p)).collect();
        match &r.outcome {
            Ok(o) => {
                rec.extend(
                    [o.final_p1, o.final_p2, o.norm, o.max_abs_a_minus, o.peak_abs_gamma].map(|v| format!("{v:?}")),
                );
                rec.push(r.file.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default());
                rec.push(String::new());
            }
            Err(e) => {
                rec.extend(std::iter::repeat_n(String::new(), 6));
                rec.push(e.clone());
            }
        }
        w.write_record(&rec)?;
    }
    w.flush()
}

#[derive(Debug, Args)]
pub struct EnergiesArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// CSV output: t, re_e1, im_e1, re_e2, im_e2
    #[arg(long)]
    pub out: PathBuf,
}

pub fn energies(args: &EnergiesArgs) -> CliResult<()> {
    let p = args.run.single()?;
    let window = args.run.window()?;
    let model = args.run.model(p)?;
    let policy = args.run.policy(window)?;
    if args.run.samples < 2 {
        return Err(CliError::usage("--samples must be at least 2"));
    }
    let start = Instant::now();
    let track = energy_track(&model, &policy, window, args.run.samples).map_err(classify)?;
    let (t_ref, refined) = track.refined_separation_min(&model, &policy).map_err(lib_err)?;
    write_atomic(&args.out, |w| track.write_csv(w).map_err(lib_err))?;
    #[derive(Serialize)]
    struct Snapshot<'a> {
        model: &'a adiashort::DriveModel,
        policy: &'a GammaPolicy,
        window: adiashort::Window,
        samples: usize,
    }
    let snap = Snapshot { model: &model, policy: &policy, window, samples: args.run.samples };
    RunManifest::new(snap, vec![args.out.clone()], (), start.elapsed()).write(&manifest_path(&args.out))?;
    println!(
        "separation_min = {} at t = {} (refined {} at t = {})",
        track.separation_min, track.separation_min_at, refined, t_ref
    );
    Ok(())
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// CSV output: t, gamma
    #[arg(long)]
    pub out: PathBuf,
}

pub fn profile(args: &ProfileArgs) -> CliResult<()> {
    let sign = match args.run.gamma {
        GammaSpec::Shortcut => Sign::Plus,
        GammaSpec::ShortcutNeg => Sign::Minus,
        _ => return Err(CliError::usage("profile needs --gamma shortcut or shortcut-neg")),
    };
    let p = args.run.single()?;
    let window = args.run.window()?;
    let model = args.run.model(p)?;
    let start = Instant::now();
    let prof = synthesize_profile(&model, window, args.run.samples, sign).map_err(classify)?;
    write_atomic(&args.out, |w| prof.write_csv(w).map_err(lib_err))?;
    RunManifest::new(&model, vec![args.out.clone()], (), start.elapsed()).write(&manifest_path(&args.out))?;
    println!("peak |gamma| = {} at t = {}", prof.peak_magnitude, prof.peak_time());
    Ok(())
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Oracle resolution reduced 10×, numerical tolerances relaxed 10×
    #[arg(long)]
    pub fast: bool,
    /// Run only these criteria (comma-separated ids)
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u8>,
    /// Also write the full report as JSON
    #[arg(long)]
    pub json: Option<PathBuf>,
}

pub fn verify(args: &VerifyArgs) -> CliResult<()> {
    if let Some(bad) = args.only.iter().find(|id| !CRITERIA.contains(id)) {
        return Err(CliError::usage(format!("no criterion {bad}; valid ids are 1-9")));
    }
    let opts = Options { fast: args.fast, fault: None };
    let start = Instant::now();
    let results = with_pool(|| {
        if args.only.is_empty() {
            run_all(&opts)
        } else {
            args.only.par_iter().map(|&id| run_criterion(id, &opts)).collect()
        }
    })?;
    let elapsed = start.elapsed();
    for r in &results {
        print!("{r}");
    }
    let passed = results.iter().filter(|r| r.passed()).count();
    println!("{passed}/{} criteria passed in {:.2} s", results.len(), elapsed.as_secs_f64());
    if let Some(path) = &args.json {
        write_json(path, &results)?;
    }
    if passed == results.len() {
        Ok(())
    } else {
        let failed: Vec<String> = results.iter().filter(|r| !r.passed()).map(|r| r.id.to_string()).collect();
        Err(CliError::Verify(format!("criteria failed: {}", failed.join(", "))))
    }
}

