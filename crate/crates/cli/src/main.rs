use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dcs::analysis::{median_series, phase_series, write_series_csv, MainIntegral};
use dcs::engine::Run;
use dcs::harness::{scaling_report, sweep_file, write_csv, write_timing_csv};
use dcs::lattice::{random_initial, Boundary, Mask};
use dcs::record::{analyze_run, AnalysisRequest, RunMetadata, RunRecord};
use dcs::render::{render_filters, render_state, FilterSet, Image, Palette, RenderOptions};
use dcs::{Error, Result};

#[derive(Parser)]
#[command(
    name = "dcs",
    version,
    about = "Run, sweep, analyze and render three-state reversible automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one random start state to its mirror point and write a run record.
    Run(RunArgs),
    /// Run every combination in a sweep config and write a results table.
    Sweep(SweepArgs),
    /// Analyze a stored run.
    Analyze(AnalyzeArgs),
    /// Draw a frame or the filters between two frames as PPM.
    Render(RenderArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Mask file.
    #[arg(long)]
    mask: PathBuf,
    /// Lattice shape such as `70x70`, or one extent repeated `--dims` times.
    #[arg(long)]
    size: String,
    /// Number of axes when `--size` is a single extent; defaults to the mask's.
    #[arg(long)]
    dims: Option<usize>,
    /// Initial `B` cells.
    #[arg(long, default_value_t = 8)]
    points: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = dcs::engine::DEFAULT_MAX_STEPS)]
    max_steps: u64,
    /// `periodic`, `open`, or one P/O flag per axis.
    #[arg(long, default_value = "periodic")]
    boundary: String,
    /// Run record path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Results CSV; timings go next to it as `<stem>.timing.csv`.
    #[arg(long)]
    out: PathBuf,
    /// Print median half-cycle per lattice size.
    #[arg(long)]
    scaling: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    run: PathBuf,
    #[arg(long)]
    mcl: bool,
    #[arg(long)]
    integral: bool,
    #[arg(long)]
    symmetry: bool,
    #[arg(long)]
    events: bool,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write t, phases, median and S as CSV.
    #[arg(long)]
    series: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    run: PathBuf,
    /// Frame to draw, or the gap after it when `--filters` is given.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    t: i64,
    /// Comma list from a, b0, b1, b2, c0, c1, c2.
    #[arg(long)]
    filters: Option<String>,
    #[arg(long, default_value_t = 4)]
    scale: usize,
    /// Fade Bank cells in the A_F layer.
    #[arg(long)]
    transparent_bank: bool,
    /// JSON palette overrides.
    #[arg(long)]
    palette: Option<PathBuf>,
    /// Output PPM; 3D lattices write one file per slice with a `_zNN` suffix.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Run(a) => run(a),
        Command::Sweep(a) => sweep(a),
        Command::Analyze(a) => analyze(a),
        Command::Render(a) => render(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_size(size: &str, dims: Option<usize>, mask_dim: usize) -> Result<Vec<usize>> {
    let parts: std::result::Result<Vec<usize>, _> =
        size.split(['x', 'X']).map(str::parse).collect();
    let parts =
        parts.map_err(|_| Error::Config(format!("bad size {size:?}; expected e.g. 70x70")))?;
    let shape = match (parts.as_slice(), dims) {
        ([n], d) => vec![*n; d.unwrap_or(mask_dim)],
        (p, Some(d)) if p.len() != d => {
            return Err(Error::Config(format!(
                "size {size:?} has {} axes but --dims is {d}",
                p.len()
            )))
        }
        (p, _) => p.to_vec(),
    };
    if shape.len() != mask_dim {
        return Err(Error::DimensionMismatch {
            expected: mask_dim,
            found: shape.len(),
        });
    }
    Ok(shape)
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(a: RunArgs) -> Result<()> {
    let text = std::fs::read_to_string(&a.mask).map_err(|e| Error::io(&a.mask, e))?;
    let mask = Mask::parse(&text)?;
    let shape = parse_size(&a.size, a.dims, mask.dim())?;
    let boundary = Boundary::parse_list(&a.boundary, shape.len())?;
    let start = random_initial(&shape, &boundary, a.points, a.seed)?;
    let run = Run::execute(start, mask, a.max_steps)?;
    match run.t_half() {
        Some(t) => log::info!("returned at t_half = {t}"),
        None => log::info!("no mirror point within {} steps", a.max_steps),
    }
    let mut report = analyze_run(
        &run,
        AnalysisRequest {
            symmetry: false,
            ..AnalysisRequest::applicable(&run)
        },
    )?;
    if run.outcome.returned {
        // the fit is diagnostic; a flat series just leaves it out
        match analyze_run(
            &run,
            AnalysisRequest {
                symmetry: true,
                ..Default::default()
            },
        ) {
            Ok(r) => report.symmetry = r.symmetry,
            Err(e) => log::warn!("symmetry fit skipped: {e}"),
        }
    }
    let metadata = RunMetadata {
        mask_id: a
            .mask
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        n_points: a.points,
        seed: a.seed,
        max_steps: a.max_steps,
    };
    write_out(
        a.out.as_deref(),
        &RunRecord::new(&run, metadata, report).to_json()?,
    )
}

fn timing_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    out.with_file_name(format!("{stem}.timing.csv"))
}

fn sweep(a: SweepArgs) -> Result<()> {
    let rows = sweep_file(&a.config, a.jobs)?;
    let file = std::fs::File::create(&a.out).map_err(|e| Error::io(&a.out, e))?;
    write_csv(&rows, std::io::BufWriter::new(file))?;
    let tpath = timing_path(&a.out);
    let file = std::fs::File::create(&tpath).map_err(|e| Error::io(&tpath, e))?;
    write_timing_csv(&rows, std::io::BufWriter::new(file))?;
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    let returned = rows.iter().filter(|r| r.returned).count();
    eprintln!("{} runs, {returned} returned, {failed} failed", rows.len());
    if a.scaling {
        let rep = scaling_report(&rows);
        for s in &rep.sizes {
            let median = s
                .median_t_half
                .map(|m| m.to_string())
                .unwrap_or_else(|| "-".into());
            let flag = if s.sufficient {
                ""
            } else {
                " (too few returned)"
            };
            println!(
                "{}: {}/{} returned, median t_half {median}{flag}",
                dcs::harness::dims_label(&s.dims),
                s.returned,
                s.runs
            );
        }
        for (w, r) in rep.sizes.windows(2).zip(&rep.ratios) {
            let r = r.map(|r| format!("{r:.2}")).unwrap_or_else(|| "-".into());
            println!(
                "{} -> {}: x{r}",
                dcs::harness::dims_label(&w[0].dims),
                dcs::harness::dims_label(&w[1].dims)
            );
        }
    }
    Ok(())
}

fn analyze(a: AnalyzeArgs) -> Result<()> {
    let record = RunRecord::load(&a.run)?;
    let run = record.to_run()?;
    let mut req = AnalysisRequest {
        mcl: a.mcl,
        integral: a.integral,
        symmetry: a.symmetry,
        events: a.events,
    };
    if req == AnalysisRequest::default() {
        req = AnalysisRequest::applicable(&run);
    }
    let report = analyze_run(&run, req)?;
    if let Some(path) = &a.series {
        let nc = &run.outcome.nc_series;
        let s = match &report.s_series {
            Some(s) => s.clone(),
            None => MainIntegral::compute(&run)?.series(),
        };
        let median = median_series(&phase_series(nc));
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        write_series_csv(std::io::BufWriter::new(file), nc, &median, &s)?;
    }
    let mut text = serde_json::to_string(&report)?;
    text.push('\n');
    write_out(a.out.as_deref(), &text)
}

fn render(a: RenderArgs) -> Result<()> {
    let run = RunRecord::load(&a.run)?.to_run()?;
    let palette = match &a.palette {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            serde_json::from_str(&text)?
        }
        None => Palette::default(),
    };
    let images: Vec<Image> = match &a.filters {
        Some(list) => {
            let opts = RenderOptions {
                scale: a.scale,
                transparent_bank: a.transparent_bank,
            };
            render_filters(&run, a.t, FilterSet::parse(list)?, &palette, opts)?
        }
        None => {
            let mut cursor = run.cursor()?;
            cursor.seek(a.t);
            render_state(&cursor.grid(), &palette, a.scale)?
        }
    };
    if images.len() == 1 {
        return images[0].write_ppm(&a.out);
    }
    let stem = a
        .out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    for (z, img) in images.iter().enumerate() {
        img.write_ppm(&a.out.with_file_name(format!("{stem}_z{z:02}.ppm")))?;
    }
    Ok(())
}
