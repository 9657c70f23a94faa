use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use stdedge::eval::{
    make_synthetic, montage, score, table1_report, Synthetic, SyntheticKind, CSV_HEADER,
    TABLE1_TOLERANCE,
};
use stdedge::{
    add_salt_pepper, load_image, median_filter, save_image, CannyParams, DetectorConfig,
    DetectorKind, EdgeMap, Error, GrayImage, ImageFormat, NoiseSpec,
};

/// Exit codes: 0 success, 1 usage error, 2 I/O or file format error.
#[derive(Parser)]
#[command(
    name = "stdedge",
    version,
    about = "2x2 standard-deviation edge detection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect edges and write them as a 0/255 mask.
    Detect(DetectArgs),
    /// Add seeded salt-and-pepper noise.
    Noise(NoiseArgs),
    /// Median filter an image.
    Denoise(DenoiseArgs),
    /// Run all three detectors, write a montage and optionally score them.
    Compare(CompareArgs),
    /// Recompute the reference window table from the built-in 10x10 patch.
    Table1(Table1Args),
    /// Write a synthetic scene and its ground-truth mask.
    Synth(SynthArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Output path; `.png` writes PNG, anything else binary PGM.
    #[arg(long = "out")]
    out: PathBuf,
    /// Override the output format (p5, p2, png).
    #[arg(long)]
    out_format: Option<String>,
}

impl OutputArgs {
    fn format(&self) -> stdedge::Result<ImageFormat> {
        match &self.out_format {
            Some(f) => f.parse(),
            None => Ok(ImageFormat::from_path(&self.out)),
        }
    }

    fn save(&self, img: &GrayImage) -> stdedge::Result<()> {
        save_image(img, &self.out, self.format()?)
    }
}

#[derive(Args)]
struct ParamArgs {
    /// Standard-deviation threshold; windows strictly above it are edges.
    #[arg(long, default_value_t = 7.0, allow_negative_numbers = true)]
    tau: f64,
    /// Median pre-filter kernel size for the stddev detector.
    #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
    median: i64,
    /// Skip the median pre-filter.
    #[arg(long)]
    no_median: bool,
    /// Sobel magnitude threshold (required whenever Sobel runs).
    #[arg(long, allow_negative_numbers = true)]
    sobel_threshold: Option<f64>,
    /// Canny Gaussian sigma.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    sigma: f64,
    /// Canny low hysteresis threshold.
    #[arg(long, default_value_t = 20.0, allow_negative_numbers = true)]
    low: f64,
    /// Canny high hysteresis threshold.
    #[arg(long, default_value_t = 60.0, allow_negative_numbers = true)]
    high: f64,
}

impl ParamArgs {
    fn config(&self, detector: DetectorKind) -> stdedge::Result<DetectorConfig> {
        let median_kernel = usize::try_from(self.median).map_err(|_| {
            Error::Argument(format!(
                "median kernel must be positive, got {}",
                self.median
            ))
        })?;
        let cfg = DetectorConfig {
            detector,
            tau: self.tau,
            pre_median: !self.no_median,
            median_kernel,
            sobel_threshold: self.sobel_threshold,
            canny: CannyParams {
                sigma: self.sigma,
                low: self.low,
                high: self.high,
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct DetectArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
    /// stddev, sobel or canny.
    #[arg(long, default_value = "stddev")]
    detector: String,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args)]
struct NoiseArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
    /// Per-pixel corruption probability.
    #[arg(long, default_value_t = 0.10, allow_negative_numbers = true)]
    density: f64,
    /// Fraction of corrupted pixels set to 255 (the rest become 0).
    #[arg(long, default_value_t = NoiseSpec::DEFAULT_SALT_RATIO, allow_negative_numbers = true)]
    salt_ratio: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct DenoiseArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
    /// Odd kernel size, at least 3.
    #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
    k: i64,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Montage output: original | sobel | canny | stddev.
    #[command(flatten)]
    output: OutputArgs,
    /// Ground-truth mask (nonzero = edge); enables scoring.
    #[arg(long)]
    truth: Option<PathBuf>,
    /// Also write the CSV report here.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Chebyshev matching radius.
    #[arg(long, default_value_t = 1)]
    radius: usize,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args)]
struct Table1Args {
    #[arg(long, default_value_t = 7.0, allow_negative_numbers = true)]
    tau: f64,
}

#[derive(Args)]
struct SynthArgs {
    /// constant, vstep, hstep, diagonal, checkerboard, glyph or composite.
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 128)]
    width: usize,
    #[arg(long, default_value_t = 128)]
    height: usize,
    #[arg(long, default_value_t = 0)]
    dark: u8,
    #[arg(long, default_value_t = 255)]
    bright: u8,
    /// Text for the glyph scene.
    #[arg(long)]
    text: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
    /// Where to write the ground-truth mask.
    #[arg(long)]
    truth_out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Detect(args) => detect(args),
        Command::Noise(args) => noise(args),
        Command::Denoise(args) => denoise(args),
        Command::Compare(args) => compare(args),
        Command::Table1(args) => table1(args),
        Command::Synth(args) => synth(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) | Error::Format { .. } | Error::Png(_) => ExitCode::from(2),
                Error::Argument(_) | Error::OutOfBounds { .. } => {
                    eprintln!("run with --help for usage");
                    ExitCode::from(1)
                }
            }
        }
    }
}

type CmdResult = stdedge::Result<ExitCode>;

fn detect(args: DetectArgs) -> CmdResult {
    let detector: DetectorKind = args.detector.parse()?;
    let cfg = args.params.config(detector)?;
    args.output.format()?;
    let img = load_image(&args.input)?;
    let edges = cfg.run(&img)?;
    args.output.save(&edges.to_image())?;
    println!("{cfg}");
    println!("size={}x{}", img.width(), img.height());
    println!(
        "edges={} fraction={:.4}",
        edges.count(),
        edges.count() as f64 / (img.width() * img.height()) as f64
    );
    Ok(ExitCode::SUCCESS)
}

fn noise(args: NoiseArgs) -> CmdResult {
    let spec = NoiseSpec::new(args.density, args.salt_ratio, args.seed)?;
    args.output.format()?;
    let img = load_image(&args.input)?;
    let noisy = add_salt_pepper(&img, &spec);
    args.output.save(&noisy)?;
    let changed = img
        .pixels()
        .iter()
        .zip(noisy.pixels())
        .filter(|(a, b)| a != b)
        .count();
    println!(
        "density={:.4} salt_ratio={:.4} seed={}",
        spec.density(),
        spec.salt_ratio(),
        spec.seed()
    );
    println!("changed={changed}");
    Ok(ExitCode::SUCCESS)
}

fn denoise(args: DenoiseArgs) -> CmdResult {
    let k = usize::try_from(args.k)
        .map_err(|_| Error::Argument(format!("kernel must be positive, got {}", args.k)))?;
    // validate before touching the filesystem
    median_filter(&GrayImage::filled(1, 1, 0)?, k)?;
    args.output.format()?;
    let img = load_image(&args.input)?;
    let out = median_filter(&img, k)?;
    args.output.save(&out)?;
    let changed = img
        .pixels()
        .iter()
        .zip(out.pixels())
        .filter(|(a, b)| a != b)
        .count();
    println!("k={k}");
    println!("changed={changed}");
    Ok(ExitCode::SUCCESS)
}

fn compare(args: CompareArgs) -> CmdResult {
    let configs: Vec<DetectorConfig> = [
        DetectorKind::Sobel,
        DetectorKind::Canny,
        DetectorKind::StdDev,
    ]
    .into_iter()
    .map(|k| args.params.config(k))
    .collect::<stdedge::Result<_>>()?;
    args.output.format()?;
    let img = load_image(&args.input)?;
    let truth = args.truth.as_deref().map(load_mask).transpose()?;
    if let Some(t) = &truth {
        if t.width() != img.width() || t.height() != img.height() {
            return Err(Error::Argument(format!(
                "truth is {}x{} but input is {}x{}",
                t.width(),
                t.height(),
                img.width(),
                img.height()
            )));
        }
    }

    let mut panels = vec![("original".to_string(), img.clone())];
    let mut rows = Vec::new();
    for cfg in &configs {
        let edges = cfg.run(&img)?;
        println!("{cfg} edges={}", edges.count());
        if let Some(t) = &truth {
            rows.push(
                score(&edges, t, args.radius)?
                    .with_config(cfg.clone())
                    .csv_row(),
            );
        }
        panels.push((cfg.detector.name().to_string(), edges.to_image()));
    }
    let refs: Vec<(&str, &GrayImage)> = panels.iter().map(|(l, p)| (l.as_str(), p)).collect();
    let m = montage(&refs)?;
    args.output.save(&m.image)?;
    let layout: Vec<String> = m
        .panels
        .iter()
        .map(|p| format!("{}@{}", p.label, p.offset))
        .collect();
    println!(
        "montage={}x{} panels={}",
        m.image.width(),
        m.image.height(),
        layout.join(",")
    );

    if !rows.is_empty() {
        let mut csv = String::from(CSV_HEADER);
        csv.push('\n');
        for row in &rows {
            csv.push_str(row);
            csv.push('\n');
        }
        print!("{csv}");
        if let Some(path) = &args.csv {
            fs::write(path, &csv)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load_mask(path: &Path) -> stdedge::Result<EdgeMap> {
    Ok(EdgeMap::from_image(&load_image(path)?))
}

fn table1(args: Table1Args) -> CmdResult {
    if !args.tau.is_finite() || args.tau <= 0.0 {
        return Err(Error::Argument(format!(
            "tau must be positive, got {}",
            args.tau
        )));
    }
    let rows = table1_report(args.tau);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(
        out,
        "origin   upper_left  stddev    published  edge   check"
    )?;
    for r in &rows {
        writeln!(
            out,
            "({},{})    {:>10}  {:>8.4}  {:>9.4}  {:<5}  {}",
            r.origin.0,
            r.origin.1,
            r.upper_left,
            r.stddev,
            r.published,
            r.is_edge,
            if r.passes() { "PASS" } else { "FAIL" }
        )?;
    }
    let passed = rows.iter().filter(|r| r.passes()).count();
    let edges = rows.iter().filter(|r| r.is_edge).count();
    writeln!(
        out,
        "{passed}/{} PASS (tolerance {TABLE1_TOLERANCE:e}), {edges} edges at tau={:.4}",
        rows.len(),
        args.tau
    )?;
    Ok(if passed == rows.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn synth(args: SynthArgs) -> CmdResult {
    let mut kind = SyntheticKind::from_name(&args.kind, args.width, args.height)?;
    if let (SyntheticKind::Glyph { text, .. }, Some(t)) = (&mut kind, args.text) {
        *text = t;
    }
    let spec = Synthetic::new(kind, args.width, args.height).levels(args.dark, args.bright);
    let (img, truth) = make_synthetic(&spec)?;
    args.output.save(&img)?;
    if let Some(path) = &args.truth_out {
        save_image(&truth.to_image(), path, ImageFormat::from_path(path))?;
    }
    println!(
        "kind={} size={}x{} truth_edges={}",
        spec.kind,
        img.width(),
        img.height(),
        truth.count()
    );
    Ok(ExitCode::SUCCESS)
}
