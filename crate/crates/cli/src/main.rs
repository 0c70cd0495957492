mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use xpht::json::{curves_to_json, diagram_to_json, format_significant, xpht_from_json, xpht_to_json};
use xpht::mds::classical_mds;
use xpht::oracle::{extended_persistence_reduction, triangulate_region, xpht_by_reduction, Side};
use xpht::{
    boundary_curves, compute_xpht, load_path, xph_from_boundary, xpht_distance, BinaryImage, Direction, ImageFormat,
    Norm, Xpht,
};

use output::Outputs;

/// Extended persistent homology transform of binary images.
#[derive(Parser)]
#[command(name = "xpht", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trace the oriented boundary curves of the foreground.
    Boundary {
        input: PathBuf,
        #[command(flatten)]
        image: ImageArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Extended persistence diagram for a single direction.
    Diagram {
        input: PathBuf,
        /// Direction as `x,y`; normalised before use.
        #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
        direction: String,
        #[command(flatten)]
        image: ImageArgs,
        #[arg(long, value_enum, default_value_t = Engine::Fast)]
        engine: Engine,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Diagrams for a grid of directions. With several inputs, `-o` names a
    /// directory that receives one `<stem>.json` per input.
    Transform(TransformArgs),
    /// Compute the transform with the fast engine and a reference engine and
    /// compare them. Writes the reference result; exits non-zero on mismatch.
    Oracle(TransformArgs),
    /// Pairwise distances between transforms (`.json`) or images, as CSV.
    Dist {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Wasserstein exponent: a number at least 1, or `inf`.
        #[arg(long, default_value = "2")]
        p: String,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        image: ImageArgs,
        #[arg(long, value_enum, default_value_t = Engine::Fast)]
        engine: Engine,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Classical multidimensional scaling of a distance CSV to 2D coordinates.
    Mds {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TransformArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    image: ImageArgs,
    /// Engine that produces the output. `transform` defaults to `fast`;
    /// `oracle` defaults to `reduction` and checks it against `fast`.
    #[arg(long, value_enum)]
    engine: Option<Engine>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct GridArgs {
    /// Number of directions; even, and a multiple of four with `--center`.
    #[arg(short = 'K', long = "directions", default_value_t = 32)]
    count: usize,
    /// Move the area centroid of the shape to the origin first.
    #[arg(long)]
    center: bool,
}

#[derive(Args, Clone, Copy)]
struct ImageArgs {
    /// Input encoding; detected from the file when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Pbm,
    Png,
    Txt,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    /// Boundary curves, union-find and duality.
    Fast,
    /// Triangulation and boundary-matrix reduction in every direction.
    Reduction,
}

impl ImageArgs {
    fn load(&self, path: &Path) -> Result<BinaryImage> {
        let format = self.format.map(|f| match f {
            Format::Pbm => ImageFormat::PbmAscii,
            Format::Png => ImageFormat::Png,
            Format::Txt => ImageFormat::TextGrid,
        });
        load_path(path, format).with_context(|| format!("reading {}", path.display()))
    }
}

fn transform(img: &BinaryImage, grid: GridArgs, engine: Engine) -> Result<Xpht> {
    Ok(match engine {
        Engine::Fast => compute_xpht(img, grid.count, grid.center)?,
        Engine::Reduction => xpht_by_reduction(img, grid.count, grid.center)?,
    })
}

fn parse_direction(text: &str) -> Result<Direction> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| anyhow!("direction must look like `x,y`, got {text:?}"))?;
    let [x, y] = parts[..] else { bail!("direction must have two components, got {text:?}") };
    Ok(Direction::normalized(x, y)?)
}

fn display_name(path: &Path) -> String {
    path.to_string_lossy().into_owned()
}

/// Where the transform of `input` goes when there are several inputs.
fn batch_target(dir: &Path, input: &Path) -> PathBuf {
    let stem = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "out".into());
    dir.join(format!("{stem}.json"))
}

fn write_transforms(args: &TransformArgs, results: &[(PathBuf, Xpht)], outputs: &mut Outputs) -> Result<()> {
    if let [(_, x)] = results {
        return outputs.write(args.output.as_deref(), &xpht_to_json(x));
    }
    let dir = args.output.as_deref().ok_or_else(|| anyhow!("several inputs need `-o <directory>`"))?;
    outputs.create_dir(dir)?;
    for (input, x) in results {
        outputs.write(Some(&batch_target(dir, input)), &xpht_to_json(x))?;
    }
    Ok(())
}

fn run_transform(args: &TransformArgs, engine: Engine) -> Result<Vec<(PathBuf, Xpht)>> {
    args.inputs
        .par_iter()
        .map(|input| {
            let img = args.image.load(input)?;
            let mut x =
                transform(&img, args.grid, engine).with_context(|| format!("transforming {}", input.display()))?;
            x.source = display_name(input);
            Ok((input.clone(), x))
        })
        .collect()
}

fn distance_matrix(xs: &[Xpht], p: Norm) -> Result<Vec<Vec<f64>>> {
    let n = xs.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let values: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| {
            xpht_distance(&xs[i], &xs[j], p).with_context(|| format!("{} vs {}", xs[i].source, xs[j].source))
        })
        .collect::<Result<_>>()?;
    let mut m = vec![vec![0.0; n]; n];
    for (&(i, j), d) in pairs.iter().zip(values) {
        m[i][j] = d;
        m[j][i] = d;
    }
    Ok(m)
}

fn matrix_csv(names: &[String], rows: &[Vec<f64>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(names)?;
    for row in rows {
        w.write_record(row.iter().map(|&d| format_significant(d, 9)))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn read_matrix(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut r = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let names: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record?;
        let row = record
            .iter()
            .map(|s| s.trim().parse::<f64>().with_context(|| format!("bad number {s:?} in {}", path.display())))
            .collect::<Result<Vec<f64>>>()?;
        if row.len() != names.len() {
            bail!("row {} has {} entries, expected {}", rows.len() + 1, row.len(), names.len());
        }
        rows.push(row);
    }
    if rows.len() != names.len() {
        bail!("{} rows for {} names", rows.len(), names.len());
    }
    Ok((names, rows))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut outputs = Outputs::default();
    let mut code = ExitCode::SUCCESS;
    match cli.command {
        Command::Boundary { input, image, output } => {
            let img = image.load(&input)?;
            outputs.write(output.as_deref(), &curves_to_json(&boundary_curves(&img)))?;
        }
        Command::Diagram { input, direction, image, engine, output } => {
            let v = parse_direction(&direction)?;
            let img = image.load(&input)?;
            if img.foreground_count() == 0 {
                return Err(xpht::Error::EmptyForeground.into());
            }
            let diagram = match engine {
                Engine::Fast => xph_from_boundary(&boundary_curves(&img), v)?,
                Engine::Reduction => extended_persistence_reduction(&triangulate_region(&img, Side::Foreground), v)?,
            };
            outputs.write(output.as_deref(), &diagram_to_json(v, &diagram))?;
        }
        Command::Transform(args) => {
            let results = run_transform(&args, args.engine.unwrap_or(Engine::Fast))?;
            write_transforms(&args, &results, &mut outputs)?;
        }
        Command::Oracle(args) => {
            let fast = run_transform(&args, Engine::Fast)?;
            let slow = run_transform(&args, args.engine.unwrap_or(Engine::Reduction))?;
            for ((input, a), (_, b)) in fast.iter().zip(&slow) {
                let agree = a.diagrams.len() == b.diagrams.len()
                    && a.diagrams.iter().zip(&b.diagrams).all(|(x, y)| x.approx_eq(y, 1e-9));
                if !agree {
                    eprintln!("mismatch: {}", input.display());
                    code = ExitCode::from(3);
                }
            }
            write_transforms(&args, &slow, &mut outputs)?;
        }
        Command::Dist { inputs, p, grid, image, engine, output } => {
            let p: Norm = p.parse()?;
            let xs: Vec<Xpht> = inputs
                .par_iter()
                .map(|input| {
                    let is_json = input.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
                    let mut x = if is_json {
                        let text =
                            std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
                        xpht_from_json(&text, &display_name(input))?
                    } else {
                        transform(&image.load(input)?, grid, engine)?
                    };
                    x.source = display_name(input);
                    Ok(x)
                })
                .collect::<Result<_>>()?;
            let names: Vec<String> = inputs.iter().map(|p| display_name(p)).collect();
            outputs.write(output.as_deref(), &matrix_csv(&names, &distance_matrix(&xs, p)?)?)?;
        }
        Command::Mds { input, output } => {
            let (names, matrix) = read_matrix(&input)?;
            let coords = classical_mds(&matrix, 2)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "x", "y"])?;
            for (name, c) in names.iter().zip(&coords) {
                w.write_record([name.clone(), format_significant(c[0], 9), format_significant(c[1], 9)])?;
            }
            outputs.write(output.as_deref(), &String::from_utf8(w.into_inner()?)?)?;
        }
    }
    outputs.commit();
    Ok(code)
}

fn configure_threads() -> Result<()> {
    if let Ok(value) = std::env::var("XPHT_THREADS") {
        let threads: usize = value.trim().parse().map_err(|_| anyhow!("XPHT_THREADS must be a positive integer"))?;
        if threads == 0 {
            bail!("XPHT_THREADS must be a positive integer");
        }
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
