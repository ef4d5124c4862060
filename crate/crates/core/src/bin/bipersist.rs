//! Command-line front end. Exit codes: 0 success, 1 usage or input error,
//! 2 failed verification.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bipersist::distances::matching::matching_distance;
use bipersist::experiments::{
    self, arange, default_three_point_values, CircleAxis, CircleSweep, NoiseSpec,
};
use bipersist::pointcloud::{self, write_csv_to, CircleSpec, PointCloud};
use bipersist::{
    bottleneck, build_density_rips, fibered_barcode, Barcode, Diagram, Error, Line, MatchConfig,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bipersist", version, about = "Density-Rips two-parameter persistence")]
struct Cli {
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Number of angles (and offsets per angle) in the line grid.
    #[arg(long, global = true, default_value_t = 20)]
    grid_size: usize,
    /// Homology degree, 0 or 1.
    #[arg(long, global = true, default_value_t = 0)]
    degree: usize,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    out: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic point cloud.
    Generate {
        #[command(subcommand)]
        dataset: Dataset,
    },
    /// Attach densities to a point cloud file.
    Density {
        input: PathBuf,
        /// Distance to the k-th nearest neighbour.
        #[arg(long, conflicts_with = "values")]
        k: Option<usize>,
        /// Comma-separated manual values, one per point.
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<f64>>,
    },
    /// Fibered barcode of a dataset along one line.
    Slice {
        input: PathBuf,
        /// Angle with the density axis, in degrees, strictly in (0, 90).
        #[arg(long)]
        angle: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        offset: f64,
    },
    /// Bottleneck distance between two barcode JSON files.
    Bottleneck { a: PathBuf, b: PathBuf },
    /// Grid approximation of the matching distance between two datasets.
    MatchingDistance {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        no_normalize: bool,
        /// Also report the line attaining the maximum.
        #[arg(long)]
        argmax_line: bool,
    },
    /// Three-point sweep over (r, t) at fixed height s.
    SweepThreePoint {
        #[arg(long, default_value_t = 3.0)]
        s: f64,
        /// List `a,b,c` or range `start:stop:step`; defaults to 0..3.3 step 0.184.
        #[arg(long)]
        t_values: Option<String>,
        /// Same syntax; defaults to the t values.
        #[arg(long)]
        r_values: Option<String>,
    },
    /// Two-circle sweep against reference datasets.
    SweepTwoCircles(CircleArgs),
    /// Check that in-hypothesis configurations have matching distance 0.
    VerifyProposition {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Out-of-hypothesis controls (reported, never failures).
        #[arg(long, default_value_t = 10)]
        controls: usize,
        #[arg(long, value_delimiter = ',', default_value = "3,4,5,6")]
        polygons: Vec<usize>,
    },
    /// Monte Carlo estimate of the probability of a zero matching distance.
    CorollaryMc {
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 3.0)]
        d: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Exit 2 when |empirical - predicted| exceeds this.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Clean versus noisy two-circle sweeps.
    NoiseRobustness {
        #[command(flatten)]
        sweep: CircleArgs,
        #[arg(long, value_delimiter = ',', default_value = "0.2,0.4")]
        fractions: Vec<f64>,
        /// Displacement radius; defaults to a tenth of the circle radius.
        #[arg(long)]
        magnitude: Option<f64>,
        /// Exit 2 when any rank correlation falls below this.
        #[arg(long)]
        min_spearman: Option<f64>,
    },
}

#[derive(Subcommand)]
enum Dataset {
    /// {A, B, (x, y)} with A = (1, 1), B = (6.1, 1).
    ThreePoint {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
        /// Manual densities for A, B, C.
        #[arg(long, value_delimiter = ',')]
        densities: Option<Vec<f64>>,
    },
    /// Two circles of equal radius whose closest points are `separation` apart.
    TwoCircles {
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        separation: f64,
        #[arg(long, default_value_t = 50)]
        points_per_circle: usize,
        #[arg(long, default_value_t = 0.0)]
        noise_fraction: f64,
        #[arg(long, default_value_t = 0.0)]
        noise_magnitude: f64,
    },
}

#[derive(Args)]
struct CircleArgs {
    #[arg(long, value_enum, default_value = "separation")]
    axis: Axis,
    /// The parameter held fixed: radius for a separation sweep, separation
    /// for a radius sweep.
    #[arg(long, default_value_t = 3.0)]
    fixed: f64,
    /// Swept values: list or `start:stop:step`.
    #[arg(long, default_value = "0.5:9.5:0.5")]
    values: String,
    /// Reference values every swept dataset is compared against.
    #[arg(long, default_value = "10")]
    reference: String,
    #[arg(long, default_value_t = 50)]
    points_per_circle: usize,
    #[arg(long, default_value_t = 20)]
    k: usize,
    /// Largest edge length kept; the default keeps every edge.
    #[arg(long)]
    scale_cap: Option<f64>,
    /// Draw each dataset from its own seed instead of shared angles.
    #[arg(long)]
    independent_samples: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Axis {
    Separation,
    Radius,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<String, Failure>;

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
    let (text, code) = match run(&cli) {
        Ok(text) => (text, 0),
        Err(Failure::Verification(text)) => (text, 2),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let mut stdout = io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}

fn run(cli: &Cli) -> Outcome {
    let cfg = MatchConfig::new(cli.grid_size, cli.degree, true)?;
    let fmt = |default| cli.out.unwrap_or(default);
    match &cli.command {
        Command::Generate { dataset } => {
            let cloud = generate(dataset, cli.seed)?;
            cloud_output(&cloud, fmt(Format::Csv))
        }
        Command::Density { input, k, values } => {
            let cloud = pointcloud::read_csv(input)?;
            let cloud = match (k, values) {
                (Some(k), None) => pointcloud::knn_density(&cloud, *k)?,
                (None, Some(v)) => pointcloud::set_density(&cloud, v)?,
                _ => return Err(Failure::Usage("give exactly one of --k or --values".into())),
            };
            cloud_output(&cloud, fmt(Format::Csv))
        }
        Command::Slice {
            input,
            angle,
            offset,
        } => {
            let cloud = pointcloud::read_csv(input)?;
            let complex = build_density_rips(&cloud, cli.degree + 1, None)?;
            let barcode = fibered_barcode(&complex, &Line::new(*angle, *offset)?, cli.degree)?;
            Ok(barcode_output(&barcode, fmt(Format::Json)))
        }
        Command::Bottleneck { a, b } => {
            let read = |p: &PathBuf| -> std::result::Result<Barcode, Failure> {
                Ok(Barcode::from_json(&std::fs::read_to_string(p).map_err(|e| {
                    Failure::Usage(format!("{}: {e}", p.display()))
                })?)?)
            };
            let d = bottleneck(&Diagram::from(&read(a)?), &Diagram::from(&read(b)?));
            Ok(match fmt(Format::Csv) {
                Format::Csv => format!("{}\n", number(d)),
                Format::Json => format!("{}\n", json!({ "bottleneck": finite_or_null(d) })),
            })
        }
        Command::MatchingDistance {
            a,
            b,
            no_normalize,
            argmax_line,
        } => {
            let build = |p: &PathBuf| build_density_rips(&pointcloud::read_csv(p)?, cli.degree + 1, None);
            let cfg = MatchConfig {
                normalize: !no_normalize,
                ..cfg
            };
            let res = matching_distance(&build(a)?, &build(b)?, &cfg)?;
            let line = res.argmax.filter(|_| *argmax_line).map(|e| e.line);
            Ok(match fmt(Format::Csv) {
                Format::Csv => match line {
                    Some(l) => format!(
                        "distance,angle,offset\n{},{},{}\n",
                        number(res.distance),
                        l.angle_deg(),
                        l.offset()
                    ),
                    None => format!("{}\n", number(res.distance)),
                },
                Format::Json => {
                    let mut v = json!({
                        "distance": finite_or_null(res.distance),
                        "infinite": res.infinite,
                        "grid_size": cfg.grid_size,
                        "degree": cfg.degree,
                        "normalized": cfg.normalize,
                    });
                    if let Some(l) = line {
                        v["argmax_line"] = json!({ "angle": l.angle_deg(), "offset": l.offset() });
                    }
                    format!("{v:#}\n")
                }
            })
        }
        Command::SweepThreePoint {
            s,
            t_values,
            r_values,
        } => {
            let t = match t_values {
                Some(spec) => parse_values(spec)?,
                None => default_three_point_values(),
            };
            let r = match r_values {
                Some(spec) => parse_values(spec)?,
                None => t.clone(),
            };
            let res = experiments::three_point_sweep(*s, &t, &r, &cfg)?;
            Ok(sweep_output(&res, fmt(Format::Csv)))
        }
        Command::SweepTwoCircles(args) => {
            let (sweep, values, refs) = circle_sweep(args, cli.seed)?;
            let res = experiments::two_circle_sweep(&sweep, &values, &refs, &cfg)?;
            Ok(sweep_output(&res, fmt(Format::Csv)))
        }
        Command::VerifyProposition {
            trials,
            controls,
            polygons,
        } => {
            let report = experiments::verify_proposition(*trials, *controls, polygons, cli.seed, &cfg)?;
            let text = match fmt(Format::Csv) {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&report).map_err(Error::from)?),
                Format::Csv => {
                    let mut out = format!(
                        "# seed={} grid_size={} in_hypothesis={} failures={}\n",
                        report.seed,
                        report.grid_size,
                        report.in_hypothesis(),
                        report.failures().len()
                    );
                    out.push_str("kind,in_hypothesis,distance,failure,c1_x,c1_y,c2_x,c2_y\n");
                    for t in &report.trials {
                        let _ = writeln!(
                            out,
                            "{},{},{},{},{},{},{},{}",
                            t.kind,
                            t.in_hypothesis,
                            t.distance,
                            t.is_failure(),
                            t.c1.x,
                            t.c1.y,
                            t.c2.x,
                            t.c2.y
                        );
                    }
                    out
                }
            };
            if report.passed() {
                Ok(text)
            } else {
                Err(Failure::Verification(text))
            }
        }
        Command::CorollaryMc {
            r,
            d,
            trials,
            tolerance,
        } => {
            let rep = experiments::corollary_montecarlo(*r, *d, *trials, cli.seed, &cfg)?;
            let text = match fmt(Format::Csv) {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&rep).map_err(Error::from)?),
                Format::Csv => format!(
                    "r,d,trials,seed,grid_size,empirical,geometric,predicted\n{},{},{},{},{},{},{},{}\n",
                    rep.r, rep.d, rep.trials, rep.seed, rep.grid_size, rep.empirical, rep.geometric, rep.predicted
                ),
            };
            match tolerance {
                Some(tol) if (rep.empirical - rep.predicted).abs() > *tol => {
                    Err(Failure::Verification(text))
                }
                _ => Ok(text),
            }
        }
        Command::NoiseRobustness {
            sweep,
            fractions,
            magnitude,
            min_spearman,
        } => {
            let (s, values, refs) = circle_sweep(sweep, cli.seed)?;
            let radius = match s.axis {
                CircleAxis::Separation => s.fixed,
                CircleAxis::Radius => values.iter().chain(&refs).copied().fold(f64::INFINITY, f64::min),
            };
            let magnitude = magnitude.unwrap_or(radius / 10.0);
            let rep = experiments::noise_robustness(&s, &values, &refs, fractions, magnitude, &cfg)?;
            let text = match fmt(Format::Csv) {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&rep).map_err(Error::from)?),
                Format::Csv => noise_csv(&rep),
            };
            let worst = rep.noisy.iter().map(|c| c.spearman).fold(f64::INFINITY, f64::min);
            match min_spearman {
                Some(min) if worst < *min => Err(Failure::Verification(text)),
                _ => Ok(text),
            }
        }
    }
}

fn generate(dataset: &Dataset, seed: u64) -> bipersist::Result<PointCloud> {
    match dataset {
        Dataset::ThreePoint { x, y, densities } => {
            let cloud = pointcloud::three_point(*x, *y)?;
            match densities {
                Some(d) => pointcloud::set_density(&cloud, d),
                None => Ok(cloud),
            }
        }
        Dataset::TwoCircles {
            radius,
            separation,
            points_per_circle,
            noise_fraction,
            noise_magnitude,
        } => {
            let spec = CircleSpec::new(*radius, *separation, *points_per_circle, seed)?;
            let cloud = pointcloud::two_circles(&spec)?;
            pointcloud::add_noise(&cloud, *noise_fraction, *noise_magnitude, experiments::mix_seed(seed, 1))
        }
    }
}

fn circle_sweep(args: &CircleArgs, seed: u64) -> std::result::Result<(CircleSweep, Vec<f64>, Vec<f64>), Failure> {
    let base = match args.axis {
        Axis::Separation => CircleSweep::separation(args.fixed, seed),
        Axis::Radius => CircleSweep::radius(args.fixed, seed),
    };
    let sweep = CircleSweep {
        points_per_circle: args.points_per_circle,
        k: args.k,
        scale_cap: args.scale_cap,
        shared_angles: !args.independent_samples,
        noise: None::<NoiseSpec>,
        ..base
    };
    Ok((sweep, parse_values(&args.values)?, parse_values(&args.reference)?))
}

/// `a,b,c` or `start:stop:step` (inclusive of `stop`).
fn parse_values(spec: &str) -> std::result::Result<Vec<f64>, Failure> {
    let bad = || Failure::Usage(format!("cannot parse value list {spec:?}"));
    let nums = |parts: Vec<&str>| -> std::result::Result<Vec<f64>, Failure> {
        parts.iter().map(|p| p.trim().parse::<f64>().map_err(|_| bad())).collect()
    };
    let values = if spec.contains(':') {
        let p = nums(spec.split(':').collect())?;
        match p[..] {
            [start, stop, step] if step > 0.0 && stop >= start => arange(start, stop, step),
            _ => return Err(bad()),
        }
    } else {
        nums(spec.split(',').collect())?
    };
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        return Err(bad());
    }
    Ok(values)
}

fn cloud_output(cloud: &PointCloud, format: Format) -> Outcome {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv_to(cloud, &mut buf)?;
            Ok(String::from_utf8(buf).expect("csv is utf-8"))
        }
        Format::Json => {
            let points: Vec<_> = cloud
                .points()
                .iter()
                .enumerate()
                .map(|(i, p)| match cloud.densities() {
                    Some(d) => json!({ "x": p.x, "y": p.y, "density": d[i] }),
                    None => json!({ "x": p.x, "y": p.y }),
                })
                .collect();
            Ok(format!("{:#}\n", json!({ "points": points })))
        }
    }
}

fn barcode_output(barcode: &Barcode, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", barcode.to_json()),
        Format::Csv => {
            let mut out = String::from("birth,death\n");
            for (b, d) in barcode.bars() {
                let _ = writeln!(out, "{},{}", b, if d.is_finite() { d.to_string() } else { String::new() });
            }
            out
        }
    }
}

fn sweep_output(res: &experiments::SweepResult, format: Format) -> String {
    match format {
        Format::Csv => res.to_csv(),
        Format::Json => format!("{}\n", res.to_json()),
    }
}

fn noise_csv(rep: &experiments::NoiseReport) -> String {
    let mut out = String::new();
    for c in &rep.noisy {
        let _ = writeln!(
            out,
            "# fraction={} magnitude={} spearman={}",
            c.noise.fraction, c.noise.magnitude, c.spearman
        );
    }
    let mut header = rep.clean.param_names.join(",");
    header.push_str(",clean");
    for c in &rep.noisy {
        let _ = write!(header, ",noise_{}", c.noise.fraction);
    }
    let _ = writeln!(out, "{header}");
    for (i, row) in rep.clean.rows.iter().enumerate() {
        let mut line: Vec<String> = row.params.iter().map(f64::to_string).collect();
        line.push(row.distance.to_string());
        line.extend(rep.noisy.iter().map(|c| c.distances[i].to_string()));
        let _ = writeln!(out, "{}", line.join(","));
    }
    out
}

fn number(x: f64) -> String {
    if x.is_finite() {
        x.to_string()
    } else {
        "inf".into()
    }
}

fn finite_or_null(x: f64) -> serde_json::Value {
    if x.is_finite() {
        json!(x)
    } else {
        serde_json::Value::Null
    }
}
