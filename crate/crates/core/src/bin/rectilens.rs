//! Batch front door: generate corpora, run covers, certificates,
//! partitions, profiles and classification; emit versioned JSON reports
//! and plot-ready CSV.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rectilens::besipart::{extract_partitions, verify_family};
use rectilens::blowup::{
    classify, connectivity_profile, flatness_profile, ClassifyParams, LadderSpec, ScaleConnectivity,
    ScaleRecord, ScaleSummary, TangentProfile, Thresholds,
};
use rectilens::covering::{greedy_net, greedy_separated_cover, overlap_counts, verify_t_properties};
use rectilens::error::{Error, Result};
use rectilens::generators::CorpusSpec;
use rectilens::quasipath::quasi_path;
use rectilens::report::{Report, ReportResults, RunConfig, SCHEMA_VERSION};
use rectilens::MeasuredSpace;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "rectilens",
    version,
    about = "Rectifiability diagnostics on finite weighted metric spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Args)]
struct SourceArgs {
    /// Input cloud: CSV (`x,y[,z...],w`) or JSON (`distance_matrix` + `weights`)
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Generate a corpus instead of reading a file
    #[arg(long, global = true, value_parser = ["segment", "circle", "lipschitz-graph", "spiral", "four-corner-cantor"])]
    kind: Option<String>,
    /// Sample count for curve corpora
    #[arg(long, global = true, default_value_t = 400)]
    m: usize,
    /// Depth for the four-corner Cantor corpus
    #[arg(long, global = true, default_value_t = 4)]
    depth: u32,
    /// Slope bound for the Lipschitz graph corpus
    #[arg(long, global = true, default_value_t = 0.3)]
    lip: f64,
    /// Radial decay for the spiral corpus
    #[arg(long, global = true, default_value_t = 0.2)]
    decay: f64,
    /// Seed for seeded corpora
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output directory for report.json and CSV artifacts
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
}

#[derive(Clone, Args)]
struct ParamArgs {
    /// Quasi-path step parameter (default 1/6)
    #[arg(long, default_value_t = 1.0 / 6.0)]
    delta: f64,
    /// Locality parameter R
    #[arg(long = "R", default_value_t = 2.0)]
    locality: f64,
    /// Ladder as `r0,lambda`; default r0 = diam/4, lambda = 1/2
    #[arg(long, value_parser = parse_ladder)]
    ladder: Option<(f64, f64)>,
}

fn parse_ladder(s: &str) -> std::result::Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected r0,lambda".into());
    }
    let r0 = parts[0].trim().parse::<f64>().map_err(|e| e.to_string())?;
    let lambda = parts[1].trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok((r0, lambda))
}

#[derive(Subcommand)]
enum Command {
    /// Generate a corpus cloud and write it as CSV
    Generate {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Build a uniform separated cover and verify its guarantees
    Cover {
        #[command(flatten)]
        source: SourceArgs,
        /// Cover radius
        #[arg(long)]
        rhat: f64,
    },
    /// Quasi-path certificate between two points
    Quasipath {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        params: ParamArgs,
        /// Start point index
        #[arg(long)]
        a: usize,
        /// End point index
        #[arg(long)]
        b: usize,
    },
    /// Extract an R-disjoint family of Besicovitch partitions
    Besipart {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        params: ParamArgs,
        /// Cover radius; must stay at or below delta * diam / (3(2R+1)).
        /// Default: a quarter of that bound.
        #[arg(long)]
        rhat: Option<f64>,
        /// Seed point indices, comma-separated. Default: a greedy net at
        /// scale delta * diam / (3(2R+1)).
        #[arg(long, value_delimiter = ',')]
        seeds: Option<Vec<usize>>,
    },
    /// Per-point multiscale connectivity/flatness profiles
    Profile {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Per-point rectifiable/unrectifiable classification
    Classify {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Summarize an existing report.json
    Report {
        /// Path to a report.json
        #[arg(long)]
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    return ExitCode::SUCCESS;
                }
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn corpus_spec(source: &SourceArgs) -> Result<Option<CorpusSpec>> {
    let Some(kind) = source.kind.as_deref() else {
        return Ok(None);
    };
    let spec = match kind {
        "segment" => CorpusSpec::Segment { m: source.m },
        "circle" => CorpusSpec::Circle { m: source.m },
        "lipschitz-graph" => CorpusSpec::LipschitzGraph {
            m: source.m,
            l: source.lip,
            seed: source.seed,
        },
        "spiral" => CorpusSpec::Spiral { m: source.m, decay: source.decay },
        "four-corner-cantor" => CorpusSpec::FourCornerCantor { depth: source.depth },
        other => return Err(Error::Domain(format!("unknown corpus kind '{other}'"))),
    };
    Ok(Some(spec))
}

fn load_source(source: &SourceArgs) -> Result<(MeasuredSpace, Option<CorpusSpec>)> {
    match (&source.input, corpus_spec(source)?) {
        (Some(path), None) => Ok((rectilens::io::load_cloud(path)?, None)),
        (None, Some(spec)) => Ok((spec.generate()?, Some(spec))),
        (Some(_), Some(_)) => {
            Err(Error::Domain("pass either --input or --kind, not both".into()))
        }
        (None, None) => Err(Error::Domain("pass --input FILE or --kind KIND".into())),
    }
}

fn base_config(source: &SourceArgs, subcommand: &str, spec: Option<CorpusSpec>) -> RunConfig {
    RunConfig {
        subcommand: subcommand.into(),
        input: source.input.as_ref().map(|p| p.display().to_string()),
        corpus: spec,
        seed: Some(source.seed),
        out_dir: source.out.display().to_string(),
        ..RunConfig::default()
    }
}

fn ladder_spec(params: &ParamArgs) -> LadderSpec {
    match params.ladder {
        Some((r0, lambda)) => LadderSpec { r0: Some(r0), lambda },
        None => LadderSpec::default(),
    }
}

fn write_report(out: &Path, report: &Report) -> Result<()> {
    std::fs::create_dir_all(out)?;
    std::fs::write(out.join("report.json"), report.to_json())?;
    println!("wrote {}", out.join("report.json").display());
    Ok(())
}

fn profiles_csv(ladder: &[f64], profiles: &[TangentProfile]) -> String {
    let mut csv = String::from("point,scale,connected,flatness\n");
    for profile in profiles {
        for record in &profile.scales {
            let connected = match &record.connectivity {
                ScaleSummary::Connected => "true",
                ScaleSummary::Disconnected { .. } => "false",
                ScaleSummary::Unresolvable | ScaleSummary::NoTargets => "indeterminate",
            };
            let flat = record
                .flatness
                .map(|f| format!("{f}"))
                .unwrap_or_else(|| "".into());
            csv.push_str(&format!("{},{},{},{}\n", profile.point, record.r, connected, flat));
        }
    }
    let _ = ladder;
    csv
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { source } => {
            let (cloud, spec) = load_source(&source)?;
            if spec.is_none() {
                return Err(Error::Domain("generate requires --kind".into()));
            }
            std::fs::create_dir_all(&source.out)?;
            let csv_path = source.out.join("cloud.csv");
            rectilens::io::save_csv(&cloud, &csv_path)?;
            let config = base_config(&source, "generate", spec);
            let report = Report::new(
                config,
                ReportResults::Generate {
                    points: cloud.len(),
                    total_mass: cloud.total_mass(),
                    csv_file: "cloud.csv".into(),
                },
            );
            write_report(&source.out, &report)
        }
        Command::Cover { source, rhat } => {
            let (cloud, spec) = load_source(&source)?;
            let cover = greedy_separated_cover(&cloud, rhat)?;
            let c = cloud.ahlfors_constant(rhat / 4.0, 3.0 * rhat, 1.0)?;
            let verification = verify_t_properties(&cloud, &cover, c, 1)?;
            let counts = overlap_counts(&cloud, &cover);
            let mut config = base_config(&source, "cover", spec);
            config.rhat = Some(rhat);
            let report = Report::new(
                config,
                ReportResults::Cover {
                    cover,
                    ahlfors_constant: c,
                    verification,
                    overlap_counts: counts,
                },
            );
            write_report(&source.out, &report)
        }
        Command::Quasipath { source, params, a, b } => {
            let (cloud, spec) = load_source(&source)?;
            let certificate = quasi_path(&cloud, a, b, params.delta, params.locality)?;
            let mut config = base_config(&source, "quasipath", spec);
            config.delta = Some(params.delta);
            config.locality = Some(params.locality);
            config.pair = Some((a, b));
            let report = Report::new(config, ReportResults::Quasipath { certificate });
            write_report(&source.out, &report)
        }
        Command::Besipart { source, params, rhat, seeds } => {
            let (cloud, spec) = load_source(&source)?;
            let diam = cloud.space().full_diameter();
            let bound = params.delta * diam / (3.0 * (2.0 * params.locality + 1.0));
            let rhat = rhat.unwrap_or(bound / 4.0);
            if rhat > bound {
                return Err(Error::Refused(format!(
                    "rhat = {rhat} exceeds delta * diam / (3(2R+1)) = {bound}"
                )));
            }
            let seeds = match seeds {
                Some(s) => s,
                None => greedy_net(&cloud, bound)?,
            };
            let family = extract_partitions(&cloud, &seeds, params.delta, params.locality, rhat)?;
            let verification = verify_family(&cloud, &family, params.delta, params.locality);
            let omegas: Vec<f64> = family.partitions.iter().map(|p| p.omega).collect();
            let mut config = base_config(&source, "besipart", spec);
            config.delta = Some(params.delta);
            config.locality = Some(params.locality);
            config.rhat = Some(rhat);
            let report = Report::new(
                config,
                ReportResults::Besipart {
                    partitions: family.partitions.len(),
                    verification,
                    omegas,
                    trace: family.trace,
                },
            );
            write_report(&source.out, &report)
        }
        Command::Profile { source, params } => {
            let (cloud, spec) = load_source(&source)?;
            let ladder = ladder_spec(&params).build(&cloud)?;
            let k_mult = params.locality + 1.0;
            let mut profiles = Vec::new();
            for &x in cloud.support() {
                let conn =
                    connectivity_profile(&cloud, x, &ladder, params.delta, params.locality, k_mult)?;
                let flat = flatness_profile(&cloud, x, &ladder, 5)?;
                let scales = ladder
                    .iter()
                    .zip(conn.iter().zip(&flat))
                    .map(|(&r, (c, f))| ScaleRecord {
                        r,
                        connectivity: match c {
                            ScaleConnectivity::Connected => ScaleSummary::Connected,
                            ScaleConnectivity::Disconnected { witness, split } => {
                                ScaleSummary::Disconnected { witness: *witness, gap: split.gap }
                            }
                            ScaleConnectivity::Unresolvable => ScaleSummary::Unresolvable,
                            ScaleConnectivity::NoTargets => ScaleSummary::NoTargets,
                        },
                        flatness: *f,
                        density_window: (0.0, 0.0),
                    })
                    .collect();
                profiles.push(TangentProfile { point: x, scales });
            }
            std::fs::create_dir_all(&source.out)?;
            let csv = profiles_csv(&ladder, &profiles);
            std::fs::write(source.out.join("profiles.csv"), csv)?;
            let mut config = base_config(&source, "profile", spec);
            config.delta = Some(params.delta);
            config.locality = Some(params.locality);
            config.ladder_r0 = ladder.first().copied();
            config.ladder_lambda = Some(ladder_spec(&params).lambda);
            let report = Report::new(
                config,
                ReportResults::Profile {
                    ladder,
                    profiles,
                    csv_file: "profiles.csv".into(),
                },
            );
            write_report(&source.out, &report)
        }
        Command::Classify { source, params } => {
            let (cloud, spec) = load_source(&source)?;
            let classify_params = ClassifyParams {
                delta: params.delta,
                locality: params.locality,
                ladder: ladder_spec(&params),
                k_mult: None,
                flatness_subsample: 5,
                thresholds: Thresholds::default(),
            };
            let verdict = classify(&cloud, &classify_params)?;
            std::fs::create_dir_all(&source.out)?;
            let csv = profiles_csv(&verdict.ladder, &verdict.profiles);
            std::fs::write(source.out.join("classify.csv"), csv)?;
            let mut config = base_config(&source, "classify", spec);
            config.delta = Some(params.delta);
            config.locality = Some(params.locality);
            config.ladder_r0 = verdict.ladder.first().copied();
            config.ladder_lambda = Some(classify_params.ladder.lambda);
            config.thresholds = Some(classify_params.thresholds);
            let report = Report::new(
                config,
                ReportResults::Classify {
                    ladder: verdict.ladder,
                    fractions: verdict.fractions,
                    labels: verdict.labels,
                    csv_file: "classify.csv".into(),
                },
            );
            write_report(&source.out, &report)
        }
        Command::Report { input } => {
            let text = std::fs::read_to_string(&input)?;
            let report: Report = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("not a report: {e}")))?;
            if report.schema_version != SCHEMA_VERSION {
                return Err(Error::Domain(format!(
                    "report schema version {} does not match {}",
                    report.schema_version, SCHEMA_VERSION
                )));
            }
            println!("report: {}", input.display());
            println!("  subcommand: {}", report.config.subcommand);
            println!("  library:    {}", report.library_version);
            match &report.results {
                ReportResults::Generate { points, total_mass, csv_file } => {
                    println!("  generated {points} points, total mass {total_mass}, in {csv_file}");
                }
                ReportResults::Cover { cover, ahlfors_constant, verification, .. } => {
                    println!(
                        "  cover: {} balls of radius {}, C = {ahlfors_constant:.4}",
                        cover.centers.len(),
                        cover.radius
                    );
                    println!(
                        "  T1 {} / T2 {} (margin {:.3}) / T3 {} (margin {:.3})",
                        verification.t1,
                        verification.t2,
                        verification.t2_margin,
                        verification.t3,
                        verification.t3_margin
                    );
                }
                ReportResults::Quasipath { certificate } => match certificate {
                    rectilens::quasipath::QuasiPathCertificate::Path(p) => {
                        println!("  path with {} nodes", p.nodes.len())
                    }
                    rectilens::quasipath::QuasiPathCertificate::Split(s) => {
                        println!(
                            "  split: |A| = {}, |B| = {}, gap = {}",
                            s.a_side.len(),
                            s.b_side.len(),
                            s.gap
                        )
                    }
                },
                ReportResults::Besipart { partitions, verification, .. } => {
                    println!(
                        "  {partitions} partitions, P1 {} / P2 {}, sum omega = {}, ratio = {:.4}",
                        verification.p1, verification.p2, verification.sum_omega, verification.ratio
                    );
                }
                ReportResults::Profile { ladder, profiles, .. } => {
                    println!("  {} profiles over {} scales", profiles.len(), ladder.len());
                }
                ReportResults::Classify { fractions, labels, .. } => {
                    println!(
                        "  {} points: rectifiable-like {:.1}%, unrectifiable-like {:.1}%, indeterminate {:.1}%",
                        labels.len(),
                        100.0 * fractions.rectifiable_like,
                        100.0 * fractions.unrectifiable_like,
                        100.0 * fractions.indeterminate
                    );
                }
            }
            Ok(())
        }
    }
}
