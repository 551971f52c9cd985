use std::path::PathBuf;
use std::process::ExitCode;

use berger_g2::berger::HomogeneousCase;
use berger_g2::report::{timed, CheckEntry, Config, Status, VerificationReport};
use berger_g2::scalar::ScalarMode;
use berger_g2::stab::CatalogueGroup;
use berger_g2::suite::{self, Suite};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "berger-g2", version, about = "Verify associative geometry of the Berger space SO(5)/SO(3)")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Arithmetic for the algebraic checks.
    #[arg(long, value_enum, default_value_t = Mode::Exact, global = true)]
    mode: Mode,
    /// Tolerance for floating-point comparisons.
    #[arg(long, default_value_t = 1e-9, global = true)]
    tol: f64,
    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Write the CSV table here (classify, scan-grassmannian).
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Record every runtime as 0 so that reports are byte-stable.
    #[arg(long, global = true)]
    no_timings: bool,
    /// Suppress the per-check summary on stdout.
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Structure,
    G2,
    Flag,
    Cohom1,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Random parameters for the cohomogeneity-one pullback.
        #[arg(long)]
        t_samples: Option<usize>,
        /// Samples per one-parameter family of planes.
        #[arg(long)]
        family_samples: Option<usize>,
        /// Translated points per homogeneous orbit.
        #[arg(long)]
        orbit_samples: Option<usize>,
    },
    /// Tabulate the invariant 3-planes of a finite rotation group.
    Classify {
        /// Z<n>, D<n>, Tet, Oct, Ico or Dodeca.
        #[arg(long)]
        group: String,
    },
    /// Sample the calibration value along a family of 3-planes.
    ScanGrassmannian {
        /// P, Q5, Q4a, Q4b or Q3.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 360)]
        steps: usize,
    },
    /// Check a homogeneous associative orbit.
    Orbit {
        /// o123a, o123b, o145, o167, ico, oct1, oct2 or all.
        #[arg(long, default_value = "all")]
        case: String,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Intersect the Veronese surface with its icosahedral translate.
    IntersectVeronese {
        #[arg(long, default_value_t = 256)]
        grid_theta: usize,
        #[arg(long, default_value_t = 512)]
        grid_phi: usize,
    },
}

enum Failure {
    Config(String),
    Io(String),
}

fn config(global: &Global) -> Result<Config, Failure> {
    let mut cfg = Config {
        mode: match global.mode {
            Mode::Exact => ScalarMode::Exact,
            Mode::Float => ScalarMode::Float { tol: global.tol },
        },
        tol: global.tol,
        seed: global.seed,
        ..Config::default()
    };
    if let Some(t) = global.threads {
        cfg.threads = t;
    }
    cfg.validate().map_err(|e| Failure::Config(e.to_string()))?;
    Ok(cfg)
}

fn write_csv(path: &PathBuf, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<(), Failure> {
    let io = |e: csv::Error| Failure::Io(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    w.flush().map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<VerificationReport, Failure> {
    let mut cfg = config(&cli.global)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build_global()
        .map_err(|e| Failure::Config(e.to_string()))?;
    let csv_path = cli.global.csv.as_ref();
    let report = match cli.command {
        Command::Verify {
            suite,
            t_samples,
            family_samples,
            orbit_samples,
        } => {
            if let Some(n) = t_samples {
                cfg.grids.t_samples = n;
            }
            if let Some(n) = family_samples {
                cfg.grids.family_samples = n;
            }
            if let Some(n) = orbit_samples {
                cfg.grids.orbit_samples = n;
            }
            cfg.validate().map_err(|e| Failure::Config(e.to_string()))?;
            let suite = match suite {
                SuiteArg::All => Suite::All,
                SuiteArg::Structure => Suite::Structure,
                SuiteArg::G2 => Suite::G2,
                SuiteArg::Flag => Suite::Flag,
                SuiteArg::Cohom1 => Suite::Cohom1,
            };
            suite::run_suite(suite, &cfg)
        }
        Command::Classify { group } => {
            let g = CatalogueGroup::parse(&group).ok_or_else(|| Failure::Config(format!("unknown group {group:?}")))?;
            let rows = suite::classification_table(g, cfg.tol);
            if let Some(p) = csv_path {
                write_csv(
                    p,
                    &["group", "plane", "kind", "parameters", "associative", "calibration_value", "invariant"],
                    rows.iter().map(|r| {
                        vec![
                            r.group.clone(),
                            r.plane.clone(),
                            r.kind.clone(),
                            r.parameters.to_string(),
                            r.associative.to_string(),
                            r.calibration_value.to_string(),
                            r.invariant.to_string(),
                        ]
                    }),
                )?;
            }
            let mut report = VerificationReport::new(cfg.clone());
            report.extend(timed(|| suite::classification_checks(g, &cfg)));
            report
        }
        Command::ScanGrassmannian { family, steps } => {
            if steps == 0 {
                return Err(Failure::Config("steps must be positive".into()));
            }
            let rows = suite::scan_family(&family, steps).ok_or_else(|| {
                Failure::Config(format!("unknown family {family:?}; expected one of {:?}", suite::SCAN_FAMILIES))
            })?;
            if let Some(p) = csv_path {
                write_csv(
                    p,
                    &["family", "params", "calibration_value"],
                    rows.iter().map(|r| {
                        let params: Vec<String> = r.params.iter().map(f64::to_string).collect();
                        vec![r.family.clone(), params.join(";"), r.calibration_value.to_string()]
                    }),
                )?;
            }
            let max = rows.iter().map(|r| r.calibration_value.abs()).fold(0.0, f64::max);
            let associative = rows.iter().filter(|r| (r.calibration_value - 1.0).abs() < cfg.tol).count();
            let mut report = VerificationReport::new(cfg.clone());
            report.entries.push(CheckEntry::measured(
                &format!("scan.{family}"),
                "calibration value along a family of 3-planes",
                (1.0 - max).max(0.0),
                serde_json::json!({ "samples": rows.len(), "max_abs_value": max, "associative_samples": associative }),
            ));
            report
        }
        Command::Orbit { case, samples } => {
            let cases: Vec<HomogeneousCase> = if case == "all" {
                HomogeneousCase::ALL.to_vec()
            } else {
                vec![HomogeneousCase::parse(&case).map_err(|e| Failure::Config(e.to_string()))?]
            };
            if let Some(n) = samples {
                cfg.grids.orbit_samples = n;
            }
            let mut report = VerificationReport::new(cfg.clone());
            for c in cases {
                report.extend(timed(|| suite::orbit_checks(c, &cfg)));
            }
            report
        }
        Command::IntersectVeronese { grid_theta, grid_phi } => {
            if grid_theta < 4 || grid_phi < 4 {
                return Err(Failure::Config("grids must have at least 4 cells per side".into()));
            }
            cfg.grids.veronese_grid = (grid_theta, grid_phi);
            let mut report = VerificationReport::new(cfg.clone());
            report.extend(timed(|| suite::veronese_intersection_checks(&cfg)));
            report
        }
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let no_timings = cli.global.no_timings;
    let quiet = cli.global.quiet;
    let json = cli.global.json.clone();
    let mut report = match run(cli) {
        Ok(r) => r,
        Err(Failure::Config(msg)) => {
            eprintln!("configuration error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Io(msg)) => {
            eprintln!("i/o error: {msg}");
            return ExitCode::from(2);
        }
    };
    if no_timings {
        report.strip_timings();
    }
    if !quiet {
        for e in &report.entries {
            let tag = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Measured => "MEAS",
            };
            println!("{tag} {:<48} residual {:.3e}", e.check_id, e.residual);
        }
        let failures = report.failures().len();
        println!("{} checks, {} failed", report.entries.len(), failures);
    }
    if let Some(path) = json {
        if let Err(e) = std::fs::write(&path, report.to_json() + "\n") {
            eprintln!("i/o error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
