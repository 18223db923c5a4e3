use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use semiquat::config::RunConfig;
use semiquat::constructors::{
    construct_thm34, integrate_frenet3, integrate_frenet4, parse_profile, parse_range, parse_sphere_family,
    parse_cone_case, CurvatureProfile, InitialFrame3, InitialFrame4, IntegrateOptions,
};
use semiquat::curve::{reparam_with, CurveSamples};
use semiquat::io::{read_curve, write_curve};
use semiquat::report::{analyze, check_key, Analysis};
use semiquat::{Ambient, Error, SemiQuaternion};

/// Exit codes.
const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_GEOMETRIC: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "semiquat", version, about = "Rectifying-curve analysis in R^3_1 and R^4_2")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// JSON run configuration; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Verdict tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    frame_tol: Option<f64>,
    #[arg(long, global = true)]
    reparam_tol: Option<f64>,
    /// Samples excluded at each end by all checks.
    #[arg(long, global = true)]
    margin: Option<usize>,
    /// Integrator step.
    #[arg(long, global = true)]
    step: Option<f64>,
    /// Seed for randomized diagnostics such as `--translate random`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    pole_margin: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a curve and write it as JSON.
    Construct(ConstructArgs),
    /// Compute the frame and every applicable check; write report and plot data.
    Analyze(AnalyzeArgs),
    /// Exit 0 if one check passes, 1 if it fails.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// Cone construction over a base curve: thm34-i, thm34-ii or thm34-iii.
    #[arg(long, conflicts_with_all = ["integrate3", "integrate4"])]
    family: Option<String>,
    /// Base curve, e.g. `latitude:b=1`, `s12_timelike:b=0.6`, `h02_spacelike:b=1`.
    #[arg(long, default_value = "latitude:b=1")]
    base: String,
    /// Scale of the cone construction.
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Integrate a curvature profile in R^3_1.
    #[arg(long, requires = "profile")]
    integrate3: bool,
    /// Integrate a curvature profile in R^4_2.
    #[arg(long, requires = "profile", conflicts_with = "integrate3")]
    integrate4: bool,
    /// Profile, e.g. `thm43-1:c=0,c1=-0.5`, `const:kappa=1,k=1,b=1`, `const3:k=1,r=0.5`.
    #[arg(long)]
    profile: Option<String>,
    /// Initial point of a 4D integration.
    #[arg(long, value_enum, default_value_t = Start::Rectifying)]
    start: Start,
    /// Project the frame back to orthonormality after every step.
    #[arg(long)]
    renormalize: bool,
    /// Parameter range `a:b`.
    #[arg(long, allow_hyphen_values = true)]
    range: String,
    /// Sample count of a cone construction.
    #[arg(long, default_value_t = 2001)]
    samples: usize,
    /// Reparametrize by pseudo arc length before writing.
    #[arg(long)]
    reparam: bool,
    /// Translate the result: `random` (unit offset drawn from `--seed`) or
    /// comma-separated components.
    #[arg(long, allow_hyphen_values = true)]
    translate: Option<String>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Start {
    /// `lambda T + mu N2 + nu N3` at the start of the range.
    Rectifying,
    Origin,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Curve file.
    #[arg(required_unless_present = "batch")]
    input: Option<PathBuf>,
    /// Analyze every `*.json` curve in a directory.
    #[arg(long, conflicts_with = "input")]
    batch: Option<PathBuf>,
    /// Report path (default: `<stem>.report.json` next to the output).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Plot CSV path (default: `<stem>.plot.csv`).
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Frame CSV path (default: `<stem>.frenet.csv`).
    #[arg(long)]
    frenet: Option<PathBuf>,
    /// Output directory for default paths (default: next to the input).
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    input: PathBuf,
    /// One of 3.2i 3.2ii 3.2iii 3.2iv 3.3 4.2 4.4i 4.4ii 4.4iii 4.4iv.
    #[arg(long)]
    theorem: String,
}

fn config(g: &GlobalOpts) -> Result<RunConfig, Error> {
    let mut cfg = match &g.config {
        Some(p) => RunConfig::from_json(&fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?)?,
        None => RunConfig::default(),
    };
    if let Some(v) = g.tol {
        cfg.tol = v;
    }
    if let Some(v) = g.frame_tol {
        cfg.frame_tol = v;
    }
    if let Some(v) = g.reparam_tol {
        cfg.reparam_tol = v;
    }
    if let Some(v) = g.margin {
        cfg.margin = v;
    }
    if let Some(v) = g.step {
        cfg.step = v;
    }
    if let Some(v) = g.seed {
        cfg.seed = v;
    }
    if let Some(v) = g.pole_margin {
        cfg.pole_margin = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn exit_code(e: &Error) -> u8 {
    if e.is_geometric() {
        EXIT_GEOMETRIC
    } else {
        EXIT_INVALID
    }
}

fn translation(spec: &str, ambient: Ambient, seed: u64) -> Result<SemiQuaternion, Error> {
    let dim = match ambient {
        Ambient::R13 => 3,
        Ambient::R24 => 4,
    };
    let mut v = [0.0; 4];
    if spec == "random" {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            for x in v.iter_mut().take(dim) {
                *x = rng.gen_range(-1.0..1.0);
            }
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-3 && n <= 1.0 {
                v.iter_mut().for_each(|x| *x /= n);
                break;
            }
        }
    } else {
        let parts: Vec<&str> = spec.split(',').collect();
        if parts.len() != dim {
            return Err(Error::InvalidConfig(format!("translation needs {dim} components, got '{spec}'")));
        }
        for (x, p) in v.iter_mut().zip(parts) {
            *x = p.trim().parse().map_err(|_| Error::InvalidConfig(format!("bad translation component '{p}'")))?;
        }
    }
    Ok(SemiQuaternion::from_array(v))
}

fn construct(args: &ConstructArgs, cfg: &RunConfig) -> Result<(), Error> {
    let range = parse_range(&args.range)?;
    let opts = IntegrateOptions { step: cfg.step, renormalize: args.renormalize };
    let mut curve = if let Some(family) = &args.family {
        let case = parse_cone_case(family)?;
        construct_thm34(case, parse_sphere_family(&args.base)?, args.a, range, args.samples, cfg.pole_margin)?
    } else if args.integrate3 || args.integrate4 {
        let spec = args.profile.as_deref().expect("clap requires --profile");
        match (parse_profile(spec, range)?, args.integrate4) {
            (CurvatureProfile::Spatial(p), false) => {
                integrate_frenet3(&p, &InitialFrame3::standard(p.signs)?, range, opts)?.curve
            }
            (CurvatureProfile::Quaternionic(p), true) => {
                let initial = match args.start {
                    Start::Rectifying => InitialFrame4::rectifying(&p, range.0),
                    Start::Origin => InitialFrame4::standard(p.signs),
                };
                integrate_frenet4(&p, &initial, range, opts)?.curve
            }
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "profile '{spec}' does not match --integrate{}",
                    if args.integrate4 { 4 } else { 3 }
                )))
            }
        }
    } else {
        return Err(Error::InvalidConfig("one of --family, --integrate3, --integrate4 is required".into()));
    };
    if args.reparam {
        curve = reparam_with(&curve, cfg.reparam_tol, cfg.derivatives, None)?;
    }
    if let Some(t) = &args.translate {
        curve = curve.translated(translation(t, curve.ambient(), cfg.seed)?);
    }
    write_curve(&args.output, &curve)
}

fn output_path(explicit: &Option<PathBuf>, input: &Path, out_dir: &Option<PathBuf>, suffix: &str) -> PathBuf {
    if let Some(p) = explicit {
        return p.clone();
    }
    let stem = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "curve".into());
    let dir = out_dir.clone().unwrap_or_else(|| input.parent().map(Path::to_path_buf).unwrap_or_default());
    dir.join(format!("{stem}.{suffix}"))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn analyze_one(input: &Path, args: &AnalyzeArgs, cfg: &RunConfig, explicit: bool) -> Result<(Analysis, PathBuf), Error> {
    let curve: CurveSamples = read_curve(input)?;
    let analysis = analyze(&curve, cfg)?;
    let pick = |p: &Option<PathBuf>| if explicit { p.clone() } else { None };
    let report = output_path(&pick(&args.report), input, &args.out_dir, "report.json");
    write(&report, &analysis.report_json())?;
    write(&output_path(&pick(&args.plot), input, &args.out_dir, "plot.csv"), &analysis.plot_csv)?;
    write(&output_path(&pick(&args.frenet), input, &args.out_dir, "frenet.csv"), &analysis.frenet_csv)?;
    Ok((analysis, report))
}

fn run_analyze(args: &AnalyzeArgs, cfg: &RunConfig) -> u8 {
    if let Some(dir) = &args.out_dir {
        if let Err(e) = fs::create_dir_all(dir) {
            eprintln!("error: Io: {}: {e}", dir.display());
            return EXIT_INVALID;
        }
    }
    let inputs: Vec<PathBuf> = match (&args.input, &args.batch) {
        (Some(p), _) => vec![p.clone()],
        (None, Some(dir)) => match fs::read_dir(dir) {
            Ok(entries) => {
                let mut v: Vec<PathBuf> = entries
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| {
                        p.extension().is_some_and(|x| x == "json")
                            && !p.file_name().is_some_and(|n| n.to_string_lossy().ends_with(".report.json"))
                    })
                    .collect();
                v.sort();
                v
            }
            Err(e) => {
                eprintln!("error: Io: {}: {e}", dir.display());
                return EXIT_INVALID;
            }
        },
        (None, None) => unreachable!("clap requires an input"),
    };
    let explicit = args.batch.is_none();
    let results: Vec<_> = inputs.par_iter().map(|p| (p, analyze_one(p, args, cfg, explicit))).collect();
    let mut code = 0;
    for (input, result) in results {
        match result {
            Ok((a, report)) => println!("{}: verdict={} report={}", input.display(), a.verdict(), report.display()),
            Err(e) => {
                eprintln!("error: {}: {e}", input.display());
                code = code.max(exit_code(&e));
            }
        }
    }
    code
}

fn run_verify(args: &VerifyArgs, cfg: &RunConfig) -> Result<bool, Error> {
    check_key(&args.theorem)?;
    let curve = read_curve(&args.input)?;
    analyze(&curve, cfg)?.check_pass(&args.theorem)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match config(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let code = match &cli.command {
        Command::Construct(args) => match construct(args, &cfg) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                exit_code(&e)
            }
        },
        Command::Analyze(args) => run_analyze(args, &cfg),
        Command::Verify(args) => match run_verify(args, &cfg) {
            Ok(pass) => {
                println!("{} {}", args.theorem, if pass { "pass" } else { "fail" });
                if pass {
                    0
                } else {
                    EXIT_FAIL
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit_code(&e)
            }
        },
    };
    ExitCode::from(code)
}
