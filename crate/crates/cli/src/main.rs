//! `qgabor` — quaternionic time-frequency transforms and verification suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qgabor::codec::{decode_qgab, decode_qsig, encode_qgab, encode_qsig};
use qgabor::maskspec::{mask_spec_from_arg, MaskSpec};
use qgabor::pgm::{render_spectrogram_slice, SliceSpec};
use qgabor::suite::{all_asserted_pass, run_verify_suite, ModeChoice, SuiteConfig, SuiteName};
use qgabor::{read_file, write_file, CliError};
use qgabor_core::{
    benedicks_probe, dqft, from_rgb_image, gqft_forward, gqft_inverse, idqft, make_window,
    CheckReport, GridGeometry, MaskDomain, QSignal2D, WindowKind,
};

#[derive(Parser)]
#[command(name = "qgabor", version, about = "Two-sided quaternion Fourier / Gabor transforms and their verification lab")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Discrete,
    Quadrature,
}

#[derive(Args, Clone)]
struct GridArgs {
    /// Shorthand setting both grid sides
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 8)]
    n1: usize,
    #[arg(long, default_value_t = 8)]
    n2: usize,
    /// Measure convention; each subcommand picks its natural default
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long = "L1", default_value_t = 4.0)]
    l1: f64,
    #[arg(long = "L2", default_value_t = 4.0)]
    l2: f64,
}

impl GridArgs {
    fn sides(&self) -> (usize, usize) {
        match self.n {
            Some(n) => (n, n),
            None => (self.n1, self.n2),
        }
    }

    fn geometry(&self, default_quadrature: bool) -> Result<GridGeometry, CliError> {
        let (n1, n2) = self.sides();
        let quadrature = match self.mode {
            Some(ModeArg::Discrete) => false,
            Some(ModeArg::Quadrature) => true,
            None => default_quadrature,
        };
        let g = if quadrature {
            GridGeometry::quadrature(n1, n2, self.l1, self.l2)
        } else {
            GridGeometry::pure_discrete(n1, n2)
        };
        g.map_err(CliError::from)
    }
}

#[derive(Args)]
struct GenCommon {
    #[command(flatten)]
    grid: GridArgs,
    /// Scale the result to unit L² norm
    #[arg(long)]
    normalize: bool,
    /// Zero every cell outside the centered spatial ball of this radius
    #[arg(long)]
    truncate: Option<f64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum GenKind {
    /// Gaussian window exp(-π|x|²/σ²) sampled at cell centers
    Gaussian {
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Single-cell spike
    Delta {
        /// Cell index "i,j"
        #[arg(long, default_value = "0,0")]
        at: String,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Indicator of the centered rectangle |x1| <= half1, |x2| <= half2
    Box {
        #[arg(long, default_value_t = 1.0)]
        half1: f64,
        #[arg(long, default_value_t = 1.0)]
        half2: f64,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Uniform random quaternion components in [-1, 1)
    Random {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Pure-quaternion encoding of a raw interleaved RGB8 image
    FromImage {
        /// Raw RGB bytes, n1·n2·3 of them
        #[arg(long)]
        rgb: PathBuf,
        #[command(flatten)]
        common: GenCommon,
    },
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a signal or window and write it as QSIG
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Forward two-sided quaternion Fourier transform (QSIG -> QSIG)
    Qft {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Inverse two-sided quaternion Fourier transform (QSIG -> QSIG)
    Iqft {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Forward Gabor transform against a window (QSIG -> QGAB)
    Gqft {
        input: PathBuf,
        #[arg(long)]
        window: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Inverse Gabor transform (QGAB -> QSIG)
    Igqft {
        input: PathBuf,
        #[arg(long)]
        window: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run verification suites and write a JSON report
    Verify {
        /// Suite name; repeatable
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Mask spec (inline JSON or a path to a JSON file)
        #[arg(long)]
        mask: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Benedicks-type annihilation probe for Σ = S × B_R
    ProbeBenedicks {
        /// Window signal (QSIG); support must lie in the ball of radius r
        #[arg(long)]
        window: PathBuf,
        /// Spatial support radius r
        #[arg(long = "r")]
        support_radius: f64,
        /// Shift-ball radius R
        #[arg(long = "R")]
        shift_radius: f64,
        /// Frequency mask S (inline JSON or a path)
        #[arg(long)]
        mask: String,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render |G| over the two unfixed axes as a binary PGM
    Spectrogram {
        input: PathBuf,
        /// Fix exactly two axes, e.g. "b1=0,b2=3"
        #[arg(long)]
        slice: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_index_pair(s: &str) -> Result<(usize, usize), CliError> {
    let err = || CliError::Usage(format!("expected \"i,j\" cell index, got {s:?}"));
    let (i, j) = s.split_once(',').ok_or_else(err)?;
    Ok((
        i.trim().parse().map_err(|_| err())?,
        j.trim().parse().map_err(|_| err())?,
    ))
}

fn run_gen(kind: GenKind) -> Result<i32, CliError> {
    let (signal, common) = match kind {
        GenKind::Gaussian { sigma, common } => {
            let g = common.grid.geometry(false)?;
            (make_window(g, WindowKind::Gaussian { sigma }, false)?, common)
        }
        GenKind::Delta { at, common } => {
            let g = common.grid.geometry(false)?;
            let at = parse_index_pair(&at)?;
            (make_window(g, WindowKind::Delta { at }, false)?, common)
        }
        GenKind::Box {
            half1,
            half2,
            common,
        } => {
            let g = common.grid.geometry(false)?;
            (make_window(g, WindowKind::Box { half1, half2 }, false)?, common)
        }
        GenKind::Random { seed, common } => {
            let g = common.grid.geometry(false)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (QSignal2D::random(g, &mut rng), common)
        }
        GenKind::FromImage { rgb, common } => {
            let bytes = read_file(&rgb)?;
            let (n1, n2) = common.grid.sides();
            (from_rgb_image(n1, n2, &bytes)?, common)
        }
    };
    let signal = match common.truncate {
        Some(r) => signal.truncated_to_spatial_ball(r),
        None => signal,
    };
    let signal = if common.normalize {
        signal.normalized_l2()?
    } else {
        signal
    };
    write_file(&common.out, &encode_qsig(&signal))?;
    Ok(0)
}

fn write_reports(reports: &[CheckReport], out: Option<&PathBuf>) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(reports).expect("reports serialize");
    match out {
        Some(path) => write_file(path, json.as_bytes())?,
        None => println!("{json}"),
    }
    for r in reports {
        let verdict = if r.pass {
            "PASS"
        } else if r.asserted() {
            "FAIL"
        } else {
            "INFO"
        };
        eprintln!("{verdict} {}: lhs={:.6e} rhs={:.6e}", verdict_name(r), r.lhs, r.rhs);
    }
    Ok(())
}

fn verdict_name(r: &CheckReport) -> String {
    r.name.clone()
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.cmd {
        Cmd::Gen { kind } => run_gen(kind),
        Cmd::Qft { input, out } => {
            let f = decode_qsig(&read_file(&input)?)?;
            write_file(&out, &encode_qsig(&dqft(&f)))?;
            Ok(0)
        }
        Cmd::Iqft { input, out } => {
            let f = decode_qsig(&read_file(&input)?)?;
            write_file(&out, &encode_qsig(&idqft(&f)))?;
            Ok(0)
        }
        Cmd::Gqft { input, window, out } => {
            let f = decode_qsig(&read_file(&input)?)?;
            let w = decode_qsig(&read_file(&window)?)?;
            write_file(&out, &encode_qgab(&gqft_forward(&f, &w)?))?;
            Ok(0)
        }
        Cmd::Igqft { input, window, out } => {
            let field = decode_qgab(&read_file(&input)?)?;
            let w = decode_qsig(&read_file(&window)?)?;
            write_file(&out, &encode_qsig(&gqft_inverse(&field, &w)?))?;
            Ok(0)
        }
        Cmd::Verify {
            suites,
            grid,
            trials,
            seed,
            mask,
            out,
        } => {
            let suites = suites
                .iter()
                .map(|s| SuiteName::parse(s))
                .collect::<Result<Vec<_>, _>>()?;
            let mask = match mask {
                Some(arg) => Some(mask_spec_from_arg(&arg)?),
                None => None,
            };
            let (n1, n2) = grid.sides();
            let cfg = SuiteConfig {
                suites,
                n1,
                n2,
                mode: grid.mode.map(|m| match m {
                    ModeArg::Discrete => ModeChoice::Discrete,
                    ModeArg::Quadrature => ModeChoice::Quadrature,
                }),
                l1: grid.l1,
                l2: grid.l2,
                trials,
                seed,
                mask,
            };
            let reports = run_verify_suite(&cfg)?;
            write_reports(&reports, out.as_ref())?;
            Ok(if all_asserted_pass(&reports) { 0 } else { 1 })
        }
        Cmd::ProbeBenedicks {
            window,
            support_radius,
            shift_radius,
            mask,
            trials,
            seed,
            out,
        } => {
            let w = decode_qsig(&read_file(&window)?)?;
            let spec: MaskSpec = mask_spec_from_arg(&mask)?;
            let s = spec.build(*w.geometry(), MaskDomain::Freq2D)?;
            let report = benedicks_probe(&w, support_radius, &s, shift_radius, trials, seed)?;
            let pass = report.pass;
            write_reports(&[report], out.as_ref())?;
            Ok(if pass { 0 } else { 1 })
        }
        Cmd::Spectrogram { input, slice, out } => {
            let field = decode_qgab(&read_file(&input)?)?;
            let spec = SliceSpec::parse(&slice)?;
            let img = render_spectrogram_slice(&field, &spec)?;
            write_file(&out, &img.encode())?;
            Ok(0)
        }
    }
}

fn init_threads() {
    if let Ok(v) = std::env::var("QGABOR_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
