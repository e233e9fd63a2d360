//! Command line front end. [`cli_main`] returns the process exit code:
//! 0 when everything passes, 1 on a failed assertion or kernel failure,
//! 2 on a usage, configuration or input error.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::ensembles::{markov_sample, sample_iid_matrix, EntryLaw, SeededStream};
use crate::error::{Error, Result};
use crate::experiments::{run_experiment, ExperimentConfig, ExperimentKind};
use crate::linalg::{eigenvalues, singular_values, Matrix};
use crate::oracles::{concentration_suite, fuzz_campaign, CheckReport, Lemma};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "markov-spectra", about = "Spectra of random Markov matrices", disable_version_flag = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw an n x n matrix X (or its row normalization M) and print it as text.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "exponential")]
        law: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Stream index within the seed.
        #[arg(long, default_value_t = 0)]
        replica: u64,
        /// Print M = D X instead of X.
        #[arg(long)]
        markov: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Singular values of a text matrix, largest first.
    Svd {
        /// Matrix file ("rows cols" header then rows); `-` reads standard input.
        #[arg(default_value = "-")]
        file: String,
    },
    /// Eigenvalues of a square text matrix, by decreasing modulus.
    Eig {
        #[arg(default_value = "-")]
        file: String,
    },
    /// Run executable checks.
    Check {
        #[command(subcommand)]
        target: CheckTarget,
    },
    /// Run a seeded Monte Carlo experiment.
    Experiment(ExperimentArgs),
    /// Print the version.
    Version,
}

#[derive(Subcommand, Debug)]
enum CheckTarget {
    /// Fuzz the matrix inequalities and run the concentration suite.
    Lemmas {
        /// Restrict to one lemma id.
        #[arg(long)]
        lemma: Option<String>,
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Rows drawn per concentration case.
        #[arg(long, default_value_t = 2000)]
        replicas: usize,
    },
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// quartercircle, circular, extremes, resolvent, perturbation or moments.
    /// Optional when the config file names the experiment.
    kind: Option<String>,
    /// Flat key=value config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma separated sizes.
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    law: Option<String>,
    #[arg(long)]
    replicas: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Comma separated complex shifts such as `0,1,1+1i`.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    remove_top: Option<String>,
    #[arg(long)]
    threads: Option<String>,
}

/// Parses `argv` (program name first), runs the command, and returns the exit code.
pub fn cli_main<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for an error that stopped a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Parse(_) | Error::InvalidLaw(_) | Error::Io(_) => EXIT_USAGE,
        Error::Replica { source, .. } => exit_code(source),
        _ => EXIT_FAIL,
    }
}

fn run(command: Command) -> Result<i32> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Sample { n, law, seed, replica, markov, out: path } => {
            let law: EntryLaw = law.parse()?;
            let stream = SeededStream::new(seed, replica);
            let m = if markov { markov_sample(n, &law, stream)?.m_matrix } else { sample_iid_matrix(n, &law, stream)? };
            match path {
                Some(p) => std::fs::write(p, m.to_text())?,
                None => out.write_all(m.to_text().as_bytes())?,
            }
        }
        Command::Svd { file } => {
            for s in singular_values(&read_matrix(&file)?)? {
                writeln!(out, "{s:.16e}")?;
            }
        }
        Command::Eig { file } => {
            for z in eigenvalues(&read_matrix(&file)?)? {
                writeln!(out, "{:.16e} {:.16e}", z.re, z.im)?;
            }
        }
        Command::Check { target: CheckTarget::Lemmas { lemma, instances, seed, replicas } } => {
            let lemmas = match lemma {
                Some(id) => vec![id.parse::<Lemma>()?],
                None => Lemma::ALL.to_vec(),
            };
            let mut all = true;
            for l in lemmas {
                let report: CheckReport = match l {
                    Lemma::DistanceConcentration => concentration_suite(replicas, seed)?,
                    _ => fuzz_campaign(l, instances, seed)?,
                };
                all &= report.passed;
                writeln!(out, "{report}")?;
            }
            return Ok(if all { EXIT_PASS } else { EXIT_FAIL });
        }
        Command::Experiment(args) => {
            let cfg = experiment_config(&args)?;
            let report = run_experiment(&cfg)?;
            out.write_all(report.text().as_bytes())?;
            for path in &report.artifacts {
                writeln!(out, "wrote {}", path.display())?;
            }
            return Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL });
        }
        Command::Version => writeln!(out, "markov-spectra {}", env!("CARGO_PKG_VERSION"))?,
    }
    Ok(EXIT_PASS)
}

fn read_matrix(file: &str) -> Result<Matrix> {
    let text = if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(file)?
    };
    Matrix::parse_text(&text)
}

fn experiment_config(args: &ExperimentArgs) -> Result<ExperimentConfig> {
    let kind: Option<ExperimentKind> = args.kind.as_deref().map(str::parse).transpose()?;
    let mut cfg = match (&args.config, kind) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)?;
            let mut cfg = ExperimentConfig::new(kind.unwrap_or(ExperimentKind::Quartercircle));
            let names_experiment = text
                .lines()
                .filter_map(|l| l.split('#').next()?.split_once('='))
                .any(|(k, _)| k.trim() == "experiment");
            if kind.is_none() && !names_experiment {
                return Err(Error::Config(format!("{} does not name an experiment", path.display())));
            }
            cfg.apply_text(&text)?;
            cfg
        }
        (None, Some(kind)) => ExperimentConfig::new(kind),
        (None, None) => return Err(Error::Config("experiment kind is required".into())),
    };
    if let Some(kind) = kind {
        cfg.experiment = kind;
    }
    let overrides = [
        ("n", &args.n),
        ("law", &args.law),
        ("replicas", &args.replicas),
        ("seed", &args.seed),
        ("z", &args.z),
        ("out", &args.out),
        ("remove_top", &args.remove_top),
        ("threads", &args.threads),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            cfg.apply(key, v)?;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}
