use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use codespectra::codes::{dual_distance_at_least, dual_distance_exact, LinearCode, NamedCode};
use codespectra::harness::{self, rate, run, ExperimentConfig};
use codespectra::{Error, Result};

#[derive(Parser)]
#[command(
    name = "codespectra",
    version,
    about = "Spectra of random matrices from linear codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify d⊥ ≥ threshold for a named code (gold:m=5, gold+1:m=7, rm1:m=4) or a generator file.
    Certify {
        code: String,
        #[arg(long, default_value_t = 5)]
        threshold: usize,
        /// Also compute the exact dual distance.
        #[arg(long)]
        exact: bool,
    },
    /// Run an experiment described by a JSON config.
    Run {
        config: PathBuf,
        #[arg(long)]
        output_dir: Option<PathBuf>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Permit m ≥ 13.
        #[arg(long)]
        large: bool,
        #[arg(long)]
        allow_uncertified: bool,
    },
    /// Render an eigenvalue file as an SVG figure.
    Plot {
        esd: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Histogram density instead of the CDF.
        #[arg(long)]
        density: bool,
        #[arg(long)]
        title: Option<String>,
    },
    /// Fit the decay exponent of the median discrepancy from summary files.
    Rate {
        #[arg(required = true)]
        summaries: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Uncertified { .. } => 1,
        Error::NotHermitian { .. } | Error::NoConvergence { .. } | Error::Singular => 3,
        _ => 2,
    }
}

fn load_code(text: &str) -> Result<LinearCode> {
    if Path::new(text).is_file() {
        LinearCode::read(Path::new(text))
    } else {
        NamedCode::parse(text)?.build()
    }
}

fn certify(code: &str, threshold: usize, exact: bool) -> Result<()> {
    let code = load_code(code)?;
    let cert = dual_distance_at_least(&code, threshold)?;
    println!(
        "{} [n={}, k={}]: d_perp >= {threshold}: {}",
        code.name(),
        code.len(),
        code.dimension(),
        if cert.holds { "holds" } else { "fails" }
    );
    if let Some(w) = &cert.witness {
        println!(
            "witness support {:?} coefficients {:?}",
            w.support, w.coeffs
        );
    }
    if exact {
        println!("exact dual distance: {}", dual_distance_exact(&code)?);
    }
    if cert.holds {
        Ok(())
    } else {
        Err(Error::Uncertified {
            code: code.name().to_string(),
            threshold,
        })
    }
}

fn run_config(
    path: &Path,
    output_dir: Option<PathBuf>,
    trials: Option<usize>,
    seed: Option<u64>,
    large: bool,
    allow_uncertified: bool,
) -> Result<()> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    let mut cfg: ExperimentConfig = serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    cfg.large |= large;
    cfg.allow_uncertified |= allow_uncertified;
    if let Some(dir) = output_dir {
        cfg.output_dir = dir;
    }
    if let Some(t) = trials {
        cfg.trials = t;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    let result = run::run_experiment(&cfg)?;
    result.write(&cfg.output_dir)?;
    for (i, median) in result.median_discrepancy().iter().enumerate() {
        let (size, p) = cfg.triples[i];
        println!("triple {i} (size {size}, p {p}): median sup-interval discrepancy {median:.6}");
    }
    println!(
        "{} trials written to {}",
        result.trials.len(),
        cfg.output_dir.display()
    );
    Ok(())
}

fn plot(esd: &Path, output: Option<PathBuf>, density: bool, title: Option<String>) -> Result<()> {
    let values = run::read_esd_csv(esd)?;
    let title = title.unwrap_or_else(|| esd.display().to_string());
    let svg = if density {
        harness::density_svg(&values, &title)?
    } else {
        harness::cdf_svg(&values, &title)?
    };
    let output = output.unwrap_or_else(|| esd.with_extension("svg"));
    std::fs::write(&output, svg).map_err(|e| Error::Io {
        path: output.clone(),
        source: e,
    })?;
    println!("wrote {}", output.display());
    Ok(())
}

fn fit(summaries: &[PathBuf], json: bool) -> Result<()> {
    let samples = rate::read_summaries(summaries)?;
    let fit = rate::fit_rate(&samples)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&fit).expect("fit serializes")
        );
        return Ok(());
    }
    println!("n,p,trials,median,q1,q3");
    for s in &fit.per_n {
        println!(
            "{},{},{},{:.6},{:.6},{:.6}",
            s.n, s.p, s.trials, s.median, s.q1, s.q3
        );
    }
    println!("slope {:.6} intercept {:.6}", fit.slope, fit.intercept);
    println!("beta_hat {:.6}", fit.beta);
    println!(
        "gamma_hat {:.6} benchmark min(gamma/4, (1-gamma)/8) = {:.6}",
        fit.gamma, fit.beta_benchmark
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Certify {
            code,
            threshold,
            exact,
        } => certify(&code, threshold, exact),
        Command::Run {
            config,
            output_dir,
            trials,
            seed,
            large,
            allow_uncertified,
        } => run_config(&config, output_dir, trials, seed, large, allow_uncertified),
        Command::Plot {
            esd,
            output,
            density,
            title,
        } => plot(&esd, output, density, title),
        Command::Rate { summaries, json } => fit(&summaries, json),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
