//! `vwlap`: build weighted complexes, print spectra, bounds and Betti numbers,
//! and run the verification suites.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vwlap_core::constructions::{
    alexander_dual, complement_complex, extremal_family, extremal_uniform, fixture_from_str, join_namespaced,
    star_complex,
};
use vwlap_core::homology::betti_exact;
use vwlap_core::io::{betti_json, matrix_csv, operator_json, parse_complex, spectrum_csv, spectrum_json, write_complex};
use vwlap_core::operators::{down_laplacian, full_laplacian, up_laplacian_extended, up_laplacian_restricted};
use vwlap_core::rational::{format_rational, parse_rational};
use vwlap_core::spectra::spectrum_of;
use vwlap_core::verify::{run_suite, summary_table, SUITES};
use vwlap_core::weighted::seeded_weights;
use vwlap_core::{complex::random_complex, BoundReport, Error, OperatorMatrix, WeightedComplex};

#[derive(Parser)]
#[command(name = "vwlap", version, about = "Vertex-weighted Laplacians of simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Operator {
    Full,
    Up,
    Down,
    UpExtended,
}

impl Operator {
    fn name(self) -> &'static str {
        match self {
            Operator::Full => "full",
            Operator::Up => "up",
            Operator::Down => "down",
            Operator::UpExtended => "up-extended",
        }
    }

    fn build(self, w: &WeightedComplex, k: isize) -> vwlap_core::Result<OperatorMatrix> {
        match self {
            Operator::Full => full_laplacian(w, k),
            Operator::Up => up_laplacian_restricted(w, k),
            Operator::Down => down_laplacian(w, k),
            Operator::UpExtended => up_laplacian_extended(w, k),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Size, f-vector, h(X), missing faces and the clique-complex flag.
    Info { file: PathBuf },
    /// Spectrum of one operator at dimension k.
    Spectrum {
        file: PathBuf,
        #[arg(short, allow_negative_numbers = true)]
        k: isize,
        #[arg(long, value_enum, default_value = "full")]
        operator: Operator,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Operator matrix at dimension k, exact (JSON) or decimal (CSV, symmetrized).
    Matrix {
        file: PathBuf,
        #[arg(short, allow_negative_numbers = true)]
        k: isize,
        #[arg(long, value_enum, default_value = "full")]
        operator: Operator,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Every bound at dimension k next to the measured spectrum.
    Bounds {
        file: PathBuf,
        #[arg(short, allow_negative_numbers = true)]
        k: isize,
        /// Subcomplex on a subset of the same labels.
        #[arg(long)]
        subcomplex: Option<PathBuf>,
    },
    /// Exact reduced Betti numbers.
    Betti { file: PathBuf },
    /// Build a complex and write it in the JSON format.
    Construct {
        #[command(subcommand)]
        what: Construct,
        /// Output file; stdout when absent.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Run a verification suite (or `all`).
    Verify {
        suite: String,
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        /// Write the full JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// Join of two complexes, labels prefixed `0.` and `1.`.
    Join { a: PathBuf, b: PathBuf },
    /// Alexander dual.
    Dual { file: PathBuf },
    /// X^c_k.
    Complement {
        file: PathBuf,
        #[arg(short, allow_negative_numbers = true)]
        k: isize,
    },
    /// X*_k.
    Star {
        file: PathBuf,
        #[arg(short, allow_negative_numbers = true)]
        k: isize,
    },
    /// p-skeleton.
    Skeleton {
        file: PathBuf,
        #[arg(short, allow_negative_numbers = true)]
        p: isize,
    },
    /// (Δ_d^{(d−1)})^{*t} * Δ_{r−1}; uniform weights unless `--seed` or `--weights`.
    Extremal {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        r: usize,
        /// t block weights followed by r simplex weights, comma separated.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<String>>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Named fixture: simplex:N, skeleton:N:P, cp:N, friendship:N, sphere:K.
    Fixture {
        name: String,
        /// Random p/q weights from this seed; uniform otherwise.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Random complex with (k+1)-facets drawn at the given density.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        k: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long)]
        seed: u64,
    },
}

enum Failure {
    Domain(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn load(path: &Path) -> Result<WeightedComplex, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    Ok(parse_complex(&text)?)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| Failure::Domain(format!("{}: {e}", p.display()))),
        None => stdout_line(text),
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn stdout_line(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Domain(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serialisable")
}

fn info(w: &WeightedComplex) -> Result<Value, Failure> {
    let x = &w.complex;
    let missing: Vec<Vec<String>> = if x.is_void() {
        Vec::new()
    } else {
        x.missing_faces()?.iter().map(|f| f.iter().map(|&v| x.labels()[v].clone()).collect()).collect()
    };
    Ok(json!({
        "n": x.n(),
        "dim": x.dim(),
        "f_vector": x.f_vector(),
        "h": if x.is_void() { None } else { x.h()? },
        "missing_faces": missing,
        "clique_complex": x.is_clique_complex(),
        "total_weight": format_rational(&w.total_weight()),
    }))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Info { file } => emit(&None, &pretty(&info(&load(&file)?)?)),
        Command::Spectrum { file, k, operator, format } => {
            let w = load(&file)?;
            let s = spectrum_of(&operator.build(&w, k)?, w.tol())?;
            match format {
                Format::Json => emit(&None, &pretty(&spectrum_json(k, operator.name(), &s))),
                Format::Csv => emit(&None, spectrum_csv(&s).trim_end()),
            }
        }
        Command::Matrix { file, k, operator, format } => {
            let w = load(&file)?;
            let m = operator.build(&w, k)?;
            match format {
                Format::Json => emit(&None, &pretty(&operator_json(&w.complex, &m))),
                Format::Csv => emit(&None, matrix_csv(&m.symmetrize()?).trim_end()),
            }
        }
        Command::Bounds { file, k, subcomplex } => {
            let w = load(&file)?;
            let sub = match subcomplex {
                Some(p) => Some(w.complex.reindex(&load(&p)?.complex)?),
                None => None,
            };
            emit(&None, &pretty(&BoundReport::evaluate(&w, k, sub.as_ref())?))
        }
        Command::Betti { file } => emit(&None, &pretty(&betti_json(&betti_exact(&load(&file)?.complex)?))),
        Command::Construct { what, output } => {
            let w = construct(what)?;
            emit(&output, &write_complex(&w))
        }
        Command::Verify { suite, seeds, max_n, json } => {
            let results = run_suite(&suite, seeds, max_n)?;
            stdout_line(summary_table(&results).trim_end())?;
            if let Some(p) = json {
                let report = json!({ "suite": suite, "seeds": seeds, "max_n": max_n, "results": results });
                emit(&Some(p), &pretty(&report))?;
            }
            let failed: Vec<_> = results.iter().filter(|r| !r.pass).collect();
            for r in &failed {
                eprintln!(
                    "FAIL {} seed={} n={} k={:?}: {}",
                    r.theorem,
                    r.instance.seed,
                    r.instance.n,
                    r.instance.k,
                    r.witness.as_deref().unwrap_or("")
                );
            }
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

fn construct(what: Construct) -> Result<WeightedComplex, Failure> {
    Ok(match what {
        Construct::Join { a, b } => join_namespaced(&load(&a)?, &load(&b)?)?.result,
        Construct::Dual { file } => {
            let w = load(&file)?;
            w.with_complex(alexander_dual(&w.complex)?)
        }
        Construct::Complement { file, k } => {
            let w = load(&file)?;
            w.with_complex(complement_complex(&w.complex, k)?)
        }
        Construct::Star { file, k } => {
            let w = load(&file)?;
            w.with_complex(star_complex(&w.complex, k)?)
        }
        Construct::Skeleton { file, p } => {
            let w = load(&file)?;
            w.with_complex(w.complex.skeleton(p))
        }
        Construct::Extremal { d, t, r, weights, seed } => match (weights, seed) {
            (Some(ws), _) => {
                let parsed: Vec<_> = ws.iter().map(|s| parse_rational(s.trim())).collect::<Result<_, _>>()?;
                if parsed.len() != t + r {
                    return Err(Failure::Domain(format!("expected {} weights, got {}", t + r, parsed.len())));
                }
                extremal_family(d, t, r, &parsed[..t], &parsed[t..])?.weighted
            }
            (None, Some(s)) => {
                let u = extremal_uniform(d, t, r)?;
                let rw = seeded_weights(u.weighted.complex.clone(), s);
                let blocks: Vec<_> = u.blocks[..t].iter().map(|b| rw.weights[b[0]].clone()).collect();
                let tail: Vec<_> = u.blocks[t].iter().map(|&v| rw.weights[v].clone()).collect();
                extremal_family(d, t, r, &blocks, &tail)?.weighted
            }
            (None, None) => extremal_uniform(d, t, r)?.weighted,
        },
        Construct::Fixture { name, seed } => {
            let x = fixture_from_str(&name)?;
            match seed {
                Some(s) => seeded_weights(x, s),
                None => WeightedComplex::uniform(x),
            }
        }
        Construct::Random { n, k, density, seed } => seeded_weights(random_complex(n, k, density, seed)?, seed),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Command::Verify { suite, .. } = &cli.command {
        if suite != "all" && !SUITES.iter().any(|s| s.name == suite) {
            let names: Vec<&str> = SUITES.iter().map(|s| s.name).collect();
            eprintln!("error: unknown suite `{suite}`; known: all, {}", names.join(", "));
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(2),
    }
}
