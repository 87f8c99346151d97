use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use hadamard_core::io::{self as mio, Format, Provenance};
use hadamard_core::{
    check_core_invariants, check_hadamard, paley_hadamard, scarpis_extend, ConstructionParams,
    FieldDescriptor, FieldSpec, Labeling, SignMatrix,
};

/// Generate and verify Hadamard matrices.
#[derive(Parser, Debug)]
#[command(name = "hadamard", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a Hadamard matrix.
    #[command(subcommand)]
    Generate(Generate),
    /// Check that every pair of distinct rows is orthogonal.
    Verify { file: PathBuf },
    /// Print order, normalization and core statistics of a matrix file.
    Info { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum Generate {
    /// Paley matrix of order q+1, q ≡ 3 (mod 4).
    Paley {
        /// Field order as "p" or "p^k".
        q: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Extend an order q+1 matrix to order q(q+1).
    Scarpis {
        /// Field order as "p" or "p^k".
        q: String,
        /// Input matrix of order q+1 (default: the Paley matrix for q).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Shuffle the labeling of GF(q) with this seed (default: canonical order).
        #[arg(long)]
        alpha_seed: Option<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output file (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "pm")]
    format: Format,
    /// Leave the timestamp out of the provenance header.
    #[arg(long)]
    no_timestamp: bool,
}

/// Failures that map to a specific exit code.
#[derive(Debug)]
enum Failure {
    /// Input or output is not a Hadamard matrix (exit 1).
    NotHadamard(String),
    /// I/O, parse, or argument problems (exit 2).
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

impl From<hadamard_core::Error> for Failure {
    fn from(e: hadamard_core::Error) -> Self {
        Failure::Other(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(Generate::Paley { q, out }) => generate_paley(&q, &out),
        Command::Generate(Generate::Scarpis {
            q,
            input,
            alpha_seed,
            out,
        }) => generate_scarpis(&q, input.as_deref(), alpha_seed, &out),
        Command::Verify { file } => verify(&file),
        Command::Info { file } => info(&file),
    };
    match result {
        Ok(code) => code,
        Err(Failure::NotHadamard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_field(q: &str) -> anyhow::Result<FieldSpec> {
    let desc: FieldDescriptor = q.parse()?;
    let field = FieldSpec::from_descriptor(desc)?;
    if field.q() % 4 != 3 {
        bail!("q = {} ({desc}) is not congruent to 3 mod 4", field.q());
    }
    Ok(field)
}

fn read_matrix(path: &Path) -> anyhow::Result<(SignMatrix, Format)> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    mio::parse_matrix(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn field_label(field: &FieldSpec) -> String {
    let desc = FieldDescriptor {
        p: field.p(),
        k: field.k(),
    };
    if field.k() == 1 {
        field.q().to_string()
    } else {
        format!("{} = {desc}", field.q())
    }
}

/// Re-verifies `m` and writes it with `header`; refuses to emit a non-Hadamard matrix.
fn emit(m: &SignMatrix, mut header: Provenance, out: &OutputArgs) -> Result<ExitCode, Failure> {
    let report = check_hadamard(m)?;
    if let Some(v) = report.first_violation {
        return Err(Failure::NotHadamard(format!(
            "generated matrix failed verification: {v}"
        )));
    }
    header.push("verified", format!("H H^T = {} I", report.order));
    if !out.no_timestamp {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        header.push("timestamp", format!("{secs} (unix seconds)"));
    }
    let mut buf = Vec::new();
    mio::write_matrix(m, out.format, &header.lines(), &mut buf)?;
    match &out.output {
        Some(path) => {
            fs::write(path, &buf).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => io::stdout()
            .lock()
            .write_all(&buf)
            .context("cannot write to stdout")?,
    }
    Ok(ExitCode::SUCCESS)
}

fn generate_paley(q: &str, out: &OutputArgs) -> Result<ExitCode, Failure> {
    let field = parse_field(q)?;
    let h = paley_hadamard(&field)?;
    let header = Provenance::new()
        .with(
            "generator",
            format!("hadamard {} generate paley", env!("CARGO_PKG_VERSION")),
        )
        .with("q", field_label(&field))
        .with("modulus", field.modulus_string())
        .with("order", h.rows());
    emit(&h, header, out)
}

fn generate_scarpis(
    q: &str,
    input: Option<&Path>,
    alpha_seed: Option<u64>,
    out: &OutputArgs,
) -> Result<ExitCode, Failure> {
    let field = parse_field(q)?;
    let (a, source) = match input {
        Some(path) => (read_matrix(path)?.0, path.display().to_string()),
        None => (paley_hadamard(&field)?, "paley".to_string()),
    };
    let n = field.q() as usize + 1;
    if !a.is_square() || a.rows() != n {
        return Err(Failure::Other(anyhow::anyhow!(
            "input is {}x{}, expected order q+1 = {n}",
            a.rows(),
            a.cols()
        )));
    }
    if let Some(v) = check_hadamard(&a)?.first_violation {
        return Err(Failure::NotHadamard(format!(
            "input is not a Hadamard matrix: {v}"
        )));
    }

    let (labeling, labeling_note) = match alpha_seed {
        None => (Labeling::canonical(&field), "canonical".to_string()),
        Some(seed) => {
            let lab = Labeling::shuffled(&field, seed);
            let indices: Vec<String> = lab.element_indices().iter().map(u64::to_string).collect();
            (lab, format!("seed {seed}: {}", indices.join(" ")))
        }
    };
    let params = ConstructionParams::new(labeling)?;
    let b = scarpis_extend(&a, &params)?;

    let header = Provenance::new()
        .with(
            "generator",
            format!("hadamard {} generate scarpis", env!("CARGO_PKG_VERSION")),
        )
        .with("q", field_label(&field))
        .with("modulus", field.modulus_string())
        .with("labeling", labeling_note)
        .with(
            "input",
            format!("{source} (sha256 {})", mio::content_hash(&a)),
        )
        .with("order", b.rows());
    emit(&b, header, out)
}

fn verify(path: &Path) -> Result<ExitCode, Failure> {
    let (m, _) = read_matrix(path)?;
    if !m.is_square() {
        println!("size {}x{}", m.rows(), m.cols());
        println!("hadamard: no (not square)");
        return Ok(ExitCode::from(1));
    }
    let report = check_hadamard(&m)?;
    println!("order {}", report.order);
    println!("pairs checked: {}", report.pairs_checked);
    match report.first_violation {
        None => {
            println!("hadamard: yes");
            Ok(ExitCode::SUCCESS)
        }
        Some(v) => {
            println!("hadamard: no");
            println!("first violation: {v}");
            Ok(ExitCode::from(1))
        }
    }
}

fn info(path: &Path) -> Result<ExitCode, Failure> {
    let (m, format) = read_matrix(path)?;
    println!("format: {format}");
    if !m.is_square() {
        println!("size {}x{}", m.rows(), m.cols());
        return Ok(ExitCode::SUCCESS);
    }
    println!("order {}", m.rows());
    let normalized = m.is_normalized();
    println!("normalized: {}", if normalized { "yes" } else { "no" });
    let hadamard = check_hadamard(&m)?.is_hadamard;
    println!("hadamard: {}", if hadamard { "yes" } else { "no" });
    if normalized && hadamard && m.rows() > 1 {
        let core = m.core()?;
        let report = check_core_invariants(&core)?;
        let sums: Vec<i64> = (0..core.rows())
            .map(|i| core.row_sum(i))
            .collect::<Result<_, _>>()?;
        let (lo, hi) = (sums.iter().min().unwrap(), sums.iter().max().unwrap());
        println!("core order: {}", core.rows());
        println!("core row sums: min {lo}, max {hi}");
        if report.passes {
            println!("core invariants: pass (row/column sums -1, distinct row dots -1)");
        } else {
            println!("core invariants: {} violations", report.violation_count);
        }
    }
    Ok(ExitCode::SUCCESS)
}
