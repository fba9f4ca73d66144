//! Batch front end over the exact-category kernel: build resolutions,
//! compute dimensions, emit and re-verify comparison certificates, and run
//! the axiom audit. Every sampled computation takes an explicit seed, so
//! identical invocations produce byte-identical output.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use exactcat::axioms::{check_exact_axioms, MutationId};
use exactcat::error::Error;
use exactcat::exact::KernelCokernelPair;
use exactcat::models::Model;
use exactcat::schanuel::{
    injective_dimension, schanuel_isomorphism, verify_certificate, Resolution,
};
use exactcat_cli::schema::{self, LoadError, Provenance};

#[derive(Parser)]
#[command(
    name = "exactcat",
    version,
    about = "Exact-category computations over finite algebraic models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the canonical injective resolution ladder of an object.
    Resolve {
        /// Object input file (JSON).
        #[arg(long)]
        object: PathBuf,
        /// Number of ladder steps.
        #[arg(long)]
        depth: usize,
        /// Output file for the resolution.
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the injective dimension of an object within a budget.
    Dim {
        /// Object input file (JSON).
        #[arg(long)]
        object: PathBuf,
        /// Largest resolution depth to examine (at least 1).
        #[arg(long, default_value_t = 16)]
        budget: usize,
    },
    /// Compare two injective presentations of one object and write the
    /// isomorphism certificate.
    Schanuel {
        /// First pair file (JSON).
        #[arg(long)]
        pair1: PathBuf,
        /// Second pair file (JSON).
        #[arg(long)]
        pair2: PathBuf,
        /// Output file for the certificate.
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-verify a certificate from its raw matrix data.
    CheckCert {
        /// Certificate file (JSON).
        #[arg(long)]
        cert: PathBuf,
    },
    /// Audit the exact-structure axioms by seeded sampling.
    Axioms {
        /// linrep | cyclicmod | splitex:linrep | splitex:cyclicmod
        #[arg(long)]
        model: String,
        /// Prime characteristic.
        #[arg(long)]
        p: u64,
        /// Vertex count (linrep models).
        #[arg(long)]
        n: Option<usize>,
        /// Ring exponent (cyclicmod models).
        #[arg(long)]
        k: Option<u32>,
        /// Sampling rounds per check.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Sampling seed; falls back to EXACTCAT_SEED.
        #[arg(long, env = "EXACTCAT_SEED")]
        seed: u64,
        /// Deliberately miswire one axiom to exercise the failure path:
        /// drop-composition-closure | admit-nonkernel-mono |
        /// break-pushout-admissibility
        #[arg(long)]
        mutate: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Resolve { object, depth, out } => cmd_resolve(&object, depth, &out),
        Command::Dim { object, budget } => cmd_dim(&object, budget),
        Command::Schanuel { pair1, pair2, out } => cmd_schanuel(&pair1, &pair2, &out),
        Command::CheckCert { cert } => cmd_check_cert(&cert),
        Command::Axioms {
            model,
            p,
            n,
            k,
            samples,
            seed,
            mutate,
        } => cmd_axioms(&model, p, n, k, samples, seed, mutate.as_deref()),
    };
    ExitCode::from(code)
}

/// Exit 2 for malformed files, exit 3 for well-formed files whose content
/// fails exact validation.
fn load_code(e: &LoadError) -> u8 {
    match e {
        LoadError::Schema(_) => 2,
        LoadError::Model(_) => 3,
    }
}

fn load_object(path: &Path) -> Result<exactcat::category::Object, LoadError> {
    schema::read_file(path).and_then(|v| schema::object_file_from_json(&v))
}

fn load_pair(path: &Path) -> Result<KernelCokernelPair, LoadError> {
    schema::read_file(path).and_then(|v| schema::pair_from_json(&v))
}

fn cmd_resolve(object: &Path, depth: usize, out: &Path) -> u8 {
    let obj = match load_object(object) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return load_code(&e);
        }
    };
    let res = match Resolution::canonical(&obj, depth) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    if let Err(e) = schema::write_file(out, &schema::resolution_to_json(&res)) {
        eprintln!("error: cannot write {}: {e}", out.display());
        return 2;
    }
    println!("resolved {} to depth {depth}", obj.describe());
    0
}

fn cmd_dim(object: &Path, budget: usize) -> u8 {
    if budget == 0 {
        eprintln!("error: --budget must be at least 1");
        return 2;
    }
    let obj = match load_object(object) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return load_code(&e);
        }
    };
    match injective_dimension(&obj, budget) {
        Ok(dim) => {
            println!("{dim}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            3
        }
    }
}

fn cmd_schanuel(pair1: &Path, pair2: &Path, out: &Path) -> u8 {
    let p1 = match load_pair(pair1) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return load_code(&e);
        }
    };
    let p2 = match load_pair(pair2) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return load_code(&e);
        }
    };
    let cert = match schanuel_isomorphism(&p1, &p2) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                Error::NotInjectiveMiddle(_) => 4,
                Error::BaseMismatch(_) => 5,
                _ => 6,
            };
        }
    };
    if !verify_certificate(&cert) {
        eprintln!("error: constructed certificate failed re-verification");
        return 6;
    }
    let provenance = Provenance {
        command: format!(
            "schanuel --pair1 {} --pair2 {} --out {}",
            pair1.display(),
            pair2.display(),
            out.display()
        ),
        seed: None,
    };
    if let Err(e) = schema::write_file(out, &schema::certificate_to_json(&cert, &provenance)) {
        eprintln!("error: cannot write {}: {e}", out.display());
        return 2;
    }
    println!(
        "certificate relates {} and {}",
        cert.forward().domain().describe(),
        cert.forward().codomain().describe()
    );
    0
}

fn cmd_check_cert(cert: &Path) -> u8 {
    match schema::read_file(cert).and_then(|v| schema::certificate_from_json(&v)) {
        Ok(c) => {
            if verify_certificate(&c) {
                println!(
                    "certificate verified: {} is isomorphic to {}",
                    c.forward().domain().describe(),
                    c.forward().codomain().describe()
                );
                0
            } else {
                eprintln!("error: composites are not both identities");
                1
            }
        }
        Err(e @ LoadError::Schema(_)) => {
            eprintln!("error: {e}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_axioms(
    model_name: &str,
    p: u64,
    n: Option<usize>,
    k: Option<u32>,
    samples: usize,
    seed: u64,
    mutate: Option<&str>,
) -> u8 {
    let (split, base_name) = match model_name.strip_prefix("splitex:") {
        Some(inner) => (true, inner),
        None => (false, model_name),
    };
    let base = match base_name {
        "linrep" => {
            let Some(n) = n else {
                eprintln!("error: linrep needs --n");
                return 2;
            };
            Model::linrep(p, n)
        }
        "cyclicmod" => {
            let Some(k) = k else {
                eprintln!("error: cyclicmod needs --k");
                return 2;
            };
            Model::cyclicmod(p, k)
        }
        other => {
            eprintln!("error: unknown model {other:?}");
            return 2;
        }
    };
    let base = match base {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let model = if split {
        match Model::split(base) {
            Ok(m) => m,
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        }
    } else {
        base
    };
    let mutation = match mutate {
        None => None,
        Some(name) => match MutationId::parse(name) {
            Ok(m) => Some(m),
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        },
    };
    let report = match check_exact_axioms(&model, samples, seed, mutation) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    print!("{}", schema::render(&schema::report_to_json(&report)));
    if report.all_passed() {
        0
    } else {
        1
    }
}
