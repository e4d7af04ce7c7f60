//! Command-line front end: per-n reports, range scans with JSON-lines
//! persistence, and aggregate tables.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 internal-consistency
//! failure (an exact-arithmetic invariant did not hold).

use std::path::PathBuf;
use std::process;

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::json;

use fekete::certify::{
    certify_f_irreducible, certify_g_irreducible, certify_galois_f, certify_galois_g, CertKind,
    SearchConfig, SearchOutcome,
};
use fekete::cyclotomic::verified_cyclotomic_factors;
use fekete::error::{Error, Result};
use fekete::fekete::{build_f, decompose, value_predictions};
use fekete::intpoly::IntPoly;
use fekete::scan::{build_report, load_records_lenient, report_csv, run_scan, ScanConfig};

/// Writes to stdout. A closed pipe (say, piping into `head`) is a clean
/// exit; any other write failure is an internal error.
fn emit(text: &str) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().write_all(text.as_bytes()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            process::exit(0);
        }
        eprintln!("error: {e}");
        process::exit(2);
    }
}

macro_rules! emitln {
    ($($arg:tt)*) => { emit(&format!("{}\n", format_args!($($arg)*))) };
}

#[derive(Parser)]
#[command(
    name = "fekete",
    version,
    about = "Fekete polynomials of principal characters: build, reduce, certify, scan"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build F_n and list its small cyclotomic factors.
    Build {
        /// Modulus n >= 2.
        n: u64,
        /// Largest order d to test for Φ_d | F_n.
        #[arg(long, default_value_t = 200)]
        dmax: u64,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Decompose F_n = x * (cyclotomic part) * f_n for semiprime n = pq.
    Reduce {
        /// Odd semiprime n = pq.
        n: u64,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Search and print irreducibility or Galois-group certificates.
    Certify {
        /// Odd semiprime n = pq.
        n: u64,
        /// Which certificates to search.
        #[arg(long, value_enum)]
        what: What,
        /// Witness primes are searched up to this bound.
        #[arg(long, default_value_t = 5000)]
        prime_bound: u64,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Compute records for every semiprime in a range (JSON lines, resumable).
    Scan {
        /// Half-open range A..B of n to scan.
        #[arg(long, value_parser = parse_range)]
        range: (u64, u64),
        /// Output JSON-lines path.
        #[arg(long)]
        out: PathBuf,
        /// Witness primes are searched up to this bound.
        #[arg(long, default_value_t = 5000)]
        prime_bound: u64,
        /// Equidistribution anomalies are checked for d up to this bound.
        #[arg(long, default_value_t = 100)]
        dmax: u64,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Aggregate a scan file into markdown tables (CSV with --out).
    Report {
        /// JSON-lines file produced by scan.
        input: PathBuf,
        /// Also write a per-record CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    /// Irreducibility of g_n, then of f_n.
    Irred,
    /// Galois group of g_n (S_m), then of f_n.
    Galois,
}

fn parse_range(s: &str) -> std::result::Result<(u64, u64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got `{s}`"))?;
    let a = a
        .trim()
        .parse::<u64>()
        .map_err(|e| format!("bad start `{a}`: {e}"))?;
    let b = b
        .trim()
        .parse::<u64>()
        .map_err(|e| format!("bad end `{b}`: {e}"))?;
    Ok((a, b))
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            process::exit(code);
        }
    };
    match run(cli.command) {
        Ok(code) => process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            process::exit(exit_code(&e));
        }
    }
}

/// Usage and input problems exit 1; anything else means an internal
/// invariant failed and exits 2.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput { .. }
        | Error::NotSemiprime { .. }
        | Error::NotPrime { .. }
        | Error::NotOddPrime { .. }
        | Error::NotOddPrimes { .. }
        | Error::NotSquarefree
        | Error::PrimeTooLarge { .. }
        | Error::Io(_) => 1,
        _ => 2,
    }
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Build { n, dmax, json } => cmd_build(n, dmax, json),
        Command::Reduce { n, json } => cmd_reduce(n, json),
        Command::Certify {
            n,
            what,
            prime_bound,
            json,
        } => cmd_certify(n, what, prime_bound, json),
        Command::Scan {
            range,
            out,
            prime_bound,
            dmax,
            threads,
        } => cmd_scan(range, &out, prime_bound, dmax, threads),
        Command::Report { input, out } => cmd_report(&input, out.as_deref()),
    }
}

fn cmd_build(n: u64, dmax: u64, json: bool) -> Result<i32> {
    if n < 2 {
        return Err(Error::InvalidInput {
            context: format!("build requires n >= 2, got {n}"),
        });
    }
    if dmax < 2 {
        return Err(Error::InvalidInput {
            context: format!("--dmax must be at least 2, got {dmax}"),
        });
    }
    let f = build_f(n);
    let degree = f.degree().expect("F_n is nonzero");
    let support: Vec<usize> = (0..=degree).filter(|&i| !f.coeff(i).is_zero()).collect();
    let factors = verified_cyclotomic_factors(n, dmax);
    if json {
        emitln!(
            "{}",
            json!({
                "n": n,
                "degree": degree,
                "support": support,
                "cyclotomic_orders": factors,
                "dmax": dmax,
            })
        );
    } else {
        emitln!("F_{n}: degree {degree}, {} terms", support.len());
        let phis: Vec<String> = factors.iter().map(|d| format!("Phi_{d}")).collect();
        if phis.is_empty() {
            emitln!("cyclotomic factors with order <= {dmax}: none");
        } else {
            emitln!(
                "cyclotomic factors with order <= {dmax}: {}",
                phis.join(", ")
            );
        }
    }
    Ok(0)
}

fn coeff_strings(f: &IntPoly) -> Vec<String> {
    f.coeffs().iter().map(|c| c.to_string()).collect()
}

fn cmd_reduce(n: u64, json: bool) -> Result<i32> {
    let dec = decompose(n)?;
    let prediction = value_predictions(dec.p, dec.q)?;
    let deg_f = dec.f_n.degree().expect("f_n is nonzero") as u64;
    let f1 = dec.f_n.evaluate_int(&BigInt::from(1));
    let fm1 = dec.f_n.evaluate_int(&BigInt::from(-1));
    let values_match =
        prediction.deg_f == deg_f && prediction.f_at_1 == f1 && prediction.f_at_minus1 == fm1;
    if !values_match {
        // The value formulas are theorems; disagreement is a bug.
        return Err(Error::InvalidInput {
            context: format!("value predictions disagree with decomposition at n = {n}"),
        });
    }
    if json {
        emitln!(
            "{}",
            json!({
                "n": n,
                "p": dec.p,
                "q": dec.q,
                "s_n": dec.s_n.iter().copied().collect::<Vec<u64>>(),
                "f": coeff_strings(&dec.f_n),
                "g": coeff_strings(&dec.g_n),
                "deg_f": deg_f,
                "f_at_1": f1.to_string(),
                "f_at_minus1": fm1.to_string(),
                "disc_class": prediction.disc_class,
                "values_match": values_match,
            })
        );
    } else {
        emitln!("n = {n} = {} * {}", dec.p, dec.q);
        let s: Vec<String> = dec.s_n.iter().map(u64::to_string).collect();
        emitln!("S_n = {{{}}}", s.join(", "));
        emitln!("f_{n} (degree {deg_f}): {}", dec.f_n);
        emitln!("g_{n}: {}", dec.g_n);
        emitln!(
            "f({{1, -1}}) = {{{f1}, {fm1}}}, disc class {}",
            prediction.disc_class
        );
        emitln!("value predictions: ok");
    }
    Ok(0)
}

fn outcome_text(name: &str, outcome: &SearchOutcome, m: u64) -> String {
    match outcome {
        SearchOutcome::Found { certificate } => {
            let mut lines = match certificate.kind {
                CertKind::GIrreducible => {
                    format!("{name}: irreducible (witness prime {})", certificate.witnesses[0].prime)
                }
                CertKind::FIrreducibleFastPath => {
                    let path = certificate
                        .aux
                        .as_ref()
                        .and_then(|a| a.fast_path)
                        .unwrap_or(0);
                    format!("{name}: irreducible (value fast path {path})")
                }
                CertKind::FIrreducibleOddCount => {
                    let d = certificate
                        .aux
                        .as_ref()
                        .and_then(|a| a.odd_degree)
                        .unwrap_or(0);
                    format!("{name}: irreducible (odd factor count in degree {d})")
                }
                CertKind::GaloisGSymmetric => {
                    let triple = certificate
                        .symmetric_triple()
                        .map(|(a, b, c)| format!("({a}, {b}, {c})"))
                        .unwrap_or_else(|| "?".into());
                    format!("{name}: Galois group S_{m}, triple (q1, q2, q3) = {triple}")
                }
                CertKind::GaloisFFull => format!(
                    "{name}: Galois group (Z/2)^{m} ⋊ S_{m} (full criterion, disc non-square)"
                ),
                CertKind::GaloisFHalf => format!(
                    "{name}: Galois group of index 2 in (Z/2)^{m} ⋊ S_{m} (half criterion, disc square)"
                ),
            };
            for w in &certificate.witnesses {
                lines.push_str(&format!("\n  mod {}: shape {:?}", w.prime, w.shape));
            }
            lines
        }
        SearchOutcome::NotFound {
            prime_bound,
            diagnostics,
        } => format!("{name}: no certificate up to prime bound {prime_bound} ({diagnostics})"),
    }
}

fn cmd_certify(n: u64, what: What, prime_bound: u64, json: bool) -> Result<i32> {
    let dec = decompose(n)?;
    let cfg = SearchConfig::with_bound(prime_bound)?;
    let m = dec.g_n.degree().unwrap_or(0) as u64;
    let (g_outcome, f_outcome) = match what {
        What::Irred => {
            let g = certify_g_irreducible(&dec.g_n, &cfg)?;
            let f = match g.certificate() {
                Some(cert) => Some(certify_f_irreducible(&dec, Some(cert), &cfg)?),
                None => None,
            };
            (g, f)
        }
        What::Galois => {
            let g = certify_galois_g(&dec.g_n, &cfg)?;
            let f = match g.certificate() {
                Some(cert) => Some(certify_galois_f(&dec, Some(cert), &cfg)?),
                None => None,
            };
            (g, f)
        }
    };
    if json {
        emitln!(
            "{}",
            json!({
                "n": n,
                "what": match what { What::Irred => "irred", What::Galois => "galois" },
                "g": g_outcome,
                "f": f_outcome,
            })
        );
    } else {
        emitln!("{}", outcome_text(&format!("g_{n}"), &g_outcome, m));
        match &f_outcome {
            Some(out) => emitln!("{}", outcome_text(&format!("f_{n}"), out, m)),
            None => emitln!("f_{n}: skipped (no certificate for g_{n})"),
        }
    }
    Ok(0)
}

fn cmd_scan(
    range: (u64, u64),
    out: &std::path::Path,
    prime_bound: u64,
    dmax: u64,
    threads: Option<usize>,
) -> Result<i32> {
    let cfg = ScanConfig { prime_bound, dmax };
    let work = || run_scan(range.0, range.1, out, &cfg);
    let summary = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidInput {
                context: format!("thread pool: {e}"),
            })?
            .install(work),
        None => work(),
    }?;
    emitln!(
        "{}: {} records ({} computed, {} reused)",
        out.display(),
        summary.total,
        summary.computed,
        summary.reused
    );
    if summary.failures.is_empty() {
        Ok(0)
    } else {
        for (n, message) in &summary.failures {
            eprintln!("n = {n}: {message}");
        }
        eprintln!("{} record(s) failed", summary.failures.len());
        Ok(2)
    }
}

fn cmd_report(input: &std::path::Path, out: Option<&std::path::Path>) -> Result<i32> {
    let (records, warnings) = load_records_lenient(input)?;
    for warning in &warnings {
        eprintln!("warning: {}: {warning}", input.display());
    }
    let report = build_report(&records);
    emit(&report.to_string());
    if let Some(path) = out {
        std::fs::write(path, report_csv(&records))?;
        eprintln!("csv written to {}", path.display());
    }
    Ok(if warnings.is_empty() { 0 } else { 1 })
}
