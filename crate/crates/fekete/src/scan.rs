//! Batch computation over ranges of semiprimes, with JSON-lines
//! persistence and aggregate reports.
//!
//! A scan walks every odd semiprime `n = pq` in a range, runs the full
//! pipeline (decomposition, value statistics, certificates, separability,
//! unit-circle counts, equidistribution checks) and appends one
//! [`ScanRecord`] per `n` to a JSON-lines file. Scans are resumable —
//! records already present are kept verbatim — and deterministic: two runs
//! over the same range produce byte-identical files. Reports aggregate a
//! record file into the tables the dataset is usually read through
//! (middle coefficients and values of `f_3p` by `p mod 24`, certificate
//! success rates, anomaly lists).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certify::{
    certify_f_irreducible, certify_g_irreducible, certify_galois_f, certify_galois_g,
    verify_certificate, Certificate, SearchConfig,
};
use crate::cyclotomic::{cyclotomic_multiplicity, equidistribution_check};
use crate::error::{Error, Result};
use crate::fekete::{
    build_f, coefficient_stats, decompose, factor_semiprime, separability_analysis,
    unit_circle_root_count, value_predictions,
};
use crate::intpoly::is_perfect_square;

/// Knobs for a scan run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    /// Bound for all certificate witness searches.
    pub prime_bound: u64,
    /// Equidistribution vs divisibility is checked for `2 ≤ d ≤ dmax`, `d ∤ n`.
    pub dmax: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            prime_bound: 5000,
            dmax: 100,
        }
    }
}

/// Compact separability facts: whether `F_pq` is separable mod `p`, and
/// the (degree, multiplicity) of each repeated irreducible factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparabilitySummary {
    pub separable: bool,
    pub repeated: Vec<(u64, u64)>,
}

/// One row of the dataset: everything computed for a single `n`.
///
/// Field order is fixed (serialization is part of the file format) and
/// big integers are decimal strings so any JSON consumer can read the
/// file without 53-bit surprises.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    /// Schema version, always 1.
    pub v: u32,
    pub n: u64,
    pub p: u64,
    pub q: u64,
    /// The set S_n: orders d > 1 of the predictable cyclotomic factors Φ_d of F_n.
    pub s_n: Vec<u64>,
    pub deg_f: u64,
    pub f_coeff_max: String,
    pub middle_coeff: String,
    pub f_at_1: String,
    pub f_at_minus1: String,
    /// Predicted square class of disc(f_n): ±1, or ±q when p ≡ 1 mod q.
    pub disc_class: i64,
    /// Whether disc(f_n) is an exact square (computed, not predicted).
    pub disc_square: bool,
    pub cert_g_irreducible: Option<Certificate>,
    pub cert_f_irreducible: Option<Certificate>,
    pub cert_galois_g: Option<Certificate>,
    pub cert_galois_f: Option<Certificate>,
    pub separability: SeparabilitySummary,
    pub unit_circle_count: u64,
    pub unit_circle_bound: u64,
    /// Orders d ≤ dmax, d ∤ n, where Φ_d | F_n disagrees with the
    /// equidistribution test. Expected empty.
    pub equidistribution_anomalies: Vec<u64>,
}

impl ScanRecord {
    /// One canonical JSON line (no trailing newline).
    pub fn to_json_line(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json_line(line: &str) -> Result<ScanRecord> {
        Ok(serde_json::from_str(line)?)
    }

    /// Recomputes the decomposition and re-verifies every certificate the
    /// record carries.
    pub fn certificates_verify(&self) -> Result<bool> {
        let dec = decompose(self.n)?;
        for cert in [&self.cert_g_irreducible, &self.cert_galois_g]
            .into_iter()
            .flatten()
        {
            if !verify_certificate(cert, None, Some(&dec.g_n)) {
                return Ok(false);
            }
        }
        for cert in [&self.cert_f_irreducible, &self.cert_galois_f]
            .into_iter()
            .flatten()
        {
            if !verify_certificate(cert, Some(&dec.f_n), Some(&dec.g_n)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Odd semiprimes `n = pq` (3 ≤ q < p) in `start..end`.
pub fn semiprimes_in(start: u64, end: u64) -> Vec<u64> {
    (start..end)
        .filter(|&n| factor_semiprime(n).is_ok())
        .collect()
}

/// Computes the full record for one semiprime.
pub fn scan_record(n: u64, cfg: &ScanConfig) -> Result<ScanRecord> {
    let dec = decompose(n)?;
    let search = SearchConfig::with_bound(cfg.prime_bound)?;
    let deg_f = dec.f_n.degree().expect("f_n is nonzero") as u64;
    let (coeff_max, middle) = coefficient_stats(&dec.f_n)?;
    let f_at_1 = dec.f_n.evaluate_int(&BigInt::from(1));
    let f_at_minus1 = dec.f_n.evaluate_int(&BigInt::from(-1));
    let prediction = value_predictions(dec.p, dec.q)?;
    let disc_square = is_perfect_square(&dec.f_n.discriminant()?);

    let cert_g_irreducible = certify_g_irreducible(&dec.g_n, &search)?
        .certificate()
        .cloned();
    let cert_f_irreducible = match &cert_g_irreducible {
        Some(c) => certify_f_irreducible(&dec, Some(c), &search)?
            .certificate()
            .cloned(),
        None => None,
    };
    let cert_galois_g = certify_galois_g(&dec.g_n, &search)?.certificate().cloned();
    let cert_galois_f = match &cert_galois_g {
        Some(c) => certify_galois_f(&dec, Some(c), &search)?
            .certificate()
            .cloned(),
        None => None,
    };

    let sep = separability_analysis(dec.p, dec.q)?;
    let separability = SeparabilitySummary {
        separable: sep.separable,
        repeated: sep
            .repeated_factors
            .iter()
            .map(|(factor, mult)| (factor.degree().unwrap_or(0) as u64, *mult as u64))
            .collect(),
    };

    let (unit_circle_count, unit_circle_bound) = unit_circle_root_count(n)?;

    let full_f = build_f(n);
    let mut equidistribution_anomalies = Vec::new();
    for d in 2..=cfg.dmax {
        if n.is_multiple_of(d) {
            continue;
        }
        let divides = cyclotomic_multiplicity(&full_f, d) > 0;
        if divides != equidistribution_check(n, d)? {
            equidistribution_anomalies.push(d);
        }
    }

    Ok(ScanRecord {
        v: 1,
        n,
        p: dec.p,
        q: dec.q,
        s_n: dec.s_n.iter().copied().collect(),
        deg_f,
        f_coeff_max: coeff_max.to_string(),
        middle_coeff: middle.to_string(),
        f_at_1: f_at_1.to_string(),
        f_at_minus1: f_at_minus1.to_string(),
        disc_class: prediction.disc_class,
        disc_square,
        cert_g_irreducible,
        cert_f_irreducible,
        cert_galois_g,
        cert_galois_f,
        separability,
        unit_circle_count,
        unit_circle_bound,
        equidistribution_anomalies,
    })
}

/// What a scan run did.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanSummary {
    /// Records in the output file after the run.
    pub total: usize,
    /// Records computed by this run.
    pub computed: usize,
    /// Records kept verbatim from a previous run.
    pub reused: usize,
    /// Per-n failures, as (n, message); these n are absent from the file.
    pub failures: Vec<(u64, String)>,
}

/// Scans `start..end`, writing one JSON line per semiprime to `out_path`.
///
/// Resumable: lines already in the file are preserved byte-for-byte and
/// their `n` values are skipped. Missing records are computed in parallel
/// and the whole file is rewritten sorted by `n`, so two runs over the
/// same range produce identical bytes.
pub fn run_scan(start: u64, end: u64, out_path: &Path, cfg: &ScanConfig) -> Result<ScanSummary> {
    if start >= end {
        return Err(Error::InvalidInput {
            context: format!("empty scan range {start}..{end}"),
        });
    }
    let mut lines: BTreeMap<u64, String> = BTreeMap::new();
    if out_path.exists() {
        let text = fs::read_to_string(out_path)?;
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let record = ScanRecord::from_json_line(line).map_err(|e| Error::InvalidInput {
                context: format!("{}:{}: {e}", out_path.display(), idx + 1),
            })?;
            lines.insert(record.n, line.to_string());
        }
    }
    let reused = lines.len();
    let targets: Vec<u64> = semiprimes_in(start, end)
        .into_iter()
        .filter(|n| !lines.contains_key(n))
        .collect();
    let results: Vec<(u64, Result<ScanRecord>)> = targets
        .par_iter()
        .map(|&n| (n, scan_record(n, cfg)))
        .collect();
    let mut computed = 0;
    let mut failures = Vec::new();
    for (n, result) in results {
        match result {
            Ok(record) => {
                lines.insert(n, record.to_json_line()?);
                computed += 1;
            }
            Err(e) => failures.push((n, e.to_string())),
        }
    }
    if let Some(parent) = out_path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let mut body = String::new();
    for line in lines.values() {
        body.push_str(line);
        body.push('\n');
    }
    fs::write(out_path, body)?;
    Ok(ScanSummary {
        total: lines.len(),
        computed,
        reused,
        failures,
    })
}

/// Strict load: any malformed line is an error.
pub fn load_records(path: &Path) -> Result<Vec<ScanRecord>> {
    let text = fs::read_to_string(path)?;
    let mut records = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        records.push(
            ScanRecord::from_json_line(line).map_err(|e| Error::InvalidInput {
                context: format!("{}:{}: {e}", path.display(), idx + 1),
            })?,
        );
    }
    Ok(records)
}

/// Lenient load for reporting: malformed lines are skipped and returned
/// as warnings instead of aborting the whole report.
pub fn load_records_lenient(path: &Path) -> Result<(Vec<ScanRecord>, Vec<String>)> {
    let text = fs::read_to_string(path)?;
    let mut records = Vec::new();
    let mut warnings = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match ScanRecord::from_json_line(line) {
            Ok(record) => records.push(record),
            Err(e) => warnings.push(format!("line {}: {e}", idx + 1)),
        }
    }
    Ok((records, warnings))
}

/// Aggregated view of a record file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub records: usize,
    /// For n = 3p records: p mod 24 → observed middle coefficients.
    pub q3_middle: BTreeMap<u64, BTreeSet<String>>,
    /// For n = 3p records: p mod 24 → observed f(1) values.
    pub q3_f_at_1: BTreeMap<u64, BTreeSet<String>>,
    /// For n = 3p records: p mod 24 → observed f(−1) values.
    pub q3_f_at_minus1: BTreeMap<u64, BTreeSet<String>>,
    /// (certificate name, number of records carrying one).
    pub cert_counts: Vec<(String, usize)>,
    /// n values where F_pq mod p is not separable.
    pub inseparable: Vec<u64>,
    /// All (n, d) equidistribution anomalies. Expected empty.
    pub anomalies: Vec<(u64, u64)>,
}

/// Builds the aggregate tables from loaded records.
pub fn build_report(records: &[ScanRecord]) -> Report {
    let mut report = Report {
        records: records.len(),
        ..Default::default()
    };
    let mut counts = [0usize; 4];
    for record in records {
        if record.q == 3 {
            let class = record.p % 24;
            report
                .q3_middle
                .entry(class)
                .or_default()
                .insert(record.middle_coeff.clone());
            report
                .q3_f_at_1
                .entry(class)
                .or_default()
                .insert(record.f_at_1.clone());
            report
                .q3_f_at_minus1
                .entry(class)
                .or_default()
                .insert(record.f_at_minus1.clone());
        }
        for (i, cert) in [
            &record.cert_g_irreducible,
            &record.cert_f_irreducible,
            &record.cert_galois_g,
            &record.cert_galois_f,
        ]
        .into_iter()
        .enumerate()
        {
            if cert.is_some() {
                counts[i] += 1;
            }
        }
        if !record.separability.separable {
            report.inseparable.push(record.n);
        }
        for &d in &record.equidistribution_anomalies {
            report.anomalies.push((record.n, d));
        }
    }
    report.cert_counts = ["g_irreducible", "f_irreducible", "galois_g", "galois_f"]
        .into_iter()
        .map(String::from)
        .zip(counts)
        .collect();
    report
}

impl fmt::Display for Report {
    /// Markdown tables, suitable for a terminal or a README.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "# Scan report")?;
        writeln!(out)?;
        writeln!(out, "Records: {}", self.records)?;
        writeln!(out)?;
        writeln!(out, "## f_3p statistics by p mod 24")?;
        writeln!(out)?;
        if self.q3_middle.is_empty() {
            writeln!(out, "No n = 3p records.")?;
        } else {
            writeln!(out, "| p mod 24 | middle coefficient | f(1) | f(-1) |")?;
            writeln!(out, "|---|---|---|---|")?;
            for (&class, middles) in &self.q3_middle {
                let join = |set: Option<&BTreeSet<String>>| {
                    set.map(|s| s.iter().cloned().collect::<Vec<_>>().join(", "))
                        .unwrap_or_default()
                };
                writeln!(
                    out,
                    "| {class} | {} | {} | {} |",
                    join(Some(middles)),
                    join(self.q3_f_at_1.get(&class)),
                    join(self.q3_f_at_minus1.get(&class)),
                )?;
            }
        }
        writeln!(out)?;
        writeln!(out, "## Certificates")?;
        writeln!(out)?;
        writeln!(out, "| certificate | found | records |")?;
        writeln!(out, "|---|---|---|")?;
        for (name, count) in &self.cert_counts {
            writeln!(out, "| {name} | {count} | {} |", self.records)?;
        }
        writeln!(out)?;
        writeln!(out, "## Separability")?;
        writeln!(out)?;
        if self.inseparable.is_empty() {
            writeln!(out, "All scanned F_pq are separable mod p.")?;
        } else {
            let list: Vec<String> = self.inseparable.iter().map(u64::to_string).collect();
            writeln!(out, "Inseparable at n = {}.", list.join(", "))?;
        }
        writeln!(out)?;
        writeln!(out, "## Equidistribution anomalies")?;
        writeln!(out)?;
        if self.anomalies.is_empty() {
            writeln!(out, "None.")?;
        } else {
            writeln!(out, "| n | d |")?;
            writeln!(out, "|---|---|")?;
            for (n, d) in &self.anomalies {
                writeln!(out, "| {n} | {d} |")?;
            }
        }
        Ok(())
    }
}

/// Flat CSV export of the scalar fields, one row per record.
pub fn report_csv(records: &[ScanRecord]) -> String {
    let mut csv = String::from(
        "n,p,q,deg_f,f_coeff_max,middle_coeff,f_at_1,f_at_minus1,disc_class,disc_square,\
         g_irreducible,f_irreducible,galois_g,galois_f,separable,unit_circle_count,\
         unit_circle_bound,anomaly_count\n",
    );
    let kind = |cert: &Option<Certificate>| {
        cert.as_ref()
            .map(|c| format!("{:?}", c.kind))
            .unwrap_or_default()
    };
    for r in records {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.p,
            r.q,
            r.deg_f,
            r.f_coeff_max,
            r.middle_coeff,
            r.f_at_1,
            r.f_at_minus1,
            r.disc_class,
            r.disc_square,
            kind(&r.cert_g_irreducible),
            kind(&r.cert_f_irreducible),
            kind(&r.cert_galois_g),
            kind(&r.cert_galois_f),
            r.separability.separable,
            r.unit_circle_count,
            r.unit_circle_bound,
            r.equidistribution_anomalies.len(),
        ));
    }
    csv
}
