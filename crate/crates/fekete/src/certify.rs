//! Modular certificates for irreducibility and Galois groups.
//!
//! Everything here rests on factorization shapes over `F_q`: a prime `q₂`
//! with `g_n` irreducible certifies irreducibility of `g_n`; a triple
//! `(q₁, q₂, q₃)` with shapes (irreducible), (linear × degree m−1), and
//! (quadratic × odd degrees) certifies Galois group `S_m` for `g_n`; and a
//! single further prime with the right shape, combined with the square
//! class of `disc(f_n)`, pins the Galois group of `f_n` to
//! `(Z/2)^m ⋊ S_m` or its index-two subgroup. Certificates carry their
//! witnesses and can always be re-verified from scratch; searches return
//! the smallest qualifying primes, so results are deterministic.

use std::cell::Cell;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fekete::FeketeDecomposition;
use crate::intpoly::{is_perfect_square, IntPoly};
use crate::modpoly::{primes_up_to, PrimeField, PrimePoly};

/// Knobs for the witness searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Primes up to and including this bound are tried, smallest first.
    pub prime_bound: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { prime_bound: 5000 }
    }
}

impl SearchConfig {
    pub fn with_bound(prime_bound: u64) -> Result<Self> {
        if prime_bound < 2 {
            return Err(Error::InvalidInput {
                context: format!("prime bound must be at least 2, got {prime_bound}"),
            });
        }
        Ok(SearchConfig { prime_bound })
    }
}

/// What a certificate claims.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertKind {
    /// `g_n` is irreducible (one prime with an irreducible reduction).
    GIrreducible,
    /// `f_n` is irreducible via a value/middle-coefficient criterion.
    FIrreducibleFastPath,
    /// `f_n` is irreducible via an odd factor count in some degree.
    FIrreducibleOddCount,
    /// Galois group of `g_n` is the full symmetric group S_m.
    GaloisGSymmetric,
    /// Galois group of `f_n` is `(Z/2)^m ⋊ S_m` (non-square discriminant).
    GaloisFFull,
    /// Galois group of `f_n` is `ker(Σ') ⋊ S_m` (square discriminant).
    GaloisFHalf,
}

/// One reduction witness: a prime and the factorization shape of the
/// target polynomial mod that prime, as (degree, multiplicity) pairs, one
/// entry per irreducible factor, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub prime: u64,
    pub shape: Vec<(u64, u64)>,
}

/// Optional side data recorded with a certificate. Big integers are kept
/// as decimal strings so the JSON stays float-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertAux {
    /// Which fast-path criterion fired (1 or 2), for FIrreducibleFastPath.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fast_path: Option<u8>,
    /// Whether disc(f_n) is a perfect square, for GaloisF* kinds.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub disc_square: Option<bool>,
    /// Middle coefficient of f_n, decimal, for fast path 2.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub middle_coeff: Option<String>,
    /// A degree occurring an odd number of times, for FIrreducibleOddCount.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub odd_degree: Option<u64>,
}

/// A self-contained, re-verifiable claim about `f_n` or `g_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertKind,
    /// Witness primes in increasing order with their shapes.
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub aux: Option<CertAux>,
}

impl Certificate {
    /// Canonical JSON: stable field order, no floats.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(s)?)
    }

    /// For a GaloisGSymmetric certificate, the `(q₁, q₂, q₃)` triple in
    /// role order (irreducible; linear × m−1; quadratic × odd), recovered
    /// from the stored shapes. None when no assignment fits.
    pub fn symmetric_triple(&self) -> Option<(u64, u64, u64)> {
        if self.kind != CertKind::GaloisGSymmetric || self.witnesses.len() != 3 {
            return None;
        }
        let m: u64 = self.witnesses[0]
            .shape
            .iter()
            .map(|(d, mult)| d * mult)
            .sum();
        for [i, j, k] in PERMUTATIONS_3 {
            let (wi, wj, wk) = (&self.witnesses[i], &self.witnesses[j], &self.witnesses[k]);
            if is_irreducible_shape(&wi.shape, m)
                && is_linear_times_shape(&wj.shape, m)
                && is_quad_odds_shape(&wk.shape, m)
            {
                return Some((wi.prime, wj.prime, wk.prime));
            }
        }
        None
    }
}

const PERMUTATIONS_3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Result of a certificate search: the certificate, or an honest miss with
/// the exhausted bound and a diagnostic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result")]
pub enum SearchOutcome {
    Found {
        certificate: Certificate,
    },
    NotFound {
        prime_bound: u64,
        diagnostics: String,
    },
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            SearchOutcome::Found { certificate } => Some(certificate),
            SearchOutcome::NotFound { .. } => None,
        }
    }
}

fn found(certificate: Certificate) -> SearchOutcome {
    SearchOutcome::Found { certificate }
}

fn not_found(cfg: &SearchConfig, diagnostics: String) -> SearchOutcome {
    SearchOutcome::NotFound {
        prime_bound: cfg.prime_bound,
        diagnostics,
    }
}

/// Reduction mod q keeping the degree, or None when the leading
/// coefficient vanishes (such primes are skipped in every search).
fn reduce_full_degree(f: &IntPoly, q: u64) -> Result<Option<PrimePoly>> {
    let field = PrimeField::new(q)?;
    let r = PrimePoly::from_intpoly(field, f);
    Ok((r.degree() == f.degree()).then_some(r))
}

/// Expands distinct-degree blocks into the per-factor witness shape
/// (multiplicity 1 everywhere — blocks come from squarefree reductions).
fn witness_from_blocks(prime: u64, blocks: &[(usize, usize)]) -> Witness {
    let mut shape = Vec::new();
    for &(d, count) in blocks {
        for _ in 0..count {
            shape.push((d as u64, 1u64));
        }
    }
    shape.sort_unstable();
    Witness { prime, shape }
}

fn sorted_shape(shape: &[(u64, u64)]) -> Vec<(u64, u64)> {
    let mut s = shape.to_vec();
    s.sort_unstable();
    s
}

fn shape_total(shape: &[(u64, u64)]) -> u64 {
    shape.iter().map(|(d, m)| d * m).sum()
}

/// Shape of a single irreducible factor of degree m.
fn is_irreducible_shape(shape: &[(u64, u64)], m: u64) -> bool {
    m >= 1 && sorted_shape(shape) == vec![(m, 1)]
}

/// Linear factor times an irreducible factor of degree m−1.
fn is_linear_times_shape(shape: &[(u64, u64)], m: u64) -> bool {
    m >= 3 && sorted_shape(shape) == vec![(1, 1), (m - 1, 1)]
}

/// Exactly one quadratic factor, everything else of odd degree, all
/// multiplicity 1; total degree m.
fn is_quad_odds_shape(shape: &[(u64, u64)], m: u64) -> bool {
    shape_total(shape) == m
        && shape.iter().filter(|&&(d, _)| d == 2).count() == 1
        && shape
            .iter()
            .all(|&(d, mult)| mult == 1 && (d == 2 || d % 2 == 1))
}

/// One quadratic, one quartic, everything else odd, all multiplicity 1;
/// total degree m.
fn is_quad_quartic_odds_shape(shape: &[(u64, u64)], m: u64) -> bool {
    shape_total(shape) == m
        && shape.iter().filter(|&&(d, _)| d == 2).count() == 1
        && shape.iter().filter(|&&(d, _)| d == 4).count() == 1
        && shape
            .iter()
            .all(|&(d, mult)| mult == 1 && (d == 2 || d == 4 || d % 2 == 1))
}

/// Smallest degree whose factor count (with multiplicity) is odd.
fn smallest_odd_count_degree(shape: &[(usize, usize)]) -> Option<usize> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &(d, mult) in shape {
        *counts.entry(d).or_insert(0) += mult;
    }
    counts
        .into_iter()
        .find_map(|(d, c)| (c % 2 == 1).then_some(d))
}

/// Smallest prime `q₂ ≤ bound` with `g` irreducible mod `q₂`.
pub fn certify_g_irreducible(g: &IntPoly, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let m = g.degree().unwrap_or(0);
    assert!(m >= 1, "certify_g_irreducible requires nonconstant g");
    for q in primes_up_to(cfg.prime_bound) {
        let Some(r) = reduce_full_degree(g, q)? else {
            continue;
        };
        let monic = r.make_monic();
        if !monic.is_squarefree()? {
            continue;
        }
        if monic.ddf_blocks_with(|d, c| d == m && c == 1)?.is_some() {
            return Ok(found(Certificate {
                kind: CertKind::GIrreducible,
                witnesses: vec![Witness {
                    prime: q,
                    shape: vec![(m as u64, 1)],
                }],
                aux: None,
            }));
        }
    }
    Ok(not_found(
        cfg,
        format!(
            "no prime <= {} leaves the degree-{m} polynomial irreducible",
            cfg.prime_bound
        ),
    ))
}

/// Irreducibility of `f_n`, given `g_n` already certified irreducible:
/// first the two value fast paths, then the odd-factor-count search.
pub fn certify_f_irreducible(
    dec: &FeketeDecomposition,
    g_cert: Option<&Certificate>,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    let g_cert = g_cert.ok_or_else(|| Error::PrerequisiteMissing {
        context: "f-irreducibility requires a GIrreducible certificate for g_n".into(),
    })?;
    if g_cert.kind != CertKind::GIrreducible || !verify_certificate(g_cert, None, Some(&dec.g_n)) {
        return Err(Error::PrerequisiteMissing {
            context: "supplied certificate does not verify g_n irreducible".into(),
        });
    }
    let f = &dec.f_n;
    let deg = f.degree().expect("f_n is nonzero");
    let f1 = f.evaluate_int(&BigInt::from(1));
    let fm1 = f.evaluate_int(&BigInt::from(-1));
    let middle = f.coeff(deg / 2);
    let g_witness = g_cert.witnesses[0].clone();
    // Fast path 1: degree divisible by 4 and a sign change between ±1.
    if deg.is_multiple_of(4) && (&f1 * &fm1) < BigInt::zero() {
        return Ok(found(Certificate {
            kind: CertKind::FIrreducibleFastPath,
            witnesses: vec![g_witness],
            aux: Some(CertAux {
                fast_path: Some(1),
                ..Default::default()
            }),
        }));
    }
    // Fast path 2: nonzero values at ±1 and a small middle coefficient.
    if !f1.is_zero() && !fm1.is_zero() && middle.abs() <= BigInt::from(2) {
        return Ok(found(Certificate {
            kind: CertKind::FIrreducibleFastPath,
            witnesses: vec![g_witness],
            aux: Some(CertAux {
                fast_path: Some(2),
                middle_coeff: Some(middle.to_string()),
                ..Default::default()
            }),
        }));
    }
    // Odd-count search: were f = a·h·h_rev, factor degrees mod every prime
    // would pair up evenly, so an odd count in any degree rules it out.
    for q in primes_up_to(cfg.prime_bound) {
        let Some(r) = reduce_full_degree(f, q)? else {
            continue;
        };
        let shape = r.factor_shape()?;
        if let Some(odd_deg) = smallest_odd_count_degree(&shape) {
            let f_witness = Witness {
                prime: q,
                shape: shape.iter().map(|&(d, m)| (d as u64, m as u64)).collect(),
            };
            let mut witnesses = vec![g_witness, f_witness];
            witnesses.sort_by_key(|w| w.prime);
            return Ok(found(Certificate {
                kind: CertKind::FIrreducibleOddCount,
                witnesses,
                aux: Some(CertAux {
                    odd_degree: Some(odd_deg as u64),
                    ..Default::default()
                }),
            }));
        }
    }
    Ok(not_found(
        cfg,
        format!(
            "neither fast path applies and no prime <= {} shows an odd factor count",
            cfg.prime_bound
        ),
    ))
}

/// Legendre symbol (a | q) for an odd prime q: 0, 1, or -1.
fn legendre_symbol(a: &BigInt, q: u64) -> i32 {
    let qq = BigInt::from(q);
    let r = ((a % &qq) + &qq) % &qq;
    let r = r.to_u64().expect("residue fits in u64");
    if r == 0 {
        return 0;
    }
    let field = PrimeField::new(q).expect("q is prime");
    if field.pow(r, (q - 1) / 2) == 1 {
        1
    } else {
        -1
    }
}

/// Blocks of a monic squarefree polynomial when its shape is (one
/// irreducible quadratic) × (odd degrees), else None. Aborts the Frobenius
/// walk right after the degree-2 pass when the quadratic is missing.
fn quad_odds_blocks(monic: &PrimePoly) -> Result<Option<Vec<(usize, usize)>>> {
    let has_quad = Cell::new(false);
    let blocks = monic.ddf_blocks_guarded(
        |d, c| {
            if d == 2 {
                if c != 1 {
                    return false;
                }
                has_quad.set(true);
            } else if d % 2 == 0 {
                return false;
            }
            true
        },
        |d| d < 2 || has_quad.get(),
    )?;
    // The quadratic can also arrive as the final remaining factor, which
    // the milestone never sees; re-check on the completed list.
    Ok(blocks.filter(|b| b.contains(&(2, 1))))
}

/// Blocks for the shape (one quadratic) × (one quartic) × (odd degrees),
/// else None; gives up as soon as either required even block is overdue.
fn quad_quartic_odds_blocks(monic: &PrimePoly) -> Result<Option<Vec<(usize, usize)>>> {
    let has_quad = Cell::new(false);
    let has_quartic = Cell::new(false);
    let blocks = monic.ddf_blocks_guarded(
        |d, c| match d {
            2 | 4 => {
                if c != 1 {
                    return false;
                }
                if d == 2 {
                    has_quad.set(true);
                } else {
                    has_quartic.set(true);
                }
                true
            }
            d if d % 2 == 0 => false,
            _ => true,
        },
        |d| (d < 2 || has_quad.get()) && (d < 4 || has_quartic.get()),
    )?;
    Ok(blocks.filter(|b| b.contains(&(2, 1)) && b.contains(&(4, 1))))
}

/// Searches the `(q₁, q₂, q₃)` triple certifying Galois group S_m for `g`:
/// each role gets the smallest prime whose (squarefree, full-degree)
/// reduction has the required shape.
pub fn certify_galois_g(g: &IntPoly, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let m = g.degree().unwrap_or(0);
    assert!(m >= 1, "certify_galois_g requires nonconstant g");
    if m < 3 {
        return Ok(not_found(
            cfg,
            format!("the triple criterion needs degree >= 3, got {m}"),
        ));
    }
    let mut w_irr: Option<Witness> = None;
    let mut w_lin: Option<Witness> = None;
    let mut w_quad: Option<Witness> = None;
    for q in primes_up_to(cfg.prime_bound) {
        if w_irr.is_some() && w_lin.is_some() && w_quad.is_some() {
            break;
        }
        let Some(r) = reduce_full_degree(g, q)? else {
            continue;
        };
        let monic = r.make_monic();
        if !monic.is_squarefree()? {
            continue;
        }
        if w_irr.is_none() {
            if let Some(blocks) = monic.ddf_blocks_with(|d, c| d == m && c == 1)? {
                w_irr = Some(witness_from_blocks(q, &blocks));
            }
        }
        if w_lin.is_none() {
            // A single root must show up in the very first pass; bail at
            // once when it does not.
            let has_linear = Cell::new(false);
            if let Some(blocks) = monic.ddf_blocks_guarded(
                |d, c| {
                    if d == 1 && c == 1 {
                        has_linear.set(true);
                    }
                    (d == 1 || d == m - 1) && c == 1
                },
                |d| d < 1 || has_linear.get(),
            )? {
                debug_assert_eq!(blocks, vec![(1, 1), (m - 1, 1)]);
                w_lin = Some(witness_from_blocks(q, &blocks));
            }
        }
        if w_quad.is_none() {
            if let Some(blocks) = quad_odds_blocks(&monic)? {
                w_quad = Some(witness_from_blocks(q, &blocks));
            }
        }
    }
    match (w_irr, w_lin, w_quad) {
        (Some(a), Some(b), Some(c)) => {
            let mut witnesses = vec![a, b, c];
            witnesses.sort_by_key(|w| w.prime);
            Ok(found(Certificate {
                kind: CertKind::GaloisGSymmetric,
                witnesses,
                aux: None,
            }))
        }
        (a, b, c) => {
            let mut missing = Vec::new();
            if a.is_none() {
                missing.push("irreducible (q1)");
            }
            if b.is_none() {
                missing.push("linear x degree m-1 (q2)");
            }
            if c.is_none() {
                missing.push("quadratic x odd degrees (q3)");
            }
            Ok(not_found(
                cfg,
                format!(
                    "no prime <= {} for roles: {}",
                    cfg.prime_bound,
                    missing.join(", ")
                ),
            ))
        }
    }
}

/// Which Galois-group criterion to apply to `f_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaloisFMode {
    /// Pick Full or Half from the square class of disc(f_n).
    Auto,
    /// Demand the non-square-discriminant criterion.
    Full,
    /// Demand the square-discriminant criterion.
    Half,
}

/// Galois group of `f_n` given S_m certified for `g_n`: one more prime
/// whose shape is (quadratic × odds) for non-square disc(f_n), or
/// (quadratic × quartic × odds) for square disc(f_n).
pub fn certify_galois_f(
    dec: &FeketeDecomposition,
    g_cert: Option<&Certificate>,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    certify_galois_f_with_mode(dec, g_cert, cfg, GaloisFMode::Auto)
}

pub fn certify_galois_f_with_mode(
    dec: &FeketeDecomposition,
    g_cert: Option<&Certificate>,
    cfg: &SearchConfig,
    mode: GaloisFMode,
) -> Result<SearchOutcome> {
    let g_cert = g_cert.ok_or_else(|| Error::PrerequisiteMissing {
        context: "f Galois certification requires a GaloisGSymmetric certificate".into(),
    })?;
    if g_cert.kind != CertKind::GaloisGSymmetric
        || !verify_certificate(g_cert, None, Some(&dec.g_n))
    {
        return Err(Error::PrerequisiteMissing {
            context: "supplied certificate does not verify S_m for g_n".into(),
        });
    }
    let f = &dec.f_n;
    let deg_f = f.degree().expect("f_n is nonzero") as u64;
    let disc = f.discriminant()?;
    let disc_square = is_perfect_square(&disc);
    match (mode, disc_square) {
        (GaloisFMode::Full, true) => {
            return Err(Error::CriterionInapplicable {
                context: "full criterion needs a non-square discriminant".into(),
            })
        }
        (GaloisFMode::Half, false) => {
            return Err(Error::CriterionInapplicable {
                context: "half criterion needs a square discriminant".into(),
            })
        }
        _ => {}
    }
    let kind = if disc_square {
        CertKind::GaloisFHalf
    } else {
        CertKind::GaloisFFull
    };
    for q in primes_up_to(cfg.prime_bound) {
        // Both target shapes fix the sign of Frobenius on the roots of
        // f_n, and by Stickelberger that sign is the Legendre symbol of
        // disc(f_n) mod q. Primes with the wrong symbol can never match,
        // so skip them before doing any polynomial arithmetic. (q = 2 is
        // exempt: every unit of F_2 is a square.)
        if q > 2 {
            match legendre_symbol(&disc, q) {
                0 => continue,
                1 if !disc_square => continue,
                -1 if disc_square => continue,
                _ => {}
            }
        }
        let Some(r) = reduce_full_degree(f, q)? else {
            continue;
        };
        let monic = r.make_monic();
        if !monic.is_squarefree()? {
            continue;
        }
        let blocks = if disc_square {
            quad_quartic_odds_blocks(&monic)?
        } else {
            quad_odds_blocks(&monic)?
        };
        if let Some(blocks) = blocks {
            let f_witness = witness_from_blocks(q, &blocks);
            debug_assert_eq!(shape_total(&f_witness.shape), deg_f);
            let mut witnesses = g_cert.witnesses.clone();
            witnesses.push(f_witness);
            witnesses.sort_by_key(|w| w.prime);
            return Ok(found(Certificate {
                kind,
                witnesses,
                aux: Some(CertAux {
                    disc_square: Some(disc_square),
                    ..Default::default()
                }),
            }));
        }
    }
    Ok(not_found(
        cfg,
        format!(
            "no prime <= {} produced the {} shape for f_n",
            cfg.prime_bound,
            if disc_square {
                "quadratic x quartic x odds"
            } else {
                "quadratic x odds"
            }
        ),
    ))
}

/// Re-derives every witness of `cert` from scratch against the supplied
/// context polynomials and re-checks all side conditions. Shapes are
/// compared as multisets. Never panics; anything off means `false`.
pub fn verify_certificate(cert: &Certificate, f: Option<&IntPoly>, g: Option<&IntPoly>) -> bool {
    verify_inner(cert, f, g).unwrap_or(false)
}

fn verify_inner(cert: &Certificate, f: Option<&IntPoly>, g: Option<&IntPoly>) -> Result<bool> {
    match cert.kind {
        CertKind::GIrreducible => {
            let Some(g) = g else { return Ok(false) };
            let m = g.degree().unwrap_or(0) as u64;
            let [w] = cert.witnesses.as_slice() else {
                return Ok(false);
            };
            Ok(m >= 1 && is_irreducible_shape(&w.shape, m) && witness_matches(g, w)?)
        }
        CertKind::FIrreducibleFastPath => {
            let (Some(f), Some(g)) = (f, g) else {
                return Ok(false);
            };
            let [w] = cert.witnesses.as_slice() else {
                return Ok(false);
            };
            if !trace_pair_consistent(f, g) {
                return Ok(false);
            }
            let m = g.degree().unwrap_or(0) as u64;
            if !(m >= 1 && is_irreducible_shape(&w.shape, m) && witness_matches(g, w)?) {
                return Ok(false);
            }
            let deg = f.degree().unwrap();
            let f1 = f.evaluate_int(&BigInt::from(1));
            let fm1 = f.evaluate_int(&BigInt::from(-1));
            let middle = f.coeff(deg / 2);
            match cert.aux.as_ref().and_then(|a| a.fast_path) {
                Some(1) => Ok(deg % 4 == 0 && (&f1 * &fm1) < BigInt::zero()),
                Some(2) => Ok(!f1.is_zero()
                    && !fm1.is_zero()
                    && middle.abs() <= BigInt::from(2)
                    && cert
                        .aux
                        .as_ref()
                        .and_then(|a| a.middle_coeff.as_ref())
                        .is_none_or(|s| *s == middle.to_string())),
                _ => Ok(false),
            }
        }
        CertKind::FIrreducibleOddCount => {
            let (Some(f), Some(g)) = (f, g) else {
                return Ok(false);
            };
            if cert.witnesses.len() != 2 || !trace_pair_consistent(f, g) {
                return Ok(false);
            }
            let deg_f = f.degree().unwrap_or(0) as u64;
            let m = g.degree().unwrap_or(0) as u64;
            let Some(fw) = cert
                .witnesses
                .iter()
                .find(|w| shape_total(&w.shape) == deg_f)
            else {
                return Ok(false);
            };
            let Some(gw) = cert.witnesses.iter().find(|w| shape_total(&w.shape) == m) else {
                return Ok(false);
            };
            if !(is_irreducible_shape(&gw.shape, m) && witness_matches(g, gw)?) {
                return Ok(false);
            }
            if !witness_matches(f, fw)? {
                return Ok(false);
            }
            let shape: Vec<(usize, usize)> = fw
                .shape
                .iter()
                .map(|&(d, mult)| (d as usize, mult as usize))
                .collect();
            if smallest_odd_count_degree(&shape).is_none() {
                return Ok(false);
            }
            match cert.aux.as_ref().and_then(|a| a.odd_degree) {
                None => Ok(true),
                Some(d) => {
                    let total: u64 = fw
                        .shape
                        .iter()
                        .filter(|&&(deg, _)| deg == d)
                        .map(|&(_, mult)| mult)
                        .sum();
                    Ok(total % 2 == 1)
                }
            }
        }
        CertKind::GaloisGSymmetric => {
            let Some(g) = g else { return Ok(false) };
            let m = g.degree().unwrap_or(0) as u64;
            if m < 3 || cert.witnesses.len() != 3 {
                return Ok(false);
            }
            for w in &cert.witnesses {
                if !witness_matches(g, w)? {
                    return Ok(false);
                }
            }
            Ok(triple_assignment_exists(&cert.witnesses, m))
        }
        CertKind::GaloisFFull | CertKind::GaloisFHalf => {
            let (Some(f), Some(g)) = (f, g) else {
                return Ok(false);
            };
            if cert.witnesses.len() != 4 || !trace_pair_consistent(f, g) {
                return Ok(false);
            }
            let deg_f = f.degree().unwrap_or(0) as u64;
            let m = g.degree().unwrap_or(0) as u64;
            if m < 3 {
                return Ok(false);
            }
            let (f_ws, g_ws): (Vec<&Witness>, Vec<&Witness>) = cert
                .witnesses
                .iter()
                .partition(|w| shape_total(&w.shape) == deg_f);
            let [fw] = f_ws.as_slice() else {
                return Ok(false);
            };
            if g_ws.iter().any(|w| shape_total(&w.shape) != m) {
                return Ok(false);
            }
            let g_ws: Vec<Witness> = g_ws.into_iter().cloned().collect();
            if !triple_assignment_exists(&g_ws, m) {
                return Ok(false);
            }
            for w in &g_ws {
                if !witness_matches(g, w)? {
                    return Ok(false);
                }
            }
            if !witness_matches(f, fw)? {
                return Ok(false);
            }
            let want_square = cert.kind == CertKind::GaloisFHalf;
            let shape_ok = if want_square {
                is_quad_quartic_odds_shape(&fw.shape, deg_f)
            } else {
                is_quad_odds_shape(&fw.shape, deg_f)
            };
            if !shape_ok {
                return Ok(false);
            }
            let disc_square = is_perfect_square(&f.discriminant()?);
            if disc_square != want_square {
                return Ok(false);
            }
            Ok(cert
                .aux
                .as_ref()
                .and_then(|a| a.disc_square)
                .is_none_or(|flag| flag == disc_square))
        }
    }
}

/// Does some role assignment of the three witnesses fit (irreducible,
/// linear × m−1, quadratic × odds)?
fn triple_assignment_exists(ws: &[Witness], m: u64) -> bool {
    if ws.len() != 3 {
        return false;
    }
    PERMUTATIONS_3.iter().any(|&[i, j, k]| {
        is_irreducible_shape(&ws[i].shape, m)
            && is_linear_times_shape(&ws[j].shape, m)
            && is_quad_odds_shape(&ws[k].shape, m)
    })
}

/// g must be the trace polynomial of the (reciprocal, even-degree) f.
fn trace_pair_consistent(f: &IntPoly, g: &IntPoly) -> bool {
    f.trace_polynomial().map(|t| t == *g).unwrap_or(false)
}

/// Recomputes the factorization shape of `poly` mod the witness prime and
/// compares with the stored shape as multisets.
fn witness_matches(poly: &IntPoly, w: &Witness) -> Result<bool> {
    let stored = sorted_shape(&w.shape);
    if stored.is_empty()
        || shape_total(&stored) != poly.degree().unwrap_or(0) as u64
        || !crate::modpoly::is_prime_u64(w.prime)
    {
        return Ok(false);
    }
    let Some(reduced) = reduce_full_degree(poly, w.prime)? else {
        return Ok(false);
    };
    if stored.iter().all(|&(_, mult)| mult == 1) {
        // Multiplicity-free claim: distinct-degree blocks suffice, and the
        // driver aborts on the first block off the claim.
        let monic = reduced.make_monic();
        if !monic.is_squarefree()? {
            return Ok(false);
        }
        let mut claimed: BTreeMap<usize, usize> = BTreeMap::new();
        for &(d, _) in &stored {
            *claimed.entry(d as usize).or_insert(0) += 1;
        }
        let found = monic.ddf_blocks_with(|d, c| claimed.get(&d).copied() == Some(c))?;
        Ok(found.is_some_and(|blocks| {
            blocks.len() == claimed.len()
                && blocks
                    .iter()
                    .all(|&(d, c)| claimed.get(&d).copied() == Some(c))
        }))
    } else {
        let shape: Vec<(u64, u64)> = reduced
            .factor_shape()?
            .into_iter()
            .map(|(d, m)| (d as u64, m as u64))
            .collect();
        Ok(shape == stored)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fekete::decompose;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs)
    }

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    /// A decomposition stand-in for synthetic reciprocal polynomials.
    fn synthetic_dec(f: IntPoly) -> FeketeDecomposition {
        let g = f.trace_polynomial().unwrap();
        FeketeDecomposition {
            n: 0,
            p: 0,
            q: 0,
            s_n: Default::default(),
            cyclo_part: IntPoly::x(),
            f_n: f,
            g_n: g,
        }
    }

    #[test]
    fn config_validation() {
        assert_eq!(SearchConfig::default().prime_bound, 5000);
        assert!(SearchConfig::with_bound(2).is_ok());
        assert!(matches!(
            SearchConfig::with_bound(1),
            Err(Error::InvalidInput { .. })
        ));
    }

    #[test]
    fn g_irreducible_witnesses() {
        let g15 = decompose(15).unwrap().g_n;
        let out = certify_g_irreducible(&g15, &cfg()).unwrap();
        let cert = out.certificate().expect("g_15 certifies");
        assert_eq!(cert.kind, CertKind::GIrreducible);
        assert_eq!(
            cert.witnesses,
            vec![Witness {
                prime: 3,
                shape: vec![(3, 1)]
            }]
        );
        assert!(verify_certificate(cert, None, Some(&g15)));

        let g21 = decompose(21).unwrap().g_n;
        let out = certify_g_irreducible(&g21, &cfg()).unwrap();
        let cert = out.certificate().expect("g_21 certifies");
        assert_eq!(cert.witnesses[0].prime, 5);
        assert_eq!(cert.witnesses[0].shape, vec![(8, 1)]);

        // Reducible over Z: never irreducible mod any prime.
        let out =
            certify_g_irreducible(&p(&[-1, 0, 1]), &SearchConfig::with_bound(50).unwrap()).unwrap();
        match out {
            SearchOutcome::NotFound { prime_bound, .. } => assert_eq!(prime_bound, 50),
            SearchOutcome::Found { .. } => panic!("x^2 - 1 cannot be irreducible"),
        }
    }

    #[test]
    fn f_irreducible_fast_paths() {
        // f_15: degree 6 (path 1 inapplicable), middle coefficient 1.
        let dec = decompose(15).unwrap();
        let g_cert = certify_g_irreducible(&dec.g_n, &cfg())
            .unwrap()
            .certificate()
            .cloned();
        let out = certify_f_irreducible(&dec, g_cert.as_ref(), &cfg()).unwrap();
        let cert = out.certificate().expect("f_15 certifies");
        assert_eq!(cert.kind, CertKind::FIrreducibleFastPath);
        let aux = cert.aux.as_ref().unwrap();
        assert_eq!(aux.fast_path, Some(2));
        assert_eq!(aux.middle_coeff.as_deref(), Some("1"));
        assert!(verify_certificate(cert, Some(&dec.f_n), Some(&dec.g_n)));

        // f_21: degree 16 with f(1) f(-1) = 6 * (-2) < 0 — path 1 first.
        let dec = decompose(21).unwrap();
        let g_cert = certify_g_irreducible(&dec.g_n, &cfg())
            .unwrap()
            .certificate()
            .cloned();
        let out = certify_f_irreducible(&dec, g_cert.as_ref(), &cfg()).unwrap();
        let cert = out.certificate().expect("f_21 certifies");
        assert_eq!(cert.aux.as_ref().unwrap().fast_path, Some(1));
        assert!(verify_certificate(cert, Some(&dec.f_n), Some(&dec.g_n)));

        // f_39: degree 24 with f(1) f(-1) = 3 * (-2) < 0 — another path-1 case.
        let dec39 = decompose(39).unwrap();
        assert_eq!(dec39.f_n.degree(), Some(24));
        let g_cert39 = certify_g_irreducible(&dec39.g_n, &cfg())
            .unwrap()
            .certificate()
            .cloned();
        let out = certify_f_irreducible(&dec39, g_cert39.as_ref(), &cfg()).unwrap();
        assert_eq!(
            out.certificate().unwrap().aux.as_ref().unwrap().fast_path,
            Some(1)
        );

        // Missing or mismatched prerequisite.
        assert!(matches!(
            certify_f_irreducible(&dec, None, &cfg()),
            Err(Error::PrerequisiteMissing { .. })
        ));
        let other = decompose(15).unwrap();
        let wrong = certify_g_irreducible(&other.g_n, &cfg())
            .unwrap()
            .certificate()
            .cloned();
        assert!(matches!(
            certify_f_irreducible(&dec, wrong.as_ref(), &cfg()),
            Err(Error::PrerequisiteMissing { .. })
        ));
    }

    #[test]
    fn f_irreducible_odd_count() {
        // x^6 + 4x^3 + 1: irreducible, but both fast paths are blocked
        // (degree 6, middle coefficient 4), so the odd-count search runs.
        let dec = synthetic_dec(p(&[1, 0, 0, 4, 0, 0, 1]));
        let g_cert = certify_g_irreducible(&dec.g_n, &cfg())
            .unwrap()
            .certificate()
            .cloned();
        let out = certify_f_irreducible(&dec, g_cert.as_ref(), &cfg()).unwrap();
        let cert = out.certificate().expect("odd count exists");
        assert_eq!(cert.kind, CertKind::FIrreducibleOddCount);
        let odd_degree = cert.aux.as_ref().unwrap().odd_degree.unwrap();
        let fw = cert
            .witnesses
            .iter()
            .find(|w| shape_total(&w.shape) == 6)
            .unwrap();
        let count: u64 = fw
            .shape
            .iter()
            .filter(|&&(d, _)| d == odd_degree)
            .map(|&(_, m)| m)
            .sum();
        assert_eq!(count % 2, 1);
        assert!(verify_certificate(cert, Some(&dec.f_n), Some(&dec.g_n)));

        // Hand-built odd-count certificate for f_15: mod 2 the shape is
        // [(2,1),(4,1)] and degree 2 occurs once. The search prefers the
        // fast path for this polynomial, but the certificate is valid.
        let dec15 = decompose(15).unwrap();
        let by_hand = Certificate {
            kind: CertKind::FIrreducibleOddCount,
            witnesses: vec![
                Witness {
                    prime: 2,
                    shape: vec![(2, 1), (4, 1)],
                },
                Witness {
                    prime: 3,
                    shape: vec![(3, 1)],
                },
            ],
            aux: Some(CertAux {
                odd_degree: Some(2),
                ..Default::default()
            }),
        };
        assert!(verify_certificate(
            &by_hand,
            Some(&dec15.f_n),
            Some(&dec15.g_n)
        ));

        // V_4 quartic: all shapes pair up, search exhausts the bound.
        let dec = synthetic_dec(p(&[1, 0, 3, 0, 1]));
        let g_cert = certify_g_irreducible(&dec.g_n, &cfg())
            .unwrap()
            .certificate()
            .cloned();
        let out = certify_f_irreducible(
            &dec,
            g_cert.as_ref(),
            &SearchConfig::with_bound(100).unwrap(),
        )
        .unwrap();
        assert!(!out.is_found());
    }

    #[test]
    fn odd_count_blind_to_reciprocal_products() {
        // h h_rev never shows an odd count in any degree, mod any prime.
        let h = p(&[3, 1, 1]);
        let f = &h * &h.reversal();
        for q in primes_up_to(100) {
            let Some(r) = reduce_full_degree(&f, q).unwrap() else {
                continue;
            };
            let shape = r.factor_shape().unwrap();
            assert_eq!(
                smallest_odd_count_degree(&shape),
                None,
                "q = {q}, shape {shape:?}"
            );
        }
    }

    #[test]
    fn galois_g_triples() {
        let g21 = decompose(21).unwrap().g_n;
        let out = certify_galois_g(&g21, &cfg()).unwrap();
        let cert = out.certificate().expect("g_21 has a triple");
        assert_eq!(cert.kind, CertKind::GaloisGSymmetric);
        assert_eq!(cert.symmetric_triple(), Some((5, 19, 7)));
        let primes: Vec<u64> = cert.witnesses.iter().map(|w| w.prime).collect();
        assert_eq!(primes, vec![5, 7, 19]);
        let w7 = cert.witnesses.iter().find(|w| w.prime == 7).unwrap();
        assert_eq!(w7.shape, vec![(2, 1), (3, 1), (3, 1)]);
        let w19 = cert.witnesses.iter().find(|w| w.prime == 19).unwrap();
        assert_eq!(w19.shape, vec![(1, 1), (7, 1)]);
        assert!(verify_certificate(cert, None, Some(&g21)));

        let g35 = decompose(35).unwrap().g_n;
        let out = certify_galois_g(&g35, &cfg()).unwrap();
        let cert = out.certificate().expect("g_35 has a triple");
        assert_eq!(cert.symmetric_triple(), Some((29, 47, 31)));
        assert!(verify_certificate(cert, None, Some(&g35)));

        let g15 = decompose(15).unwrap().g_n;
        let out = certify_galois_g(&g15, &cfg()).unwrap();
        let cert = out.certificate().expect("g_15 has a triple");
        assert_eq!(cert.symmetric_triple(), Some((3, 2, 2)));

        // Degree 2: the triple method never applies.
        let out = certify_galois_g(&p(&[1, 1, 1]), &cfg()).unwrap();
        assert!(!out.is_found());
    }

    #[test]
    fn galois_f_full_and_half() {
        let dec21 = decompose(21).unwrap();
        let g_cert = certify_galois_g(&dec21.g_n, &cfg())
            .unwrap()
            .certificate()
            .cloned();
        let out = certify_galois_f(&dec21, g_cert.as_ref(), &cfg()).unwrap();
        let cert = out.certificate().expect("f_21 certifies Full");
        assert_eq!(cert.kind, CertKind::GaloisFFull);
        assert_eq!(cert.aux.as_ref().unwrap().disc_square, Some(false));
        let fw = cert
            .witnesses
            .iter()
            .find(|w| shape_total(&w.shape) == 16)
            .unwrap();
        assert_eq!(fw.prime, 227);
        assert_eq!(fw.shape, vec![(2, 1), (7, 1), (7, 1)]);
        assert!(verify_certificate(cert, Some(&dec21.f_n), Some(&dec21.g_n)));

        let dec35 = decompose(35).unwrap();
        let g_cert35 = certify_galois_g(&dec35.g_n, &cfg())
            .unwrap()
            .certificate()
            .cloned();
        let out = certify_galois_f(&dec35, g_cert35.as_ref(), &cfg()).unwrap();
        let cert = out.certificate().expect("f_35 certifies Half");
        assert_eq!(cert.kind, CertKind::GaloisFHalf);
        assert_eq!(cert.aux.as_ref().unwrap().disc_square, Some(true));
        let fw = cert
            .witnesses
            .iter()
            .find(|w| shape_total(&w.shape) == 22)
            .unwrap();
        assert_eq!(fw.prime, 433);
        assert_eq!(
            fw.shape,
            vec![(1, 1), (1, 1), (2, 1), (4, 1), (7, 1), (7, 1)]
        );
        assert!(verify_certificate(cert, Some(&dec35.f_n), Some(&dec35.g_n)));

        // f_15 has a square discriminant; the tiny prime 2 already works.
        let dec15 = decompose(15).unwrap();
        let g_cert15 = certify_galois_g(&dec15.g_n, &cfg())
            .unwrap()
            .certificate()
            .cloned();
        let out = certify_galois_f(&dec15, g_cert15.as_ref(), &cfg()).unwrap();
        let cert = out.certificate().expect("f_15 certifies Half");
        assert_eq!(cert.kind, CertKind::GaloisFHalf);
        let fw = cert
            .witnesses
            .iter()
            .find(|w| shape_total(&w.shape) == 6)
            .unwrap();
        assert_eq!((fw.prime, fw.shape.clone()), (2, vec![(2, 1), (4, 1)]));
        assert!(verify_certificate(cert, Some(&dec15.f_n), Some(&dec15.g_n)));

        // Mode guards.
        assert!(matches!(
            certify_galois_f_with_mode(&dec15, g_cert15.as_ref(), &cfg(), GaloisFMode::Full),
            Err(Error::CriterionInapplicable { .. })
        ));
        assert!(matches!(
            certify_galois_f_with_mode(&dec21, g_cert.as_ref(), &cfg(), GaloisFMode::Half),
            Err(Error::CriterionInapplicable { .. })
        ));

        // Prerequisites.
        assert!(matches!(
            certify_galois_f(&dec21, None, &cfg()),
            Err(Error::PrerequisiteMissing { .. })
        ));
        let not_galois = certify_g_irreducible(&dec21.g_n, &cfg())
            .unwrap()
            .certificate()
            .cloned();
        assert!(matches!(
            certify_galois_f(&dec21, not_galois.as_ref(), &cfg()),
            Err(Error::PrerequisiteMissing { .. })
        ));
    }

    #[test]
    fn verification_rejects_tampering() {
        let g21 = decompose(21).unwrap().g_n;
        let cert = certify_galois_g(&g21, &cfg())
            .unwrap()
            .certificate()
            .cloned()
            .unwrap();
        // Tamper the irreducibility witness 5 -> 7.
        let mut bad = cert.clone();
        for w in &mut bad.witnesses {
            if w.prime == 5 {
                w.prime = 7;
            }
        }
        assert!(!verify_certificate(&bad, None, Some(&g21)));
        // Reorder a shape: still fine, shapes are multisets.
        let mut reordered = cert.clone();
        let w7 = reordered
            .witnesses
            .iter_mut()
            .find(|w| w.prime == 7)
            .unwrap();
        w7.shape.reverse();
        assert!(verify_certificate(&reordered, None, Some(&g21)));
        // Reorder witnesses: also fine.
        let mut shuffled = cert.clone();
        shuffled.witnesses.reverse();
        assert!(verify_certificate(&shuffled, None, Some(&g21)));
        // Missing context.
        assert!(!verify_certificate(&cert, None, None));
        // Composite witness prime.
        let mut composite = cert.clone();
        composite.witnesses[0].prime = 6;
        assert!(!verify_certificate(&composite, None, Some(&g21)));
    }

    #[test]
    fn json_round_trip_and_determinism() {
        let g21 = decompose(21).unwrap().g_n;
        let cert = certify_galois_g(&g21, &cfg())
            .unwrap()
            .certificate()
            .cloned()
            .unwrap();
        let json = cert.to_json().unwrap();
        assert!(json.starts_with("{\"kind\":\"GaloisGSymmetric\",\"witnesses\":[{\"prime\":5,"));
        assert_eq!(Certificate::from_json(&json).unwrap(), cert);
        // A second search serializes byte-identically.
        let again = certify_galois_g(&g21, &cfg())
            .unwrap()
            .certificate()
            .cloned()
            .unwrap();
        assert_eq!(again.to_json().unwrap(), json);
        // Aux round-trips too.
        let dec = decompose(15).unwrap();
        let g_cert = certify_g_irreducible(&dec.g_n, &cfg())
            .unwrap()
            .certificate()
            .cloned();
        let f_cert = certify_f_irreducible(&dec, g_cert.as_ref(), &cfg())
            .unwrap()
            .certificate()
            .cloned()
            .unwrap();
        let json = f_cert.to_json().unwrap();
        assert!(json.contains("\"fast_path\":2"));
        assert_eq!(Certificate::from_json(&json).unwrap(), f_cert);
    }

    #[test]
    fn soundness_on_small_semiprimes() {
        // The full-range sweep lives in the integration suite; this pins
        // the smallest cases and every certificate kind.
        for n in [15u64, 21, 33, 35, 39] {
            let dec = decompose(n).unwrap();
            let gi = certify_g_irreducible(&dec.g_n, &cfg()).unwrap();
            let gi_cert = gi.certificate().expect("g irreducible");
            assert!(verify_certificate(gi_cert, None, Some(&dec.g_n)), "n = {n}");
            let fi = certify_f_irreducible(&dec, Some(gi_cert), &cfg()).unwrap();
            let fi_cert = fi.certificate().expect("f irreducible");
            assert!(
                verify_certificate(fi_cert, Some(&dec.f_n), Some(&dec.g_n)),
                "n = {n}"
            );
            let gg = certify_galois_g(&dec.g_n, &cfg()).unwrap();
            let gg_cert = gg.certificate().expect("galois g");
            assert!(verify_certificate(gg_cert, None, Some(&dec.g_n)), "n = {n}");
            let gf = certify_galois_f(&dec, Some(gg_cert), &cfg()).unwrap();
            let gf_cert = gf.certificate().expect("galois f");
            assert!(
                verify_certificate(gf_cert, Some(&dec.f_n), Some(&dec.g_n)),
                "n = {n}"
            );
        }
    }
}
