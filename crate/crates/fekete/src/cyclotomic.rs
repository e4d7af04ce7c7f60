//! Arithmetic functions, cyclotomic polynomials, Ramanujan values, the
//! divisor set `S_n`, and the equidistribution / divisor-partition criteria
//! for cyclotomic factors of Fekete polynomials.
//!
//! Cyclotomic polynomials are computed by iterated exact division of
//! `x^d - 1` and memoized process-wide; every divisibility statement in
//! this module is decided by exact polynomial remainders, never by
//! formulas alone.

use std::collections::{BTreeSet, HashMap};
use std::sync::{LazyLock, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fekete::build_f;
use crate::intpoly::IntPoly;
use crate::modpoly::is_prime_u64;

/// Prime factorization by trial division, `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Möbius function.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius requires n >= 1");
    let mut mu = 1i64;
    for (_, e) in factorize(n) {
        if e > 1 {
            return 0;
        }
        mu = -mu;
    }
    mu
}

/// Euler totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi requires n >= 1");
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// Radical: product of the distinct primes dividing n (1 for n = 1).
pub fn radical(n: u64) -> u64 {
    assert!(n >= 1, "radical requires n >= 1");
    factorize(n)
        .into_iter()
        .map(|(p, _)| p)
        .product::<u64>()
        .max(1)
}

pub fn is_squarefree_u64(n: u64) -> bool {
    mobius(n) != 0
}

/// Sorted list of divisors of n.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors requires n >= 1");
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let base = out.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            out.extend(base.iter().map(|d| d * pe));
        }
    }
    out.sort_unstable();
    out
}

/// Read-mostly memo tables for μ, φ, radical, and divisor lists up to a
/// fixed bound; built once per scan, then shared immutably.
pub struct ArithCache {
    bound: u64,
    mu: Vec<i64>,
    phi: Vec<u64>,
    rad: Vec<u64>,
    divs: Vec<Vec<u64>>,
}

impl ArithCache {
    pub fn new(bound: u64) -> Self {
        assert!(bound >= 1, "ArithCache bound must be >= 1");
        let n = bound as usize + 1;
        // Smallest-prime-factor sieve drives all three functions.
        let mut spf: Vec<u64> = (0..n as u64).collect();
        let mut i = 2usize;
        while i * i < n {
            if spf[i] == i as u64 {
                let mut j = i * i;
                while j < n {
                    if spf[j] == j as u64 {
                        spf[j] = i as u64;
                    }
                    j += i;
                }
            }
            i += 1;
        }
        let mut mu = vec![0i64; n];
        let mut phi = vec![0u64; n];
        let mut rad = vec![0u64; n];
        if n > 1 {
            mu[1] = 1;
            phi[1] = 1;
            rad[1] = 1;
        }
        for m in 2..n {
            let p = spf[m];
            let mut r = m as u64;
            let mut e = 0;
            while r.is_multiple_of(p) {
                r /= p;
                e += 1;
            }
            let r = r as usize;
            mu[m] = if e > 1 { 0 } else { -mu[r] };
            phi[m] = phi[r] * (p - 1) * p.pow(e - 1);
            rad[m] = rad[r] * p;
        }
        let mut divs = vec![Vec::new(); n];
        for d in 1..n {
            let mut j = d;
            while j < n {
                divs[j].push(d as u64);
                j += d;
            }
        }
        ArithCache {
            bound,
            mu,
            phi,
            rad,
            divs,
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn mobius(&self, n: u64) -> i64 {
        self.mu[n as usize]
    }

    pub fn euler_phi(&self, n: u64) -> u64 {
        self.phi[n as usize]
    }

    pub fn radical(&self, n: u64) -> u64 {
        self.rad[n as usize]
    }

    pub fn divisors(&self, n: u64) -> &[u64] {
        &self.divs[n as usize]
    }
}

static PHI_MEMO: LazyLock<Mutex<HashMap<u64, IntPoly>>> = LazyLock::new(Mutex::default);

/// The d-th cyclotomic polynomial, by iterated exact division of `x^d - 1`
/// by `Φ_e` over the proper divisors e. Memoized process-wide.
pub fn phi_d(d: u64) -> IntPoly {
    assert!(d >= 1, "phi_d requires d >= 1");
    if let Some(p) = PHI_MEMO.lock().unwrap().get(&d) {
        return p.clone();
    }
    // Recurse outside the lock; each call locks only to read or insert.
    let mut acc = &IntPoly::monomial(BigInt::from(1), d as usize) - &IntPoly::one();
    for e in divisors(d) {
        if e == d {
            continue;
        }
        acc = acc
            .exact_div(&phi_d(e))
            .expect("x^d - 1 is exactly divisible by its cyclotomic factors");
    }
    PHI_MEMO
        .lock()
        .unwrap()
        .entry(d)
        .or_insert_with(|| acc.clone());
    acc
}

/// Exponent folding: the exact remainder of `f` modulo `x^d - 1`
/// (coefficient of `x^k` accumulates onto `x^(k mod d)`).
pub fn fold_exponents(f: &IntPoly, d: u64) -> IntPoly {
    assert!(d >= 1);
    let d = d as usize;
    let mut coeffs = vec![BigInt::zero(); d.min(f.coeffs().len())];
    for (k, c) in f.coeffs().iter().enumerate() {
        coeffs[k % d] += c;
    }
    IntPoly::new(coeffs)
}

/// Exact remainder of `f` modulo `Φ_d`, folding through `x^d - 1` first
/// (sound because `Φ_d` divides `x^d - 1`).
pub fn rem_mod_phi_d(f: &IntPoly, d: u64) -> IntPoly {
    fold_exponents(f, d).divrem_monic(&phi_d(d)).1
}

/// Multiplicity of `Φ_d` in `f` (0 if it does not divide).
pub fn cyclotomic_multiplicity(f: &IntPoly, d: u64) -> u32 {
    let phi = phi_d(d);
    let mut mult = 0;
    let mut cur = f.clone();
    while !cur.is_zero() {
        match cur.exact_div(&phi) {
            Ok(next) => {
                mult += 1;
                cur = next;
            }
            Err(_) => break,
        }
    }
    mult
}

/// The Ramanujan value `F_n(ζ_d) = μ(d) φ(n) / φ(d)` for `d | n`,
/// `n >= 2` squarefree; the formula is cross-checked against the exact
/// remainder of `F_n` modulo `Φ_d`, which must be that constant.
pub fn ramanujan_value(n: u64, d: u64) -> Result<BigInt> {
    assert!(n >= 2, "ramanujan_value requires n >= 2");
    if !is_squarefree_u64(n) {
        return Err(Error::NotSquarefree);
    }
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotDivisor {
            context: format!("{d} does not divide {n}"),
        });
    }
    let (phi_n, phi_div) = (euler_phi(n), euler_phi(d));
    debug_assert_eq!(phi_n % phi_div, 0);
    let value = BigInt::from(mobius(d)) * BigInt::from(phi_n / phi_div);
    let rem = rem_mod_phi_d(&build_f(n), d);
    assert_eq!(
        rem,
        IntPoly::constant(value.clone()),
        "Ramanujan self-check failed for (n, d) = ({n}, {d})"
    );
    Ok(value)
}

/// The divisor set `S_n` for `n = pq`, `p > q` odd primes: divisors
/// `d > 1` of `q - 1`, divisors `d > 1, d != q` of `p - 1`, and divisors
/// `d > 1` of `gcd(pq + 1, p + q)`.
pub fn s_n_set(p: u64, q: u64) -> Result<BTreeSet<u64>> {
    check_odd_prime_pair(p, q)?;
    let mut out = BTreeSet::new();
    out.extend(divisors(q - 1).into_iter().filter(|&d| d > 1));
    out.extend(divisors(p - 1).into_iter().filter(|&d| d > 1 && d != q));
    let g = (p * q + 1).gcd(&(p + q));
    out.extend(divisors(g).into_iter().filter(|&d| d > 1));
    Ok(out)
}

pub(crate) fn check_odd_prime_pair(p: u64, q: u64) -> Result<()> {
    if p <= q
        || q < 3
        || p.is_multiple_of(2)
        || q.is_multiple_of(2)
        || !is_prime_u64(p)
        || !is_prime_u64(q)
    {
        return Err(Error::NotOddPrimes { p, q });
    }
    Ok(())
}

/// Equidistribution of the units of `Z/n` modulo `d` (for `d` not dividing
/// `n`): with `d1 = gcd(d, n)` and `S = {0 <= s < d : gcd(s, d1) = 1}`,
/// true iff every class `s` in `S` contains the same number of units.
pub fn equidistribution_check(n: u64, d: u64) -> Result<bool> {
    assert!(n >= 2, "equidistribution_check requires n >= 2");
    if !is_squarefree_u64(n) {
        return Err(Error::NotSquarefree);
    }
    if d <= 1 {
        return Err(Error::InvalidInput {
            context: format!("equidistribution needs d > 1, got {d}"),
        });
    }
    if n.is_multiple_of(d) {
        return Err(Error::DividesN { d, n });
    }
    let d1 = d.gcd(&n);
    let mut counts = vec![0u64; d as usize];
    for a in 1..=n {
        if a.gcd(&n) == 1 {
            counts[(a % d) as usize] += 1;
        }
    }
    let mut expected = None;
    for s in 0..d {
        if s.gcd(&d1) != 1 {
            debug_assert_eq!(counts[s as usize], 0);
            continue;
        }
        match expected {
            None => expected = Some(counts[s as usize]),
            Some(e) => {
                if counts[s as usize] != e {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A partition of the divisor set of `N` into two-element subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorPairing {
    /// The modulus whose divisors are being paired (a squarefree divisor of
    /// the ambient n, with an even number of divisors).
    pub n_value: u64,
    /// The two-element subsets; within a pair the order is immaterial.
    pub pairs: Vec<(u64, u64)>,
}

/// The certified-divisor candidate `D = gcd_i |a_i + μ(a_i) μ(b_i) b_i|`
/// of a divisor pairing. Every `d | D` with `d` not dividing the ambient
/// `n` is then a cyclotomic divisor of `F_n`.
pub fn partition_candidate_d(pairing: &DivisorPairing) -> Result<u64> {
    let nv = pairing.n_value;
    if nv < 2 || !is_squarefree_u64(nv) {
        return Err(Error::InvalidPairing {
            context: format!("N = {nv} must be squarefree with at least two divisors"),
        });
    }
    let divs = divisors(nv);
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    for &(a, b) in &pairing.pairs {
        if a == b || !seen.insert(a) || !seen.insert(b) {
            return Err(Error::InvalidPairing {
                context: format!("pair ({a}, {b}) repeats an element"),
            });
        }
    }
    if seen != divs.iter().copied().collect::<BTreeSet<_>>() {
        return Err(Error::InvalidPairing {
            context: format!("pairs do not cover the divisors of {nv} exactly"),
        });
    }
    let mut d_gcd = 0u64;
    for &(a, b) in &pairing.pairs {
        let term = a as i64 + mobius(a) * mobius(b) * b as i64;
        d_gcd = d_gcd.gcd(&term.unsigned_abs());
    }
    Ok(d_gcd)
}

/// All divisor pairings of `N` (restricted to at most 8 divisors: the
/// number of perfect matchings grows as `(2l-1)!!`).
pub fn enumerate_divisor_pairings(n_value: u64) -> Result<Vec<DivisorPairing>> {
    if n_value < 2 || !is_squarefree_u64(n_value) {
        return Err(Error::InvalidPairing {
            context: format!("N = {n_value} must be squarefree with at least two divisors"),
        });
    }
    let divs = divisors(n_value);
    if divs.len() > 8 {
        return Err(Error::InvalidPairing {
            context: format!("{n_value} has more than 8 divisors"),
        });
    }
    fn matchings(rest: &[u64]) -> Vec<Vec<(u64, u64)>> {
        if rest.is_empty() {
            return vec![Vec::new()];
        }
        let a = rest[0];
        let mut out = Vec::new();
        for i in 1..rest.len() {
            let b = rest[i];
            let mut remaining: Vec<u64> = rest[1..].to_vec();
            remaining.remove(i - 1);
            for mut tail in matchings(&remaining) {
                tail.insert(0, (a, b));
                out.push(tail);
            }
        }
        out
    }
    Ok(matchings(&divs)
        .into_iter()
        .map(|pairs| DivisorPairing { n_value, pairs })
        .collect())
}

/// All `d <= d_max` with `Φ_d | F_n`, decided by exact remainders
/// (exponent folding through `x^d - 1`, then division by `Φ_d`).
pub fn verified_cyclotomic_factors(n: u64, d_max: u64) -> Vec<u64> {
    assert!(n >= 2 && d_max >= 2, "requires n >= 2 and d_max >= 2");
    let f = build_f(n);
    (2..=d_max)
        .filter(|&d| rem_mod_phi_d(&f, d).is_zero())
        .collect()
}

/// `φ₁(n) = n ∏_(p|n) (1 - 2/p)` for squarefree n: the number of
/// `0 <= a < n` with `gcd(n, a) = gcd(n, a+1) = 1`. Zero for even n.
pub fn phi1(n: u64) -> Result<u64> {
    assert!(n >= 1, "phi1 requires n >= 1");
    if !is_squarefree_u64(n) {
        return Err(Error::NotSquarefree);
    }
    Ok(factorize(n).into_iter().map(|(p, _)| p - 2).product())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_functions() {
        assert_eq!(mobius(15), 1);
        assert_eq!(mobius(7), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(1), 1);
        assert_eq!(euler_phi(15), 8);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(radical(12), 6);
        assert_eq!(radical(1), 1);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert!(is_squarefree_u64(105));
        assert!(!is_squarefree_u64(18));
    }

    #[test]
    fn cache_agrees_with_direct() {
        let cache = ArithCache::new(200);
        for n in 1..=200u64 {
            assert_eq!(cache.mobius(n), mobius(n), "mu({n})");
            assert_eq!(cache.euler_phi(n), euler_phi(n), "phi({n})");
            assert_eq!(cache.radical(n), radical(n), "rad({n})");
            assert_eq!(cache.divisors(n), divisors(n).as_slice(), "divs({n})");
        }
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(phi_d(1), IntPoly::from_coeffs(&[-1, 1]));
        assert_eq!(phi_d(2), IntPoly::from_coeffs(&[1, 1]));
        assert_eq!(phi_d(8), IntPoly::from_coeffs(&[1, 0, 0, 0, 1]));
        assert_eq!(phi_d(12), IntPoly::from_coeffs(&[1, 0, -1, 0, 1]));
        // Φ_105 is the first cyclotomic polynomial with a coefficient
        // outside {-1, 0, 1}.
        let p105 = phi_d(105);
        assert!(p105.coeffs().iter().any(|c| c.magnitude() == &2u32.into()));
        for d in 1..105 {
            assert!(phi_d(d)
                .coeffs()
                .iter()
                .all(|c| c.magnitude() <= &1u32.into()));
        }
    }

    #[test]
    fn cyclotomic_product_is_x_n_minus_one() {
        for n in [1u64, 2, 6, 12, 30] {
            let mut prod = IntPoly::one();
            for d in divisors(n) {
                prod = &prod * &phi_d(d);
            }
            let expect = &IntPoly::monomial(BigInt::from(1), n as usize) - &IntPoly::one();
            assert_eq!(prod, expect, "n = {n}");
        }
    }

    #[test]
    fn folding() {
        // x^5 + x^3 + 1 mod (x^2 - 1): exponents fold mod 2.
        let f = IntPoly::from_coeffs(&[1, 0, 0, 1, 0, 1]);
        assert_eq!(fold_exponents(&f, 2), IntPoly::from_coeffs(&[1, 2]));
        assert_eq!(fold_exponents(&f, 1), IntPoly::from_coeffs(&[3]));
        // Folding is the remainder mod x^d - 1.
        let xd = IntPoly::from_coeffs(&[-1, 0, 0, 1]);
        assert_eq!(fold_exponents(&f, 3), f.divrem_monic(&xd).1);
    }

    #[test]
    fn ramanujan_values() {
        assert_eq!(ramanujan_value(15, 3).unwrap(), BigInt::from(-4));
        assert_eq!(ramanujan_value(15, 1).unwrap(), BigInt::from(8));
        assert_eq!(ramanujan_value(15, 15).unwrap(), BigInt::from(1));
        assert_eq!(ramanujan_value(15, 5).unwrap(), BigInt::from(-2));
        assert!(matches!(
            ramanujan_value(15, 7),
            Err(Error::NotDivisor { .. })
        ));
        assert!(matches!(ramanujan_value(12, 3), Err(Error::NotSquarefree)));
    }

    #[test]
    fn s_n_examples() {
        let s = s_n_set(5, 3).unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![2, 4, 8]);
        let s = s_n_set(7, 3).unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![2, 6]);
        assert!(matches!(s_n_set(3, 5), Err(Error::NotOddPrimes { .. })));
        assert!(matches!(s_n_set(9, 3), Err(Error::NotOddPrimes { .. })));
        assert!(matches!(s_n_set(7, 2), Err(Error::NotOddPrimes { .. })));
        assert!(matches!(s_n_set(7, 7), Err(Error::NotOddPrimes { .. })));
    }

    #[test]
    fn equidistribution_examples() {
        assert!(equidistribution_check(15, 8).unwrap());
        assert!(!equidistribution_check(15, 7).unwrap());
        assert!(matches!(
            equidistribution_check(15, 5),
            Err(Error::DividesN { d: 5, n: 15 })
        ));
        assert!(matches!(
            equidistribution_check(12, 5),
            Err(Error::NotSquarefree)
        ));
        assert!(matches!(
            equidistribution_check(15, 1),
            Err(Error::InvalidInput { .. })
        ));
    }

    #[test]
    fn partition_candidates() {
        // N = q prime: the only pairing {1, q} gives D = q - 1.
        let d = partition_candidate_d(&DivisorPairing {
            n_value: 3,
            pairs: vec![(1, 3)],
        })
        .unwrap();
        assert_eq!(d, 2);
        let d = partition_candidate_d(&DivisorPairing {
            n_value: 15,
            pairs: vec![(1, 15), (3, 5)],
        })
        .unwrap();
        assert_eq!(d, 8);
        let d = partition_candidate_d(&DivisorPairing {
            n_value: 15,
            pairs: vec![(1, 3), (5, 15)],
        })
        .unwrap();
        assert_eq!(d, 2);
        // Pair order within a pairing does not matter.
        let d = partition_candidate_d(&DivisorPairing {
            n_value: 15,
            pairs: vec![(5, 3), (15, 1)],
        })
        .unwrap();
        assert_eq!(d, 8);
        for bad in [
            DivisorPairing {
                n_value: 15,
                pairs: vec![(1, 15), (3, 3)],
            },
            DivisorPairing {
                n_value: 15,
                pairs: vec![(1, 15), (1, 3)],
            },
            DivisorPairing {
                n_value: 15,
                pairs: vec![(1, 15)],
            },
            DivisorPairing {
                n_value: 12,
                pairs: vec![(1, 12), (2, 6), (3, 4)],
            },
        ] {
            assert!(matches!(
                partition_candidate_d(&bad),
                Err(Error::InvalidPairing { .. })
            ));
        }
    }

    #[test]
    fn pairing_enumeration() {
        // Four divisors -> 3 perfect matchings.
        let all = enumerate_divisor_pairings(15).unwrap();
        assert_eq!(all.len(), 3);
        for pairing in &all {
            partition_candidate_d(pairing).unwrap();
        }
        // 105 has 8 divisors -> 105 matchings; 210 has 16 -> rejected.
        assert_eq!(enumerate_divisor_pairings(105).unwrap().len(), 105);
        assert!(matches!(
            enumerate_divisor_pairings(210),
            Err(Error::InvalidPairing { .. })
        ));
    }

    #[test]
    fn verified_factor_lists() {
        assert_eq!(verified_cyclotomic_factors(15, 16), vec![2, 4, 8]);
        // Prime n: every d | p - 1, d > 1.
        assert_eq!(verified_cyclotomic_factors(7, 10), vec![2, 3, 6]);
        // n = 10: F_10 = x Φ_4^2 Φ_12.
        assert_eq!(verified_cyclotomic_factors(10, 12), vec![4, 12]);
        assert_eq!(cyclotomic_multiplicity(&build_f(10), 4), 2);
        assert_eq!(cyclotomic_multiplicity(&build_f(10), 12), 1);
        assert_eq!(cyclotomic_multiplicity(&build_f(10), 3), 0);
    }

    #[test]
    fn phi1_values() {
        assert_eq!(phi1(15).unwrap(), 3);
        assert_eq!(phi1(105).unwrap(), 15);
        assert_eq!(phi1(10).unwrap(), 0);
        assert_eq!(phi1(1).unwrap(), 1);
        assert!(matches!(phi1(12), Err(Error::NotSquarefree)));
        // Direct-count cross-check.
        for n in [15u64, 21, 35, 105] {
            let count = (0..n)
                .filter(|&a| a.gcd(&n) == 1 && (a + 1).gcd(&n) == 1)
                .count() as u64;
            assert_eq!(phi1(n).unwrap(), count, "n = {n}");
        }
    }
}
