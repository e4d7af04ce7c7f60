//! Polynomials over prime fields `F_p` and their complete factorization.
//!
//! The factorization pipeline is the classical one: squarefree
//! decomposition (with p-th-root descent in characteristic p),
//! distinct-degree factorization by Frobenius powers, and Cantor-Zassenhaus
//! equal-degree splitting. Randomness is drawn from a ChaCha stream seeded
//! from the input, so factorizations are reproducible run to run.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;

/// Largest supported characteristic (exclusive): `2^62`.
pub const MAX_PRIME: u64 = 1 << 62;

/// Deterministic Miller-Rabin, valid for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &BASES {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &BASES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    base %= m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// The field `F_p` for a prime `p < 2^62`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::PrimeTooLarge { p });
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime { n: p });
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod_u64(a, e, self.p)
    }

    /// Multiplicative inverse of nonzero `a` (Fermat).
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Canonical representative of a big integer.
    pub fn reduce_bigint(&self, c: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = c.mod_floor(&m);
        let (_, digits) = r.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }
}

/// A polynomial over `F_p`, coefficients ascending and reduced, no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl PrimePoly {
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= field.p();
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PrimePoly { field, coeffs }
    }

    /// Reduction of an integer polynomial mod p.
    pub fn from_intpoly(field: PrimeField, f: &IntPoly) -> Self {
        Self::new(
            field,
            f.coeffs().iter().map(|c| field.reduce_bigint(c)).collect(),
        )
    }

    pub fn zero(field: PrimeField) -> Self {
        PrimePoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::new(field, vec![1])
    }

    pub fn x(field: PrimeField) -> Self {
        Self::new(field, vec![0, 1])
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::new(field, vec![c])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    fn check_field(&self, other: &PrimePoly) -> Result<()> {
        if self.field.p() != other.field.p() {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &PrimePoly) -> Result<PrimePoly> {
        self.check_field(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0u64; len];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = self.field.add(self.coeff(i), other.coeff(i));
        }
        Ok(PrimePoly::new(self.field, coeffs))
    }

    pub fn sub(&self, other: &PrimePoly) -> Result<PrimePoly> {
        self.check_field(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0u64; len];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = self.field.sub(self.coeff(i), other.coeff(i));
        }
        Ok(PrimePoly::new(self.field, coeffs))
    }

    pub fn mul(&self, other: &PrimePoly) -> Result<PrimePoly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(PrimePoly::zero(self.field));
        }
        let coeffs = karatsuba_mul(self.field.p(), &self.coeffs, &other.coeffs);
        Ok(PrimePoly::new(self.field, coeffs))
    }

    pub fn scale(&self, c: u64) -> PrimePoly {
        let c = c % self.field.p();
        if c == 0 {
            return PrimePoly::zero(self.field);
        }
        PrimePoly::new(
            self.field,
            self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect(),
        )
    }

    pub fn make_monic(&self) -> PrimePoly {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(self.field.inv(lc)),
        }
    }

    pub fn derivative(&self) -> PrimePoly {
        if self.coeffs.len() <= 1 {
            return PrimePoly::zero(self.field);
        }
        PrimePoly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| self.field.mul(c, (k as u64) % self.field.p()))
                .collect(),
        )
    }

    pub fn evaluate(&self, x: u64) -> u64 {
        let x = x % self.field.p();
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = self.field.add(self.field.mul(acc, x), c);
        }
        acc
    }

    /// Quotient and remainder; errors on a zero divisor or field mismatch.
    pub fn divrem(&self, d: &PrimePoly) -> Result<(PrimePoly, PrimePoly)> {
        self.check_field(d)?;
        let dd = match d.degree() {
            None => {
                return Err(Error::ZeroPolynomial {
                    context: "division by zero polynomial over F_p".into(),
                })
            }
            Some(dd) => dd,
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((PrimePoly::zero(self.field), self.clone()));
        }
        let inv_lc = self.field.inv(d.leading().unwrap());
        let qlen = rem.len() - dd;
        let mut quot = vec![0u64; qlen];
        for k in (0..qlen).rev() {
            let t = self.field.mul(rem[k + dd], inv_lc);
            rem[k + dd] = 0;
            if t != 0 {
                for (j, &dc) in d.coeffs.iter().take(dd).enumerate() {
                    rem[k + j] = self.field.sub(rem[k + j], self.field.mul(t, dc));
                }
            }
            quot[k] = t;
        }
        rem.truncate(dd);
        Ok((
            PrimePoly::new(self.field, quot),
            PrimePoly::new(self.field, rem),
        ))
    }

    pub fn rem(&self, d: &PrimePoly) -> Result<PrimePoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &PrimePoly) -> Result<PrimePoly> {
        self.check_field(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }

    /// (self^exp) mod modulus, exponent a machine integer.
    pub fn pow_mod(&self, exp: u64, modulus: &PrimePoly) -> Result<PrimePoly> {
        self.pow_mod_big(&BigUint::from(exp), modulus)
    }

    /// (self^exp) mod modulus, arbitrary-precision exponent.
    pub fn pow_mod_big(&self, exp: &BigUint, modulus: &PrimePoly) -> Result<PrimePoly> {
        self.check_field(modulus)?;
        if modulus.degree().is_none() {
            return Err(Error::ZeroPolynomial {
                context: "power modulo zero polynomial".into(),
            });
        }
        let mut acc = PrimePoly::one(self.field).rem(modulus)?;
        if exp.is_zero() {
            return Ok(acc);
        }
        let base = self.rem(modulus)?;
        let bits = exp.bits();
        for i in (0..bits).rev() {
            acc = acc.mul(&acc)?.rem(modulus)?;
            if exp.bit(i) {
                acc = acc.mul(&base)?.rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Exact p-th root of a polynomial with zero derivative: over `F_p`,
    /// `f(x) = g(x^p)` implies the coefficients of `g` are those of `f` at
    /// indices divisible by p (Frobenius fixes `F_p`).
    fn pth_root(&self) -> PrimePoly {
        let p = self.field.p() as usize;
        let coeffs = self.coeffs.iter().copied().step_by(p).collect();
        PrimePoly::new(self.field, coeffs)
    }

    /// Squarefree decomposition of a nonzero polynomial: monic squarefree
    /// parts with their multiplicities, multiplicities strictly increasing.
    /// The product of `part^mult` over all entries times the unit
    /// reconstructs `self`.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(PrimePoly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial {
                context: "squarefree decomposition of zero".into(),
            });
        }
        let mut out = Vec::new();
        sqf_rec(&self.make_monic(), 1, &mut out)?;
        out.sort_by_key(|(_, m)| *m);
        Ok(out)
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn squarefree_part(&self) -> Result<PrimePoly> {
        let mut acc = PrimePoly::one(self.field);
        for (part, _) in self.squarefree_decomposition()? {
            acc = acc.mul(&part)?;
        }
        Ok(acc)
    }

    /// The distinct roots of `self` in the prime field, sorted ascending.
    pub fn rational_roots(&self) -> Result<Vec<u64>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial {
                context: "roots of zero".into(),
            });
        }
        if self.degree() == Some(0) {
            return Ok(Vec::new());
        }
        // gcd(x^p - x, self) is the product of (x - r) over the distinct
        // F_p-rational roots r.
        let monic = self.make_monic();
        let xp = PrimePoly::x(self.field).pow_mod(self.field.p(), &monic)?;
        let frob = xp.sub(&PrimePoly::x(self.field))?;
        let linear_part = monic.gcd(&frob)?;
        let mut roots = Vec::new();
        for (factor, _) in linear_part.factor()?.factors {
            debug_assert_eq!(factor.degree(), Some(1));
            // Monic x + c0 has root -c0.
            let c0 = factor.coeff(0);
            roots.push(if c0 == 0 { 0 } else { self.field.p() - c0 });
        }
        roots.sort_unstable();
        Ok(roots)
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial {
                context: "squarefree test of zero".into(),
            });
        }
        if self.degree() == Some(0) {
            return Ok(true);
        }
        let d = self.derivative();
        if d.is_zero() {
            return Ok(false);
        }
        Ok(self.gcd(&d)?.degree() == Some(0))
    }

    /// Distinct-degree blocks of a squarefree polynomial: (degree, number
    /// of irreducible factors of that degree), sorted by degree, without
    /// splitting same-degree factors apart.
    pub fn distinct_degree_blocks(&self) -> Result<Vec<(usize, usize)>> {
        if !self.is_squarefree()? {
            return Err(Error::NotSquarefree);
        }
        Ok(self
            .make_monic()
            .ddf_blocks_with(|_, _| true)?
            .expect("unconditional acceptance never aborts"))
    }

    /// Factorization shape [(degree, multiplicity)], one entry per
    /// irreducible factor, sorted — computed from squarefree decomposition
    /// and distinct-degree splitting alone, no equal-degree splitting.
    /// Agrees with `self.factor()?.shape()` at a fraction of the cost.
    pub fn factor_shape(&self) -> Result<Vec<(usize, usize)>> {
        let mut shape = Vec::new();
        for (part, mult) in self.squarefree_decomposition()? {
            if part.degree() == Some(0) {
                continue;
            }
            let blocks = part
                .make_monic()
                .ddf_blocks_with(|_, _| true)?
                .expect("unconditional acceptance never aborts");
            for (d, count) in blocks {
                for _ in 0..count {
                    shape.push((d, mult));
                }
            }
        }
        shape.sort_unstable();
        Ok(shape)
    }

    /// Distinct-degree factorization driver for a monic squarefree
    /// polynomial. Calls `accept(degree, count)` as each block of `count`
    /// irreducible degree-`degree` factors is discovered (in increasing
    /// degree order); returns None as soon as the callback rejects, the
    /// full sorted block list otherwise. The modulus shrinks as factors
    /// split off, so rejected candidates die cheaply.
    pub(crate) fn ddf_blocks_with(
        &self,
        accept: impl FnMut(usize, usize) -> bool,
    ) -> Result<Option<Vec<(usize, usize)>>> {
        self.ddf_blocks_guarded(accept, |_| true)
    }

    /// [`Self::ddf_blocks_with`] plus a progress guard: `milestone(d)` runs
    /// after the degree-`d` pass completes, whether or not it produced a
    /// block, and returning false aborts the scan. This lets a caller give
    /// up as soon as a factor it needs at a specific small degree failed
    /// to appear, instead of walking the whole Frobenius chain. The guard
    /// is not consulted for the final remaining-factor block.
    pub(crate) fn ddf_blocks_guarded(
        &self,
        mut accept: impl FnMut(usize, usize) -> bool,
        mut milestone: impl FnMut(usize) -> bool,
    ) -> Result<Option<Vec<(usize, usize)>>> {
        debug_assert!(self.is_monic() || self.is_zero());
        let field = self.field;
        let p = field.p();
        let x = PrimePoly::x(field);
        let mut g = self.clone();
        let mut h = x.rem(&g)?;
        let mut blocks = Vec::new();
        let mut d = 0usize;
        while g.degree().is_some_and(|dg| dg >= 2 * (d + 1)) {
            d += 1;
            h = h.pow_mod(p, &g)?;
            let fac = h.sub(&x)?.gcd(&g)?;
            if let Some(df) = fac.degree().filter(|&df| df > 0) {
                debug_assert_eq!(df % d, 0);
                let count = df / d;
                if !accept(d, count) {
                    return Ok(None);
                }
                g = g.divrem(&fac)?.0;
                h = h.rem(&g)?;
                blocks.push((d, count));
            }
            if !milestone(d) {
                return Ok(None);
            }
        }
        if let Some(dg) = g.degree().filter(|&dg| dg > 0) {
            if !accept(dg, 1) {
                return Ok(None);
            }
            blocks.push((dg, 1));
        }
        Ok(Some(blocks))
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by (degree, coefficient vector); deterministic.
    pub fn factor(&self) -> Result<ModFactorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial {
                context: "factorization of zero".into(),
            });
        }
        let unit = self.leading().unwrap();
        let mut rng = self.seeded_rng();
        let mut factors: Vec<(PrimePoly, usize)> = Vec::new();
        for (part, mult) in self.squarefree_decomposition()? {
            if part.degree() == Some(0) {
                continue;
            }
            for (prod, d) in ddf(&part)? {
                for irr in edf(&prod, d, &mut rng)? {
                    factors.push((irr, mult));
                }
            }
        }
        factors.sort_by(|(a, _), (b, _)| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| a.coeffs.cmp(&b.coeffs))
        });
        Ok(ModFactorization {
            unit,
            factors,
            field: self.field,
        })
    }

    /// Rabin irreducibility test, independent of [`PrimePoly::factor`].
    ///
    /// Monic-normalizes first; degree-0 and zero polynomials are not
    /// irreducible. `f` of degree n is irreducible iff `x^(p^n) = x (mod f)`
    /// and `gcd(x^(p^(n/q)) - x, f) = 1` for every prime `q | n`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Ok(false),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let f = self.make_monic();
        let p = self.field.p();
        let x = PrimePoly::x(self.field);
        // Checkpoints: the proper maximal sub-iterates n/q.
        let mut checkpoints: Vec<usize> = prime_divisors(n as u64)
            .into_iter()
            .map(|q| n / q as usize)
            .collect();
        checkpoints.sort_unstable();
        checkpoints.dedup();
        let mut h = x.clone(); // x^(p^i) mod f, starting at i = 0
        for i in 1..=n {
            h = h.pow_mod(p, &f)?;
            if checkpoints.binary_search(&i).is_ok() {
                let g = h.sub(&x)?.gcd(&f)?;
                if g.degree() != Some(0) {
                    return Ok(false);
                }
            }
        }
        Ok(h == x)
    }

    fn seeded_rng(&self) -> ChaCha8Rng {
        let mut seed = 0x9e37_79b9_7f4a_7c15u64 ^ self.field.p();
        for &c in &self.coeffs {
            seed = seed
                .rotate_left(13)
                .wrapping_mul(0x100_0000_01b3)
                .wrapping_add(c);
        }
        ChaCha8Rng::seed_from_u64(seed)
    }
}

/// Squarefree decomposition worker: Yun's loop plus p-th-root descent.
/// `scale` multiplies all multiplicities found below this level.
fn sqf_rec(f: &PrimePoly, scale: usize, out: &mut Vec<(PrimePoly, usize)>) -> Result<()> {
    if f.degree() == Some(0) {
        return Ok(());
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f = g(x^p): every multiplicity gains a factor of p.
        return sqf_rec(&f.pth_root(), scale * f.field.p() as usize, out);
    }
    let mut c = f.gcd(&deriv)?;
    let mut w = f.divrem(&c)?.0;
    let mut i = 1usize;
    while w.degree() != Some(0) {
        let y = w.gcd(&c)?;
        let fac = w.divrem(&y)?.0;
        if fac.degree() != Some(0) {
            out.push((fac, i * scale));
        }
        c = c.divrem(&y)?.0;
        w = y;
        i += 1;
    }
    if c.degree() != Some(0) {
        // Remaining factors have multiplicity divisible by p.
        sqf_rec(&c.pth_root(), scale * f.field.p() as usize, out)?;
    }
    Ok(())
}

/// Schoolbook product of coefficient slices mod p (u128 accumulator with
/// lazy reduction).
fn mul_slices(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let pw = p as u128;
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let cell = &mut acc[i + j];
            *cell += x as u128 * y as u128 % pw;
            if *cell >= (1u128 << 126) {
                *cell %= pw;
            }
        }
    }
    acc.into_iter().map(|c| (c % pw) as u64).collect()
}

const KARATSUBA_THRESHOLD: usize = 32;

fn add_slices(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        let t = *o + s;
        *o = if t >= p { t - p } else { t };
    }
    out
}

fn sub_assign_slices(p: u64, acc: &mut [u64], s: &[u64]) {
    debug_assert!(acc.len() >= s.len());
    for (o, &v) in acc.iter_mut().zip(s) {
        *o = if *o >= v { *o - v } else { *o + p - v };
    }
}

/// Karatsuba product of fully reduced coefficient slices mod p; falls back
/// to the schoolbook kernel below the threshold.
fn karatsuba_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) <= KARATSUBA_THRESHOLD {
        return mul_slices(p, a, b);
    }
    let h = a.len().max(b.len()).div_ceil(2);
    let (a0, a1) = a.split_at(a.len().min(h));
    let (b0, b1) = b.split_at(b.len().min(h));
    let z0 = karatsuba_mul(p, a0, b0);
    let z2 = karatsuba_mul(p, a1, b1);
    let mut z1 = karatsuba_mul(p, &add_slices(p, a0, a1), &add_slices(p, b0, b1));
    sub_assign_slices(p, &mut z1, &z0);
    sub_assign_slices(p, &mut z1, &z2);
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &c) in z0.iter().enumerate() {
        out[i] = c;
    }
    // Skip zeros: cancelled top coefficients of z1 may sit one slot past
    // the true product degree in unbalanced splits.
    for (i, &c) in z1.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let o = &mut out[h + i];
        let t = *o + c;
        *o = if t >= p { t - p } else { t };
    }
    for (i, &c) in z2.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let o = &mut out[2 * h + i];
        let t = *o + c;
        *o = if t >= p { t - p } else { t };
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// returns (product of all irreducible factors of degree d, d) pairs.
fn ddf(f: &PrimePoly) -> Result<Vec<(PrimePoly, usize)>> {
    let field = f.field();
    let p = field.p();
    let mut res = Vec::new();
    let mut g = f.clone();
    let mut h = PrimePoly::x(field);
    let x = PrimePoly::x(field);
    let mut d = 0usize;
    while g.degree().is_some_and(|dg| dg >= 2 * (d + 1)) {
        d += 1;
        h = h.pow_mod(p, f)?; // x^(p^d) mod f
        let fac = h.sub(&x)?.gcd(&g)?;
        if fac.degree() != Some(0) {
            g = g.divrem(&fac)?.0;
            res.push((fac, d));
        }
    }
    if g.degree().is_some_and(|dg| dg > 0) {
        let dg = g.degree().unwrap();
        res.push((g, dg));
    }
    Ok(res)
}

/// Equal-degree splitting (Cantor-Zassenhaus): `f` monic squarefree, all
/// irreducible factors of degree `d`.
fn edf(f: &PrimePoly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<PrimePoly>> {
    let deg = f.degree().unwrap_or(0);
    if deg == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field();
    let p = field.p();
    let split = loop {
        let a = random_poly(field, deg, rng);
        if a.degree().is_none_or(|da| da < 1) {
            continue;
        }
        let candidate = if p == 2 {
            // Trace map over F_(2^d): a + a^2 + ... + a^(2^(d-1)) mod f.
            let mut t = a.clone();
            let mut sq = a.clone();
            for _ in 1..d {
                sq = sq.mul(&sq)?.rem(f)?;
                t = t.add(&sq)?;
            }
            t.gcd(f)?
        } else {
            // a^((p^d - 1)/2) is +-1 in each residue field.
            let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = a.pow_mod_big(&exp, f)?;
            let one = PrimePoly::one(field);
            b.sub(&one)?.gcd(f)?
        };
        let cd = candidate.degree().unwrap_or(0);
        if cd > 0 && cd < deg {
            break candidate;
        }
    };
    let other = f.divrem(&split)?.0;
    let mut out = edf(&split, d, rng)?;
    out.extend(edf(&other, d, rng)?);
    Ok(out)
}

fn random_poly(field: PrimeField, deg_bound: usize, rng: &mut ChaCha8Rng) -> PrimePoly {
    let coeffs = (0..deg_bound)
        .map(|_| rng.random_range(0..field.p()))
        .collect();
    PrimePoly::new(field, coeffs)
}

/// Distinct prime divisors of `n >= 1` (trial division; inputs are small).
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Resultant of two nonzero polynomials over `F_p`, by the Euclidean
/// recurrence `Res(a, b) = (-1)^(deg a deg b) lc(b)^(deg a - deg r) Res(b, r)`
/// with `r = a mod b`, and `Res(a, c) = c^(deg a)` for constants.
pub fn resultant_mod(a0: &PrimePoly, b0: &PrimePoly) -> Result<u64> {
    if a0.is_zero() || b0.is_zero() {
        return Err(Error::ZeroPolynomial {
            context: "resultant of zero over F_p".into(),
        });
    }
    let field = a0.field();
    let mut a = a0.clone();
    let mut b = b0.clone();
    let mut res = 1u64;
    let mut neg = false;
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        if db == 0 {
            res = field.mul(res, field.pow(b.coeff(0), da as u64));
            break;
        }
        let r = a.rem(&b)?;
        if r.is_zero() {
            return Ok(0);
        }
        let dr = r.degree().unwrap();
        if da % 2 == 1 && db % 2 == 1 {
            neg = !neg;
        }
        res = field.mul(res, field.pow(b.leading().unwrap(), (da - dr) as u64));
        a = b;
        b = r;
    }
    Ok(if neg { field.neg(res) } else { res })
}

/// Exact integer resultant by Chinese remaindering of `resultant_mod` over
/// 62-bit primes until the product of moduli clears the Hadamard bound
/// `|Res(a, b)|^2 <= |a|_2^(2 deg b) |b|_2^(2 deg a)`.
pub fn resultant_crt(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    let da = match a.degree() {
        Some(d) => d as u32,
        None => {
            return Err(Error::ZeroPolynomial {
                context: "resultant of the zero polynomial".into(),
            })
        }
    };
    let db = match b.degree() {
        Some(d) => d as u32,
        None => {
            return Err(Error::ZeroPolynomial {
                context: "resultant of the zero polynomial".into(),
            })
        }
    };
    let norm_sq = |f: &IntPoly| -> BigInt { f.coeffs().iter().map(|c| c * c).sum() };
    let bound_sq = norm_sq(a).pow(db) * norm_sq(b).pow(da);
    let four_bound_sq = BigInt::from(4) * bound_sq;
    let lc_a = a.leading().unwrap().clone();
    let lc_b = b.leading().unwrap().clone();
    let mut modulus = BigInt::one();
    let mut acc = BigInt::zero();
    let mut candidate = (1u64 << 62) + 1;
    while &modulus * &modulus <= four_bound_sq {
        // Next 62-bit prime, skipping any that drop a leading coefficient.
        let p = loop {
            candidate -= 2;
            if is_prime_u64(candidate) {
                break candidate;
            }
        };
        let field = PrimeField::new(p)?;
        if field.reduce_bigint(&lc_a) == 0 || field.reduce_bigint(&lc_b) == 0 {
            continue;
        }
        let r = resultant_mod(
            &PrimePoly::from_intpoly(field, a),
            &PrimePoly::from_intpoly(field, b),
        )?;
        // CRT step: keep acc in [0, modulus) with acc ≡ Res mod each prime.
        let t = field.mul(
            field.sub(r, field.reduce_bigint(&acc)),
            field.inv(field.reduce_bigint(&modulus)),
        );
        acc += &modulus * BigInt::from(t);
        modulus *= BigInt::from(p);
    }
    // Symmetric representative.
    if BigInt::from(2) * &acc > modulus {
        acc -= modulus;
    }
    Ok(acc)
}

/// All primes up to and including `bound`, ascending (Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2usize;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &keep)| keep.then_some(i as u64))
        .collect()
}

/// A complete factorization over `F_p`: `unit * prod factor^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModFactorization {
    /// Leading unit in `F_p^*` (1 for monic inputs).
    pub unit: u64,
    /// Monic irreducible factors with multiplicities, sorted by
    /// (degree, coefficient vector).
    pub factors: Vec<(PrimePoly, usize)>,
    field: PrimeField,
}

impl ModFactorization {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Reassembles `unit * prod factor^mult`.
    pub fn product(&self) -> Result<PrimePoly> {
        let mut acc = PrimePoly::constant(self.field, self.unit);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f)?;
            }
        }
        Ok(acc)
    }

    /// The factorization shape: (degree, multiplicity) pairs, sorted.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        let mut s: Vec<(usize, usize)> = self
            .factors
            .iter()
            .map(|(f, m)| (f.degree().unwrap_or(0), *m))
            .collect();
        s.sort_unstable();
        s
    }

    /// Degrees of the irreducible factors, with multiplicity, sorted.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.degree().unwrap_or(0), *m))
            .collect();
        d.sort_unstable();
        d
    }
}
