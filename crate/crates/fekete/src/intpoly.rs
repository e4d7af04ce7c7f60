//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored in ascending order (`coeffs[k]` multiplies `x^k`)
//! and kept normalized: no trailing zeros, so the zero polynomial is the
//! empty vector. All arithmetic is exact over `BigInt`; nothing in this
//! module ever rounds.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial in `Z[x]`, coefficients ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial from ascending coefficients, dropping trailing zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Convenience constructor from machine integers, ascending.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Ascending coefficient slice (empty for zero).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Exact evaluation at a rational point (Horner).
    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Exact evaluation at an integer point (Horner).
    pub fn evaluate_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// `f(x^k)`. For `k = 0` this is `f(1)` as a constant.
    pub fn compose_x_pow(&self, k: usize) -> IntPoly {
        if k == 0 {
            return IntPoly::constant(self.evaluate_int(&BigInt::one()));
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        if self.is_zero() {
            return IntPoly::zero();
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        IntPoly::new(coeffs)
    }

    /// Composition `self(g)` (Horner in `g`).
    pub fn compose(&self, g: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &IntPoly::constant(c.clone());
        }
        acc
    }

    /// `x^k * f`.
    pub fn mul_x_pow(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder by a **monic** divisor; exact over `Z[x]`.
    ///
    /// Panics if `d` is not monic (internal contract; public callers go
    /// through [`IntPoly::exact_div`]).
    pub fn divrem_monic(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(d.is_monic(), "divrem_monic requires a monic divisor");
        let dd = d.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let qlen = rem.len() - dd;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let t = std::mem::take(&mut rem[k + dd]);
            if t.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().take(dd).enumerate() {
                let prod = dc * &t;
                rem[k + j] -= prod;
            }
            quot[k] = t;
        }
        rem.truncate(dd);
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Exact division in `Z[x]`.
    ///
    /// Succeeds iff `d` divides `self` exactly over the integers; otherwise
    /// returns [`Error::NonExactDivision`]. (If the quotient exists in
    /// `Z[x]`, classical long division with exact leading-coefficient steps
    /// finds it, so the step-by-step divisibility check is complete.)
    pub fn exact_div(&self, d: &IntPoly) -> Result<IntPoly> {
        if d.is_zero() {
            return Err(Error::ZeroPolynomial {
                context: "division by the zero polynomial".into(),
            });
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let dd = d.degree().unwrap();
        let lc = d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Err(Error::NonExactDivision {
                context: format!("degree {} by degree {}", rem.len() - 1, dd),
            });
        }
        let qlen = rem.len() - dd;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let t = std::mem::take(&mut rem[k + dd]);
            if t.is_zero() {
                continue;
            }
            let (q, r) = t.div_rem(lc);
            if !r.is_zero() {
                return Err(Error::NonExactDivision {
                    context: "leading coefficient does not divide".into(),
                });
            }
            for (j, dc) in d.coeffs.iter().take(dd).enumerate() {
                let prod = dc * &q;
                rem[k + j] -= prod;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonExactDivision {
                context: "nonzero remainder".into(),
            });
        }
        Ok(IntPoly::new(quot))
    }

    /// Content: non-negative gcd of all coefficients (0 for the zero poly).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part `self / content` (zero stays zero).
    pub fn primitive(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Greatest common divisor in `Z[x]`, normalized to a positive leading
    /// coefficient. Uses the primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        fn pos_lc(p: IntPoly) -> IntPoly {
            match p.leading() {
                Some(c) if c.is_negative() => -&p,
                _ => p,
            }
        }
        if self.is_zero() {
            return pos_lc(other.clone());
        }
        if other.is_zero() {
            return pos_lc(self.clone());
        }
        let cont = self.content().gcd(&other.content());
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_zero() {
                return pos_lc(a.primitive().scale(&cont));
            }
            if b.degree() == Some(0) {
                return pos_lc(IntPoly::constant(cont));
            }
            let r = prem(&a, &b);
            a = b;
            b = r.primitive();
        }
    }

    /// Resultant `Res(self, other)`, exact. Errors on zero input.
    ///
    /// Small problems run the primitive pseudo-remainder sequence directly;
    /// past a degree threshold the resultant is assembled from reductions
    /// modulo 62-bit primes by the Chinese remainder theorem under a
    /// Hadamard bound, which avoids the PRS coefficient blow-up. A naive
    /// Sylvester determinant is kept in the test suite as an oracle for
    /// both paths.
    pub fn resultant(&self, other: &IntPoly) -> Result<BigInt> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial {
                context: "resultant of the zero polynomial".into(),
            });
        }
        let total = self.degree().unwrap() + other.degree().unwrap();
        if total <= 40 {
            self.resultant_prs(other)
        } else {
            crate::modpoly::resultant_crt(self, other)
        }
    }

    /// Resultant by the primitive pseudo-remainder sequence, carrying the
    /// exact correction factor as a rational.
    pub(crate) fn resultant_prs(&self, other: &IntPoly) -> Result<BigInt> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial {
                context: "resultant of the zero polynomial".into(),
            });
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = BigRational::one();
        loop {
            let m = a.degree().unwrap();
            let n = b.degree().unwrap();
            if n == 0 {
                // Res(a, c) = c^m for constant c.
                acc *= rat_pow(b.leading().unwrap(), m as i64);
                debug_assert!(acc.is_integer(), "resultant accumulator not integral");
                return Ok(acc.to_integer());
            }
            if m < n {
                if (m * n) % 2 == 1 {
                    acc = -acc;
                }
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            // m >= n >= 1: one pseudo-division step.
            //   R = lc(b)^(m-n+1) * a  mod b,        deg R = r < n
            //   Res(a,b) = (-1)^(mn) lc(b)^(m - r - (m-n+1) n) c^n Res(b, R/c)
            let big_r = prem(&a, &b);
            if big_r.is_zero() {
                return Ok(BigInt::zero());
            }
            let r = big_r.degree().unwrap();
            let c = big_r.content();
            let rp = big_r.primitive();
            if (m * n) % 2 == 1 {
                acc = -acc;
            }
            let exp = m as i64 - r as i64 - (m as i64 - n as i64 + 1) * n as i64;
            acc *= rat_pow(b.leading().unwrap(), exp);
            acc *= rat_pow(&c, n as i64);
            a = b;
            b = rp;
        }
    }

    /// Discriminant `(-1)^(d(d-1)/2) Res(f, f') / lc(f)`; requires degree >= 1.
    pub fn discriminant(&self) -> Result<BigInt> {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => {
                return Err(Error::ZeroPolynomial {
                    context: "discriminant needs degree >= 1".into(),
                })
            }
        };
        let res = self.resultant(&self.derivative())?;
        let lc = self.leading().unwrap();
        let (q, r) = res.div_rem(lc);
        debug_assert!(r.is_zero(), "lc(f) must divide Res(f, f')");
        if !r.is_zero() {
            return Err(Error::NonExactDivision {
                context: "Res(f, f') by lc(f)".into(),
            });
        }
        Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
    }

    /// `a_k == a_(d-k)` for all k.
    pub fn is_reciprocal(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|k| self.coeffs[k] == self.coeffs[n - 1 - k])
    }

    /// `x^deg(f) * f(1/x)`: the coefficient vector reversed.
    ///
    /// An involution exactly when the constant term is nonzero.
    pub fn reversal(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::new(coeffs)
    }

    /// For a reciprocal polynomial of even degree `2m`, the unique `g` with
    /// `f(x) = x^m g(x + 1/x)`.
    ///
    /// Expands `x^k + x^(-k)` in `y = x + 1/x` via the recurrence
    /// `c_k = y c_(k-1) - c_(k-2)`, `c_0 = 2`, `c_1 = y`.
    pub fn trace_polynomial(&self) -> Result<IntPoly> {
        let d = self.degree().ok_or_else(|| Error::ZeroPolynomial {
            context: "trace polynomial of the zero polynomial".into(),
        })?;
        if !self.is_reciprocal() {
            return Err(Error::NotReciprocal);
        }
        if d % 2 == 1 {
            return Err(Error::OddDegree { degree: d });
        }
        let m = d / 2;
        let mut g = IntPoly::constant(self.coeffs[m].clone());
        let y = IntPoly::x();
        let mut c_prev = IntPoly::constant(BigInt::from(2)); // c_0
        let mut c_cur = y.clone(); // c_1
        for k in 1..=m {
            g = &g + &c_cur.scale(&self.coeffs[m + k]);
            if k < m {
                let next = &(&y * &c_cur) - &c_prev;
                c_prev = c_cur;
                c_cur = next;
            }
        }
        Ok(g)
    }

    /// Number of real roots in the open interval `(lo, hi)` by Sturm's
    /// theorem. Requires `self` squarefree and neither endpoint a root.
    pub fn sturm_count(&self, lo: &BigRational, hi: &BigRational) -> Result<usize> {
        if self.degree().is_none() {
            return Err(Error::ZeroPolynomial {
                context: "Sturm count of the zero polynomial".into(),
            });
        }
        if lo >= hi {
            return Err(Error::InvalidInput {
                context: format!("empty interval ({lo}, {hi})"),
            });
        }
        if self.evaluate(lo).is_zero() {
            return Err(Error::EndpointRoot {
                endpoint: lo.to_string(),
            });
        }
        if self.evaluate(hi).is_zero() {
            return Err(Error::EndpointRoot {
                endpoint: hi.to_string(),
            });
        }
        let deriv = self.derivative();
        if self.gcd(&deriv).degree() != Some(0) {
            return Err(Error::NotSquarefree);
        }
        // Integer Sturm chain: pseudo-remainders with a positive multiplier
        // (positive row scaling preserves sign variations), negated, and
        // content-stripped.
        let mut chain = vec![self.primitive(), deriv.primitive()];
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            if b.degree().is_none() || b.degree() == Some(0) {
                break;
            }
            let lc = b.leading().unwrap();
            let delta = a.degree().unwrap() as i64 - b.degree().unwrap() as i64;
            let mut r = prem(a, b);
            // prem scaled a by lc^(delta+1); if that factor was negative,
            // undo the sign flip before negating for the Sturm step.
            if lc.is_negative() && (delta + 1) % 2 == 1 {
                r = -&r;
            }
            let next = (-&r).primitive();
            if next.is_zero() {
                break;
            }
            chain.push(next);
        }
        let variations = |x: &BigRational| -> usize {
            let mut count = 0;
            let mut last: Option<Ordering> = None;
            for p in &chain {
                let v = p.evaluate(x);
                if v.is_zero() {
                    continue;
                }
                let s = if v.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
                if let Some(prev) = last {
                    if prev != s {
                        count += 1;
                    }
                }
                last = Some(s);
            }
            count
        };
        Ok(variations(lo) - variations(hi))
    }
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a  mod  b`.
///
/// Internal helper; callers guarantee `deg a >= deg b >= 0` and `b != 0`.
fn prem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let n = b.degree().unwrap();
    let lc = b.leading().unwrap().clone();
    let mut rem = a.coeffs.clone();
    debug_assert!(rem.len() > n || rem.is_empty());
    let steps = rem.len() - n;
    for k in (0..steps).rev() {
        let t = std::mem::take(&mut rem[k + n]);
        for c in rem.iter_mut().take(k + n) {
            *c *= &lc;
        }
        if !t.is_zero() {
            for (j, dc) in b.coeffs.iter().take(n).enumerate() {
                let prod = dc * &t;
                rem[k + j] -= prod;
            }
        }
    }
    rem.truncate(n);
    IntPoly::new(rem)
}

/// `base^exp` as an exact rational, allowing negative exponents.
/// `base` must be nonzero when `exp < 0`.
fn rat_pow(base: &BigInt, exp: i64) -> BigRational {
    let mag = base.pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

/// Whether `v` is a perfect square (over the integers; negatives are not).
pub fn is_perfect_square(v: &BigInt) -> bool {
    if v.is_negative() {
        return false;
    }
    let r = v.sqrt();
    &(&r * &r) == v
}

/// Whether nonzero `v` lies in the square class of nonzero `rep` in `Q*`.
///
/// Intended for `rep` in `{1, -1, q, -q}`: holds iff `v * rep` is a
/// positive perfect square.
pub fn square_class_matches(v: &BigInt, rep: &BigInt) -> Result<bool> {
    if v.is_zero() || rep.is_zero() {
        return Err(Error::ZeroValue);
    }
    let prod = v * rep;
    Ok(prod.is_positive() && is_perfect_square(&prod))
}

/// Wronskian `f' g - f g'`.
pub fn wronskian(f: &IntPoly, g: &IntPoly) -> IntPoly {
    &(&f.derivative() * g) - &(f * &g.derivative())
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        IntPoly::new(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        IntPoly::new(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let prod = a * b;
                coeffs[i + j] += prod;
            }
        }
        IntPoly::new(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for IntPoly {
    /// Descending order, e.g. `x^3 - 4*x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}*x")?,
                _ if unit => write!(f, "x^{k}")?,
                _ => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}
