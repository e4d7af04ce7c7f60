//! Fekete polynomials `F_n` and everything derived from them: the
//! decomposition into cyclotomic part and the interesting factor `f_n`,
//! the trace polynomial `g_n`, the auxiliary polynomials `G_n`, `u_q`,
//! `R_q`, the explicit closed form of `f_3p`, closed-form value and
//! discriminant predictions, separability modulo p, and unit-circle root
//! counting.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::{check_odd_prime_pair, phi1, phi_d, s_n_set};
use crate::error::{Error, Result};
use crate::intpoly::{wronskian, IntPoly};
use crate::modpoly::{is_prime_u64, PrimeField, PrimePoly};

/// The Fekete polynomial of the principal character mod n:
/// `F_n(x) = sum x^a` over `1 <= a <= n-1` with `gcd(a, n) = 1`.
pub fn build_f(n: u64) -> IntPoly {
    assert!(n >= 2, "build_f requires n >= 2");
    let mut coeffs = vec![BigInt::zero(); n as usize];
    for a in 1..n {
        if a.gcd(&n) == 1 {
            coeffs[a as usize] = BigInt::one();
        }
    }
    IntPoly::new(coeffs)
}

/// `F_n` by the recursion `F_mp = F_m * (1 + x^m + ... + x^(m(p-1))) -
/// F_m(x^p)` over the prime factorization; must agree with [`build_f`].
pub fn build_f_recursive(n: u64) -> Result<IntPoly> {
    assert!(n >= 2, "build_f_recursive requires n >= 2");
    if !crate::cyclotomic::is_squarefree_u64(n) {
        return Err(Error::NotSquarefree);
    }
    fn rec(n: u64) -> IntPoly {
        if is_prime_u64(n) {
            return build_f(n);
        }
        let p = crate::modpoly::prime_divisors(n)
            .into_iter()
            .max()
            .expect("n >= 2 has a prime divisor");
        let m = n / p;
        let f_m = rec(m);
        let mut geom = vec![BigInt::zero(); (m * (p - 1) + 1) as usize];
        for i in 0..p {
            geom[(m * i) as usize] = BigInt::one();
        }
        let geom = IntPoly::new(geom);
        &(&f_m * &geom) - &f_m.compose_x_pow(p as usize)
    }
    Ok(rec(n))
}

/// `G_n = sum (a x^a + (n-a) x^(n+a))` over the units `a` of `Z/n`;
/// satisfies `x (x^n - 1) F_n' = n x^n F_n - G_n` exactly.
pub fn build_g(n: u64) -> Result<IntPoly> {
    assert!(n >= 2, "build_g requires n >= 2");
    if !crate::cyclotomic::is_squarefree_u64(n) {
        return Err(Error::NotSquarefree);
    }
    let mut coeffs = vec![BigInt::zero(); (2 * n) as usize];
    for a in 1..n {
        if a.gcd(&n) == 1 {
            coeffs[a as usize] += BigInt::from(a);
            coeffs[(n + a) as usize] += BigInt::from(n - a);
        }
    }
    Ok(IntPoly::new(coeffs))
}

fn check_odd_prime(q: u64) -> Result<()> {
    if q < 3 || q.is_multiple_of(2) || !is_prime_u64(q) {
        return Err(Error::NotOddPrime { q });
    }
    Ok(())
}

/// `s_q(x) = x^q - 1`.
pub fn s_q_poly(q: u64) -> Result<IntPoly> {
    check_odd_prime(q)?;
    Ok(&IntPoly::monomial(BigInt::one(), q as usize) - &IntPoly::one())
}

/// `t_q(x) = F_q(x) = x + x^2 + ... + x^(q-1)`.
pub fn t_q_poly(q: u64) -> Result<IntPoly> {
    check_odd_prime(q)?;
    Ok(build_f(q))
}

/// `u_q = W(s_q, F_q)`, the Wronskian `s_q' F_q - s_q F_q'`; verified
/// against the closed form `Φ_q^2 - q x^(q-1)`. Degree `2q - 2`.
pub fn u_q(q: u64) -> Result<IntPoly> {
    check_odd_prime(q)?;
    let w = wronskian(&s_q_poly(q)?, &t_q_poly(q)?);
    let phi = phi_d(q);
    let closed = &(&phi * &phi) - &IntPoly::monomial(BigInt::from(q), (q - 1) as usize);
    assert_eq!(w, closed, "u_{q}: Wronskian and closed form disagree");
    Ok(w)
}

/// `R_q(y) = Res_x(u_q(x), s_q(x) - y t_q(x))`, an even polynomial of
/// degree `2q - 2` in y.
///
/// Computed by evaluating the resultant at `2q - 1` integer values of y
/// and interpolating exactly; the result must come out integral, which
/// makes the evaluation-interpolation shortcut self-checking.
pub fn r_q(q: u64) -> Result<IntPoly> {
    check_odd_prime(q)?;
    let u = u_q(q)?;
    let s = s_q_poly(q)?;
    let t = t_q_poly(q)?;
    let points: Vec<i64> = (0..(2 * q - 1) as i64)
        .map(|k| if k % 2 == 0 { k / 2 } else { -(k / 2) - 1 })
        .collect();
    let values: Vec<BigInt> = points
        .iter()
        .map(|&y0| {
            let a = &s - &t.scale(&BigInt::from(y0));
            u.resultant(&a)
        })
        .collect::<Result<_>>()?;
    // Exact Lagrange interpolation over the rationals.
    let mut acc = vec![BigRational::zero(); points.len()];
    for (i, &xi) in points.iter().enumerate() {
        let mut numer = IntPoly::one();
        let mut denom = BigInt::one();
        for (j, &xj) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            numer = &numer * &IntPoly::from_coeffs(&[-xj, 1]);
            denom *= BigInt::from(xi - xj);
        }
        let weight = BigRational::new(values[i].clone(), denom);
        for (k, c) in numer.coeffs().iter().enumerate() {
            acc[k] += &weight * BigRational::from_integer(c.clone());
        }
    }
    let mut coeffs = Vec::with_capacity(acc.len());
    for c in acc {
        if !c.is_integer() {
            return Err(Error::InterpolationNotIntegral);
        }
        coeffs.push(c.to_integer());
    }
    Ok(IntPoly::new(coeffs))
}

/// Factors `n = p q` into odd primes `p > q`, or reports it is not such a
/// semiprime.
pub fn factor_semiprime(n: u64) -> Result<(u64, u64)> {
    let fac = crate::cyclotomic::factorize(n);
    match fac.as_slice() {
        [(q, 1), (p, 1)] if *q > 2 => Ok((*p, *q)),
        _ => Err(Error::NotSemiprime { n }),
    }
}

/// The full decomposition of `F_n` for a semiprime `n = pq`.
#[derive(Clone, Debug)]
pub struct FeketeDecomposition {
    pub n: u64,
    pub p: u64,
    pub q: u64,
    /// The divisor set S_n governing the cyclotomic part.
    pub s_n: BTreeSet<u64>,
    /// `x * prod_(d in S_n) Φ_d`.
    pub cyclo_part: IntPoly,
    /// The non-cyclotomic factor: `F_n = cyclo_part * f_n` exactly.
    pub f_n: IntPoly,
    /// The trace polynomial of `f_n`.
    pub g_n: IntPoly,
}

/// Splits `F_n` as `x * prod_(d in S_n) Φ_d * f_n` and builds the trace
/// polynomial `g_n`. The division must be exact — a remainder would mean
/// the S_n formula is wrong for this n, which is a hard error.
pub fn decompose(n: u64) -> Result<FeketeDecomposition> {
    let (p, q) = factor_semiprime(n)?;
    let s_n = s_n_set(p, q)?;
    let mut cyclo_part = IntPoly::x();
    for &d in &s_n {
        cyclo_part = &cyclo_part * &phi_d(d);
    }
    let f_n = build_f(n).exact_div(&cyclo_part)?;
    assert!(
        f_n.is_monic() && f_n.is_reciprocal() && f_n.degree().unwrap() % 2 == 0,
        "f_{n} must be monic reciprocal of even degree"
    );
    let g_n = f_n.trace_polynomial()?;
    Ok(FeketeDecomposition {
        n,
        p,
        q,
        s_n,
        cyclo_part,
        f_n,
        g_n,
    })
}

/// Closed form of `f_3p` for primes `p > 3`: the six-term numerator
/// `x^(2p+2) + x^(2p+1) + x^(p+2) + x^p + x + 1` divided by a cyclotomic
/// unit depending on `p mod 24`.
pub fn f_3p_explicit(p: u64) -> Result<IntPoly> {
    if p <= 3 || !is_prime_u64(p) {
        return Err(Error::InvalidInput {
            context: format!("f_3p_explicit requires a prime p > 3, got {p}"),
        });
    }
    let p = p as usize;
    let mut coeffs = vec![BigInt::zero(); 2 * p + 3];
    for e in [0, 1, p, p + 2, 2 * p + 1, 2 * p + 2] {
        coeffs[e] = BigInt::one();
    }
    let numerator = IntPoly::new(coeffs);
    let x2x1 = IntPoly::from_coeffs(&[1, 1, 1]); // x^2 + x + 1
    let x41 = IntPoly::from_coeffs(&[1, 0, 0, 0, 1]); // x^4 + 1
    match p % 24 {
        1 | 7 | 19 => Ok(numerator),
        13 => numerator.exact_div(&x41),
        5 => numerator.exact_div(&(&x2x1 * &x41)),
        11 | 17 | 23 => numerator.exact_div(&x2x1),
        _ => unreachable!("p > 3 prime is coprime to 24"),
    }
}

/// Closed-form predictions for `f_n`, `n = pq`: the four gcd invariants,
/// the degree, the values at ±1, and the square class of the
/// discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuePrediction {
    pub d1: u64,
    pub d2: u64,
    pub d3: u64,
    pub d4: u64,
    pub deg_f: u64,
    pub f_at_1: BigInt,
    pub f_at_minus1: BigInt,
    /// Square class of disc(f_n) as one of 1, -1, q, -q.
    pub disc_class: i64,
}

pub fn value_predictions(p: u64, q: u64) -> Result<ValuePrediction> {
    check_odd_prime_pair(p, q)?;
    let d1 = (p - 1).gcd(&(q - 1));
    let d2 = (p * q + 1).gcd(&(p + q));
    let d3 = (p - 1).gcd(&(q + 1));
    let d4 = (p + 1).gcd(&(q - 1));
    let p_is_1_mod_q = p % q == 1;
    let base = d1 as i64 + d3 as i64 + d4 as i64 - d2 as i64;
    let deg_f = if p_is_1_mod_q {
        (p * q) as i64 - p as i64 - 2 + base
    } else {
        (p * q) as i64 - p as i64 - q as i64 - 1 + base
    };
    debug_assert!(deg_f >= 0 && deg_f % 2 == 0);
    let core = d1 * d3 * d4;
    debug_assert_eq!(core % (2 * d2), 0, "f(±1) formula must be integral");
    let half = core / (2 * d2);
    let f_at_1 = BigInt::from(if p_is_1_mod_q { q * half } else { half });
    let f_at_minus1 = -BigInt::from(half);
    let disc_class = if p_is_1_mod_q {
        if p % 4 == 3 && q % 4 == 1 {
            q as i64
        } else {
            -(q as i64)
        }
    } else if p % 4 == 1 && q % 4 == 1 {
        -1
    } else {
        1
    };
    Ok(ValuePrediction {
        d1,
        d2,
        d3,
        d4,
        deg_f: deg_f as u64,
        f_at_1,
        f_at_minus1,
        disc_class,
    })
}

/// Separability data for `F_pq` over `F_p`.
#[derive(Clone, Debug)]
pub struct SeparabilityReport {
    pub n: u64,
    pub p: u64,
    pub q: u64,
    /// Irreducible factors of `F_pq mod p` of multiplicity >= 2, with their
    /// multiplicities, sorted by (degree, coefficients).
    pub repeated_factors: Vec<(PrimePoly, usize)>,
    /// The `F_p`-rational roots of `u_q`, sorted.
    pub u_q_roots: Vec<u64>,
    /// Whether `R_q` has a root in `F_p`.
    pub r_q_has_root: bool,
    pub separable: bool,
}

/// Factors `F_pq` modulo p far enough to report every repeated
/// irreducible factor, plus the `F_p`-rational roots of `u_q` and whether
/// `R_q` has a root mod p.
pub fn separability_analysis(p: u64, q: u64) -> Result<SeparabilityReport> {
    check_odd_prime_pair(p, q)?;
    let field = PrimeField::new(p)?;
    let n = p * q;
    let f_mod = PrimePoly::from_intpoly(field, &build_f(n));
    let mut repeated = Vec::new();
    for (part, mult) in f_mod.squarefree_decomposition()? {
        if mult < 2 || part.degree() == Some(0) {
            continue;
        }
        for (irr, m) in part.factor()?.factors {
            debug_assert_eq!(m, 1, "squarefree part factors with multiplicity 1");
            repeated.push((irr, mult));
        }
    }
    repeated.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    let u_mod = PrimePoly::from_intpoly(field, &u_q(q)?);
    let u_q_roots = u_mod.rational_roots()?;
    let r_mod = PrimePoly::from_intpoly(field, &r_q(q)?);
    let r_q_has_root = !r_mod.rational_roots()?.is_empty();
    let separable = repeated.is_empty();
    Ok(SeparabilityReport {
        n,
        p,
        q,
        repeated_factors: repeated,
        u_q_roots,
        r_q_has_root,
        separable,
    })
}

/// Counts roots of `F_n` on the unit circle for a semiprime `n = pq`:
/// every root of the cyclotomic part except the `x = 0` one lies on the
/// circle, and each real root of `g_n` in `(-2, 2)` lifts to a conjugate
/// pair of circle roots of `f_n`. Returns `(count, phi1(n))` and checks
/// `count >= phi1(n)`.
pub fn unit_circle_root_count(n: u64) -> Result<(u64, u64)> {
    let dec = decompose(n)?;
    let deriv = dec.g_n.derivative();
    if dec.g_n.gcd(&deriv).degree() != Some(0) {
        return Err(Error::NotSquarefreeTrace);
    }
    let two = BigRational::from_integer(BigInt::from(2));
    // g_n(±2) = ±f_n(±1) (up to sign) is nonzero, so ±2 are never roots.
    let real_roots = dec.g_n.sturm_count(&-two.clone(), &two)?;
    let count = dec.cyclo_part.degree().unwrap() as u64 - 1 + 2 * real_roots as u64;
    let bound = phi1(n)?;
    assert!(
        count >= bound,
        "unit-circle count {count} below the φ₁ bound {bound} for n = {n}"
    );
    Ok((count, bound))
}

/// Maximum absolute coefficient and the middle coefficient of an
/// even-degree polynomial.
pub fn coefficient_stats(f: &IntPoly) -> Result<(BigInt, BigInt)> {
    let d = f.degree().ok_or_else(|| Error::ZeroPolynomial {
        context: "coefficient stats of the zero polynomial".into(),
    })?;
    if d % 2 == 1 {
        return Err(Error::OddDegree { degree: d });
    }
    let max_abs = f
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .expect("nonzero polynomial has coefficients");
    Ok((max_abs, f.coeff(d / 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{divisors, mobius, radical, verified_cyclotomic_factors};

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs)
    }

    #[test]
    fn build_f_examples() {
        assert_eq!(build_f(3), p(&[0, 1, 1]));
        assert_eq!(build_f(10), p(&[0, 1, 0, 1, 0, 0, 0, 1, 0, 1]));
        assert_eq!(
            build_f(15),
            p(&[0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1])
        );
        assert_eq!(build_f(15).degree(), Some(14));
    }

    #[test]
    fn recursive_constructor_agrees() {
        for n in [6u64, 15, 21, 30, 105, 210] {
            assert_eq!(build_f_recursive(n).unwrap(), build_f(n), "n = {n}");
        }
        assert_eq!(build_f_recursive(6).unwrap(), p(&[0, 1, 0, 0, 0, 1]));
        assert!(matches!(build_f_recursive(12), Err(Error::NotSquarefree)));
    }

    #[test]
    fn g_polynomial() {
        // G_3 = x^5 + 2x^4 + 2x^2 + x = x * u_3.
        let g3 = build_g(3).unwrap();
        assert_eq!(g3, p(&[0, 1, 2, 0, 2, 1]));
        assert_eq!(g3, u_q(3).unwrap().mul_x_pow(1));
        // G_q = x * u_q for odd primes q <= 13.
        for q in [3u64, 5, 7, 11, 13] {
            assert_eq!(build_g(q).unwrap(), u_q(q).unwrap().mul_x_pow(1), "q = {q}");
        }
        assert!(matches!(build_g(12), Err(Error::NotSquarefree)));
    }

    #[test]
    fn g_differential_identity() {
        // x (x^n - 1) F_n' = n x^n F_n - G_n.
        for n in [3u64, 10, 15, 21] {
            let f = build_f(n);
            let g = build_g(n).unwrap();
            let xn1 = &IntPoly::monomial(BigInt::one(), n as usize) - &IntPoly::one();
            let lhs = (&xn1 * &f.derivative()).mul_x_pow(1);
            let rhs = &f.scale(&BigInt::from(n)).mul_x_pow(n as usize) - &g;
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn u_polynomials() {
        assert_eq!(u_q(3).unwrap(), p(&[1, 2, 0, 2, 1]));
        assert_eq!(u_q(5).unwrap(), p(&[1, 2, 3, 4, 0, 4, 3, 2, 1]));
        let u7 = u_q(7).unwrap();
        assert_eq!(u7.degree(), Some(12));
        let phi7 = phi_d(7);
        assert_eq!(
            u7,
            &(&phi7 * &phi7) - &IntPoly::monomial(BigInt::from(7), 6)
        );
        assert!(matches!(u_q(2), Err(Error::NotOddPrime { q: 2 })));
        assert!(matches!(u_q(9), Err(Error::NotOddPrime { q: 9 })));
    }

    #[test]
    fn u_discriminants() {
        assert_eq!(u_q(3).unwrap().discriminant().unwrap(), BigInt::from(-1728));
        assert_eq!(
            u_q(5).unwrap().discriminant().unwrap(),
            BigInt::from(-38_720_000_000i64)
        );
    }

    #[test]
    fn u_eisenstein_at_q() {
        for q in [3u64, 5, 7, 11, 13] {
            let shifted = u_q(q).unwrap().compose(&p(&[1, 1]));
            let qq = BigInt::from(q);
            let d = shifted.degree().unwrap();
            for k in 0..d {
                assert!(
                    (shifted.coeff(k) % &qq).is_zero(),
                    "u_{q}(x+1) coefficient {k}"
                );
            }
            assert_eq!(shifted.coeff(d), BigInt::one());
            assert_eq!(shifted.coeff(0), BigInt::from(q * (q - 1)));
            assert!(!(shifted.coeff(0) % (&qq * &qq)).is_zero());
        }
    }

    #[test]
    fn resultant_identities_for_s_and_t() {
        for q in [3u64, 5, 7] {
            let s = s_q_poly(q).unwrap();
            let t = t_q_poly(q).unwrap();
            assert_eq!(
                s.resultant(&s.derivative()).unwrap(),
                BigInt::from(q).pow(q as u32),
                "Res(s_{q}, s_{q}')"
            );
            assert_eq!(
                t.resultant(&t.derivative()).unwrap(),
                -BigInt::from(q - 1).pow((q - 3) as u32),
                "Res(t_{q}, t_{q}')"
            );
            assert_eq!(
                t.resultant(&s).unwrap(),
                BigInt::from(q - 1),
                "Res(t_{q}, s_{q})"
            );
        }
    }

    #[test]
    fn r_polynomials() {
        assert_eq!(r_q(3).unwrap(), p(&[54, 0, 36, 0, -2]));
        assert_eq!(
            r_q(5).unwrap(),
            p(&[12500, 0, 25000, 0, 500, 0, 400, 0, -64])
        );
        let r7 = r_q(7).unwrap();
        assert_eq!(r7.degree(), Some(12));
        assert_eq!(r7.leading().unwrap(), &BigInt::from(-7776));
        assert_eq!(r7.coeff(0), BigInt::from(4_941_258));
        // Even polynomial: odd coefficients vanish.
        for k in (1..12).step_by(2) {
            assert!(r7.coeff(k).is_zero());
        }
    }

    #[test]
    fn r_q_mod_q_collapses() {
        for q in [3u64, 5, 7, 11] {
            let field = PrimeField::new(q).unwrap();
            let r = PrimePoly::from_intpoly(field, &r_q(q).unwrap());
            let mut mono = vec![0u64; (2 * q - 1) as usize];
            mono[(2 * q - 2) as usize] = 1;
            assert_eq!(r, PrimePoly::new(field, mono), "q = {q}");
        }
    }

    #[test]
    fn decompose_15() {
        let dec = decompose(15).unwrap();
        assert_eq!((dec.p, dec.q), (5, 3));
        assert_eq!(dec.s_n.iter().copied().collect::<Vec<_>>(), vec![2, 4, 8]);
        assert_eq!(dec.f_n, p(&[1, 0, -1, 1, -1, 0, 1]));
        assert_eq!(dec.g_n, p(&[1, -4, 0, 1]));
        assert_eq!(&dec.cyclo_part * &dec.f_n, build_f(15));
    }

    #[test]
    fn decompose_21_and_35() {
        let dec = decompose(21).unwrap();
        assert_eq!(dec.f_n.degree(), Some(16));
        assert_eq!(
            dec.f_n,
            p(&[1, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 1])
        );
        assert_eq!(dec.g_n, p(&[2, -6, -16, 14, 20, -7, -8, 1, 1]));
        let dec = decompose(35).unwrap();
        assert_eq!(
            dec.f_n,
            p(&[1, 0, 0, 0, -1, 1, -1, 1, 0, -1, 1, 0, 1, -1, 0, 1, -1, 1, -1, 0, 0, 0, 1])
        );
        assert_eq!(dec.g_n, p(&[2, -8, 4, 46, -5, -71, 1, 43, 0, -11, 0, 1]));
        assert!(matches!(decompose(12), Err(Error::NotSemiprime { n: 12 })));
        assert!(matches!(decompose(9), Err(Error::NotSemiprime { n: 9 })));
        assert!(matches!(decompose(10), Err(Error::NotSemiprime { n: 10 })));
    }

    #[test]
    fn explicit_f_3p() {
        assert_eq!(f_3p_explicit(5).unwrap(), decompose(15).unwrap().f_n);
        let f21 = f_3p_explicit(7).unwrap();
        assert_eq!(f21.degree(), Some(16));
        assert_eq!(f21, decompose(21).unwrap().f_n);
        let f39 = f_3p_explicit(13).unwrap();
        assert_eq!(f39.degree(), Some(24));
        assert_eq!(f39, decompose(39).unwrap().f_n);
        for p in [11u64, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            assert_eq!(
                f_3p_explicit(p).unwrap(),
                decompose(3 * p).unwrap().f_n,
                "p = {p}"
            );
        }
        assert!(matches!(f_3p_explicit(3), Err(Error::InvalidInput { .. })));
        assert!(matches!(f_3p_explicit(15), Err(Error::InvalidInput { .. })));
    }

    #[test]
    fn value_prediction_examples() {
        let v = value_predictions(5, 3).unwrap();
        assert_eq!(
            (
                v.deg_f,
                v.f_at_1.clone(),
                v.f_at_minus1.clone(),
                v.disc_class
            ),
            (6, BigInt::from(1), BigInt::from(-1), 1)
        );
        let v = value_predictions(7, 3).unwrap();
        assert_eq!(
            (
                v.deg_f,
                v.f_at_1.clone(),
                v.f_at_minus1.clone(),
                v.disc_class
            ),
            (16, BigInt::from(6), BigInt::from(-2), -3)
        );
        let v = value_predictions(7, 5).unwrap();
        assert_eq!((v.d1, v.d2, v.d3, v.d4), (2, 12, 6, 4));
        assert_eq!(v.f_at_1, BigInt::from(2));
        assert_eq!(v.f_at_minus1, BigInt::from(-2));
    }

    #[test]
    fn value_predictions_match_decomposition() {
        for (pp, qq) in [
            (5u64, 3u64),
            (7, 3),
            (7, 5),
            (11, 3),
            (11, 5),
            (13, 7),
            (31, 5),
        ] {
            let v = value_predictions(pp, qq).unwrap();
            let dec = decompose(pp * qq).unwrap();
            assert_eq!(dec.f_n.degree(), Some(v.deg_f as usize), "deg ({pp},{qq})");
            assert_eq!(
                dec.f_n.evaluate_int(&BigInt::one()),
                v.f_at_1,
                "f(1) ({pp},{qq})"
            );
            assert_eq!(
                dec.f_n.evaluate_int(&BigInt::from(-1)),
                v.f_at_minus1,
                "f(-1) ({pp},{qq})"
            );
            let disc = dec.f_n.discriminant().unwrap();
            assert!(
                crate::intpoly::square_class_matches(&disc, &BigInt::from(v.disc_class)).unwrap(),
                "disc class ({pp},{qq})"
            );
        }
    }

    #[test]
    fn separability_examples() {
        let rep = separability_analysis(11, 5).unwrap();
        assert!(rep.separable);
        assert!(rep.repeated_factors.is_empty());
        let rep = separability_analysis(101, 7).unwrap();
        assert!(!rep.separable);
        let field = PrimeField::new(101).unwrap();
        let target = PrimePoly::new(field, vec![10, 42, 1]);
        assert!(
            rep.repeated_factors
                .iter()
                .any(|(f, m)| *f == target && *m == 2),
            "x^2 + 42x + 10 with multiplicity 2: {:?}",
            rep.repeated_factors
        );
        let rep = separability_analysis(13, 11).unwrap();
        let field = PrimeField::new(13).unwrap();
        let target = PrimePoly::new(field, vec![10, 9, 1]);
        assert!(rep
            .repeated_factors
            .iter()
            .any(|(f, m)| *f == target && *m == 2));
    }

    #[test]
    fn separability_multiplicity_relation() {
        // Repeated roots x0 of F_pq mod p satisfy
        // mult_F(x0) - 1 = mult_u(x0) for the u_q factor pattern; check via
        // the shared repeated factors for (101, 7).
        let rep = separability_analysis(101, 7).unwrap();
        let field = PrimeField::new(101).unwrap();
        let u = PrimePoly::from_intpoly(field, &u_q(7).unwrap());
        for (f, m) in &rep.repeated_factors {
            // Each repeated factor of F divides u with multiplicity m - 1.
            let mut cur = u.clone();
            let mut mult_u = 0;
            loop {
                let (quot, rem) = cur.divrem(f).unwrap();
                if !rem.is_zero() {
                    break;
                }
                mult_u += 1;
                cur = quot;
            }
            assert_eq!(mult_u, m - 1, "factor {f:?}");
        }
    }

    #[test]
    fn unit_circle_counts() {
        assert_eq!(unit_circle_root_count(15).unwrap(), (11, 3));
        let (count, bound) = unit_circle_root_count(21).unwrap();
        assert_eq!(bound, 5);
        assert!(count >= bound);
        let (count, bound) = unit_circle_root_count(35).unwrap();
        assert_eq!(bound, 15);
        assert!(count >= bound);
    }

    #[test]
    fn coefficient_statistics() {
        let f15 = decompose(15).unwrap().f_n;
        assert_eq!(
            coefficient_stats(&f15).unwrap(),
            (BigInt::one(), BigInt::one())
        );
        let f21 = decompose(21).unwrap().f_n;
        assert_eq!(coefficient_stats(&f21).unwrap().1, BigInt::zero());
        let f39 = decompose(39).unwrap().f_n;
        assert_eq!(coefficient_stats(&f39).unwrap().1, BigInt::from(-1));
        assert!(matches!(
            coefficient_stats(&p(&[1, 1])),
            Err(Error::OddDegree { degree: 1 })
        ));
    }

    #[test]
    fn f_minus_one_and_derivative_values() {
        for n in [3u64, 9, 15, 21, 45, 105] {
            let f = build_f(n);
            assert!(f.evaluate_int(&BigInt::from(-1)).is_zero(), "F_{n}(-1)");
            let n0 = radical(n);
            let expect = BigInt::from(mobius(n0)) * BigInt::from(crate::cyclotomic::euler_phi(n0))
                / BigInt::from(2);
            assert_eq!(
                f.derivative().evaluate_int(&BigInt::from(-1)),
                expect,
                "F_{n}'(-1)"
            );
        }
    }

    #[test]
    fn mobius_sum_and_radical_identities() {
        // F_n = sum_(m|n) mu(m) x^m (1 - x^n)/(1 - x^m) for squarefree n.
        for n in [3u64, 15, 30] {
            let mut sum = IntPoly::zero();
            for m in divisors(n) {
                let mut geom = vec![BigInt::zero(); (n - m + 1) as usize];
                for i in (0..=(n - m)).step_by(m as usize) {
                    geom[i as usize] = BigInt::one();
                }
                let term = IntPoly::new(geom)
                    .mul_x_pow(m as usize)
                    .scale(&BigInt::from(mobius(m)));
                sum = &sum + &term;
            }
            assert_eq!(sum, build_f(n), "n = {n}");
        }
        // F_n = F_radical(n) * (1 + x^n0 + ... ) for non-squarefree n.
        for n in [4u64, 12, 18, 50] {
            let n0 = radical(n);
            let mut geom = vec![BigInt::zero(); (n - n0 + 1) as usize];
            for i in (0..=(n - n0)).step_by(n0 as usize) {
                geom[i as usize] = BigInt::one();
            }
            assert_eq!(build_f(n), &build_f(n0) * &IntPoly::new(geom), "n = {n}");
        }
    }

    #[test]
    fn degree_consistency_with_s_n() {
        for n in [15u64, 21, 33, 35, 55, 77] {
            let dec = decompose(n).unwrap();
            let cyclo_deg: u64 = 1 + dec
                .s_n
                .iter()
                .map(|&d| crate::cyclotomic::euler_phi(d))
                .sum::<u64>();
            assert_eq!(
                cyclo_deg + dec.f_n.degree().unwrap() as u64,
                n - 1,
                "n = {n}"
            );
            // All verified cyclotomic divisors up to 2n within S_n ∪ {d | n}:
            let listed = verified_cyclotomic_factors(n, 2 * n);
            for d in listed {
                assert!(dec.s_n.contains(&d), "n = {n}: divisor {d} outside S_n");
            }
        }
    }
}
