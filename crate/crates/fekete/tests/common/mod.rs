//! Oracles shared by the integration suites: independent implementations
//! kept deliberately naive so they cannot share bugs with the library.
//!
//! Not every suite uses every oracle, so dead-code lints stay off here.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use fekete::intpoly::IntPoly;
use fekete::modpoly::{PrimeField, PrimePoly};

/// Fraction-free (Bareiss) determinant of an exact integer matrix.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Resultant via the determinant of the Sylvester matrix; the slow,
/// textbook definition.
pub fn sylvester_resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    let da = a.degree().expect("a nonzero");
    let db = b.degree().expect("b nonzero");
    if da == 0 {
        return a.coeff(0).pow(db as u32);
    }
    if db == 0 {
        return b.coeff(0).pow(da as u32);
    }
    let size = da + db;
    let mut m = vec![vec![BigInt::zero(); size]; size];
    for (row, matrix_row) in m.iter_mut().enumerate().take(db) {
        for k in 0..=da {
            matrix_row[row + k] = a.coeff(da - k).clone();
        }
    }
    for (row, matrix_row) in m.iter_mut().skip(db).enumerate().take(da) {
        for k in 0..=db {
            matrix_row[row + k] = b.coeff(db - k).clone();
        }
    }
    bareiss_determinant(m)
}

/// Irreducibility over F_p by trial division with every monic polynomial
/// of degree up to deg/2. Exponential; keep p and the degree tiny.
pub fn brute_force_irreducible(poly: &PrimePoly) -> bool {
    let p = poly.field().p();
    let Some(d) = poly.degree() else {
        return false;
    };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    for deg in 1..=d / 2 {
        // All monic divisor candidates of this degree, coefficients as
        // base-p digits of an index.
        let count = p.pow(deg as u32);
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(deg + 1);
            let mut rest = idx;
            for _ in 0..deg {
                coeffs.push(rest % p);
                rest /= p;
            }
            coeffs.push(1);
            let candidate = PrimePoly::new(poly.field(), coeffs);
            if poly.rem(&candidate).expect("monic divisor").is_zero() {
                return false;
            }
        }
    }
    true
}

/// Random integer polynomial with exact degree `deg` and coefficients in
/// `-bound..=bound`.
pub fn random_intpoly(rng: &mut impl Rng, deg: usize, bound: i64) -> IntPoly {
    loop {
        let coeffs: Vec<i64> = (0..=deg)
            .map(|_| rng.random_range(-bound..=bound))
            .collect();
        if coeffs[deg] != 0 {
            return IntPoly::from_coeffs(&coeffs);
        }
    }
}

/// Random polynomial over F_p with exact degree `deg`.
pub fn random_primepoly(rng: &mut impl Rng, field: PrimeField, deg: usize) -> PrimePoly {
    let p = field.p();
    let mut coeffs: Vec<u64> = (0..=deg).map(|_| rng.random_range(0..p)).collect();
    if coeffs[deg] == 0 {
        coeffs[deg] = 1 + rng.random_range(0..p - 1);
    }
    PrimePoly::new(field, coeffs)
}

/// Odd semiprimes n = pq with primes 3 <= q < p, up to `limit` inclusive.
pub fn odd_semiprimes_through(limit: u64) -> Vec<u64> {
    fekete::scan::semiprimes_in(9, limit + 1)
}
