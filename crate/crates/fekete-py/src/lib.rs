//! Python bindings for the `fekete` crate.
//!
//! Thin wrappers only: every function converts arguments, calls the
//! library, and converts the result back. Polynomials cross the boundary
//! as ascending coefficient lists of Python ints (exact — no floats),
//! structured results as plain dicts, and certificates additionally carry
//! their canonical JSON so they can be stored and re-verified later.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fekete::certify::{
    certify_f_irreducible, certify_g_irreducible, certify_galois_f, certify_galois_g,
    verify_certificate, CertKind, Certificate, SearchConfig, SearchOutcome,
};
use fekete::intpoly::IntPoly;
use fekete::modpoly::{PrimeField, PrimePoly};

fn err(e: fekete::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn poly(coeffs: Vec<BigInt>) -> IntPoly {
    IntPoly::new(coeffs)
}

fn coeff_list(f: &IntPoly) -> Vec<BigInt> {
    f.coeffs().to_vec()
}

fn prime_poly(coeffs: Vec<BigInt>, p: u64) -> PyResult<PrimePoly> {
    let field = PrimeField::new(p).map_err(err)?;
    Ok(PrimePoly::from_intpoly(field, &poly(coeffs)))
}

fn certificate_dict<'py>(py: Python<'py>, cert: &Certificate) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("kind", format!("{:?}", cert.kind))?;
    let witnesses: Vec<Bound<'py, PyDict>> = cert
        .witnesses
        .iter()
        .map(|w| {
            let wd = PyDict::new(py);
            wd.set_item("prime", w.prime)?;
            wd.set_item("shape", w.shape.clone())?;
            Ok(wd)
        })
        .collect::<PyResult<_>>()?;
    d.set_item("witnesses", witnesses)?;
    match &cert.aux {
        Some(aux) => {
            let a = PyDict::new(py);
            if let Some(path) = aux.fast_path {
                a.set_item("fast_path", path)?;
            }
            if let Some(square) = aux.disc_square {
                a.set_item("disc_square", square)?;
            }
            if let Some(middle) = &aux.middle_coeff {
                a.set_item("middle_coeff", middle)?;
            }
            if let Some(degree) = aux.odd_degree {
                a.set_item("odd_degree", degree)?;
            }
            d.set_item("aux", a)?;
        }
        None => d.set_item("aux", py.None())?,
    }
    d.set_item("json", cert.to_json().map_err(err)?)?;
    Ok(d)
}

fn outcome_dict<'py>(py: Python<'py>, outcome: &SearchOutcome) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    match outcome {
        SearchOutcome::Found { certificate } => {
            d.set_item("found", true)?;
            d.set_item("certificate", certificate_dict(py, certificate)?)?;
        }
        SearchOutcome::NotFound {
            prime_bound,
            diagnostics,
        } => {
            d.set_item("found", false)?;
            d.set_item("certificate", py.None())?;
            d.set_item("prime_bound", prime_bound)?;
            d.set_item("diagnostics", diagnostics)?;
        }
    }
    Ok(d)
}

/// Coefficients of F_n(x) = Σ x^a over 1 ≤ a ≤ n−1 with gcd(a, n) = 1,
/// ascending.
#[pyfunction]
fn build_f(n: u64) -> Vec<BigInt> {
    coeff_list(&fekete::fekete::build_f(n))
}

/// Coefficients of the d-th cyclotomic polynomial Φ_d, ascending.
#[pyfunction]
fn cyclotomic(d: u64) -> PyResult<Vec<BigInt>> {
    if d == 0 {
        return Err(PyValueError::new_err("d must be at least 1"));
    }
    Ok(coeff_list(&fekete::cyclotomic::phi_d(d)))
}

/// Full decomposition F_n = x · (cyclotomic part) · f_n for an odd
/// semiprime n = pq, plus the trace polynomial g_n of f_n.
#[pyfunction]
fn decompose(py: Python<'_>, n: u64) -> PyResult<Bound<'_, PyDict>> {
    let dec = fekete::fekete::decompose(n).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("n", dec.n)?;
    d.set_item("p", dec.p)?;
    d.set_item("q", dec.q)?;
    d.set_item("s_n", dec.s_n.iter().copied().collect::<Vec<u64>>())?;
    d.set_item("cyclo_part", coeff_list(&dec.cyclo_part))?;
    d.set_item("f", coeff_list(&dec.f_n))?;
    d.set_item("g", coeff_list(&dec.g_n))?;
    Ok(d)
}

/// Closed-form coefficients of f_3p for a prime p > 3, ascending.
#[pyfunction]
fn f3p(p: u64) -> PyResult<Vec<BigInt>> {
    Ok(coeff_list(&fekete::fekete::f_3p_explicit(p).map_err(err)?))
}

/// Predicted degree, f(±1), and discriminant square class for f_pq,
/// from the divisor data (D1, D2, D3, D4) alone.
#[pyfunction]
fn value_predictions(py: Python<'_>, p: u64, q: u64) -> PyResult<Bound<'_, PyDict>> {
    let v = fekete::fekete::value_predictions(p, q).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("d1", v.d1)?;
    d.set_item("d2", v.d2)?;
    d.set_item("d3", v.d3)?;
    d.set_item("d4", v.d4)?;
    d.set_item("deg_f", v.deg_f)?;
    d.set_item("f_at_1", v.f_at_1)?;
    d.set_item("f_at_minus1", v.f_at_minus1)?;
    d.set_item("disc_class", v.disc_class)?;
    Ok(d)
}

/// Coefficients of u_q = W(x^q − 1, F_q), the Wronskian governing
/// separability of F_pq mod p; equals Φ_q² − q·x^(q−1).
#[pyfunction]
fn u_q(q: u64) -> PyResult<Vec<BigInt>> {
    Ok(coeff_list(&fekete::fekete::u_q(q).map_err(err)?))
}

/// Coefficients of R_q(y) = Res_x(u_q, (x^q − 1) − y·F_q).
#[pyfunction]
fn r_q(q: u64) -> PyResult<Vec<BigInt>> {
    Ok(coeff_list(&fekete::fekete::r_q(q).map_err(err)?))
}

/// Exact discriminant of the polynomial with the given ascending
/// coefficients.
#[pyfunction]
fn discriminant(coeffs: Vec<BigInt>) -> PyResult<BigInt> {
    poly(coeffs).discriminant().map_err(err)
}

/// Exact resultant Res(a, b).
#[pyfunction]
fn resultant(a: Vec<BigInt>, b: Vec<BigInt>) -> PyResult<BigInt> {
    poly(a).resultant(&poly(b)).map_err(err)
}

/// Factorization shape of the polynomial mod p: sorted (degree,
/// multiplicity) pairs, one per irreducible factor.
#[pyfunction]
fn factor_shape(coeffs: Vec<BigInt>, p: u64) -> PyResult<Vec<(usize, usize)>> {
    prime_poly(coeffs, p)?.factor_shape().map_err(err)
}

/// Whether the polynomial is irreducible mod p.
#[pyfunction]
fn is_irreducible_mod(coeffs: Vec<BigInt>, p: u64) -> PyResult<bool> {
    prime_poly(coeffs, p)?.is_irreducible().map_err(err)
}

/// Multiplicity of Φ_d in the polynomial with the given ascending
/// coefficients.
#[pyfunction]
fn cyclotomic_multiplicity(coeffs: Vec<BigInt>, d: u64) -> PyResult<u32> {
    if d == 0 {
        return Err(PyValueError::new_err("d must be at least 1"));
    }
    Ok(fekete::cyclotomic::cyclotomic_multiplicity(
        &poly(coeffs),
        d,
    ))
}

/// The unit-equidistribution test that predicts Φ_d | F_n for squarefree
/// n and d ∤ n: counts units of Z/n in classes mod d and compares the
/// counts on the classes prime to gcd(d, n).
#[pyfunction]
fn equidistribution_check(n: u64, d: u64) -> PyResult<bool> {
    fekete::cyclotomic::equidistribution_check(n, d).map_err(err)
}

/// Separability data for F_pq mod p: repeated factors (as coefficient
/// lists mod p with multiplicities), the roots of u_q in F_p, and whether
/// R_q has an F_p-rational root.
#[pyfunction]
fn separability(py: Python<'_>, p: u64, q: u64) -> PyResult<Bound<'_, PyDict>> {
    let report = fekete::fekete::separability_analysis(p, q).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("n", report.n)?;
    d.set_item("p", report.p)?;
    d.set_item("q", report.q)?;
    d.set_item("separable", report.separable)?;
    let repeated: Vec<(Vec<u64>, usize)> = report
        .repeated_factors
        .iter()
        .map(|(factor, mult)| (factor.coeffs().to_vec(), *mult))
        .collect();
    d.set_item("repeated", repeated)?;
    d.set_item("u_q_roots", report.u_q_roots)?;
    d.set_item("r_q_has_root", report.r_q_has_root)?;
    Ok(d)
}

/// (count, bound): the number of roots of F_n on the unit circle and the
/// lower bound φ₁(n) it is checked against.
#[pyfunction]
fn unit_circle_root_count(n: u64) -> PyResult<(u64, u64)> {
    fekete::fekete::unit_circle_root_count(n).map_err(err)
}

/// Runs the certificate searches for an odd semiprime n.
///
/// `what` is "irred" (irreducibility of g_n, then f_n) or "galois"
/// (Galois group of g_n, then f_n). Returns {"g": outcome, "f": outcome
/// or None}; the f-stage runs only when the g-stage finds a certificate.
#[pyfunction]
#[pyo3(signature = (n, what = "galois", prime_bound = 5000))]
fn certify<'py>(
    py: Python<'py>,
    n: u64,
    what: &str,
    prime_bound: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let dec = fekete::fekete::decompose(n).map_err(err)?;
    let cfg = SearchConfig::with_bound(prime_bound).map_err(err)?;
    let (g_outcome, f_outcome) = match what {
        "irred" => {
            let g = certify_g_irreducible(&dec.g_n, &cfg).map_err(err)?;
            let f = match g.certificate() {
                Some(cert) => Some(certify_f_irreducible(&dec, Some(cert), &cfg).map_err(err)?),
                None => None,
            };
            (g, f)
        }
        "galois" => {
            let g = certify_galois_g(&dec.g_n, &cfg).map_err(err)?;
            let f = match g.certificate() {
                Some(cert) => Some(certify_galois_f(&dec, Some(cert), &cfg).map_err(err)?),
                None => None,
            };
            (g, f)
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "what must be \"irred\" or \"galois\", got {other:?}"
            )))
        }
    };
    let d = PyDict::new(py);
    d.set_item("n", n)?;
    d.set_item("what", what)?;
    d.set_item("g", outcome_dict(py, &g_outcome)?)?;
    match &f_outcome {
        Some(outcome) => d.set_item("f", outcome_dict(py, outcome)?)?,
        None => d.set_item("f", py.None())?,
    }
    Ok(d)
}

/// Re-verifies a certificate (its canonical JSON, as returned under the
/// "json" key) against a freshly recomputed decomposition of n.
#[pyfunction]
fn verify_certificate_json(n: u64, cert_json: &str) -> PyResult<bool> {
    let cert = Certificate::from_json(cert_json).map_err(err)?;
    let dec = fekete::fekete::decompose(n).map_err(err)?;
    Ok(match cert.kind {
        CertKind::GIrreducible | CertKind::GaloisGSymmetric => {
            verify_certificate(&cert, None, Some(&dec.g_n))
        }
        _ => verify_certificate(&cert, Some(&dec.f_n), Some(&dec.g_n)),
    })
}

/// Euler's totient φ(n).
#[pyfunction]
fn euler_phi(n: u64) -> u64 {
    fekete::cyclotomic::euler_phi(n)
}

/// Möbius function μ(n).
#[pyfunction]
fn mobius(n: u64) -> i64 {
    fekete::cyclotomic::mobius(n)
}

/// Deterministic primality test for u64.
#[pyfunction]
fn is_prime(n: u64) -> bool {
    fekete::modpoly::is_prime_u64(n)
}

/// Fekete polynomials of principal Dirichlet characters: exact
/// construction, cyclotomic decomposition, trace polynomials, and
/// certificate searches, all in exact arithmetic.
#[pymodule]
fn fekete_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(build_f, m)?)?;
    m.add_function(wrap_pyfunction!(cyclotomic, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(f3p, m)?)?;
    m.add_function(wrap_pyfunction!(value_predictions, m)?)?;
    m.add_function(wrap_pyfunction!(u_q, m)?)?;
    m.add_function(wrap_pyfunction!(r_q, m)?)?;
    m.add_function(wrap_pyfunction!(discriminant, m)?)?;
    m.add_function(wrap_pyfunction!(resultant, m)?)?;
    m.add_function(wrap_pyfunction!(factor_shape, m)?)?;
    m.add_function(wrap_pyfunction!(is_irreducible_mod, m)?)?;
    m.add_function(wrap_pyfunction!(cyclotomic_multiplicity, m)?)?;
    m.add_function(wrap_pyfunction!(equidistribution_check, m)?)?;
    m.add_function(wrap_pyfunction!(separability, m)?)?;
    m.add_function(wrap_pyfunction!(unit_circle_root_count, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate_json, m)?)?;
    m.add_function(wrap_pyfunction!(euler_phi, m)?)?;
    m.add_function(wrap_pyfunction!(mobius, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    Ok(())
}
