//! Python bindings: exact polynomial arithmetic, the certified
//! resultant/different layer, Hensel lifting, the coset-module identity
//! checks, adequacy analysis, and certificate verification.
//!
//! Certificates cross the boundary as JSON strings (the same schema the
//! CLI emits), scalars as exact "num/den" strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;

use symfact_core::adequacy::{
    build_tensor_example, close_group, span_dim, weak_adequacy_check, Predicate, DEFAULT_CAP,
};
use symfact_core::hecke::{check_fg_gf, check_lemma_3_6, sigma_p1_weights};
use symfact_core::hensel::{lift_factorization, DualPoly};
use symfact_core::jsonio::{
    module_from_name, verify_certificate, CertificateFile, CofactorCertDto, DifferentCertDto,
    HeckeCertDto, HenselCertDto, MatrixDto, RatDto,
};
use symfact_core::local::{ResidueRing, ZLoc};
use symfact_core::poly::QPoly;
use symfact_core::resultant::{res_tilde, universal_cofactors};
use symfact_core::ring::{Rat, QQ};
use symfact_core::symring::{free_basis, BlockShape};
use symfact_core::unipoly::UniPoly;
use symfact_core::Error;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_rat(s: &str) -> PyResult<Rat> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    RatDto {
        num: n.trim().to_string(),
        den: d.trim().to_string(),
    }
    .to_rat()
    .map_err(err)
}

fn rat_str(r: &Rat) -> String {
    use num_traits::One;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn shape_checked(n1: usize, n2: usize) -> PyResult<BlockShape> {
    if n1 == 0 || n2 == 0 || n1 + n2 > 6 {
        return Err(PyValueError::new_err(format!(
            "shape ({n1},{n2}) outside the supported range n <= 6"
        )));
    }
    Ok(BlockShape::new(n1, n2))
}

/// Exact sparse multivariate polynomial over Q (optionally Laurent).
#[pyclass(name = "Poly", skip_from_py_object)]
#[derive(Clone)]
struct PyPoly {
    inner: QPoly,
}

#[pymethods]
impl PyPoly {
    /// The i-th variable of an n-variable polynomial ring.
    #[staticmethod]
    fn var(n: usize, i: usize) -> PyResult<Self> {
        if i >= n {
            return Err(PyValueError::new_err("variable index out of range"));
        }
        Ok(PyPoly {
            inner: QPoly::var(n, i),
        })
    }

    /// A single term c * x^exp; negative exponents make it Laurent.
    #[staticmethod]
    fn monomial(n: usize, exp: Vec<i32>, coef: &str) -> PyResult<Self> {
        if exp.len() != n {
            return Err(PyValueError::new_err("exponent arity mismatch"));
        }
        Ok(PyPoly {
            inner: QPoly::monomial(n, exp, parse_rat(coef)?),
        })
    }

    #[staticmethod]
    fn constant(n: usize, coef: &str) -> PyResult<Self> {
        Ok(PyPoly {
            inner: QPoly::monomial(n, vec![0; n], parse_rat(coef)?),
        })
    }

    fn __add__(&self, other: &PyPoly) -> PyResult<Self> {
        Ok(PyPoly {
            inner: self.inner.add(&other.inner).map_err(err)?,
        })
    }

    fn __sub__(&self, other: &PyPoly) -> PyResult<Self> {
        Ok(PyPoly {
            inner: self.inner.sub(&other.inner).map_err(err)?,
        })
    }

    fn __mul__(&self, other: &PyPoly) -> PyResult<Self> {
        Ok(PyPoly {
            inner: self.inner.mul(&other.inner).map_err(err)?,
        })
    }

    fn __pow__(&self, k: u32, _mod: Option<u32>) -> PyResult<Self> {
        Ok(PyPoly {
            inner: self.inner.pow(k).map_err(err)?,
        })
    }

    fn __eq__(&self, other: &PyPoly) -> bool {
        self.inner == other.inner
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Evaluate at a rational point ("num/den" strings).
    fn eval(&self, point: Vec<String>) -> PyResult<String> {
        let pt: Vec<Rat> = point
            .iter()
            .map(|s| parse_rat(s))
            .collect::<PyResult<_>>()?;
        Ok(rat_str(&self.inner.eval(&pt).map_err(err)?))
    }

    /// Sparse terms as (exponent, "num/den") pairs.
    fn terms(&self) -> Vec<(Vec<i32>, String)> {
        self.inner
            .terms()
            .map(|(e, c)| (e.clone(), rat_str(c)))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Poly(vars={}, terms={:?})",
            self.inner.num_vars,
            self.terms()
        )
    }
}

/// Rank and Schur-indexing partitions of the free basis of the
/// block-invariant ring over the symmetric ring.
#[pyfunction]
fn basis(n1: usize, n2: usize) -> PyResult<(usize, Vec<Vec<usize>>)> {
    let shape = shape_checked(n1, n2)?;
    let (b, partitions) = free_basis(shape);
    Ok((b.len(), partitions))
}

/// Certified canonical different element; returns the certificate as a
/// JSON string in the CLI schema.
#[pyfunction]
#[pyo3(signature = (n1, n2, seed = 42))]
fn different_certificate(n1: usize, n2: usize, seed: u64) -> PyResult<String> {
    let shape = shape_checked(n1, n2)?;
    let cert = res_tilde(shape, seed).map_err(err)?;
    if !cert.all_ok() {
        return Err(PyValueError::new_err("certificate failed to verify"));
    }
    let dto = DifferentCertDto::from_cert(&cert);
    let file = CertificateFile::new("different", seed, serde_json::to_value(&dto).map_err(|e| err(e.into()))?);
    serde_json::to_string_pretty(&file).map_err(|e| err(e.into()))
}

/// Universal Bezout cofactors with the identity re-expanded; JSON
/// certificate.
#[pyfunction]
#[pyo3(signature = (n1, n2, seed = 42))]
fn cofactor_certificate(n1: usize, n2: usize, seed: u64) -> PyResult<String> {
    let shape = shape_checked(n1, n2)?;
    let pair = universal_cofactors(shape).map_err(err)?;
    let dto = CofactorCertDto::from_pair(&pair);
    dto.verify().map_err(err)?;
    let file = CertificateFile::new("cofactors", seed, serde_json::to_value(&dto).map_err(|e| err(e.into()))?);
    serde_json::to_string_pretty(&file).map_err(|e| err(e.into()))
}

/// Dual-number Hensel lift; f1, f2 are ascending rational coefficient
/// strings, h the integer eps-deformation coefficients.
#[pyfunction]
#[pyo3(signature = (p, m, f1, f2, h, seed = 42))]
fn hensel_certificate(
    p: u32,
    m: u32,
    f1: Vec<String>,
    f2: Vec<String>,
    h: Vec<i64>,
    seed: u64,
) -> PyResult<String> {
    let zloc = ZLoc::new(p);
    let rring = ResidueRing::new(p, m);
    let coeffs = |v: &[String]| -> PyResult<Vec<Rat>> { v.iter().map(|s| parse_rat(s)).collect() };
    let f1 = UniPoly::new(zloc.clone(), coeffs(&f1)?);
    let f2 = UniPoly::new(zloc.clone(), coeffs(&f2)?);
    let h = UniPoly::new(
        rring.clone(),
        h.iter().map(|&c| rring.reduce(&c.into())).collect(),
    );
    let ftilde = DualPoly::new(p, m, f1.mul(&f2), h).map_err(err)?;
    let lift = lift_factorization(&ftilde, &f1, &f2).map_err(err)?;
    if !lift.verified {
        return Err(PyValueError::new_err("lift failed to verify"));
    }
    let dto = HenselCertDto::from_lift(&ftilde, &f1, &f2, &lift);
    let file = CertificateFile::new("hensel", seed, serde_json::to_value(&dto).map_err(|e| err(e.into()))?);
    serde_json::to_string_pretty(&file).map_err(|e| err(e.into()))
}

/// fg = gf = Res and the four tensor/trace identities on one coset
/// module; returns (ok, certificate_json).
#[pyfunction]
#[pyo3(signature = (n1, n2, module = "point", degree = 2, trials = 5, seed = 42))]
fn hecke_verify(
    n1: usize,
    n2: usize,
    module: &str,
    degree: i32,
    trials: usize,
    seed: u64,
) -> PyResult<(bool, String)> {
    let shape = shape_checked(n1, n2)?;
    let m = module_from_name(shape, module).map_err(err)?;
    let cert = res_tilde(shape, seed).map_err(err)?;
    let rep = check_fg_gf(&m, &cert, degree, trials, seed).map_err(err)?;
    let lemma = check_lemma_3_6(&m, &cert, seed).map_err(err)?;
    let dto = HeckeCertDto {
        module: module.to_string(),
        degree,
        trials,
        check_seed: seed,
        different: DifferentCertDto::from_cert(&cert),
        lemma_parts_ok: [
            lemma.part1_ok,
            lemma.part2_ok,
            lemma.part3_ok,
            lemma.part4_ok,
        ],
    };
    let file = CertificateFile::new("hecke", seed, serde_json::to_value(&dto).map_err(|e| err(e.into()))?);
    Ok((
        rep.ok && lemma.all_ok(),
        serde_json::to_string_pretty(&file).map_err(|e| err(e.into()))?,
    ))
}

/// Re-run the cheap verification half of a JSON certificate. Returns
/// True/False for pass/fail; raises ValueError on malformed input.
#[pyfunction]
fn verify_certificate_json(text: &str) -> PyResult<bool> {
    let cert: CertificateFile =
        serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    match verify_certificate(&cert) {
        Ok(()) => Ok(true),
        Err(e @ Error::InvalidInput(_)) | Err(e @ Error::Json(_)) => Err(err(e)),
        Err(_) => Ok(false),
    }
}

/// Close a rational matrix group and report (order, span_all, adequate).
/// Generators are row-major lists of "num/den" strings.
#[pyfunction]
fn group_report(n: usize, generators: Vec<Vec<String>>) -> PyResult<(usize, usize, bool)> {
    let gens: Vec<_> = generators
        .iter()
        .map(|g| -> PyResult<_> {
            if g.len() != n * n {
                return Err(PyValueError::new_err("generator entry count"));
            }
            let entries: Vec<Vec<RatDto>> = g
                .iter()
                .map(|s| {
                    let (num, den) = match s.split_once('/') {
                        Some((a, b)) => (a, b),
                        None => (s.as_str(), "1"),
                    };
                    vec![RatDto {
                        num: num.trim().into(),
                        den: den.trim().into(),
                    }]
                })
                .collect();
            MatrixDto {
                rows: n,
                cols: n,
                entries,
            }
            .to_q()
            .map_err(err)
        })
        .collect::<PyResult<_>>()?;
    let group = close_group(QQ, &gens, DEFAULT_CAP).map_err(err)?;
    let span = span_dim(&group, Predicate::All).map_err(err)?;
    let adequacy = weak_adequacy_check(&group).map_err(err)?;
    Ok((group.order(), span.dim, adequacy.adequate))
}

/// The rank-4 tensor counterexample: (order, full span, rss span,
/// contained in the anti-diagonal-zero subspace).
#[pyfunction]
fn tensor_counterexample() -> PyResult<(usize, usize, usize, bool)> {
    let (_, rep) = build_tensor_example().map_err(err)?;
    Ok((
        rep.group_order,
        rep.full_span_dim,
        rep.rss_span_dim,
        rep.rss_contained_in_antidiagonal_zero,
    ))
}

/// Satake normalization exponents as exact "num/den" strings.
#[pyfunction]
fn satake_weights(n1: usize, n2: usize) -> PyResult<(Vec<String>, Vec<String>)> {
    let shape = shape_checked(n1, n2)?;
    let (a, b) = sigma_p1_weights(shape);
    Ok((
        a.iter().map(rat_str).collect(),
        b.iter().map(rat_str).collect(),
    ))
}

#[pymodule]
fn symfact(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_function(wrap_pyfunction!(basis, m)?)?;
    m.add_function(wrap_pyfunction!(different_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(cofactor_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(hensel_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(hecke_verify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate_json, m)?)?;
    m.add_function(wrap_pyfunction!(group_report, m)?)?;
    m.add_function(wrap_pyfunction!(tensor_counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(satake_weights, m)?)?;
    Ok(())
}
