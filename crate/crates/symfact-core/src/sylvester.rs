//! Sylvester matrices, resultants and Bezout cofactor solves.
//!
//! Sign convention, fixed once and pinned by tests: for monic f with roots
//! alpha_i and monic g with roots beta_j,
//!     det sylvester_matrix(f, g) = prod_{i,j} (alpha_i - beta_j).

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::unipoly::UniPoly;

/// The matrix of (G1, G2) -> G1*g + G2*f on Pol_{deg f - 1} x Pol_{deg g - 1},
/// in ascending monomial bases, with the column order that realizes the
/// product-formula sign convention.
pub fn sylvester_matrix<R: Ring>(f: &UniPoly<R>, g: &UniPoly<R>) -> Result<Matrix<R>> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ring = f.ring.clone();
    let m = f.degree().unwrap();
    let n = g.degree().unwrap();
    let size = m + n;
    let mut mat = Matrix::zero(ring, size, size);
    // first block: columns X^k * g for k = 0..m-1
    for k in 0..m {
        for (i, c) in g.coeffs().iter().enumerate() {
            *mat.at_mut(k + i, k) = c.clone();
        }
    }
    // second block: columns X^k * f for k = 0..n-1
    for k in 0..n {
        for (i, c) in f.coeffs().iter().enumerate() {
            *mat.at_mut(k + i, m + k) = c.clone();
        }
    }
    Ok(mat)
}

/// Resultant of two monic polynomials: prod (alpha_i - beta_j).
pub fn resultant_uni<R: Ring>(f: &UniPoly<R>, g: &UniPoly<R>) -> Result<R::Elem> {
    let ring = f.ring.clone();
    match (f.degree(), g.degree()) {
        (None, _) | (_, None) => Err(Error::ZeroPolynomial),
        (Some(0), _) | (_, Some(0)) => Ok(ring.one()),
        _ => sylvester_matrix(f, g)?.det(),
    }
}

/// Solve g1*f1 + g2*f2 = delta * target by the adjugate of the Sylvester
/// system, entirely over the coefficient ring (no division by delta).
///
/// Returns (g1, g2, delta) with deg g1 < deg f2, deg g2 < deg f1 and
/// delta = resultant_uni(f1, f2). Requires deg target < deg f1 + deg f2.
pub fn bezout_solve<R: Ring>(
    f1: &UniPoly<R>,
    f2: &UniPoly<R>,
    target: &UniPoly<R>,
) -> Result<(UniPoly<R>, UniPoly<R>, R::Elem)> {
    let ring = f1.ring.clone();
    let n1 = f1.degree().ok_or(Error::ZeroPolynomial)?;
    let n2 = f2.degree().ok_or(Error::ZeroPolynomial)?;
    if n1 == 0 || n2 == 0 {
        // degenerate block: delta = 1 and one cofactor carries the target
        let delta = ring.one();
        if n1 == 0 {
            // f1 constant (monic => 1): g1 = target, g2 = 0
            return Ok((target.clone(), UniPoly::zero(ring), delta));
        }
        return Ok((UniPoly::zero(ring), target.clone(), delta));
    }
    if target.deg_or_zero() >= n1 + n2 && !target.is_zero() {
        return Err(Error::DimensionMismatch(
            "bezout target degree too large".into(),
        ));
    }
    // matrix of (G1, G2) -> G1 f1 + G2 f2: columns X^k f1 (k < n2), X^k f2
    // (k < n1); this is sylvester_matrix(f2, f1), whose determinant is
    // (-1)^(n1 n2) * resultant(f1, f2).
    let mat = sylvester_matrix(f2, f1)?;
    let adj = mat.adjugate()?;
    let det = mat.det()?;
    let delta = if (n1 * n2) % 2 == 0 {
        det.clone()
    } else {
        ring.neg(&det)
    };
    let size = n1 + n2;
    let mut tvec = vec![ring.zero(); size];
    for (i, c) in target.coeffs().iter().enumerate() {
        tvec[i] = c.clone();
    }
    // adj * t solves M x = det * t; flip sign to get delta on the right side
    let mut x = vec![ring.zero(); size];
    for i in 0..size {
        let mut acc = ring.zero();
        for j in 0..size {
            acc = ring.add(&acc, &ring.mul(adj.at(i, j), &tvec[j]));
        }
        x[i] = if (n1 * n2) % 2 == 0 {
            acc
        } else {
            ring.neg(&acc)
        };
    }
    let g1 = UniPoly::new(ring.clone(), x[..n2].to_vec());
    let g2 = UniPoly::new(ring.clone(), x[n2..].to_vec());
    Ok((g1, g2, delta))
}
