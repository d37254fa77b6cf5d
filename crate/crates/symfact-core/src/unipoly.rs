//! Dense univariate polynomials over a ring object.
//!
//! Coefficients are stored in ascending degree order; the canonical form
//! has a nonzero leading coefficient (empty vector = zero polynomial).

use crate::error::{Error, Result};
use crate::ring::{Field, Ring};

#[derive(Clone, Debug)]
pub struct UniPoly<R: Ring> {
    pub ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> PartialEq for UniPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
impl<R: Ring> Eq for UniPoly<R> {}

impl<R: Ring> UniPoly<R> {
    pub fn new(ring: R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().map_or(false, |c| ring.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { ring, coeffs }
    }

    pub fn zero(ring: R) -> Self {
        UniPoly {
            ring,
            coeffs: vec![],
        }
    }

    pub fn one(ring: R) -> Self {
        let c = ring.one();
        UniPoly {
            ring,
            coeffs: vec![c],
        }
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        UniPoly::new(ring, vec![c])
    }

    /// The monomial X.
    pub fn x(ring: R) -> Self {
        let z = ring.zero();
        let o = ring.one();
        UniPoly {
            ring,
            coeffs: vec![z, o],
        }
    }

    /// Monic polynomial from its roots.
    pub fn from_roots(ring: R, roots: &[R::Elem]) -> Self {
        let mut p = UniPoly::one(ring.clone());
        for r in roots {
            let lin = UniPoly::new(ring.clone(), vec![ring.neg(r), ring.one()]);
            p = p.mul(&lin);
        }
        p
    }

    pub fn from_i64(ring: R, coeffs: &[i64]) -> Self {
        let v = coeffs.iter().map(|&c| ring.from_i64(c)).collect();
        UniPoly::new(ring, v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| self.ring.is_one(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.ring.add(&self.coeff(i), &other.coeff(i)));
        }
        UniPoly::new(self.ring.clone(), v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.ring.sub(&self.coeff(i), &other.coeff(i)));
        }
        UniPoly::new(self.ring.clone(), v)
    }

    pub fn neg(&self) -> Self {
        let v = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        UniPoly::new(self.ring.clone(), v)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let v = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        UniPoly::new(self.ring.clone(), v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.ring.clone());
        }
        let mut v = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = self.ring.add(&v[i + j], &self.ring.mul(a, b));
            }
        }
        UniPoly::new(self.ring.clone(), v)
    }

    /// Multiply by X^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.ring.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly::new(self.ring.clone(), v)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R::Elem) -> R::Elem {
        let mut acc = self.ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.ring.add(&self.ring.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(self.ring.clone());
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.ring.mul(&self.ring.from_i64(i as i64), c))
            .collect();
        UniPoly::new(self.ring.clone(), v)
    }

    /// Map coefficients into another ring.
    pub fn map_coeffs<S: Ring, F: Fn(&R::Elem) -> S::Elem>(&self, ring: S, f: F) -> UniPoly<S> {
        let v = self.coeffs.iter().map(|c| f(c)).collect();
        UniPoly::new(ring, v)
    }
}

impl<R: Field> UniPoly<R> {
    /// Euclidean division: returns (quotient, remainder).
    pub fn div_rem(&self, div: &Self) -> Result<(Self, Self)> {
        if div.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lead_inv = self
            .ring
            .inv(div.leading().unwrap())
            .ok_or(Error::Singular)?;
        let mut rem = self.coeffs.clone();
        let d = div.coeffs.len() - 1;
        if rem.len() <= d {
            return Ok((UniPoly::zero(self.ring.clone()), self.clone()));
        }
        let mut quot = vec![self.ring.zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let q = self.ring.mul(&rem[i], &lead_inv);
            if self.ring.is_zero(&q) {
                continue;
            }
            quot[i - d] = q.clone();
            for j in 0..=d {
                let t = self.ring.mul(&q, &div.coeffs[j]);
                rem[i - d + j] = self.ring.sub(&rem[i - d + j], &t);
            }
        }
        Ok((
            UniPoly::new(self.ring.clone(), quot),
            UniPoly::new(self.ring.clone(), rem),
        ))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Ok(a);
        }
        let li = self.ring.inv(a.leading().unwrap()).ok_or(Error::Singular)?;
        Ok(a.scale(&li))
    }

    /// Squarefree part: self / gcd(self, self').
    pub fn squarefree_part(&self) -> Result<Self> {
        let g = self.gcd(&self.derivative())?;
        if g.degree() == Some(0) {
            return Ok(self.clone());
        }
        let (q, r) = self.div_rem(&g)?;
        debug_assert!(r.is_zero());
        Ok(q)
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        let g = self.gcd(&self.derivative())?;
        Ok(g.degree() == Some(0))
    }
}
