//! Sparse multivariate polynomials over the rationals.
//!
//! `QPoly` is the workhorse value of the crate: exact, sparse, optionally
//! Laurent (negative exponents). The canonical form stores no zero
//! coefficients and every exponent vector has length `num_vars`.

use crate::error::{Error, Result};
use crate::ring::{is_integral, Rat};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub type Exp = Vec<i32>;

#[derive(Clone, Debug)]
pub struct QPoly {
    pub num_vars: usize,
    pub laurent: bool,
    terms: BTreeMap<Exp, Rat>,
}

// the `laurent` flag is a capability marker, not part of the value
impl PartialEq for QPoly {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.terms == other.terms
    }
}
impl Eq for QPoly {}
impl PartialOrd for QPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for QPoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num_vars, &self.terms).cmp(&(other.num_vars, &other.terms))
    }
}

impl QPoly {
    pub fn zero(num_vars: usize) -> Self {
        QPoly {
            num_vars,
            laurent: false,
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_laurent(num_vars: usize) -> Self {
        QPoly {
            num_vars,
            laurent: true,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rat) -> Self {
        let mut p = QPoly::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; num_vars], c);
        }
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, BigRational::one())
    }

    /// The monomial `x_i` (0-indexed).
    pub fn var(num_vars: usize, i: usize) -> Self {
        assert!(i < num_vars);
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Self::monomial(num_vars, e, BigRational::one())
    }

    pub fn monomial(num_vars: usize, exp: Exp, c: Rat) -> Self {
        assert_eq!(exp.len(), num_vars);
        let laurent = exp.iter().any(|&k| k < 0);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        QPoly {
            num_vars,
            laurent,
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i32]) -> Rat {
        self.terms
            .get(exp)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&k| k == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn set_laurent(mut self, laurent: bool) -> Result<Self> {
        if !laurent && self.terms.keys().any(|e| e.iter().any(|&k| k < 0)) {
            return Err(Error::NegativeExponent);
        }
        self.laurent = laurent;
        Ok(self)
    }

    fn add_term(&mut self, exp: Exp, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compat(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::RingMismatch(format!(
                "{} vs {} variables",
                self.num_vars, other.num_vars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let mut out = self.clone();
        out.laurent = self.laurent || other.laurent;
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            let mut z = QPoly::zero(self.num_vars);
            z.laurent = self.laurent;
            return z;
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let mut out = QPoly::zero(self.num_vars);
        out.laurent = self.laurent || other.laurent;
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exp = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = QPoly::one(self.num_vars);
        acc.laurent = self.laurent;
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Evaluate at a full rational point.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.num_vars {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.num_vars
            )));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k >= 0 {
                    for _ in 0..k {
                        t *= x;
                    }
                } else {
                    if x.is_zero() {
                        return Err(Error::InvalidInput(
                            "evaluation of a Laurent monomial at zero".into(),
                        ));
                    }
                    let xi = x.recip();
                    for _ in 0..(-k) {
                        t *= &xi;
                    }
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute every variable by a polynomial (all in the target ring).
    /// Negative exponents are rejected; use only on non-Laurent inputs.
    pub fn substitute_all(&self, values: &[QPoly]) -> Result<QPoly> {
        if values.len() != self.num_vars {
            return Err(Error::DimensionMismatch(format!(
                "{} substitution values for {} variables",
                values.len(),
                self.num_vars
            )));
        }
        let target_vars = if values.is_empty() {
            0
        } else {
            values[0].num_vars
        };
        // cache powers of each value
        let mut pow_cache: Vec<Vec<QPoly>> = values
            .iter()
            .map(|v| vec![QPoly::one(v.num_vars)])
            .collect();
        let mut out = QPoly::zero(target_vars);
        for (e, c) in &self.terms {
            let mut t = QPoly::constant(target_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k < 0 {
                    return Err(Error::NegativeExponent);
                }
                let k = k as usize;
                while pow_cache[i].len() <= k {
                    let last = pow_cache[i].last().unwrap().clone();
                    pow_cache[i].push(last.mul(&values[i])?);
                }
                t = t.mul(&pow_cache[i][k])?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Substitute a single variable by a polynomial in the same variable set.
    pub fn substitute_var(&self, i: usize, value: &QPoly) -> Result<QPoly> {
        let mut values: Vec<QPoly> = (0..self.num_vars)
            .map(|j| QPoly::var(self.num_vars, j))
            .collect();
        values[i] = value.clone();
        self.substitute_all(&values)
    }

    /// Apply a permutation to the variables: `x_i -> x_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> QPoly {
        assert_eq!(perm.len(), self.num_vars);
        let mut out = QPoly::zero(self.num_vars);
        out.laurent = self.laurent;
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.num_vars];
            for (i, &k) in e.iter().enumerate() {
                ne[perm[i]] = k;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> QPoly {
        let mut out = QPoly::zero(self.num_vars);
        out.laurent = self.laurent;
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c * BigRational::from_integer(e[i].into()));
        }
        out
    }

    /// Total degree weighted by `weights` (each variable counts with its
    /// weight); `None` for the zero polynomial.
    pub fn weighted_degree(&self, weights: &[i64]) -> Option<i64> {
        self.terms
            .keys()
            .map(|e| {
                e.iter()
                    .zip(weights)
                    .map(|(&k, &w)| k as i64 * w)
                    .sum::<i64>()
            })
            .max()
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.weighted_degree(&vec![1; self.num_vars])
    }

    /// True if every weighted-degree of a monomial equals `d`.
    pub fn is_homogeneous_of(&self, weights: &[i64], d: i64) -> bool {
        self.terms.keys().all(|e| {
            e.iter()
                .zip(weights)
                .map(|(&k, &w)| k as i64 * w)
                .sum::<i64>()
                == d
        })
    }

    /// Split into weighted-homogeneous components, keyed by degree.
    pub fn homogeneous_components(&self, weights: &[i64]) -> BTreeMap<i64, QPoly> {
        let mut out: BTreeMap<i64, QPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e
                .iter()
                .zip(weights)
                .map(|(&k, &w)| k as i64 * w)
                .sum::<i64>();
            let entry = out.entry(d).or_insert_with(|| {
                let mut z = QPoly::zero(self.num_vars);
                z.laurent = self.laurent;
                z
            });
            entry.add_term(e.clone(), c.clone());
        }
        out
    }

    /// The lexicographically largest exponent (x_0 most significant).
    pub fn leading_exp_lex(&self) -> Option<&Exp> {
        self.terms.keys().max_by(|a, b| a.cmp(b))
    }

    /// True if all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(is_integral)
    }

    /// Exact division; `None` if `self` is not a multiple of `div`.
    pub fn exact_div(&self, div: &QPoly) -> Option<QPoly> {
        if div.is_zero() {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = QPoly::zero(self.num_vars);
        quot.laurent = self.laurent || div.laurent;
        let (de, dc) = {
            let e = div.leading_exp_lex()?.clone();
            let c = div.coeff(&e);
            (e, c)
        };
        while !rem.is_zero() {
            let re = rem.leading_exp_lex().unwrap().clone();
            let q_exp: Exp = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            if !quot.laurent && q_exp.iter().any(|&k| k < 0) {
                return None;
            }
            let q_c = rem.coeff(&re) / &dc;
            let m = QPoly::monomial(self.num_vars, q_exp, q_c);
            quot = quot.add(&m).ok()?;
            rem = rem.sub(&m.mul(div).ok()?).ok()?;
            // lex leading term strictly decreases; bail out if it does not
            if let Some(ne) = rem.leading_exp_lex() {
                if *ne >= re {
                    return None;
                }
            }
        }
        Some(quot)
    }

    /// Extend by appending `extra` fresh variables (exponent 0 everywhere).
    pub fn extend_vars(&self, extra: usize) -> QPoly {
        let mut out = QPoly::zero(self.num_vars + extra);
        out.laurent = self.laurent;
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.extend(std::iter::repeat(0).take(extra));
            out.add_term(ne, c.clone());
        }
        out
    }
}

/// `QPoly` viewed as a ring object, for matrices and univariate
/// polynomials with multivariate-polynomial entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub num_vars: usize,
    pub laurent: bool,
}

impl PolyRing {
    pub fn new(num_vars: usize) -> Self {
        PolyRing {
            num_vars,
            laurent: false,
        }
    }
}

impl crate::ring::Ring for PolyRing {
    type Elem = QPoly;

    fn zero(&self) -> QPoly {
        if self.laurent {
            QPoly::zero_laurent(self.num_vars)
        } else {
            QPoly::zero(self.num_vars)
        }
    }
    fn one(&self) -> QPoly {
        QPoly::one(self.num_vars)
    }
    fn add(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.add(b).expect("same variable count")
    }
    fn sub(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.sub(b).expect("same variable count")
    }
    fn neg(&self, a: &QPoly) -> QPoly {
        a.neg()
    }
    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.mul(b).expect("same variable count")
    }
    fn is_zero(&self, a: &QPoly) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> QPoly {
        QPoly::constant(self.num_vars, crate::ring::rat_int(n))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    write!(f, "*x{}^{}", i + 1, k)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat_int;

    fn x(i: usize) -> QPoly {
        QPoly::var(2, i)
    }

    #[test]
    fn difference_of_squares() {
        let s = x(0).add(&x(1)).unwrap();
        let d = x(0).sub(&x(1)).unwrap();
        let p = s.mul(&d).unwrap();
        let expected = x(0)
            .pow(2)
            .unwrap()
            .sub(&x(1).pow(2).unwrap())
            .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn eval_root() {
        // X^2 - 9 at X = 3
        let p = QPoly::var(1, 0)
            .pow(2)
            .unwrap()
            .sub(&QPoly::constant(1, rat_int(9)))
            .unwrap();
        assert_eq!(p.eval(&[rat_int(3)]).unwrap(), rat_int(0));
    }

    #[test]
    fn substitute_diagonal_kills_resultant() {
        // Res_{1,1} = x1 - x2 vanishes when x2 := x1
        let r = x(0).sub(&x(1)).unwrap();
        let sub = r.substitute_var(1, &x(0)).unwrap();
        assert!(sub.is_zero());
    }

    #[test]
    fn exact_division() {
        let s = x(0).add(&x(1)).unwrap();
        let d = x(0).sub(&x(1)).unwrap();
        let p = s.mul(&d).unwrap();
        assert_eq!(p.exact_div(&s).unwrap(), d);
        assert!(p.exact_div(&x(0).add(&QPoly::one(2)).unwrap()).is_none());
    }

    #[test]
    fn laurent_round_trip() {
        let m = QPoly::monomial(2, vec![-1, 2], rat_int(3));
        assert!(m.laurent);
        let inv = QPoly::monomial(2, vec![1, 0], rat_int(1));
        let p = m.mul(&inv).unwrap();
        assert_eq!(p.coeff(&[0, 2]), rat_int(3));
    }
}
