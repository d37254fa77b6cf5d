//! Cyclotomic number fields Q[t]/Phi_m(t).
//!
//! Conductors are always explicit; an element never changes conductor
//! implicitly. The only way across conductors is `embed_into`, legal when
//! m | m'.

use crate::error::{Error, Result};
use crate::ring::{Field, Rat, Ring, QQ};
use crate::unipoly::UniPoly;
use num_traits::{One, Zero};

/// Coefficient vector of length deg Phi_m, representing a class in
/// Q[t]/Phi_m(t).
pub type CycloElem = Vec<Rat>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloField {
    pub conductor: u32,
    phi: UniPoly<QQ>,
}

/// The m-th cyclotomic polynomial, by exact division of t^m - 1 by the
/// Phi_d for proper divisors d | m.
pub fn cyclotomic_poly(m: u32) -> UniPoly<QQ> {
    assert!(m >= 1);
    let mut num = vec![QQ.from_i64(0); m as usize + 1];
    num[0] = QQ.from_i64(-1);
    num[m as usize] = QQ.from_i64(1);
    let mut p = UniPoly::new(QQ, num); // t^m - 1
    for d in 1..m {
        if m % d == 0 {
            let phid = cyclotomic_poly(d);
            let (q, r) = p.div_rem(&phid).unwrap();
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    p
}

impl CycloField {
    pub fn new(conductor: u32) -> Self {
        CycloField {
            conductor,
            phi: cyclotomic_poly(conductor),
        }
    }

    pub fn degree(&self) -> usize {
        self.phi.degree().unwrap()
    }

    pub fn phi(&self) -> &UniPoly<QQ> {
        &self.phi
    }

    fn reduce(&self, p: &UniPoly<QQ>) -> CycloElem {
        let (_, r) = p.div_rem(&self.phi).unwrap();
        let mut v = r.coeffs().to_vec();
        v.resize(self.degree(), Rat::zero());
        v
    }

    pub fn from_poly(&self, p: &UniPoly<QQ>) -> CycloElem {
        self.reduce(p)
    }

    pub fn to_poly(&self, a: &CycloElem) -> UniPoly<QQ> {
        UniPoly::new(QQ, a.clone())
    }

    pub fn from_rat(&self, c: Rat) -> CycloElem {
        let mut v = vec![Rat::zero(); self.degree()];
        v[0] = c;
        v
    }

    /// The class of t, a primitive m-th root of unity.
    pub fn zeta(&self) -> CycloElem {
        self.from_poly(&UniPoly::x(QQ))
    }

    pub fn zeta_pow(&self, k: i64) -> CycloElem {
        let m = self.conductor as i64;
        let k = k.rem_euclid(m) as u32;
        let z = self.zeta();
        self.pow(&z, k)
    }

    /// If the element lies in Q, return the rational.
    pub fn as_rat(&self, a: &CycloElem) -> Option<Rat> {
        if a[1..].iter().all(|c| c.is_zero()) {
            Some(a[0].clone())
        } else {
            None
        }
    }

    /// Embed into a larger cyclotomic field; requires conductor | target.
    pub fn embed_into(&self, target: &CycloField, a: &CycloElem) -> Result<CycloElem> {
        if target.conductor % self.conductor != 0 {
            return Err(Error::Unsupported(format!(
                "no embedding of conductor {} into {}",
                self.conductor, target.conductor
            )));
        }
        let k = (target.conductor / self.conductor) as usize;
        // t -> t^k
        let mut out = UniPoly::zero(QQ);
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut mono = vec![Rat::zero(); i * k + 1];
            mono[i * k] = c.clone();
            out = out.add(&UniPoly::new(QQ, mono));
        }
        Ok(target.reduce(&out))
    }
}

impl Ring for CycloField {
    type Elem = CycloElem;

    fn zero(&self) -> CycloElem {
        vec![Rat::zero(); self.degree()]
    }
    fn one(&self) -> CycloElem {
        self.from_rat(Rat::one())
    }
    fn add(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn sub(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    fn neg(&self, a: &CycloElem) -> CycloElem {
        a.iter().map(|x| -x).collect()
    }
    fn mul(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        let pa = self.to_poly(a);
        let pb = self.to_poly(b);
        self.reduce(&pa.mul(&pb))
    }
    fn is_zero(&self, a: &CycloElem) -> bool {
        a.iter().all(|c| c.is_zero())
    }
    fn from_i64(&self, n: i64) -> CycloElem {
        self.from_rat(QQ.from_i64(n))
    }
}

impl Field for CycloField {
    fn inv(&self, a: &CycloElem) -> Option<CycloElem> {
        if self.is_zero(a) {
            return None;
        }
        // extended Euclid: u * a + v * phi = gcd = 1 (phi irreducible)
        let mut r0 = self.phi.clone();
        let mut r1 = self.to_poly(a);
        let mut u0 = UniPoly::zero(QQ);
        let mut u1 = UniPoly::one(QQ);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).ok()?;
            let u = u0.sub(&q.mul(&u1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
        }
        // r0 = gcd (a nonzero constant since phi is irreducible over Q)
        let c = r0.coeff(0);
        if r0.degree() != Some(0) || c.is_zero() {
            return None;
        }
        Some(self.reduce(&u0.scale(&c.recip())))
    }
}
