//! The p-local integers Z_(p), truncated residue rings O/p^m and the
//! dual numbers A_m = O + eps*O/p^m (eps^2 = 0).
//!
//! O is modeled as rationals with p-free denominator, so every base-ring
//! computation is exact; truncation happens only in the eps part.

use crate::error::{Error, Result};
use crate::ring::{int_valuation, Rat, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// p-adic valuation of a rational (or +infinity for zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Val {
    Finite(i64),
    Infinity,
}

impl std::fmt::Display for Val {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Val::Finite(k) => write!(f, "{}", k),
            Val::Infinity => write!(f, "+inf"),
        }
    }
}

pub fn valuation(x: &Rat, p: u32) -> Val {
    if x.is_zero() {
        return Val::Infinity;
    }
    let vn = int_valuation(x.numer(), p) as i64;
    let vd = int_valuation(x.denom(), p) as i64;
    Val::Finite(vn - vd)
}

/// True if x lies in Z_(p): the denominator is prime to p.
pub fn is_p_integral(x: &Rat, p: u32) -> bool {
    if x.is_zero() {
        return true;
    }
    int_valuation(x.denom(), p) == 0
}

/// Reduce an element of Z_(p) modulo p^m to a residue in [0, p^m).
pub fn reduce_mod(x: &Rat, p: u32, m: u32) -> Result<BigInt> {
    if !is_p_integral(x, p) {
        return Err(Error::InvalidInput(format!(
            "{} is not p-integral at p = {}",
            x, p
        )));
    }
    let modulus = BigInt::from(p).pow(m);
    let num = x.numer().mod_floor(&modulus);
    let den = x.denom().mod_floor(&modulus);
    let den_inv = mod_inverse(&den, &modulus).expect("denominator prime to p");
    Ok((num * den_inv).mod_floor(&modulus))
}

/// Inverse modulo `modulus` via extended Euclid; `None` when not coprime.
pub fn mod_inverse(a: &BigInt, modulus: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(modulus);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(modulus))
    } else {
        None
    }
}

/// The localization Z_(p) as a ring of rationals with p-free denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZLoc {
    pub p: u32,
}

impl ZLoc {
    pub fn new(p: u32) -> Self {
        ZLoc { p }
    }

    /// Admit a rational, checking the denominator is prime to p.
    pub fn make(&self, x: Rat) -> Result<Rat> {
        if is_p_integral(&x, self.p) {
            Ok(x)
        } else {
            Err(Error::InvalidInput(format!(
                "{} has denominator divisible by {}",
                x, self.p
            )))
        }
    }

    pub fn valuation(&self, x: &Rat) -> Val {
        valuation(x, self.p)
    }
}

impl Ring for ZLoc {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }
}

/// The truncation O/p^m with residues stored in [0, p^m).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueRing {
    pub p: u32,
    pub m: u32,
}

impl ResidueRing {
    pub fn new(p: u32, m: u32) -> Self {
        assert!(m >= 1);
        ResidueRing { p, m }
    }

    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.p).pow(self.m)
    }

    pub fn reduce(&self, x: &BigInt) -> BigInt {
        x.mod_floor(&self.modulus())
    }

    pub fn reduce_rat(&self, x: &Rat) -> Result<BigInt> {
        reduce_mod(x, self.p, self.m)
    }

    /// Valuation of a residue class, capped by the level for zero.
    pub fn valuation(&self, x: &BigInt) -> Val {
        if x.is_zero() {
            Val::Infinity
        } else {
            Val::Finite(int_valuation(x, self.p).min(self.m as u64) as i64)
        }
    }
}

impl Ring for ResidueRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a + b))
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a - b))
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(&(-a))
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a * b))
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        self.reduce(&BigInt::from(n))
    }
}

/// An element of A_m = O + eps*O/p^m.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DualNum {
    pub base: Rat,
    pub eps: BigInt,
}

impl DualNum {
    pub fn from_base(base: Rat) -> Self {
        DualNum {
            base,
            eps: BigInt::zero(),
        }
    }
}

/// The dual-number ring A_m over Z_(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualRing {
    pub p: u32,
    pub m: u32,
}

impl DualRing {
    pub fn new(p: u32, m: u32) -> Self {
        assert!(m >= 1);
        DualRing { p, m }
    }

    pub fn base_ring(&self) -> ZLoc {
        ZLoc::new(self.p)
    }

    pub fn eps_ring(&self) -> ResidueRing {
        ResidueRing::new(self.p, self.m)
    }

    pub fn make(&self, base: Rat, eps: BigInt) -> Result<DualNum> {
        let base = self.base_ring().make(base)?;
        Ok(DualNum {
            base,
            eps: self.eps_ring().reduce(&eps),
        })
    }

    /// The O-algebra map sending eps to eps*x.
    pub fn alpha(&self, x: &Rat, a: &DualNum) -> Result<DualNum> {
        let xr = self.eps_ring().reduce_rat(x)?;
        Ok(DualNum {
            base: a.base.clone(),
            eps: self.eps_ring().mul(&xr, &a.eps),
        })
    }
}

impl Ring for DualRing {
    type Elem = DualNum;

    fn zero(&self) -> DualNum {
        DualNum::from_base(Rat::zero())
    }
    fn one(&self) -> DualNum {
        DualNum::from_base(Rat::one())
    }
    fn add(&self, a: &DualNum, b: &DualNum) -> DualNum {
        DualNum {
            base: &a.base + &b.base,
            eps: self.eps_ring().add(&a.eps, &b.eps),
        }
    }
    fn sub(&self, a: &DualNum, b: &DualNum) -> DualNum {
        DualNum {
            base: &a.base - &b.base,
            eps: self.eps_ring().sub(&a.eps, &b.eps),
        }
    }
    fn neg(&self, a: &DualNum) -> DualNum {
        DualNum {
            base: -&a.base,
            eps: self.eps_ring().neg(&a.eps),
        }
    }
    fn mul(&self, a: &DualNum, b: &DualNum) -> DualNum {
        // (x + eps y)(x' + eps y') = xx' + eps(xy' + x'y); eps^2 = 0
        let er = self.eps_ring();
        let ar = er.reduce_rat(&a.base).expect("p-integral base");
        let br = er.reduce_rat(&b.base).expect("p-integral base");
        DualNum {
            base: &a.base * &b.base,
            eps: er.add(&er.mul(&ar, &b.eps), &er.mul(&br, &a.eps)),
        }
    }
    fn is_zero(&self, a: &DualNum) -> bool {
        a.base.is_zero() && a.eps.is_zero()
    }
    fn from_i64(&self, n: i64) -> DualNum {
        DualNum::from_base(Rat::from_integer(BigInt::from(n)))
    }
}

/// Convenience: valuation of a plain integer.
pub fn val_i64(x: i64, p: u32) -> Val {
    if x == 0 {
        Val::Infinity
    } else {
        Val::Finite(int_valuation(&BigInt::from(x), p).to_i64().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, rat_int};

    #[test]
    fn valuations() {
        assert_eq!(valuation(&rat_int(6), 3), Val::Finite(1));
        assert_eq!(valuation(&rat(1, 2), 3), Val::Finite(0));
        assert_eq!(valuation(&rat_int(0), 5), Val::Infinity);
        assert_eq!(valuation(&rat(9, 2), 3), Val::Finite(2));
        assert_eq!(valuation(&rat(2, 9), 3), Val::Finite(-2));
    }

    #[test]
    fn valuation_additive() {
        let ps = [3u32, 5, 7];
        let xs = [rat(6, 1), rat(5, 2), rat(9, 4), rat(14, 3)];
        for &p in &ps {
            for x in &xs {
                for y in &xs {
                    let (Val::Finite(a), Val::Finite(b), Val::Finite(c)) =
                        (valuation(x, p), valuation(y, p), valuation(&(x * y), p))
                    else {
                        panic!("finite inputs");
                    };
                    assert_eq!(c, a + b);
                }
            }
        }
    }

    #[test]
    fn zloc_rejects_bad_denominator() {
        let r = ZLoc::new(3);
        assert!(r.make(rat(1, 3)).is_err());
        assert!(r.make(rat(1, 2)).is_ok());
    }

    #[test]
    fn dual_square_rule() {
        // (x + eps y)^2 = x^2 + eps 2xy
        let d = DualRing::new(3, 2);
        let a = d.make(rat_int(2), BigInt::from(5)).unwrap();
        let sq = d.mul(&a, &a);
        assert_eq!(sq.base, rat_int(4));
        assert_eq!(sq.eps, BigInt::from(2 * 2 * 5 % 9));
    }

    #[test]
    fn pure_eps_product_is_zero() {
        let d = DualRing::new(5, 3);
        let a = d.make(rat_int(0), BigInt::from(7)).unwrap();
        let b = d.make(rat_int(0), BigInt::from(11)).unwrap();
        assert!(d.is_zero(&d.mul(&a, &b)));
    }

    #[test]
    fn alpha_scales_eps() {
        let d = DualRing::new(3, 2);
        let a = d.make(rat_int(1), BigInt::from(1)).unwrap();
        let out = d.alpha(&rat_int(6), &a).unwrap();
        assert_eq!(out.base, rat_int(1));
        assert_eq!(out.eps, BigInt::from(6));
    }
}
