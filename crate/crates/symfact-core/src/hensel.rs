//! Lifting a factorization of a monic polynomial along the dual-number
//! thickening A_m = O + eps*O/p^m after rescaling the deformation by the
//! resultant delta.
//!
//! Given ftilde = f + eps*h with f = f1*f2 monic and delta = Res(f1,f2)
//! nonzero, the corrections solve delta*h = h2*f1 + h1*f2 with
//! deg h_i < deg f_i, computed by the adjugate of the Sylvester matrix —
//! entirely over O, no division by delta. Then
//! (f1 + eps*h1)(f2 + eps*h2) = alpha_delta(ftilde) at level m.

use crate::error::{Error, Result};
use crate::local::{DualNum, DualRing, ResidueRing, Val, ZLoc};
use crate::ring::{Rat, Ring};
use crate::sylvester::{bezout_solve, resultant_uni};
use crate::unipoly::UniPoly;
use num_bigint::BigInt;
use num_traits::Zero;

/// f(X) + eps*h(X) with f monic over O and h at level p^m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPoly {
    pub p: u32,
    pub m: u32,
    pub base: UniPoly<ZLoc>,
    pub eps: UniPoly<ResidueRing>,
}

impl DualPoly {
    pub fn new(p: u32, m: u32, base: UniPoly<ZLoc>, eps: UniPoly<ResidueRing>) -> Result<Self> {
        if base.ring.p != p || eps.ring.p != p || eps.ring.m != m {
            return Err(Error::LevelMismatch(format!(
                "component rings disagree with p = {}, m = {}",
                p, m
            )));
        }
        if !base.is_monic() {
            return Err(Error::InvalidInput("base polynomial must be monic".into()));
        }
        if !base.coeffs().iter().all(|c| crate::local::is_p_integral(c, p)) {
            return Err(Error::InvalidInput("base coefficients must lie in Z_(p)".into()));
        }
        if eps.deg_or_zero() >= base.deg_or_zero() && !eps.is_zero() {
            return Err(Error::InvalidInput(
                "eps part must have degree below the monic base".into(),
            ));
        }
        Ok(DualPoly { p, m, base, eps })
    }

    pub fn degree(&self) -> usize {
        self.base.deg_or_zero()
    }

    /// View as a univariate polynomial over the dual-number ring.
    pub fn to_unipoly(&self) -> UniPoly<DualRing> {
        let ring = DualRing::new(self.p, self.m);
        let n = self.base.coeffs().len();
        let coeffs = (0..n)
            .map(|i| DualNum {
                base: self.base.coeff(i),
                eps: if i < self.eps.coeffs().len() {
                    self.eps.coeff(i)
                } else {
                    BigInt::zero()
                },
            })
            .collect();
        UniPoly::new(ring, coeffs)
    }

    /// Drop the eps part to a lower level.
    pub fn truncate(&self, m2: u32) -> Result<DualPoly> {
        if m2 > self.m {
            return Err(Error::LevelMismatch(format!(
                "cannot raise level {} to {}",
                self.m, m2
            )));
        }
        let er = ResidueRing::new(self.p, m2);
        let eps = self.eps.map_coeffs(er, |c| er.reduce(c));
        DualPoly::new(self.p, m2, self.base.clone(), eps)
    }

    /// Apply alpha_x: eps -> eps*x.
    pub fn alpha(&self, x: &Rat) -> Result<DualPoly> {
        let er = ResidueRing::new(self.p, self.m);
        let xr = er.reduce_rat(x)?;
        let eps = self.eps.map_coeffs(er, |c| er.mul(c, &xr));
        Ok(DualPoly {
            p: self.p,
            m: self.m,
            base: self.base.clone(),
            eps,
        })
    }
}

#[derive(Clone, Debug)]
pub struct LiftResult {
    pub f1_tilde: DualPoly,
    pub f2_tilde: DualPoly,
    pub h1: UniPoly<ZLoc>,
    pub h2: UniPoly<ZLoc>,
    pub delta: Rat,
    pub delta_val: Val,
    pub verified: bool,
}

/// Lift ftilde = f1*f2 + eps*h to a factorization of alpha_delta(ftilde).
pub fn lift_factorization(
    ftilde: &DualPoly,
    f1: &UniPoly<ZLoc>,
    f2: &UniPoly<ZLoc>,
) -> Result<LiftResult> {
    let p = ftilde.p;
    let m = ftilde.m;
    if f1.ring.p != p || f2.ring.p != p {
        return Err(Error::LevelMismatch("factor primes disagree".into()));
    }
    if !f1.is_monic() || !f2.is_monic() {
        return Err(Error::InvalidInput("factors must be monic".into()));
    }
    if f1.mul(f2) != ftilde.base {
        return Err(Error::InvalidInput(
            "base polynomial is not the product of the factors".into(),
        ));
    }
    let zloc = ZLoc::new(p);
    let delta = resultant_uni(f1, f2)?;
    if delta.is_zero() {
        return Err(Error::ZeroResultant);
    }
    let delta_val = zloc.valuation(&delta);

    // lift the eps part to O (integer representatives)
    let h = ftilde
        .eps
        .map_coeffs(zloc, |c| Rat::from_integer(c.clone()));

    // g1*f1 + g2*f2 = delta*h with deg g1 < deg f2, deg g2 < deg f1,
    // so h2 = g1 and h1 = g2
    let (h2, h1, _) = bezout_solve(f1, f2, &h)?;

    let er = ResidueRing::new(p, m);
    let mk = |f: &UniPoly<ZLoc>, hc: &UniPoly<ZLoc>| -> Result<DualPoly> {
        let eps = UniPoly::new(
            er,
            hc.coeffs()
                .iter()
                .map(|c| er.reduce_rat(c))
                .collect::<Result<Vec<_>>>()?,
        );
        DualPoly::new(p, m, f.clone(), eps)
    };
    let f1_tilde = mk(f1, &h1)?;
    let f2_tilde = mk(f2, &h2)?;

    let verified = {
        let prod = f1_tilde.to_unipoly().mul(&f2_tilde.to_unipoly());
        let target = ftilde.alpha(&delta)?.to_unipoly();
        prod == target
    };
    if !verified {
        return Err(Error::VerificationFailed(
            "lifted product does not match alpha_delta(ftilde)".into(),
        ));
    }
    Ok(LiftResult {
        f1_tilde,
        f2_tilde,
        h1,
        h2,
        delta,
        delta_val,
        verified,
    })
}

/// Coefficientwise residuals of the lifting identity, plus the relevant
/// valuations. All residuals are zero for an honest LiftResult.
#[derive(Clone, Debug)]
pub struct LiftReport {
    pub residuals: Vec<(Rat, BigInt)>,
    pub ok: bool,
    pub delta_val: Val,
    pub level: u32,
}

pub fn verify_lift(result: &LiftResult, ftilde: &DualPoly) -> Result<LiftReport> {
    let p = ftilde.p;
    let m = ftilde.m;
    if result.f1_tilde.p != p
        || result.f2_tilde.p != p
        || result.f1_tilde.m != m
        || result.f2_tilde.m != m
    {
        return Err(Error::LevelMismatch(
            "lift and target live at different (p, m)".into(),
        ));
    }
    let prod = result.f1_tilde.to_unipoly().mul(&result.f2_tilde.to_unipoly());
    let target = ftilde.alpha(&result.delta)?.to_unipoly();
    let diff = prod.sub(&target);
    let deg = ftilde.degree();
    let residuals: Vec<(Rat, BigInt)> = (0..=deg)
        .map(|i| {
            let c = diff.coeff(i);
            (c.base, c.eps)
        })
        .collect();
    let ok = residuals
        .iter()
        .all(|(b, e)| b.is_zero() && e.is_zero());
    Ok(LiftReport {
        residuals,
        ok,
        delta_val: result.delta_val,
        level: m,
    })
}
