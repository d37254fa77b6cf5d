//! JSON interchange: decimal-string exact numbers, sparse polynomial and
//! matrix DTOs, and self-contained certificates whose cheap verification
//! half can be re-run from the serialized payload alone.

use crate::adequacy::{close_group, span_dim, Predicate, DEFAULT_CAP};
use crate::cyclo::{CycloElem, CycloField};
use crate::error::{Error, Result};
use crate::hecke::{check_fg_gf, check_lemma_3_6, CosetModule, ModuleKind};
use crate::hensel::{DualPoly, LiftResult};
use crate::local::{ResidueRing, ZLoc};
use crate::matrix::Matrix;
use crate::poly::QPoly;
use crate::resultant::{res_x, ResTildeCertificate};
use crate::ring::{Field, Rat, Ring, QQ};
use crate::symring::{coset_representatives, expand_ab, free_basis, BlockShape};
use crate::sylvester::resultant_uni;
use crate::unipoly::UniPoly;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

// ---------------------------------------------------------------- scalars

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RatDto {
    pub num: String,
    pub den: String,
}

impl RatDto {
    pub fn from_rat(r: &Rat) -> Self {
        RatDto {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }

    pub fn to_rat(&self) -> Result<Rat> {
        let n = BigInt::from_str(&self.num)
            .map_err(|_| Error::InvalidInput(format!("bad integer {:?}", self.num)))?;
        let d = BigInt::from_str(&self.den)
            .map_err(|_| Error::InvalidInput(format!("bad integer {:?}", self.den)))?;
        if d.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Rat::new(n, d))
    }
}

/// One exact field element: length 1 for Q, length deg(phi_m) for a
/// cyclotomic field in the power basis of zeta.
pub type EntryDto = Vec<RatDto>;

pub fn rat_entry(r: &Rat) -> EntryDto {
    vec![RatDto::from_rat(r)]
}

pub fn cyclo_entry(c: &CycloElem) -> EntryDto {
    c.iter().map(RatDto::from_rat).collect()
}

// ------------------------------------------------------------ polynomials

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermDto {
    pub exp: Vec<i32>,
    pub coef: RatDto,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyDto {
    pub vars: usize,
    pub laurent: bool,
    pub terms: Vec<TermDto>,
}

impl PolyDto {
    pub fn from_poly(p: &QPoly) -> Self {
        PolyDto {
            vars: p.num_vars,
            laurent: p.laurent,
            terms: p
                .terms()
                .map(|(e, c)| TermDto {
                    exp: e.clone(),
                    coef: RatDto::from_rat(c),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<QPoly> {
        let mut out = if self.laurent {
            QPoly::zero_laurent(self.vars)
        } else {
            QPoly::zero(self.vars)
        };
        for t in &self.terms {
            if t.exp.len() != self.vars {
                return Err(Error::InvalidInput("exponent arity mismatch".into()));
            }
            if !self.laurent && t.exp.iter().any(|&e| e < 0) {
                return Err(Error::InvalidInput(
                    "negative exponent in non-Laurent polynomial".into(),
                ));
            }
            out = out.add(&QPoly::monomial(
                self.vars,
                t.exp.clone(),
                t.coef.to_rat()?,
            ))?;
        }
        Ok(out)
    }
}

// --------------------------------------------------------------- matrices

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixDto {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<EntryDto>,
}

impl MatrixDto {
    pub fn from_q(m: &Matrix<QQ>) -> Self {
        MatrixDto {
            rows: m.rows,
            cols: m.cols,
            entries: m.flatten().iter().map(rat_entry).collect(),
        }
    }

    pub fn from_cyclo(m: &Matrix<CycloField>) -> Self {
        MatrixDto {
            rows: m.rows,
            cols: m.cols,
            entries: m.flatten().iter().map(cyclo_entry).collect(),
        }
    }

    fn check_shape(&self) -> Result<()> {
        if self.entries.len() != self.rows * self.cols {
            return Err(Error::InvalidInput("matrix entry count".into()));
        }
        Ok(())
    }

    pub fn to_q(&self) -> Result<Matrix<QQ>> {
        self.check_shape()?;
        let mut m = Matrix::zero(QQ, self.rows, self.cols);
        for (k, e) in self.entries.iter().enumerate() {
            if e.len() != 1 {
                return Err(Error::InvalidInput("rational entry arity".into()));
            }
            *m.at_mut(k / self.cols, k % self.cols) = e[0].to_rat()?;
        }
        Ok(m)
    }

    pub fn to_cyclo(&self, k: &CycloField) -> Result<Matrix<CycloField>> {
        self.check_shape()?;
        let deg = k.one().len();
        let mut m = Matrix::zero(k.clone(), self.rows, self.cols);
        for (i, e) in self.entries.iter().enumerate() {
            if e.len() > deg {
                return Err(Error::InvalidInput("cyclotomic entry arity".into()));
            }
            let mut v = vec![Rat::zero(); deg];
            for (j, r) in e.iter().enumerate() {
                v[j] = r.to_rat()?;
            }
            *m.at_mut(i / self.cols, i % self.cols) = v;
        }
        Ok(m)
    }
}

// -------------------------------------------------------------- envelope

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateFile {
    pub schema_version: u32,
    pub kind: String,
    pub tool_version: String,
    pub seed: u64,
    pub timing_ms: u64,
    pub payload: serde_json::Value,
}

impl CertificateFile {
    pub fn new(kind: &str, seed: u64, payload: serde_json::Value) -> Self {
        CertificateFile {
            schema_version: SCHEMA_VERSION,
            kind: kind.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            seed,
            timing_ms: 0,
            payload,
        }
    }
}

// ------------------------------------------------------------ payloads

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DifferentCertDto {
    pub n1: usize,
    pub n2: usize,
    pub partitions: Vec<Vec<usize>>,
    pub z_ab: Vec<PolyDto>,
    pub res_ab: PolyDto,
    pub jacobian_sign: i8,
}

impl DifferentCertDto {
    pub fn from_cert(cert: &ResTildeCertificate) -> Self {
        DifferentCertDto {
            n1: cert.shape.n1,
            n2: cert.shape.n2,
            partitions: cert.partitions.clone(),
            z_ab: cert.z_ab.iter().map(PolyDto::from_poly).collect(),
            res_ab: PolyDto::from_poly(&cert.res_ab),
            jacobian_sign: cert.jacobian_sign,
        }
    }

    pub fn shape(&self) -> BlockShape {
        BlockShape::new(self.n1, self.n2)
    }

    /// Rebuild a certificate object without re-solving; residual fields
    /// are re-derived by `verify`.
    pub fn to_cert(&self) -> Result<ResTildeCertificate> {
        let shape = self.shape();
        Ok(ResTildeCertificate {
            shape,
            partitions: self.partitions.clone(),
            z_ab: self
                .z_ab
                .iter()
                .map(|p| p.to_poly())
                .collect::<Result<Vec<_>>>()?,
            res_ab: self.res_ab.to_poly()?,
            property1_residual: QPoly::zero(shape.n()),
            coset_residuals: vec![],
            property1_ok: true,
            property2_ok: true,
            uniqueness_ok: true,
            jacobian_sign: self.jacobian_sign,
        })
    }

    /// Re-check both defining properties by direct expansion in x-space.
    pub fn verify(&self) -> Result<()> {
        let shape = self.shape();
        let (basis_x, _) = free_basis(shape);
        if self.z_ab.len() != basis_x.len() {
            return Err(Error::VerificationFailed("z-vector length".into()));
        }
        let z_x: Vec<QPoly> = self
            .z_ab
            .iter()
            .map(|p| expand_ab(shape, &p.to_poly()?))
            .collect::<Result<Vec<_>>>()?;
        let res = res_x(shape);
        if expand_ab(shape, &self.res_ab.to_poly()?)? != res {
            return Err(Error::VerificationFailed(
                "stored resultant disagrees with the root-difference product".into(),
            ));
        }
        let mut sum = QPoly::zero(shape.n());
        for (f, z) in basis_x.iter().zip(&z_x) {
            sum = sum.add(&f.mul(z)?)?;
        }
        if sum != res {
            return Err(Error::VerificationFailed(
                "property 1: mu(R~) differs from Res".into(),
            ));
        }
        for w in coset_representatives(shape).into_iter().skip(1) {
            let mut s1 = QPoly::zero(shape.n());
            let mut s2 = QPoly::zero(shape.n());
            for (f, z) in basis_x.iter().zip(&z_x) {
                s1 = s1.add(&f.mul(&z.permute_vars(&w))?)?;
                s2 = s2.add(&f.permute_vars(&w).mul(z)?)?;
            }
            if !s1.is_zero() || !s2.is_zero() {
                return Err(Error::VerificationFailed(format!(
                    "property 2 residual at coset representative {:?}",
                    w
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CofactorCertDto {
    pub n1: usize,
    pub n2: usize,
    /// coefficient lists (ascending) of G1, G2 in ab-coordinates
    pub g1: Vec<PolyDto>,
    pub g2: Vec<PolyDto>,
    pub res_ab: PolyDto,
}

impl CofactorCertDto {
    pub fn from_pair(pair: &crate::resultant::ProjectorPair) -> Self {
        CofactorCertDto {
            n1: pair.shape.n1,
            n2: pair.shape.n2,
            g1: pair.g1.coeffs().iter().map(PolyDto::from_poly).collect(),
            g2: pair.g2.coeffs().iter().map(PolyDto::from_poly).collect(),
            res_ab: PolyDto::from_poly(&pair.res),
        }
    }

    /// Re-expand G1 F1 + G2 F2 and compare with the stored resultant,
    /// itself checked against the root-difference product.
    pub fn verify(&self) -> Result<()> {
        let shape = BlockShape::new(self.n1, self.n2);
        let ring = crate::poly::PolyRing::new(shape.n());
        let dec = |ps: &[PolyDto]| -> Result<UniPoly<crate::poly::PolyRing>> {
            Ok(UniPoly::new(
                ring.clone(),
                ps.iter().map(|p| p.to_poly()).collect::<Result<Vec<_>>>()?,
            ))
        };
        let g1 = dec(&self.g1)?;
        let g2 = dec(&self.g2)?;
        let f1 = crate::resultant::universal_f1(shape);
        let f2 = crate::resultant::universal_f2(shape);
        let res = self.res_ab.to_poly()?;
        if expand_ab(shape, &res)? != res_x(shape) {
            return Err(Error::VerificationFailed(
                "stored resultant disagrees with the root-difference product".into(),
            ));
        }
        let lhs = g1.mul(&f1).add(&g2.mul(&f2));
        if lhs != UniPoly::constant(ring, res) {
            return Err(Error::VerificationFailed(
                "Bezout identity G1 F1 + G2 F2 = Res failed".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HenselCertDto {
    pub p: u32,
    pub m: u32,
    pub f1: Vec<RatDto>,
    pub f2: Vec<RatDto>,
    /// eps-part of the deformation target, residues mod p^m
    pub h_eps: Vec<String>,
    /// eps-parts of the lifted factors
    pub f1t_eps: Vec<String>,
    pub f2t_eps: Vec<String>,
    pub delta: RatDto,
}

fn bigints(v: &[String]) -> Result<Vec<BigInt>> {
    v.iter()
        .map(|s| BigInt::from_str(s).map_err(|_| Error::InvalidInput(format!("bad integer {s}"))))
        .collect()
}

impl HenselCertDto {
    pub fn from_lift(
        ftilde: &DualPoly,
        f1: &UniPoly<ZLoc>,
        f2: &UniPoly<ZLoc>,
        lift: &LiftResult,
    ) -> Self {
        let strs = |p: &UniPoly<ResidueRing>| p.coeffs().iter().map(|c| c.to_string()).collect();
        HenselCertDto {
            p: ftilde.p,
            m: ftilde.m,
            f1: f1.coeffs().iter().map(RatDto::from_rat).collect(),
            f2: f2.coeffs().iter().map(RatDto::from_rat).collect(),
            h_eps: strs(&ftilde.eps),
            f1t_eps: strs(&lift.f1_tilde.eps),
            f2t_eps: strs(&lift.f2_tilde.eps),
            delta: RatDto::from_rat(&lift.delta),
        }
    }

    /// Re-multiply the lifted factors and compare with alpha_delta of
    /// the deformation target, coefficient by coefficient.
    pub fn verify(&self) -> Result<()> {
        let zloc = ZLoc::new(self.p);
        let rring = ResidueRing::new(self.p, self.m);
        let rats = |v: &[RatDto]| -> Result<Vec<Rat>> {
            v.iter().map(|r| r.to_rat()).collect()
        };
        let f1 = UniPoly::new(zloc.clone(), rats(&self.f1)?);
        let f2 = UniPoly::new(zloc.clone(), rats(&self.f2)?);
        let eps_poly = |v: &[String]| -> Result<UniPoly<ResidueRing>> {
            Ok(UniPoly::new(
                rring.clone(),
                bigints(v)?.iter().map(|b| rring.reduce(b)).collect(),
            ))
        };
        let base = f1.mul(&f2);
        let ftilde = DualPoly::new(self.p, self.m, base, eps_poly(&self.h_eps)?)?;
        let f1t = DualPoly::new(self.p, self.m, f1.clone(), eps_poly(&self.f1t_eps)?)?;
        let f2t = DualPoly::new(self.p, self.m, f2.clone(), eps_poly(&self.f2t_eps)?)?;
        let delta = self.delta.to_rat()?;
        if delta != resultant_uni(&f1, &f2)? {
            return Err(Error::VerificationFailed(
                "stored delta is not the resultant of the factors".into(),
            ));
        }
        let prod = f1t.to_unipoly().mul(&f2t.to_unipoly());
        let target = ftilde.alpha(&delta)?.to_unipoly();
        if prod != target {
            return Err(Error::VerificationFailed(
                "lifted factorization identity failed".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeckeCertDto {
    pub module: String,
    pub degree: i32,
    pub trials: usize,
    pub check_seed: u64,
    pub different: DifferentCertDto,
    pub lemma_parts_ok: [bool; 4],
}

pub fn module_from_name(shape: BlockShape, name: &str) -> Result<CosetModule> {
    if name == "point" {
        Ok(CosetModule::point(shape))
    } else if name == "regular" {
        Ok(CosetModule::regular(shape))
    } else if let Some(k) = name.strip_prefix("parabolic:") {
        let k: usize = k
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad parabolic index {k}")))?;
        if k == 0 || k >= shape.n() {
            return Err(Error::InvalidInput("parabolic index out of range".into()));
        }
        Ok(CosetModule::parabolic(shape, k))
    } else {
        Err(Error::InvalidInput(format!("unknown module {name}")))
    }
}

pub fn module_name(kind: &ModuleKind) -> String {
    match kind {
        ModuleKind::Point => "point".into(),
        ModuleKind::Parabolic(k) => format!("parabolic:{k}"),
        ModuleKind::Regular => "regular".into(),
    }
}

impl HeckeCertDto {
    /// Re-run the stored z-vector through the maps f and g on a short
    /// deterministic trial schedule; no linear solve is repeated.
    pub fn verify(&self) -> Result<()> {
        self.different.verify()?;
        let shape = self.different.shape();
        let cert = self.different.to_cert()?;
        let module = module_from_name(shape, &self.module)?;
        let rep = check_fg_gf(&module, &cert, self.degree.min(2), 2, self.check_seed)?;
        if !rep.ok {
            return Err(Error::VerificationFailed(
                "fg = gf = Res identity failed on re-check".into(),
            ));
        }
        let lemma = check_lemma_3_6(&module, &cert, self.check_seed)?;
        let parts = [
            lemma.part1_ok,
            lemma.part2_ok,
            lemma.part3_ok,
            lemma.part4_ok,
        ];
        if parts != self.lemma_parts_ok || !lemma.all_ok() {
            return Err(Error::VerificationFailed(
                "tensor/trace identity parts failed on re-check".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdequacyCertDto {
    /// 0 for Q, otherwise the cyclotomic conductor
    pub conductor: u32,
    pub n: usize,
    pub generators: Vec<MatrixDto>,
    pub order: usize,
    pub span_all: usize,
    pub span_ss: usize,
    pub span_rss: usize,
    pub adequate: bool,
    pub rss_contained_in_antidiagonal_zero: Option<bool>,
}

fn adequacy_verify_in<R: Field>(
    ring: R,
    gens: &[Matrix<R>],
    dto: &AdequacyCertDto,
) -> Result<()> {
    let group = close_group(ring.clone(), gens, DEFAULT_CAP)?;
    if group.order() != dto.order {
        return Err(Error::VerificationFailed("group order mismatch".into()));
    }
    let all = span_dim(&group, Predicate::All)?;
    let ss = span_dim(&group, Predicate::Semisimple)?;
    let rss = span_dim(&group, Predicate::RegularSemisimple)?;
    if all.dim != dto.span_all || ss.dim != dto.span_ss || rss.dim != dto.span_rss {
        return Err(Error::VerificationFailed("span dimension mismatch".into()));
    }
    if dto.adequate != (ss.dim == dto.n * dto.n) {
        return Err(Error::VerificationFailed("adequacy flag mismatch".into()));
    }
    if let Some(flag) = dto.rss_contained_in_antidiagonal_zero {
        let anti = crate::adequacy::antidiagonal_zero_basis(ring.clone(), dto.n);
        let contained = crate::adequacy::span_contained_in(&ring, &rss.basis, &anti);
        if contained != flag {
            return Err(Error::VerificationFailed(
                "anti-diagonal containment mismatch".into(),
            ));
        }
    }
    Ok(())
}

impl AdequacyCertDto {
    pub fn verify(&self) -> Result<()> {
        if self.conductor == 0 {
            let gens = self
                .generators
                .iter()
                .map(|m| m.to_q())
                .collect::<Result<Vec<_>>>()?;
            adequacy_verify_in(QQ, &gens, self)
        } else {
            let k = CycloField::new(self.conductor);
            let gens = self
                .generators
                .iter()
                .map(|m| m.to_cyclo(&k))
                .collect::<Result<Vec<_>>>()?;
            adequacy_verify_in(k, &gens, self)
        }
    }
}

/// Dispatch on the certificate kind and re-run its verification half.
pub fn verify_certificate(cert: &CertificateFile) -> Result<()> {
    if cert.schema_version != SCHEMA_VERSION {
        return Err(Error::InvalidInput(format!(
            "unsupported schema version {}",
            cert.schema_version
        )));
    }
    match cert.kind.as_str() {
        "different" => {
            let dto: DifferentCertDto = serde_json::from_value(cert.payload.clone())?;
            dto.verify()
        }
        "cofactors" => {
            let dto: CofactorCertDto = serde_json::from_value(cert.payload.clone())?;
            dto.verify()
        }
        "hensel" => {
            let dto: HenselCertDto = serde_json::from_value(cert.payload.clone())?;
            dto.verify()
        }
        "hecke" => {
            let dto: HeckeCertDto = serde_json::from_value(cert.payload.clone())?;
            dto.verify()
        }
        "adequacy" => {
            let dto: AdequacyCertDto = serde_json::from_value(cert.payload.clone())?;
            dto.verify()
        }
        other => Err(Error::InvalidInput(format!(
            "unknown certificate kind {other}"
        ))),
    }
}
