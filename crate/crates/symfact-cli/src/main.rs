//! Command-line front door: exact certificates for the resultant
//! calculus, Bezout/projector layer, Hensel lifting, coset-module trace
//! identities, and adequacy analysis, plus an aggregated suite runner
//! and a cheap certificate re-verifier.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/config error.

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::time::Instant;

use symfact_core::adequacy::{
    build_tensor_example, close_group, span_dim, weak_adequacy_check, Predicate, DEFAULT_CAP,
};
use symfact_core::cyclo::CycloField;
use symfact_core::hecke::{
    check_fg_gf, check_lemma_3_6, check_trace_relation, check_unramified_annihilation,
    tw_residual, TraceRelationInstance, UnramifiedVerdict,
};
use symfact_core::hensel::{lift_factorization, DualPoly};
use symfact_core::jsonio::{
    cyclo_entry, module_from_name, rat_entry, verify_certificate, AdequacyCertDto,
    CertificateFile, CofactorCertDto, DifferentCertDto, EntryDto, HeckeCertDto, HenselCertDto,
    MatrixDto, PolyDto, RatDto,
};
use symfact_core::local::{ResidueRing, ZLoc};
use symfact_core::matrix::Matrix;
use symfact_core::resultant::{matrix_projectors, res_tilde, universal_cofactors};
use symfact_core::ring::{Field, Rat, Ring, QQ};
use symfact_core::symring::{free_basis, BlockShape};
use symfact_core::unipoly::UniPoly;
use symfact_core::Error;

#[derive(Parser)]
#[command(name = "symfact", version, about = "exact resultant-calculus certifier")]
struct Cli {
    /// RNG seed recorded in all emitted reports
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Output directory for certificate files
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Emit machine-readable JSON to stdout
    #[arg(long, global = true, default_value_t = false)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Free module basis of the block-invariant ring over the symmetric ring
    Basis {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
    },
    /// Canonical different element R~ with both defining properties certified
    Different {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
    },
    /// Universal Bezout cofactors G1 F1 + G2 F2 = Res
    Cofactors {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
    },
    /// Generalized-eigenspace projectors of a rational matrix
    Projectors {
        /// JSON file with the matrix
        #[arg(long)]
        matrix: PathBuf,
        /// comma-separated ascending coefficients of the first factor
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
    },
    /// Dual-number Hensel lift of a factorization
    Hensel {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
        /// comma-separated integer coefficients of the eps deformation
        #[arg(long)]
        h: String,
    },
    /// fg = gf = Res identity and the four tensor/trace identities
    HeckeVerify {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        /// point | parabolic:k | regular
        #[arg(long, default_value = "point")]
        module: String,
        #[arg(long, default_value_t = 2)]
        degree: i32,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Local trace-relation residual for one instance
    TraceRelation {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Taylor-Wiles residual delta_q^{n!} tr(sigma R)
    TwResidual {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
    },
    /// Group closure, span probes, weak adequacy
    Adequacy {
        /// Q | cyclo:m
        #[arg(long, default_value = "Q")]
        field: String,
        /// JSON file with generator matrices
        #[arg(long)]
        gens: Option<PathBuf>,
        /// all | ss | rss
        #[arg(long, default_value = "all")]
        predicate: String,
        /// tensor-counterexample
        #[arg(long)]
        demo: Option<String>,
    },
    /// Run every enabled suite and write certificates
    Suite {
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Re-run the cheap verification half of a stored certificate
    Verify { cert: PathBuf },
}

// ---------------------------------------------------------------- config

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SuiteConfig {
    suites: Vec<String>,
    shapes: Vec<(usize, usize)>,
    trials: usize,
    seed: u64,
}

impl SuiteConfig {
    fn default_with_seed(seed: u64) -> Self {
        SuiteConfig {
            suites: ["different", "bezout", "hensel", "hecke", "adequacy"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            shapes: vec![(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)],
            trials: 5,
            seed,
        }
    }

    fn validate(&self) -> Result<(), String> {
        for &(n1, n2) in &self.shapes {
            if n1 == 0 || n2 == 0 || n1 + n2 > 6 {
                return Err(format!("shape ({n1},{n2}) outside the supported range n <= 6"));
            }
        }
        for s in &self.suites {
            if !["different", "bezout", "hensel", "hecke", "adequacy"].contains(&s.as_str()) {
                return Err(format!("unknown suite {s}"));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------- helpers

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidInput(_)
        | Error::Json(_)
        | Error::Io(_)
        | Error::Unsupported(_)
        | Error::LevelMismatch(_) => 2,
        _ => 1,
    }
}

fn parse_rats(s: &str) -> Result<Vec<Rat>, Error> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let (n, d) = match t.split_once('/') {
                Some((n, d)) => (n, d),
                None => (t, "1"),
            };
            RatDto {
                num: n.to_string(),
                den: d.to_string(),
            }
            .to_rat()
        })
        .collect()
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn write_certificate(
    out_dir: &Path,
    name: &str,
    mut cert: CertificateFile,
    started: Instant,
) -> Result<PathBuf, Error> {
    std::fs::create_dir_all(out_dir)?;
    cert.timing_ms = started.elapsed().as_millis() as u64;
    let path = out_dir.join(format!("{name}.json"));
    std::fs::write(&path, serde_json::to_string_pretty(&cert)?)?;
    Ok(path)
}

fn emit(json: bool, value: &serde_json::Value, human: &str) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).unwrap());
    } else {
        println!("{human}");
    }
}

fn shape_checked(n1: usize, n2: usize) -> Result<BlockShape, Error> {
    if n1 == 0 || n2 == 0 || n1 + n2 > 6 {
        return Err(Error::InvalidInput(format!(
            "shape ({n1},{n2}) outside the supported range n <= 6"
        )));
    }
    Ok(BlockShape::new(n1, n2))
}

// -------------------------------------------------------- trace instances

#[derive(Clone, Debug, Serialize, Deserialize)]
struct InstanceDto {
    /// 0 for Q, otherwise a cyclotomic conductor
    conductor: u32,
    rho_frob: MatrixDto,
    rho_tau: MatrixDto,
    f1: Vec<EntryDto>,
    f2: Vec<EntryDto>,
    alpha_char: EntryDto,
    q: EntryDto,
}

fn entry_to_q(e: &EntryDto) -> Result<Rat, Error> {
    if e.len() != 1 {
        return Err(Error::InvalidInput("rational entry arity".into()));
    }
    e[0].to_rat()
}

fn entry_to_cyclo(k: &CycloField, e: &EntryDto) -> Result<Vec<Rat>, Error> {
    let deg = k.one().len();
    if e.len() > deg {
        return Err(Error::InvalidInput("cyclotomic entry arity".into()));
    }
    let mut v = vec![Rat::from_integer(0.into()); deg];
    for (j, r) in e.iter().enumerate() {
        v[j] = r.to_rat()?;
    }
    Ok(v)
}

enum AnyInstance {
    Q(TraceRelationInstance<QQ>),
    Cyclo(TraceRelationInstance<CycloField>),
}

fn load_instance(dto: &InstanceDto) -> Result<AnyInstance, Error> {
    if dto.conductor == 0 {
        let coeffs = |v: &[EntryDto]| -> Result<Vec<Rat>, Error> {
            v.iter().map(entry_to_q).collect()
        };
        Ok(AnyInstance::Q(TraceRelationInstance {
            ring: QQ,
            rho_frob: dto.rho_frob.to_q()?,
            rho_tau: dto.rho_tau.to_q()?,
            f1: UniPoly::new(QQ, coeffs(&dto.f1)?),
            f2: UniPoly::new(QQ, coeffs(&dto.f2)?),
            alpha_char: entry_to_q(&dto.alpha_char)?,
            q: entry_to_q(&dto.q)?,
        }))
    } else {
        let k = CycloField::new(dto.conductor);
        let coeffs = |v: &[EntryDto]| -> Result<Vec<Vec<Rat>>, Error> {
            v.iter().map(|e| entry_to_cyclo(&k, e)).collect()
        };
        Ok(AnyInstance::Cyclo(TraceRelationInstance {
            ring: k.clone(),
            rho_frob: dto.rho_frob.to_cyclo(&k)?,
            rho_tau: dto.rho_tau.to_cyclo(&k)?,
            f1: UniPoly::new(k.clone(), coeffs(&dto.f1)?),
            f2: UniPoly::new(k.clone(), coeffs(&dto.f2)?),
            alpha_char: entry_to_cyclo(&k, &dto.alpha_char)?,
            q: entry_to_cyclo(&k, &dto.q)?,
        }))
    }
}

fn verdict_name(v: UnramifiedVerdict) -> &'static str {
    match v {
        UnramifiedVerdict::Annihilated => "annihilated",
        UnramifiedVerdict::UnramifiedForced => "unramified-forced",
        UnramifiedVerdict::Violated => "violated",
    }
}

// ------------------------------------------------------------- commands

fn cmd_basis(shape: BlockShape, json: bool) -> Result<i32, Error> {
    let (basis, partitions) = free_basis(shape);
    let payload = serde_json::json!({
        "n1": shape.n1,
        "n2": shape.n2,
        "rank": basis.len(),
        "partitions": partitions,
        "basis_x": basis.iter().map(PolyDto::from_poly).collect::<Vec<_>>(),
    });
    emit(
        json,
        &payload,
        &format!(
            "free basis of B over A at shape ({},{}): rank {}, partitions {:?}",
            shape.n1,
            shape.n2,
            basis.len(),
            partitions
        ),
    );
    Ok(0)
}

fn cmd_different(
    shape: BlockShape,
    seed: u64,
    out: Option<&Path>,
    json: bool,
) -> Result<i32, Error> {
    let started = Instant::now();
    let cert = res_tilde(shape, seed)?;
    if !cert.all_ok() {
        return Err(Error::VerificationFailed("different certificate".into()));
    }
    let dto = DifferentCertDto::from_cert(&cert);
    dto.verify()?;
    let file = CertificateFile::new("different", seed, serde_json::to_value(&dto)?);
    if let Some(dir) = out {
        let path = write_certificate(dir, &format!("different-{}-{}", shape.n1, shape.n2), file.clone(), started)?;
        if !json {
            println!("wrote {}", path.display());
        }
    }
    emit(
        json,
        &serde_json::to_value(&file)?,
        &format!(
            "R~ certified at shape ({},{}): both properties exact, jacobian sign {}",
            shape.n1, shape.n2, dto.jacobian_sign
        ),
    );
    Ok(0)
}

fn cmd_cofactors(
    shape: BlockShape,
    seed: u64,
    out: Option<&Path>,
    json: bool,
) -> Result<i32, Error> {
    let started = Instant::now();
    let pair = universal_cofactors(shape)?;
    let dto = CofactorCertDto::from_pair(&pair);
    dto.verify()?;
    let file = CertificateFile::new("cofactors", seed, serde_json::to_value(&dto)?);
    if let Some(dir) = out {
        let path = write_certificate(dir, &format!("cofactors-{}-{}", shape.n1, shape.n2), file.clone(), started)?;
        if !json {
            println!("wrote {}", path.display());
        }
    }
    emit(
        json,
        &serde_json::to_value(&file)?,
        &format!(
            "G1 F1 + G2 F2 = Res verified identically at shape ({},{})",
            shape.n1, shape.n2
        ),
    );
    Ok(0)
}

fn cmd_projectors(matrix: &Path, f1: &str, f2: &str, json: bool) -> Result<i32, Error> {
    let mdto: MatrixDto = read_json(matrix)?;
    let m = mdto.to_q()?;
    let f1 = UniPoly::new(QQ, parse_rats(f1)?);
    let f2 = UniPoly::new(QQ, parse_rats(f2)?);
    let p = matrix_projectors(&m, &f1, &f2)?;
    let payload = serde_json::json!({
        "delta": RatDto::from_rat(&p.delta),
        "e1": MatrixDto::from_q(&p.e1),
        "e2": MatrixDto::from_q(&p.e2),
    });
    emit(
        json,
        &payload,
        &format!(
            "projector identities E1+E2 = delta I, E1 E2 = 0, Ei^2 = delta Ei verified; delta = {}",
            p.delta
        ),
    );
    Ok(0)
}

fn cmd_hensel(
    p: u32,
    m: u32,
    f1: &str,
    f2: &str,
    h: &str,
    seed: u64,
    out: Option<&Path>,
    json: bool,
) -> Result<i32, Error> {
    let started = Instant::now();
    let zloc = ZLoc::new(p);
    let rring = ResidueRing::new(p, m);
    let f1 = UniPoly::new(zloc.clone(), parse_rats(f1)?);
    let f2 = UniPoly::new(zloc.clone(), parse_rats(f2)?);
    let h_coeffs: Vec<_> = parse_rats(h)?
        .into_iter()
        .map(|r| {
            if !r.is_integer() {
                return Err(Error::InvalidInput("eps coefficients must be integers".into()));
            }
            Ok(rring.reduce(&r.to_integer()))
        })
        .collect::<Result<_, _>>()?;
    let ftilde = DualPoly::new(p, m, f1.mul(&f2), UniPoly::new(rring, h_coeffs))?;
    let lift = lift_factorization(&ftilde, &f1, &f2)?;
    if !lift.verified {
        return Err(Error::VerificationFailed("hensel lift".into()));
    }
    let dto = HenselCertDto::from_lift(&ftilde, &f1, &f2, &lift);
    dto.verify()?;
    let file = CertificateFile::new("hensel", seed, serde_json::to_value(&dto)?);
    if let Some(dir) = out {
        let path = write_certificate(dir, &format!("hensel-p{p}-m{m}"), file.clone(), started)?;
        if !json {
            println!("wrote {}", path.display());
        }
    }
    emit(
        json,
        &serde_json::to_value(&file)?,
        &format!(
            "lift verified at (p,m) = ({p},{m}); delta = {} with valuation {:?}",
            lift.delta, lift.delta_val
        ),
    );
    Ok(0)
}

fn cmd_hecke_verify(
    shape: BlockShape,
    module_name: &str,
    degree: i32,
    trials: usize,
    seed: u64,
    out: Option<&Path>,
    json: bool,
) -> Result<i32, Error> {
    let started = Instant::now();
    let module = module_from_name(shape, module_name)?;
    let cert = res_tilde(shape, seed)?;
    let rep = check_fg_gf(&module, &cert, degree, trials, seed)?;
    let lemma = check_lemma_3_6(&module, &cert, seed)?;
    let ok = rep.ok && lemma.all_ok();
    let dto = HeckeCertDto {
        module: module_name.to_string(),
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
    let file = CertificateFile::new("hecke", seed, serde_json::to_value(&dto)?);
    if let Some(dir) = out {
        let path = write_certificate(
            dir,
            &format!(
                "hecke-{}-{}-{}",
                shape.n1,
                shape.n2,
                module_name.replace(':', "")
            ),
            file.clone(),
            started,
        )?;
        if !json {
            println!("wrote {}", path.display());
        }
    }
    emit(
        json,
        &serde_json::to_value(&file)?,
        &format!(
            "fg = gf = Res on {} trials: {}; tensor/trace identities: {}",
            trials,
            if rep.ok { "exact" } else { "FAILED" },
            if lemma.all_ok() { "all four exact" } else { "FAILED" },
        ),
    );
    Ok(if ok { 0 } else { 1 })
}

fn cmd_trace_relation(instance: &Path, json: bool) -> Result<i32, Error> {
    let dto: InstanceDto = read_json(instance)?;
    match load_instance(&dto)? {
        AnyInstance::Q(inst) => {
            let rep = check_trace_relation(&inst)?;
            let verdict = check_unramified_annihilation(&inst)?;
            let payload = serde_json::json!({
                "residual_zero": rep.ok,
                "delta": rat_entry(&rep.delta),
                "residual": MatrixDto::from_q(&rep.residual),
                "unramified_verdict": verdict_name(verdict),
            });
            emit(
                json,
                &payload,
                &format!(
                    "trace relation residual {}; delta = {}; q-classification: {}",
                    if rep.ok { "= 0 exactly" } else { "NONZERO" },
                    rep.delta,
                    verdict_name(verdict)
                ),
            );
            Ok(if rep.ok { 0 } else { 1 })
        }
        AnyInstance::Cyclo(inst) => {
            let rep = check_trace_relation(&inst)?;
            let verdict = check_unramified_annihilation(&inst)?;
            let payload = serde_json::json!({
                "residual_zero": rep.ok,
                "delta": cyclo_entry(&rep.delta),
                "residual": MatrixDto::from_cyclo(&rep.residual),
                "unramified_verdict": verdict_name(verdict),
            });
            emit(
                json,
                &payload,
                &format!(
                    "trace relation residual {}; q-classification: {}",
                    if rep.ok { "= 0 exactly" } else { "NONZERO" },
                    verdict_name(verdict)
                ),
            );
            Ok(if rep.ok { 0 } else { 1 })
        }
    }
}

fn cmd_tw_residual(instance: &Path, sigma: &Path, json: bool) -> Result<i32, Error> {
    let dto: InstanceDto = read_json(instance)?;
    let sdto: MatrixDto = read_json(sigma)?;
    match load_instance(&dto)? {
        AnyInstance::Q(inst) => {
            let s = sdto.to_q()?;
            let r = tw_residual(&inst, &s)?;
            let payload = serde_json::json!({
                "residual": rat_entry(&r),
                "zero": inst.ring.is_zero(&r),
            });
            emit(json, &payload, &format!("TW residual = {r}"));
            Ok(0)
        }
        AnyInstance::Cyclo(inst) => {
            let k = inst.ring.clone();
            let s = sdto.to_cyclo(&k)?;
            let r = tw_residual(&inst, &s)?;
            let payload = serde_json::json!({
                "residual": cyclo_entry(&r),
                "zero": k.is_zero(&r),
            });
            emit(json, &payload, &format!("TW residual coefficients {r:?}"));
            Ok(0)
        }
    }
}

fn predicate_from_name(name: &str) -> Result<Predicate, Error> {
    match name {
        "all" => Ok(Predicate::All),
        "ss" => Ok(Predicate::Semisimple),
        "rss" => Ok(Predicate::RegularSemisimple),
        _ => Err(Error::InvalidInput(format!("unknown predicate {name}"))),
    }
}

fn adequacy_in<R: Field>(
    ring: R,
    gens: Vec<Matrix<R>>,
    predicate: Predicate,
    json: bool,
) -> Result<i32, Error> {
    let group = close_group(ring, &gens, DEFAULT_CAP)?;
    let span = span_dim(&group, predicate)?;
    let adequacy = weak_adequacy_check(&group)?;
    let payload = serde_json::json!({
        "order": group.order(),
        "span_dim": span.dim,
        "full_dim": group.n * group.n,
        "weak_adequacy": adequacy.adequate,
        "all_elements_semisimple": adequacy.all_semisimple,
    });
    emit(
        json,
        &payload,
        &format!(
            "group order {}; span {} of {}; weak adequacy: {}",
            group.order(),
            span.dim,
            group.n * group.n,
            adequacy.adequate
        ),
    );
    Ok(0)
}

fn cmd_adequacy(
    field: &str,
    gens: Option<&Path>,
    predicate: &str,
    demo: Option<&str>,
    seed: u64,
    out: Option<&Path>,
    json: bool,
) -> Result<i32, Error> {
    if let Some(demo) = demo {
        if demo != "tensor-counterexample" {
            return Err(Error::InvalidInput(format!("unknown demo {demo}")));
        }
        let started = Instant::now();
        let (group, report) = build_tensor_example()?;
        let all = span_dim(&group, Predicate::All)?;
        let ss = span_dim(&group, Predicate::Semisimple)?;
        let dto = AdequacyCertDto {
            conductor: 4,
            n: 4,
            generators: group.generators.iter().map(MatrixDto::from_cyclo).collect(),
            order: group.order(),
            span_all: all.dim,
            span_ss: ss.dim,
            span_rss: report.rss_span_dim,
            adequate: ss.dim == 16,
            rss_contained_in_antidiagonal_zero: Some(
                report.rss_contained_in_antidiagonal_zero,
            ),
        };
        let file = CertificateFile::new("adequacy", seed, serde_json::to_value(&dto)?);
        if let Some(dir) = out {
            let path = write_certificate(dir, "adequacy-tensor", file.clone(), started)?;
            if !json {
                println!("wrote {}", path.display());
            }
        }
        emit(
            json,
            &serde_json::to_value(&file)?,
            &format!(
                "tensor model: order {}, full span {}, regular-semisimple span {} (contained in the anti-diagonal-zero subspace: {})",
                report.group_order,
                report.full_span_dim,
                report.rss_span_dim,
                report.rss_contained_in_antidiagonal_zero
            ),
        );
        return Ok(if report.rss_contained_in_antidiagonal_zero {
            0
        } else {
            1
        });
    }
    let gens_path =
        gens.ok_or_else(|| Error::InvalidInput("--gens is required without --demo".into()))?;
    let mats: Vec<MatrixDto> = read_json(gens_path)?;
    let predicate = predicate_from_name(predicate)?;
    if field == "Q" {
        let gens = mats
            .iter()
            .map(|m| m.to_q())
            .collect::<Result<Vec<_>, _>>()?;
        adequacy_in(QQ, gens, predicate, json)
    } else if let Some(m) = field.strip_prefix("cyclo:") {
        let conductor: u32 = m
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad conductor {m}")))?;
        let k = CycloField::new(conductor);
        let gens = mats
            .iter()
            .map(|mm| mm.to_cyclo(&k))
            .collect::<Result<Vec<_>, _>>()?;
        adequacy_in(k, gens, predicate, json)
    } else {
        Err(Error::InvalidInput(format!("unknown field {field}")))
    }
}

// ----------------------------------------------------------------- suite

fn suite_hensel_certificate(seed: u64) -> Result<HenselCertDto, Error> {
    // the worked example: X^2 - 9 deformed by eps X at (p,m) = (3,2)
    let _ = seed;
    let zloc = ZLoc::new(3);
    let rring = ResidueRing::new(3, 2);
    let f1 = UniPoly::from_i64(zloc.clone(), &[-3, 1]);
    let f2 = UniPoly::from_i64(zloc.clone(), &[3, 1]);
    let h = UniPoly::new(
        rring.clone(),
        vec![rring.reduce(&0.into()), rring.reduce(&1.into())],
    );
    let ftilde = DualPoly::new(3, 2, f1.mul(&f2), h)?;
    let lift = lift_factorization(&ftilde, &f1, &f2)?;
    Ok(HenselCertDto::from_lift(&ftilde, &f1, &f2, &lift))
}

fn run_suite(config: &SuiteConfig, out_dir: &Path, json: bool) -> Result<i32, Error> {
    use rand::{Rng, SeedableRng};
    let mut written: Vec<PathBuf> = Vec::new();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.seed);
    let mut failures: Vec<String> = Vec::new();

    for suite in &config.suites {
        match suite.as_str() {
            "different" => {
                for &(n1, n2) in &config.shapes {
                    let started = Instant::now();
                    let shape = BlockShape::new(n1, n2);
                    let cert = res_tilde(shape, config.seed)?;
                    let dto = DifferentCertDto::from_cert(&cert);
                    if !cert.all_ok() || dto.verify().is_err() {
                        failures.push(format!("different ({n1},{n2})"));
                        continue;
                    }
                    let file =
                        CertificateFile::new("different", config.seed, serde_json::to_value(&dto)?);
                    written.push(write_certificate(
                        out_dir,
                        &format!("different-{n1}-{n2}"),
                        file,
                        started,
                    )?);
                }
            }
            "bezout" => {
                for &(n1, n2) in &config.shapes {
                    let started = Instant::now();
                    let pair = universal_cofactors(BlockShape::new(n1, n2))?;
                    let dto = CofactorCertDto::from_pair(&pair);
                    if dto.verify().is_err() {
                        failures.push(format!("bezout ({n1},{n2})"));
                        continue;
                    }
                    let file =
                        CertificateFile::new("cofactors", config.seed, serde_json::to_value(&dto)?);
                    written.push(write_certificate(
                        out_dir,
                        &format!("cofactors-{n1}-{n2}"),
                        file,
                        started,
                    )?);
                }
            }
            "hensel" => {
                let started = Instant::now();
                let dto = suite_hensel_certificate(config.seed)?;
                if dto.verify().is_err() {
                    failures.push("hensel worked example".into());
                } else {
                    let file =
                        CertificateFile::new("hensel", config.seed, serde_json::to_value(&dto)?);
                    written.push(write_certificate(out_dir, "hensel-worked", file, started)?);
                }
                // randomized spot checks, not persisted
                for t in 0..config.trials {
                    let p = *[3u32, 5, 7].get(rng.gen_range(0..3)).unwrap();
                    let m = rng.gen_range(1..=3);
                    let zloc = ZLoc::new(p);
                    let rring = ResidueRing::new(p, m);
                    let r1 = rng.gen_range(-4..=4i64);
                    let mut r2 = rng.gen_range(-4..=4i64);
                    if r1 == r2 {
                        r2 += 1;
                    }
                    let f1 = UniPoly::from_i64(zloc.clone(), &[-r1, 1]);
                    let f2 = UniPoly::from_i64(zloc.clone(), &[-r2, 1]);
                    let h = UniPoly::new(
                        rring.clone(),
                        (0..2)
                            .map(|_| rring.reduce(&rng.gen_range(0..9).into()))
                            .collect(),
                    );
                    let ftilde = DualPoly::new(p, m, f1.mul(&f2), h)?;
                    match lift_factorization(&ftilde, &f1, &f2) {
                        Ok(l) if l.verified => {}
                        Ok(_) | Err(Error::ZeroResultant) => {
                            failures.push(format!("hensel random trial {t}"));
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            "hecke" => {
                let jobs: Vec<(usize, usize, &str)> = vec![
                    (1, 1, "point"),
                    (1, 2, "point"),
                    (1, 2, "parabolic:1"),
                    (1, 2, "regular"),
                ];
                for (n1, n2, module_name) in jobs {
                    let started = Instant::now();
                    let shape = BlockShape::new(n1, n2);
                    let module = module_from_name(shape, module_name)?;
                    let cert = res_tilde(shape, config.seed)?;
                    let rep = check_fg_gf(&module, &cert, 2, config.trials, config.seed)?;
                    let lemma = check_lemma_3_6(&module, &cert, config.seed)?;
                    if !rep.ok || !lemma.all_ok() {
                        failures.push(format!("hecke ({n1},{n2}) {module_name}"));
                        continue;
                    }
                    let dto = HeckeCertDto {
                        module: module_name.to_string(),
                        degree: 2,
                        trials: config.trials,
                        check_seed: config.seed,
                        different: DifferentCertDto::from_cert(&cert),
                        lemma_parts_ok: [true, true, true, true],
                    };
                    let file =
                        CertificateFile::new("hecke", config.seed, serde_json::to_value(&dto)?);
                    written.push(write_certificate(
                        out_dir,
                        &format!("hecke-{n1}-{n2}-{}", module_name.replace(':', "")),
                        file,
                        started,
                    )?);
                }
            }
            "adequacy" => {
                // D4 in GL2(Q)
                let started = Instant::now();
                let gens = vec![
                    Matrix::from_i64(QQ, 2, 2, &[0, 1, 1, 0]),
                    Matrix::diag(QQ, vec![Rat::from_integer(1.into()), Rat::from_integer((-1).into())]),
                ];
                let group = close_group(QQ, &gens, DEFAULT_CAP)?;
                let all = span_dim(&group, Predicate::All)?;
                let ss = span_dim(&group, Predicate::Semisimple)?;
                let rss = span_dim(&group, Predicate::RegularSemisimple)?;
                if all.dim != 4 || ss.dim != 4 {
                    failures.push("adequacy D4".into());
                } else {
                    let dto = AdequacyCertDto {
                        conductor: 0,
                        n: 2,
                        generators: gens.iter().map(MatrixDto::from_q).collect(),
                        order: group.order(),
                        span_all: all.dim,
                        span_ss: ss.dim,
                        span_rss: rss.dim,
                        adequate: true,
                        rss_contained_in_antidiagonal_zero: None,
                    };
                    let file =
                        CertificateFile::new("adequacy", config.seed, serde_json::to_value(&dto)?);
                    written.push(write_certificate(out_dir, "adequacy-d4", file, started)?);
                }
                // tensor counterexample
                let started = Instant::now();
                let (tg, trep) = build_tensor_example()?;
                let all = span_dim(&tg, Predicate::All)?;
                let ss = span_dim(&tg, Predicate::Semisimple)?;
                if !trep.rss_contained_in_antidiagonal_zero || trep.full_span_dim != 16 {
                    failures.push("adequacy tensor example".into());
                } else {
                    let dto = AdequacyCertDto {
                        conductor: 4,
                        n: 4,
                        generators: tg.generators.iter().map(MatrixDto::from_cyclo).collect(),
                        order: tg.order(),
                        span_all: all.dim,
                        span_ss: ss.dim,
                        span_rss: trep.rss_span_dim,
                        adequate: ss.dim == 16,
                        rss_contained_in_antidiagonal_zero: Some(true),
                    };
                    let file =
                        CertificateFile::new("adequacy", config.seed, serde_json::to_value(&dto)?);
                    written.push(write_certificate(out_dir, "adequacy-tensor", file, started)?);
                }
            }
            _ => unreachable!("validated earlier"),
        }
    }

    // re-verify every emitted certificate from disk
    for path in &written {
        let cert: CertificateFile = read_json(path)?;
        if let Err(e) = verify_certificate(&cert) {
            failures.push(format!("re-verification of {}: {e}", path.display()));
        }
    }

    let payload = serde_json::json!({
        "certificates": written.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        "failures": failures,
        "ok": failures.is_empty(),
    });
    emit(
        json,
        &payload,
        &format!(
            "suite finished: {} certificates, {} failures",
            written.len(),
            failures.len()
        ),
    );
    Ok(if failures.is_empty() { 0 } else { 1 })
}

fn cmd_verify(path: &Path, json: bool) -> Result<i32, Error> {
    let cert: CertificateFile = read_json(path)?;
    match verify_certificate(&cert) {
        Ok(()) => {
            emit(
                json,
                &serde_json::json!({"ok": true, "kind": cert.kind}),
                &format!("{}: {} certificate verifies", path.display(), cert.kind),
            );
            Ok(0)
        }
        Err(e @ Error::InvalidInput(_)) | Err(e @ Error::Json(_)) => Err(e),
        Err(e) => {
            emit(
                json,
                &serde_json::json!({"ok": false, "kind": cert.kind, "error": e.to_string()}),
                &format!("{}: verification FAILED: {e}", path.display()),
            );
            Ok(1)
        }
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    let out = cli.out.as_deref();
    match &cli.cmd {
        Cmd::Basis { n1, n2 } => cmd_basis(shape_checked(*n1, *n2)?, cli.json),
        Cmd::Different { n1, n2 } => {
            cmd_different(shape_checked(*n1, *n2)?, cli.seed, out, cli.json)
        }
        Cmd::Cofactors { n1, n2 } => {
            cmd_cofactors(shape_checked(*n1, *n2)?, cli.seed, out, cli.json)
        }
        Cmd::Projectors { matrix, f1, f2 } => cmd_projectors(matrix, f1, f2, cli.json),
        Cmd::Hensel { p, m, f1, f2, h } => {
            cmd_hensel(*p, *m, f1, f2, h, cli.seed, out, cli.json)
        }
        Cmd::HeckeVerify {
            n1,
            n2,
            module,
            degree,
            trials,
        } => cmd_hecke_verify(
            shape_checked(*n1, *n2)?,
            module,
            *degree,
            *trials,
            cli.seed,
            out,
            cli.json,
        ),
        Cmd::TraceRelation { instance } => cmd_trace_relation(instance, cli.json),
        Cmd::TwResidual { instance, sigma } => cmd_tw_residual(instance, sigma, cli.json),
        Cmd::Adequacy {
            field,
            gens,
            predicate,
            demo,
        } => cmd_adequacy(
            field,
            gens.as_deref(),
            predicate,
            demo.as_deref(),
            cli.seed,
            out,
            cli.json,
        ),
        Cmd::Suite { config } => {
            let cfg = match config {
                Some(path) => read_json::<SuiteConfig>(path)?,
                None => SuiteConfig::default_with_seed(cli.seed),
            };
            cfg.validate().map_err(Error::InvalidInput)?;
            let out_dir = out
                .map(Path::to_path_buf)
                .unwrap_or_else(|| PathBuf::from("certs"));
            run_suite(&cfg, &out_dir, cli.json)
        }
        Cmd::Verify { cert } => cmd_verify(cert, cli.json),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}
