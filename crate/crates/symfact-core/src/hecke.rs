//! The q = 1 commutative shadow of the parahoric trace identities:
//! Laurent-polynomial coset modules with the S_n action, the coset-sum
//! trace, the maps f and g with certified fg = gf = Res, the four tensor
//! identities, and the local trace-relation / Taylor-Wiles residual
//! checkers.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::QPoly;
use crate::resultant::{matrix_projectors, ResTildeCertificate};
use crate::ring::{rat, Field, Rat, Ring};
use crate::symring::{
    coset_representatives, expand_ab, expand_e, express_in_free_basis,
    free_basis, BlockShape,
};
use crate::unipoly::UniPoly;
use num_traits::One;
use rand::Rng;
use std::collections::BTreeMap;

/// An element p / e_n^k of B[1/e_n], p in ab-coordinates and
/// e_n = a_{n1} b_{n2}; normalized so e_n does not divide p unless k = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSym {
    pub shape: BlockShape,
    pub num: QPoly,
    pub k: u32,
}

impl LaurentSym {
    fn en_monomial(shape: BlockShape) -> QPoly {
        let n = shape.n();
        let mut e = vec![0i32; n];
        e[shape.n1 - 1] = 1;
        e[n - 1] += 1;
        QPoly::monomial(n, e, Rat::one())
    }

    pub fn new(shape: BlockShape, num: QPoly, k: u32) -> Self {
        let en = Self::en_monomial(shape);
        let mut num = num;
        let mut k = k;
        while k > 0 {
            match num.exact_div(&en) {
                Some(q) if !q.laurent => {
                    num = q;
                    k -= 1;
                }
                _ => break,
            }
        }
        LaurentSym { shape, num, k }
    }

    pub fn from_poly(shape: BlockShape, p: QPoly) -> Self {
        LaurentSym::new(shape, p, 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let en = Self::en_monomial(self.shape);
        let k = self.k.max(other.k);
        let a = self.num.mul(&en.pow(k - self.k)?)?;
        let b = other.num.mul(&en.pow(k - other.k)?)?;
        Ok(LaurentSym::new(self.shape, a.add(&b)?, k))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(LaurentSym::new(
            self.shape,
            self.num.mul(&other.num)?,
            self.k + other.k,
        ))
    }

    /// Expand into x-space; the e_n powers become Laurent monomials.
    pub fn expand(&self) -> Result<QPoly> {
        let n = self.shape.n();
        let p = expand_ab(self.shape, &self.num)?;
        // e_n = (-1)^n x_1..x_n, so e_n^{-k} = (-1)^{nk} (x_1..x_n)^{-k}
        let exp = vec![-(self.k as i32); n];
        let sign = if (n as u32 * self.k) % 2 == 0 {
            Rat::one()
        } else {
            -Rat::one()
        };
        p.mul(&QPoly::monomial(n, exp, sign))
    }
}

/// Supported finite S_n-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    /// One point, trivial action.
    Point,
    /// k-subsets of {1..n} (cosets of S_k x S_{n-k}).
    Parabolic(usize),
    /// S_n itself by left translation.
    Regular,
}

/// A free module over the Laurent ring Q[x_1^±..x_n^±] with basis a
/// finite S_n-set Omega; w acts by w.(c (x) omega) = w(c) (x) w(omega).
#[derive(Clone, Debug)]
pub struct CosetModule {
    pub shape: BlockShape,
    pub kind: ModuleKind,
    omega: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

/// Module element: one Laurent polynomial per Omega basis vector.
pub type ModElem = Vec<QPoly>;

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for i in 0..n {
        let mut next = Vec::with_capacity(out.len() * (i + 1));
        for p in out {
            for pos in 0..=i {
                let mut q = p.clone();
                q.insert(pos, i);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// The block group S_{n1} x S_{n2} as permutations of {0..n-1}.
pub fn block_group(shape: BlockShape) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for p1 in all_permutations(shape.n1) {
        for p2 in all_permutations(shape.n2) {
            let mut w = p1.clone();
            w.extend(p2.iter().map(|&j| shape.n1 + j));
            out.push(w);
        }
    }
    out
}

impl CosetModule {
    fn build(shape: BlockShape, kind: ModuleKind, omega: Vec<Vec<usize>>) -> Self {
        let index = omega
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), i))
            .collect();
        CosetModule {
            shape,
            kind,
            omega,
            index,
        }
    }

    pub fn point(shape: BlockShape) -> Self {
        Self::build(shape, ModuleKind::Point, vec![vec![]])
    }

    pub fn parabolic(shape: BlockShape, k: usize) -> Self {
        let n = shape.n();
        assert!(k >= 1 && k < n);
        let mut omega = Vec::new();
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            omega.push(subset.clone());
            let mut i = k;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if subset[i] != i + n - k {
                    subset[i] += 1;
                    for j in i + 1..k {
                        subset[j] = subset[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
        Self::build(shape, ModuleKind::Parabolic(k), omega)
    }

    pub fn regular(shape: BlockShape) -> Self {
        let omega = all_permutations(shape.n());
        Self::build(shape, ModuleKind::Regular, omega)
    }

    pub fn size(&self) -> usize {
        self.omega.len()
    }

    pub fn zero_elem(&self) -> ModElem {
        vec![QPoly::zero_laurent(self.shape.n()); self.size()]
    }

    /// Index of w . omega_i.
    pub fn act_omega(&self, w: &[usize], i: usize) -> usize {
        let target: Vec<usize> = match self.kind {
            ModuleKind::Point => vec![],
            ModuleKind::Parabolic(_) => {
                let mut s: Vec<usize> = self.omega[i].iter().map(|&v| w[v]).collect();
                s.sort_unstable();
                s
            }
            ModuleKind::Regular => self.omega[i].iter().map(|&v| w[v]).collect(),
        };
        self.index[&target]
    }

    /// The diagonal action on a module element.
    pub fn act(&self, w: &[usize], elem: &ModElem) -> ModElem {
        let mut out = self.zero_elem();
        for (i, c) in elem.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = self.act_omega(w, i);
            out[j] = out[j].add(&c.permute_vars(w)).unwrap();
        }
        out
    }

    /// Multiply every component by an x-space (Laurent) polynomial.
    pub fn scale(&self, p: &QPoly, elem: &ModElem) -> Result<ModElem> {
        elem.iter().map(|c| c.mul(p)).collect()
    }

    pub fn elem_add(&self, a: &ModElem, b: &ModElem) -> Result<ModElem> {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    }

    pub fn elem_sub(&self, a: &ModElem, b: &ModElem) -> Result<ModElem> {
        a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
    }

    pub fn is_zero_elem(&self, a: &ModElem) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    /// Invariance under a set of group elements.
    pub fn is_invariant_under(&self, group: &[Vec<usize>], elem: &ModElem) -> bool {
        group.iter().all(|w| self.act(w, elem) == *elem)
    }

    pub fn is_block_invariant(&self, elem: &ModElem) -> bool {
        self.is_invariant_under(&block_generators(self.shape), elem)
    }

    pub fn is_full_invariant(&self, elem: &ModElem) -> bool {
        self.is_invariant_under(&full_generators(self.shape.n()), elem)
    }

    /// Orbit sum over an explicit group (not normalized).
    pub fn symmetrize(&self, group: &[Vec<usize>], elem: &ModElem) -> ModElem {
        let mut acc = self.zero_elem();
        for w in group {
            acc = self.elem_add(&acc, &self.act(w, elem)).unwrap();
        }
        acc
    }
}

fn adjacent_transposition(n: usize, i: usize) -> Vec<usize> {
    let mut w: Vec<usize> = (0..n).collect();
    w.swap(i, i + 1);
    w
}

/// Generators of the block group (adjacent transpositions within blocks).
pub fn block_generators(shape: BlockShape) -> Vec<Vec<usize>> {
    let n = shape.n();
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        if i + 1 != shape.n1 {
            gens.push(adjacent_transposition(n, i));
        }
    }
    gens
}

/// Generators of the full symmetric group.
pub fn full_generators(n: usize) -> Vec<Vec<usize>> {
    (0..n - 1).map(|i| adjacent_transposition(n, i)).collect()
}

/// Orbit-sum basis of the invariants among basis monomials with every
/// exponent in [-d, d].
pub fn invariants_of(module: &CosetModule, full_group: bool, d: i32) -> Vec<ModElem> {
    let group = if full_group {
        all_permutations(module.shape.n())
    } else {
        block_group(module.shape)
    };
    invariants_from_monomials(module, &group, &exponent_box(module.shape.n(), d))
}

/// Orbit-sum basis from the homogeneous slice of total degree exactly d
/// with nonnegative exponents.
pub fn invariants_in_slice(module: &CosetModule, full_group: bool, d: i32) -> Vec<ModElem> {
    let group = if full_group {
        all_permutations(module.shape.n())
    } else {
        block_group(module.shape)
    };
    let n = module.shape.n();
    let exps: Vec<Vec<i32>> = exponent_box(n, d)
        .into_iter()
        .filter(|e| e.iter().all(|&k| k >= 0) && e.iter().sum::<i32>() == d)
        .collect();
    invariants_from_monomials(module, &group, &exps)
}

fn exponent_box(n: usize, d: i32) -> Vec<Vec<i32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for e in &out {
            for k in -d..=d {
                let mut f = e.clone();
                f.push(k);
                next.push(f);
            }
        }
        out = next;
    }
    out
}

fn invariants_from_monomials(
    module: &CosetModule,
    group: &[Vec<usize>],
    exps: &[Vec<i32>],
) -> Vec<ModElem> {
    let n = module.shape.n();
    // orbit of (exp, omega) under the diagonal action is a plain
    // permutation of basis monomials; one orbit sum per canonical rep
    let mut seen: std::collections::BTreeSet<(Vec<i32>, usize)> = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for e in exps {
        for oi in 0..module.size() {
            if seen.contains(&(e.clone(), oi)) {
                continue;
            }
            let mut orbit: std::collections::BTreeSet<(Vec<i32>, usize)> =
                std::collections::BTreeSet::new();
            for w in group {
                let mut ne = vec![0i32; n];
                for (i, &k) in e.iter().enumerate() {
                    ne[w[i]] = k;
                }
                orbit.insert((ne, module.act_omega(w, oi)));
            }
            let mut elem = module.zero_elem();
            for (ne, noi) in &orbit {
                elem[*noi] = elem[*noi]
                    .add(&QPoly::monomial(n, ne.clone(), Rat::one()))
                    .unwrap();
            }
            seen.extend(orbit);
            out.push(elem);
        }
    }
    out
}

/// The coset-sum trace: sum of the minimal coset representatives applied
/// to a block-invariant element; lands in the full invariants.
pub fn tr_coset(module: &CosetModule, y: &ModElem) -> Result<ModElem> {
    if !module.is_block_invariant(y) {
        return Err(Error::NotInvariant(
            "tr_coset input is not block-invariant".into(),
        ));
    }
    let mut acc = module.zero_elem();
    for w in coset_representatives(module.shape) {
        acc = module.elem_add(&acc, &module.act(&w, y))?;
    }
    Ok(acc)
}

/// f: B (x)_A pi^g -> pi^p, s (x) x -> s x  (s in ab-coordinates).
pub fn map_f(module: &CosetModule, s_ab: &QPoly, x: &ModElem) -> Result<ModElem> {
    let sx = expand_ab(module.shape, s_ab)?;
    module.scale(&sx, x)
}

/// g: pi^p -> B (x)_A pi^g, x -> sum_i f_i (x) tr(z_i x); output in
/// canonical coordinates over the free basis.
pub fn map_g(module: &CosetModule, cert: &ResTildeCertificate, x: &ModElem) -> Result<Vec<ModElem>> {
    if cert.shape != module.shape {
        return Err(Error::RingMismatch(
            "certificate shape differs from module shape".into(),
        ));
    }
    let mut out = Vec::with_capacity(cert.z_ab.len());
    for z in &cert.z_ab {
        let zx = expand_ab(module.shape, z)?;
        let t = tr_coset(module, &module.scale(&zx, x)?)?;
        if !module.is_full_invariant(&t) {
            return Err(Error::VerificationFailed(
                "tr(z_i x) is not fully invariant".into(),
            ));
        }
        out.push(t);
    }
    Ok(out)
}

/// Canonical coordinates of s (x) x in B (x)_A pi^g over the free basis.
pub fn tensor_coords(
    module: &CosetModule,
    s_ab: &QPoly,
    x: &ModElem,
) -> Result<Vec<ModElem>> {
    let shape = module.shape;
    let d = express_in_free_basis(shape, s_ab)?;
    let mut out = Vec::with_capacity(d.len());
    for zk in &d {
        let a_x = expand_e(shape.n(), zk)?;
        out.push(module.scale(&a_x, x)?);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct FgGfReport {
    pub shape: BlockShape,
    pub trials: usize,
    pub fg_failures: usize,
    pub gf_failures: usize,
    pub ok: bool,
}

fn random_laurent<Rn: rand::Rng>(n: usize, d: i32, terms: usize, rng: &mut Rn) -> QPoly {
    let mut p = QPoly::zero_laurent(n);
    for _ in 0..terms {
        let e: Vec<i32> = (0..n).map(|_| rng.gen_range(-d..=d)).collect();
        let c = rat(rng.gen_range(-3..=3), 1);
        p = p.add(&QPoly::monomial(n, e, c)).unwrap();
    }
    p
}

fn random_elem<Rn: rand::Rng>(module: &CosetModule, d: i32, rng: &mut Rn) -> ModElem {
    let n = module.shape.n();
    let mut elem = module.zero_elem();
    for c in elem.iter_mut() {
        *c = random_laurent(n, d, 2, rng);
    }
    elem
}

/// fg(y) = Res y on random block-invariant y, and gf(s (x) x) =
/// Res (s (x) x) on random s and full-invariant x; all exact.
pub fn check_fg_gf(
    module: &CosetModule,
    cert: &ResTildeCertificate,
    degree: i32,
    trials: usize,
    seed: u64,
) -> Result<FgGfReport> {
    use rand::SeedableRng;
    let shape = module.shape;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let res_x = expand_ab(shape, &cert.res_ab)?;
    let (basis_x, _) = free_basis(shape);
    let mut fg_failures = 0;
    let mut gf_failures = 0;
    for _ in 0..trials {
        // fg on a random block-invariant y
        let y = module.symmetrize(&block_group(shape), &random_elem(module, degree, &mut rng));
        let g_y = map_g(module, cert, &y)?;
        let mut fg_y = module.zero_elem();
        for (f, t) in basis_x.iter().zip(&g_y) {
            fg_y = module.elem_add(&fg_y, &module.scale(f, t)?)?;
        }
        if fg_y != module.scale(&res_x, &y)? {
            fg_failures += 1;
        }

        // gf on random s (x) x with x fully invariant
        let x = module.symmetrize(
            &all_permutations(shape.n()),
            &random_elem(module, degree, &mut rng),
        );
        let mut s = QPoly::zero(shape.n());
        for _ in 0..2 {
            let e: Vec<i32> = shape
                .ab_weights()
                .iter()
                .map(|_| rng.gen_range(0..=1))
                .collect();
            s = s.add(&QPoly::monomial(shape.n(), e, rat(rng.gen_range(-2..=2), 1)))?;
        }
        let sx = map_f(module, &s, &x)?;
        let gf = map_g(module, cert, &sx)?;
        let expect = tensor_coords(module, &cert.res_ab.mul(&s)?, &x)?;
        if gf != expect {
            gf_failures += 1;
        }
    }
    Ok(FgGfReport {
        shape,
        trials,
        fg_failures,
        gf_failures,
        ok: fg_failures == 0 && gf_failures == 0,
    })
}

#[derive(Clone, Debug)]
pub struct Lemma36Report {
    pub part1_ok: bool,
    pub part2_ok: bool,
    pub part3_ok: bool,
    pub part4_ok: bool,
}

impl Lemma36Report {
    pub fn all_ok(&self) -> bool {
        self.part1_ok && self.part2_ok && self.part3_ok && self.part4_ok
    }
}

/// The four tensor/trace identities:
/// (1) (s(x)1) R~ = (1(x)s) R~ for every coordinate generator s;
/// (2) tr is A-linear: tr(a y) = a tr(y) for a in A;
/// (3) tr(s x) = tr_{B/A}(s) x for x fully invariant;
/// (4) Res y = sum_i f_i tr(z_i y).
pub fn check_lemma_3_6(
    module: &CosetModule,
    cert: &ResTildeCertificate,
    seed: u64,
) -> Result<Lemma36Report> {
    use rand::SeedableRng;
    let shape = module.shape;
    let n = shape.n();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);

    // (1) on the certified tensor element
    let t = cert.tensor();
    let mut part1_ok = true;
    for v in 0..n {
        let s = QPoly::var(n, v);
        part1_ok &= crate::resultant::tensor_mul_left(&s, &t)?
            == crate::resultant::tensor_mul_right(&s, &t)?;
    }

    // (2) a = e_1 + 2 e_n on a random block-invariant y
    let y = module.symmetrize(&block_group(shape), &random_elem(module, 2, &mut rng));
    let mut a_e = QPoly::var(n, 0);
    a_e = a_e.add(&QPoly::var(n, n - 1).scale(&rat(2, 1)))?;
    let a_x = expand_e(n, &a_e)?;
    let lhs2 = tr_coset(module, &module.scale(&a_x, &y)?)?;
    let rhs2 = module.scale(&a_x, &tr_coset(module, &y)?)?;
    let part2_ok = lhs2 == rhs2;

    // (3) on a random fully invariant x and s = b_1
    let x = module.symmetrize(&all_permutations(n), &random_elem(module, 2, &mut rng));
    let s_ab = QPoly::var(n, shape.n1);
    let s_x = expand_ab(shape, &s_ab)?;
    let lhs3 = tr_coset(module, &module.scale(&s_x, &x)?)?;
    let tr_s = crate::symring::trace_b_over_a(shape, &s_x);
    let rhs3 = module.scale(&tr_s, &x)?;
    let part3_ok = lhs3 == rhs3;

    // (4) on the same y
    let res_x = expand_ab(shape, &cert.res_ab)?;
    let (basis_x, _) = free_basis(shape);
    let g_y = map_g(module, cert, &y)?;
    let mut sum = module.zero_elem();
    for (f, t) in basis_x.iter().zip(&g_y) {
        sum = module.elem_add(&sum, &module.scale(f, t)?)?;
    }
    let part4_ok = sum == module.scale(&res_x, &y)?;

    Ok(Lemma36Report {
        part1_ok,
        part2_ok,
        part3_ok,
        part4_ok,
    })
}

/// q-scaled factor: q^{deg f} f(X/q) = prod (X - q alpha_i) for monic f.
pub fn q_scaled<R: Ring>(f: &UniPoly<R>, q: &R::Elem) -> UniPoly<R> {
    let ring = f.ring.clone();
    let n = f.deg_or_zero();
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| ring.mul(c, &ring.pow(q, (n - k) as u32)))
        .collect();
    UniPoly::new(ring, coeffs)
}

/// delta_q = prod (q alpha_i - beta_j) without root-finding.
pub fn delta_q<R: Ring>(f1: &UniPoly<R>, f2: &UniPoly<R>, q: &R::Elem) -> Result<R::Elem> {
    crate::sylvester::resultant_uni(&q_scaled(f1, q), f2)
}

/// One local trace-relation instance over an exact field.
#[derive(Clone, Debug)]
pub struct TraceRelationInstance<R: Field> {
    pub ring: R,
    pub rho_frob: Matrix<R>,
    pub rho_tau: Matrix<R>,
    pub f1: UniPoly<R>,
    pub f2: UniPoly<R>,
    pub alpha_char: R::Elem,
    pub q: R::Elem,
}

#[derive(Clone, Debug)]
pub struct TraceRelationReport<R: Field> {
    pub residual: Matrix<R>,
    pub delta: R::Elem,
    pub ok: bool,
}

/// Residual R = delta^2 rho(tau) - delta (E1 + alpha_char E2), zero iff
/// the trace relation holds.
pub fn check_trace_relation<R: Field>(
    inst: &TraceRelationInstance<R>,
) -> Result<TraceRelationReport<R>> {
    let ring = inst.ring.clone();
    let p = matrix_projectors(&inst.rho_frob, &inst.f1, &inst.f2)?;
    let d2 = ring.mul(&p.delta, &p.delta);
    let lhs = inst.rho_tau.scale(&d2);
    let rhs = p
        .e1
        .add(&p.e2.scale(&inst.alpha_char))?
        .scale(&p.delta);
    let residual = lhs.sub(&rhs)?;
    let ok = residual.is_zero_matrix();
    Ok(TraceRelationReport {
        residual,
        delta: p.delta,
        ok,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnramifiedVerdict {
    Annihilated,
    UnramifiedForced,
    Violated,
}

/// Either delta_q^{n!} = 0 (the module is annihilated) or the instance
/// must be unramified (rho_tau = 1).
pub fn check_unramified_annihilation<R: Field>(
    inst: &TraceRelationInstance<R>,
) -> Result<UnramifiedVerdict> {
    let ring = inst.ring.clone();
    let dq = delta_q(&inst.f1, &inst.f2, &inst.q)?;
    let n = inst.f1.deg_or_zero() + inst.f2.deg_or_zero();
    let nfact: u32 = (1..=n as u32).product();
    let dq_pow = ring.pow(&dq, nfact);
    if ring.is_zero(&dq_pow) {
        return Ok(UnramifiedVerdict::Annihilated);
    }
    if inst.rho_tau.is_identity() {
        Ok(UnramifiedVerdict::UnramifiedForced)
    } else {
        Ok(UnramifiedVerdict::Violated)
    }
}

/// The Taylor-Wiles residual delta_q^{n!} tr(sigma R) with R the
/// trace-relation residual matrix; Lambda_1 is the matrix trace.
pub fn tw_residual<R: Field>(
    inst: &TraceRelationInstance<R>,
    sigma: &Matrix<R>,
) -> Result<R::Elem> {
    let ring = inst.ring.clone();
    if sigma.rows != inst.rho_tau.rows || sigma.cols != inst.rho_tau.cols {
        return Err(Error::DimensionMismatch("sigma size".into()));
    }
    let rep = check_trace_relation(inst)?;
    let dq = delta_q(&inst.f1, &inst.f2, &inst.q)?;
    let n = inst.f1.deg_or_zero() + inst.f2.deg_or_zero();
    let nfact: u32 = (1..=n as u32).product();
    let tr = sigma.mul(&rep.residual)?.trace()?;
    Ok(ring.mul(&ring.pow(&dq, nfact), &tr))
}

/// Satake normalization exponents i(i - n1)/2 (a-side) and j(j - n2)/2
/// (b-side), as exact rationals.
pub fn sigma_p1_weights(shape: BlockShape) -> (Vec<Rat>, Vec<Rat>) {
    let a = (1..=shape.n1 as i64)
        .map(|i| rat(i * (i - shape.n1 as i64), 2))
        .collect();
    let b = (1..=shape.n2 as i64)
        .map(|j| rat(j * (j - shape.n2 as i64), 2))
        .collect();
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloField;
    use crate::resultant::res_tilde;
    use crate::ring::{rat_int, QQ};
    use crate::symring::{b_expanded, e_expanded};
    use num_traits::Zero;

    #[test]
    fn laurent_sym_normalizes() {
        let shape = BlockShape::new(1, 1);
        // (a1 b1 * a1) / e_n^1 -> a1 with k = 0
        let a1 = QPoly::var(2, 0);
        let num = a1
            .mul(&QPoly::monomial(2, vec![1, 1], Rat::one()))
            .unwrap();
        let l = LaurentSym::new(shape, num, 1);
        assert_eq!(l.k, 0);
        assert_eq!(l.num, a1);
        // e_n = a1 b1 expands to (-x1)(-x2) = x1 x2; 1/e_n is Laurent
        let inv = LaurentSym::new(shape, QPoly::one(2), 1);
        let x = inv.expand().unwrap();
        assert_eq!(x.coeff(&[-1, -1]), rat_int(1));
    }

    #[test]
    fn laurent_sym_arithmetic() {
        let shape = BlockShape::new(1, 2);
        let p = LaurentSym::new(shape, QPoly::var(3, 0), 1);
        let q = LaurentSym::new(shape, QPoly::var(3, 2), 2);
        let s = p.add(&q).unwrap();
        let prod = p.mul(&q).unwrap();
        // check via expansion in x-space
        let lhs = s.expand().unwrap();
        let rhs = p.expand().unwrap().add(&q.expand().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(
            prod.expand().unwrap(),
            p.expand().unwrap().mul(&q.expand().unwrap()).unwrap()
        );
    }

    #[test]
    fn module_sizes_and_action() {
        let shape = BlockShape::new(2, 2);
        assert_eq!(CosetModule::point(shape).size(), 1);
        assert_eq!(CosetModule::parabolic(shape, 1).size(), 4);
        assert_eq!(CosetModule::parabolic(shape, 2).size(), 6);
        assert_eq!(CosetModule::regular(shape).size(), 24);
        // action is a group action: (vw).x = v.(w.x) on generators
        let m = CosetModule::parabolic(shape, 2);
        let mut elem = m.zero_elem();
        elem[0] = QPoly::monomial(4, vec![1, -1, 0, 2], rat_int(3));
        elem[3] = QPoly::var(4, 1);
        for v in full_generators(4) {
            for w in full_generators(4) {
                let vw: Vec<usize> = (0..4).map(|i| v[w[i]]).collect();
                assert_eq!(m.act(&vw, &elem), m.act(&v, &m.act(&w, &elem)));
            }
        }
    }

    #[test]
    fn tr_coset_point_matches_trace() {
        let shape = BlockShape::new(1, 1);
        let m = CosetModule::point(shape);
        let b1 = b_expanded(shape)[0].clone();
        let y = vec![b1.clone()];
        let t = tr_coset(&m, &y).unwrap();
        assert_eq!(t[0], e_expanded(2)[0]);
        // fully invariant input: tr(y) = N y
        let e1 = e_expanded(2)[0].clone();
        let t = tr_coset(&m, &vec![e1.clone()]).unwrap();
        assert_eq!(t[0], e1.scale(&rat_int(2)));
        // non-block-invariant input rejected (x2 alone at shape (1,2))
        let m12 = CosetModule::point(BlockShape::new(1, 2));
        assert!(tr_coset(&m12, &vec![QPoly::var(3, 1)]).is_err());
    }

    #[test]
    fn invariants_bases() {
        // point module, degree bound 0 -> constants only
        let shape = BlockShape::new(1, 1);
        let m = CosetModule::point(shape);
        let inv = invariants_of(&m, true, 0);
        assert_eq!(inv.len(), 1);
        // regular module at n = 2: rank 2 in the homogeneous degree-1 slice
        let m = CosetModule::regular(shape);
        let inv = invariants_in_slice(&m, true, 1);
        assert_eq!(inv.len(), 2);
        for e in &inv {
            assert!(m.is_full_invariant(e));
        }
    }

    #[test]
    fn map_g_hand_example() {
        // (1,1), point module: g(b1) = 1 (x) (-2 e2) + b1 (x) e1
        let shape = BlockShape::new(1, 1);
        let m = CosetModule::point(shape);
        let cert = res_tilde(shape, 3).unwrap();
        let b1 = b_expanded(shape)[0].clone();
        let g = map_g(&m, &cert, &vec![b1.clone()]).unwrap();
        let e = e_expanded(2);
        assert_eq!(g[0][0], e[1].scale(&rat_int(-2)));
        assert_eq!(g[1][0], e[0].clone());
        // f(g(b1)) = Res * b1
        let (basis, _) = free_basis(shape);
        let mut fg = m.zero_elem();
        for (f, t) in basis.iter().zip(&g) {
            fg = m.elem_add(&fg, &m.scale(f, t).unwrap()).unwrap();
        }
        let res_x = expand_ab(shape, &cert.res_ab).unwrap();
        assert_eq!(fg[0], res_x.mul(&b1).unwrap());
        // f(1 (x) 1) = 1
        let one = vec![QPoly::one(2)];
        assert_eq!(map_f(&m, &QPoly::one(2), &one).unwrap(), one);
    }

    #[test]
    fn fg_gf_point_modules() {
        for (n1, n2) in [(1, 1), (1, 2)] {
            let shape = BlockShape::new(n1, n2);
            let m = CosetModule::point(shape);
            let cert = res_tilde(shape, 7).unwrap();
            let rep = check_fg_gf(&m, &cert, 2, 5, 1234).unwrap();
            assert!(rep.ok, "({},{}): {:?}", n1, n2, rep);
        }
    }

    #[test]
    fn fg_gf_structured_modules() {
        let shape = BlockShape::new(1, 2);
        let cert = res_tilde(shape, 7).unwrap();
        for m in [
            CosetModule::parabolic(shape, 1),
            CosetModule::regular(shape),
        ] {
            let rep = check_fg_gf(&m, &cert, 1, 3, 99).unwrap();
            assert!(rep.ok, "{:?}", rep);
        }
    }

    #[test]
    fn lemma_3_6_reports() {
        for (n1, n2) in [(1, 1), (1, 2)] {
            let shape = BlockShape::new(n1, n2);
            let m = CosetModule::point(shape);
            let cert = res_tilde(shape, 11).unwrap();
            let rep = check_lemma_3_6(&m, &cert, 55).unwrap();
            assert!(rep.all_ok(), "({},{}): {:?}", n1, n2, rep);
        }
    }

    #[test]
    fn delta_q_examples() {
        // f1 = X-1, f2 = X-4, q = 4: q*1 - 4 = 0
        let f1 = UniPoly::from_i64(QQ, &[-1, 1]);
        let f2 = UniPoly::from_i64(QQ, &[-4, 1]);
        assert_eq!(delta_q(&f1, &f2, &rat_int(4)).unwrap(), rat_int(0));
        // q = 1 reduces to the plain resultant
        assert_eq!(
            delta_q(&f1, &f2, &rat_int(1)).unwrap(),
            crate::sylvester::resultant_uni(&f1, &f2).unwrap()
        );
    }

    #[test]
    fn delta_q_congruence() {
        // delta_q = delta mod (q-1) on random integer-root instances
        use num_integer::Integer;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..40 {
            let d1 = rng.gen_range(1..=3);
            let d2 = rng.gen_range(1..=3);
            let r1: Vec<Rat> = (0..d1).map(|_| rat_int(rng.gen_range(-5..=5))).collect();
            let r2: Vec<Rat> = (0..d2).map(|_| rat_int(rng.gen_range(-5..=5))).collect();
            let f1 = UniPoly::from_roots(QQ, &r1);
            let f2 = UniPoly::from_roots(QQ, &r2);
            let q = rng.gen_range(2..=30i64);
            let dq = delta_q(&f1, &f2, &rat_int(q)).unwrap();
            let d = crate::sylvester::resultant_uni(&f1, &f2).unwrap();
            let diff = (dq - d).to_integer();
            assert!(diff.mod_floor(&num_bigint::BigInt::from(q - 1)).is_zero());
        }
    }

    #[test]
    fn unramified_verdicts() {
        let mk = |tau: Matrix<QQ>, f1: UniPoly<QQ>, f2: UniPoly<QQ>, q: i64| {
            let frob = Matrix::diag(
                QQ,
                vec![
                    QQ.neg(&f1.coeff(0)),
                    QQ.neg(&f2.coeff(0)),
                ],
            );
            TraceRelationInstance {
                ring: QQ,
                rho_frob: frob,
                rho_tau: tau,
                f1,
                f2,
                alpha_char: rat_int(1),
                q: rat_int(q),
            }
        };
        let f1 = UniPoly::from_i64(QQ, &[-1, 1]);
        let f2 = UniPoly::from_i64(QQ, &[-4, 1]);
        // Steinberg configuration: q*alpha = beta
        let i = mk(Matrix::identity(QQ, 2), f1.clone(), f2.clone(), 4);
        assert_eq!(
            check_unramified_annihilation(&i).unwrap(),
            UnramifiedVerdict::Annihilated
        );
        let i = mk(Matrix::identity(QQ, 2), f1.clone(), f2.clone(), 2);
        assert_eq!(
            check_unramified_annihilation(&i).unwrap(),
            UnramifiedVerdict::UnramifiedForced
        );
        let i = mk(
            Matrix::from_i64(QQ, 2, 2, &[1, 0, 0, 2]),
            f1,
            f2,
            2,
        );
        assert_eq!(
            check_unramified_annihilation(&i).unwrap(),
            UnramifiedVerdict::Violated
        );
    }

    #[test]
    fn trace_relation_cyclotomic() {
        // rho_frob = diag(2, 3), rho_tau = diag(1, zeta), alpha_char = zeta
        let k = CycloField::new(4);
        let two = k.from_i64(2);
        let three = k.from_i64(3);
        let zeta = k.zeta();
        let f1 = UniPoly::new(k.clone(), vec![k.neg(&two), k.one()]);
        let f2 = UniPoly::new(k.clone(), vec![k.neg(&three), k.one()]);
        let inst = TraceRelationInstance {
            ring: k.clone(),
            rho_frob: Matrix::diag(k.clone(), vec![two, three]),
            rho_tau: Matrix::diag(k.clone(), vec![k.one(), zeta.clone()]),
            f1,
            f2,
            alpha_char: zeta,
            q: k.from_i64(5),
        };
        let rep = check_trace_relation(&inst).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.delta, inst.ring.from_i64(-1));
        // any sigma gives zero TW residual
        let sigma = Matrix::from_i64(inst.ring.clone(), 2, 2, &[3, 1, -2, 7]);
        assert!(inst.ring.is_zero(&tw_residual(&inst, &sigma).unwrap()));
    }

    #[test]
    fn trace_relation_trivial_tau() {
        // rho_tau = I, alpha_char = 1: residual 0 because e1 + e2 = delta I
        let m = Matrix::from_i64(QQ, 3, 3, &[2, 1, 0, 0, 2, 0, 0, 0, 5]);
        let f1 = UniPoly::from_i64(QQ, &[4, -4, 1]); // (X-2)^2
        let f2 = UniPoly::from_i64(QQ, &[-5, 1]);
        let inst = TraceRelationInstance {
            ring: QQ,
            rho_frob: m,
            rho_tau: Matrix::identity(QQ, 3),
            f1,
            f2,
            alpha_char: rat_int(1),
            q: rat_int(7),
        };
        let rep = check_trace_relation(&inst).unwrap();
        assert!(rep.ok);
    }

    #[test]
    fn projectors_ignore_unipotent_part() {
        // [[2,1],[0,2]] (+) [5] and its semisimple part give equal E_i
        let m = Matrix::from_i64(QQ, 3, 3, &[2, 1, 0, 0, 2, 0, 0, 0, 5]);
        let s = Matrix::diag(QQ, vec![rat_int(2), rat_int(2), rat_int(5)]);
        let f1 = UniPoly::from_i64(QQ, &[4, -4, 1]);
        let f2 = UniPoly::from_i64(QQ, &[-5, 1]);
        let pm = matrix_projectors(&m, &f1, &f2).unwrap();
        let ps = matrix_projectors(&s, &f1, &f2).unwrap();
        assert_eq!(pm.e1, ps.e1);
        assert_eq!(pm.e2, ps.e2);
    }

    #[test]
    fn tw_residual_detects_failure() {
        // sigma sweep over matrix units: residual zero iff all traces zero
        let zeta = rat_int(2); // stand-in nontrivial scalar over Q
        let inst = TraceRelationInstance {
            ring: QQ,
            rho_frob: Matrix::diag(QQ, vec![rat_int(3), rat_int(7)]),
            rho_tau: Matrix::diag(QQ, vec![rat_int(1), zeta]),
            f1: UniPoly::from_i64(QQ, &[-3, 1]),
            f2: UniPoly::from_i64(QQ, &[-7, 1]),
            alpha_char: rat_int(1), // mismatched on purpose
            q: rat_int(2),
        };
        let rep = check_trace_relation(&inst).unwrap();
        assert!(!rep.ok);
        let mut any_nonzero = false;
        for i in 0..2 {
            for j in 0..2 {
                let mut e = Matrix::zero(QQ, 2, 2);
                *e.at_mut(i, j) = rat_int(1);
                if !tw_residual(&inst, &e).unwrap().is_zero() {
                    any_nonzero = true;
                }
            }
        }
        assert!(any_nonzero);
        // delta_q = 0 kills the residual regardless
        let inst0 = TraceRelationInstance {
            q: rat_int(7),
            f1: UniPoly::from_i64(QQ, &[-1, 1]),
            f2: UniPoly::from_i64(QQ, &[-7, 1]),
            rho_frob: Matrix::diag(QQ, vec![rat_int(1), rat_int(7)]),
            ..inst
        };
        let sigma = Matrix::identity(QQ, 2);
        assert!(tw_residual(&inst0, &sigma).unwrap().is_zero());
    }

    #[test]
    fn trace_relation_conjugation_invariant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(101);
        let base = TraceRelationInstance {
            ring: QQ,
            rho_frob: Matrix::diag(QQ, vec![rat_int(3), rat_int(7)]),
            rho_tau: Matrix::diag(QQ, vec![rat_int(1), rat_int(2)]),
            f1: UniPoly::from_i64(QQ, &[-3, 1]),
            f2: UniPoly::from_i64(QQ, &[-7, 1]),
            alpha_char: rat_int(2),
            q: rat_int(3),
        };
        let r0 = check_trace_relation(&base).unwrap();
        for _ in 0..10 {
            let data: Vec<i64> = (0..4).map(|_| rng.gen_range(-4..=4)).collect();
            let c = Matrix::from_i64(QQ, 2, 2, &data);
            if c.det_field().unwrap().is_zero() {
                continue;
            }
            let ci = c.inverse().unwrap();
            let conj = |m: &Matrix<QQ>| c.mul(m).unwrap().mul(&ci).unwrap();
            let inst = TraceRelationInstance {
                rho_frob: conj(&base.rho_frob),
                rho_tau: conj(&base.rho_tau),
                ..base.clone()
            };
            let r = check_trace_relation(&inst).unwrap();
            assert_eq!(r.ok, r0.ok);
            assert_eq!(r.delta, r0.delta);
        }
    }

    #[test]
    fn satake_exponents() {
        let (a, b) = sigma_p1_weights(BlockShape::new(2, 3));
        assert_eq!(a, vec![rat(-1, 2), rat(0, 1)]);
        assert_eq!(b, vec![rat(-1, 1), rat(-1, 1), rat(0, 1)]);
    }
}
