//! Finite matrix-group closure over exact fields, multiplicative Jordan
//! decomposition, Burnside span tests, weak adequacy, eigen-projector
//! witnesses, and the rank-4 tensor counterexample with its
//! anti-diagonal span containment.

use crate::cyclo::CycloField;
use crate::error::{Error, Result};
use crate::matrix::{independent_subset, vectors_rank, Matrix};
use crate::resultant::matrix_projectors;
use crate::ring::{Field, Ring};
use crate::unipoly::UniPoly;
use std::collections::BTreeSet;

pub const DEFAULT_CAP: usize = 100_000;

/// A finite subgroup of GL_n over an exact field, closed by BFS.
#[derive(Clone, Debug)]
pub struct MatrixGroup<R: Field> {
    pub ring: R,
    pub n: usize,
    pub generators: Vec<Matrix<R>>,
    pub elements: Vec<Matrix<R>>,
}

impl<R: Field> MatrixGroup<R> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// BFS closure under multiplication; errors past `cap` elements.
/// Every discovered element is checked to be semisimple (finite order
/// in characteristic zero forces this).
pub fn close_group<R: Field>(
    ring: R,
    generators: &[Matrix<R>],
    cap: usize,
) -> Result<MatrixGroup<R>> {
    let n = generators
        .first()
        .map(|g| g.rows)
        .ok_or_else(|| Error::InvalidInput("no generators".into()))?;
    for g in generators {
        if g.rows != n || g.cols != n {
            return Err(Error::DimensionMismatch("generator size".into()));
        }
        if ring.is_zero(&g.det_field()?) {
            return Err(Error::NotAUnit("generator is singular".into()));
        }
    }
    let id = Matrix::identity(ring.clone(), n);
    let mut seen: BTreeSet<Vec<R::Elem>> = BTreeSet::new();
    let mut elements = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    seen.insert(id.flatten());
    elements.push(id);
    queue.push_back(0usize);
    while let Some(i) = queue.pop_front() {
        let cur = elements[i].clone();
        for g in generators {
            let next = cur.mul(g)?;
            if seen.insert(next.flatten()) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                // finite order in char 0 => semisimple
                let s = semisimple_part(&next)?;
                if s != next {
                    return Err(Error::VerificationFailed(
                        "non-semisimple element in a finite group".into(),
                    ));
                }
                elements.push(next);
                queue.push_back(elements.len() - 1);
            }
        }
    }
    Ok(MatrixGroup {
        ring,
        n,
        generators: generators.to_vec(),
        elements,
    })
}

/// The semisimple factor of the multiplicative Jordan decomposition:
/// Newton iteration on the squarefree part of the characteristic
/// polynomial, starting at g.
pub fn semisimple_part<R: Field>(g: &Matrix<R>) -> Result<Matrix<R>> {
    let ring = g.ring.clone();
    let chi = g.charpoly()?;
    let sf = chi.squarefree_part()?;
    let sfd = sf.derivative();
    let n = g.rows;
    let max_iters = (usize::BITS - n.leading_zeros()) as usize + 2;
    let mut s = g.clone();
    for _ in 0..max_iters {
        let val = s.apply_poly(&sf)?;
        if val.is_zero_matrix() {
            // verify the decomposition: s commutes with g, g s^{-1} unipotent
            if s.mul(g)? != g.mul(&s)? {
                return Err(Error::VerificationFailed(
                    "semisimple part does not commute".into(),
                ));
            }
            let u = g.mul(&s.inverse()?)?;
            let nilp = u.sub(&Matrix::identity(ring.clone(), n))?;
            let mut pw = nilp.clone();
            for _ in 1..n {
                pw = pw.mul(&nilp)?;
            }
            if !pw.is_zero_matrix() {
                return Err(Error::VerificationFailed(
                    "unipotent factor is not unipotent".into(),
                ));
            }
            return Ok(s);
        }
        let dv = s.apply_poly(&sfd)?;
        s = s.sub(&val.mul(&dv.inverse()?)?)?;
    }
    Err(Error::VerificationFailed(
        "Newton iteration for the semisimple part did not converge".into(),
    ))
}

/// True iff the characteristic polynomial is squarefree.
pub fn is_regular_semisimple<R: Field>(g: &Matrix<R>) -> Result<bool> {
    let chi = g.charpoly()?;
    let gcd = chi.gcd(&chi.derivative())?;
    Ok(gcd.deg_or_zero() == 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    All,
    Semisimple,
    RegularSemisimple,
}

#[derive(Clone, Debug)]
pub struct SpanReport<R: Field> {
    pub predicate: Predicate,
    pub dim: usize,
    pub basis: Vec<Matrix<R>>,
}

/// Exact dimension of the span of the selected elements inside M_n.
pub fn span_dim<R: Field>(group: &MatrixGroup<R>, predicate: Predicate) -> Result<SpanReport<R>> {
    let mut mats: Vec<Matrix<R>> = Vec::new();
    for g in &group.elements {
        match predicate {
            Predicate::All => mats.push(g.clone()),
            Predicate::Semisimple => mats.push(semisimple_part(g)?),
            Predicate::RegularSemisimple => {
                if is_regular_semisimple(g)? {
                    mats.push(g.clone());
                }
            }
        }
    }
    let vecs: Vec<Vec<R::Elem>> = mats.iter().map(|m| m.flatten()).collect();
    let idx = independent_subset(&group.ring, &vecs);
    let basis: Vec<Matrix<R>> = idx.iter().map(|&i| mats[i].clone()).collect();
    Ok(SpanReport {
        predicate,
        dim: basis.len(),
        basis,
    })
}

#[derive(Clone, Debug)]
pub struct AdequacyReport<R: Field> {
    pub span: SpanReport<R>,
    pub full_dim: usize,
    pub adequate: bool,
    /// every element equals its own semisimple part
    pub all_semisimple: bool,
}

/// Weak adequacy: the span of the semisimple parts is all of M_n.
pub fn weak_adequacy_check<R: Field>(group: &MatrixGroup<R>) -> Result<AdequacyReport<R>> {
    let mut all_semisimple = true;
    for g in &group.elements {
        if semisimple_part(g)? != *g {
            all_semisimple = false;
        }
    }
    let span = span_dim(group, Predicate::Semisimple)?;
    let full_dim = group.n * group.n;
    Ok(AdequacyReport {
        adequate: span.dim == full_dim,
        span,
        full_dim,
        all_semisimple,
    })
}

/// True iff the span of `inner` lies inside the span of `outer`.
pub fn span_contained_in<R: Field>(
    ring: &R,
    inner: &[Matrix<R>],
    outer: &[Matrix<R>],
) -> bool {
    let outer_vecs: Vec<Vec<R::Elem>> = outer.iter().map(|m| m.flatten()).collect();
    let r0 = vectors_rank(ring, &outer_vecs);
    let mut all: Vec<Vec<R::Elem>> = outer_vecs;
    all.extend(inner.iter().map(|m| m.flatten()));
    vectors_rank(ring, &all) == r0
}

/// Roots of unity available in the field, used for eigenvalue scanning
/// of finite-order matrices.
pub fn unit_root_candidates_q() -> Vec<crate::ring::Rat> {
    vec![crate::ring::rat_int(1), crate::ring::rat_int(-1)]
}

pub fn unit_root_candidates_cyclo(k: &CycloField) -> Vec<crate::cyclo::CycloElem> {
    let m = k.conductor as i64;
    let mut out = Vec::new();
    for j in 0..m {
        let z = k.zeta_pow(j);
        out.push(z.clone());
        out.push(k.neg(&z));
    }
    out
}

/// The split eigenvalues of g among the candidate scalars, with
/// multiplicities; Ok(None) if chi does not split over the field.
fn split_eigenvalues<R: Field>(
    g: &Matrix<R>,
    candidates: &[R::Elem],
) -> Result<Option<Vec<(R::Elem, usize)>>> {
    let ring = g.ring.clone();
    let mut chi = g.charpoly()?;
    let mut roots: Vec<(R::Elem, usize)> = Vec::new();
    for a in candidates {
        if roots.iter().any(|(r, _)| r == a) {
            continue;
        }
        let lin = UniPoly::new(ring.clone(), vec![ring.neg(a), ring.one()]);
        let mut mult = 0usize;
        loop {
            let (q, r) = chi.div_rem(&lin)?;
            if !r.is_zero() {
                break;
            }
            chi = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((a.clone(), mult));
        }
    }
    if chi.deg_or_zero() == 0 {
        Ok(Some(roots))
    } else {
        Ok(None)
    }
}

#[derive(Clone, Debug)]
pub struct ProjectorWitness<R: Field> {
    pub element_index: usize,
    pub eigenvalue: R::Elem,
    pub projector: Matrix<R>,
}

/// Searches for h in the group and a split eigenvalue alpha of h with
/// tr(e_{h,alpha} w) != 0 for some w spanning the H-invariant subspace
/// W. Returns None only after an exhaustive sweep; errors if W is not
/// invariant, or if no witness was found and some characteristic
/// polynomial failed to split.
pub fn eigen_projector_witness<R: Field>(
    group: &MatrixGroup<R>,
    subspace: &[Matrix<R>],
    candidates: &[R::Elem],
) -> Result<Option<ProjectorWitness<R>>> {
    let ring = group.ring.clone();
    if subspace.iter().all(|w| w.is_zero_matrix()) {
        return Ok(None);
    }
    // W must be stable under conjugation by the generators
    for g in &group.generators {
        let gi = g.inverse()?;
        for w in subspace {
            let c = g.mul(w)?.mul(&gi)?;
            if !span_contained_in(&ring, &[c], subspace) {
                return Err(Error::NotInvariant(
                    "subspace is not conjugation-invariant".into(),
                ));
            }
        }
    }
    let mut saw_non_split = false;
    for (hi, h) in group.elements.iter().enumerate() {
        let Some(eigs) = split_eigenvalues(h, candidates)? else {
            saw_non_split = true;
            continue;
        };
        if eigs.len() < 2 {
            // single eigenvalue: e_{h,alpha} is the identity up to delta,
            // handled by the alpha-projector only when chi factors
            continue;
        }
        for (alpha, mult) in &eigs {
            // f2 = (X - alpha)^mult, f1 = chi / f2
            let lin = UniPoly::new(ring.clone(), vec![ring.neg(alpha), ring.one()]);
            let mut f2 = UniPoly::new(ring.clone(), vec![ring.one()]);
            for _ in 0..*mult {
                f2 = f2.mul(&lin);
            }
            let chi = h.charpoly()?;
            let (f1, r) = chi.div_rem(&f2)?;
            if !r.is_zero() {
                return Err(Error::VerificationFailed("eigenvalue division".into()));
            }
            let p = matrix_projectors(h, &f1, &f2)?;
            let inv_delta = ring
                .inv(&p.delta)
                .ok_or_else(|| Error::NotAUnit("projector scale".into()))?;
            let proj = p.e2.scale(&inv_delta);
            for w in subspace {
                let t = proj.mul(w)?.trace()?;
                if !ring.is_zero(&t) {
                    return Ok(Some(ProjectorWitness {
                        element_index: hi,
                        eigenvalue: alpha.clone(),
                        projector: proj,
                    }));
                }
            }
        }
    }
    if saw_non_split {
        return Err(Error::NonSplit);
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct TensorExampleReport {
    pub group_order: usize,
    pub full_span_dim: usize,
    pub rss_span_dim: usize,
    pub rss_contained_in_antidiagonal_zero: bool,
}

/// Basis of the matrices with zeros on the anti-diagonal of M_n.
pub fn antidiagonal_zero_basis<R: Field>(ring: R, n: usize) -> Vec<Matrix<R>> {
    let mut out = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if r + c == n - 1 {
                continue;
            }
            let mut m = Matrix::zero(ring.clone(), n, n);
            *m.at_mut(r, c) = ring.one();
            out.push(m);
        }
    }
    out
}

/// The finite torus-normalizer model in GL_2(Q(i)), its Kronecker-square
/// image in GL_4, and the span containment of its regular-semisimple
/// elements in the anti-diagonal-zero subspace.
pub fn build_tensor_example() -> Result<(MatrixGroup<CycloField>, TensorExampleReport)> {
    let k = CycloField::new(4);
    let i = k.zeta();
    let swap = Matrix::from_i64(k.clone(), 2, 2, &[0, 1, 1, 0]);
    let d1 = Matrix::diag(k.clone(), vec![k.one(), k.from_i64(-1)]);
    let d2 = Matrix::diag(k.clone(), vec![i.clone(), k.neg(&i)]);
    let h2 = close_group(k.clone(), &[swap.clone(), d1.clone(), d2.clone()], DEFAULT_CAP)?;
    let id2 = Matrix::identity(k.clone(), 2);
    let mut gens4 = Vec::new();
    for g in [&swap, &d1, &d2] {
        gens4.push(g.kronecker(&id2));
        gens4.push(id2.kronecker(g));
    }
    let h4 = close_group(k.clone(), &gens4, DEFAULT_CAP)?;
    let full = span_dim(&h4, Predicate::All)?;
    let rss = span_dim(&h4, Predicate::RegularSemisimple)?;
    let anti = antidiagonal_zero_basis(k.clone(), 4);
    let contained = span_contained_in(&k, &rss.basis, &anti);
    let report = TensorExampleReport {
        group_order: h4.order(),
        full_span_dim: full.dim,
        rss_span_dim: rss.dim,
        rss_contained_in_antidiagonal_zero: contained,
    };
    debug_assert_eq!(h2.order(), 16);
    Ok((h4, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat_int, QQ};

    fn d4_gens() -> Vec<Matrix<QQ>> {
        vec![
            Matrix::from_i64(QQ, 2, 2, &[0, 1, 1, 0]),
            Matrix::diag(QQ, vec![rat_int(1), rat_int(-1)]),
        ]
    }

    #[test]
    fn closure_orders() {
        let d4 = close_group(QQ, &d4_gens(), DEFAULT_CAP).unwrap();
        assert_eq!(d4.order(), 8);
        let triv = close_group(QQ, &[Matrix::identity(QQ, 3)], DEFAULT_CAP).unwrap();
        assert_eq!(triv.order(), 1);
        // D4 x D4 tensor image in GL4: |64| / |kernel {(I,I),(-I,-I)}| = 32
        let id = Matrix::identity(QQ, 2);
        let mut gens = Vec::new();
        for g in d4_gens() {
            gens.push(g.kronecker(&id));
            gens.push(id.kronecker(&g));
        }
        let t = close_group(QQ, &gens, DEFAULT_CAP).unwrap();
        assert_eq!(t.order(), 32);
    }

    #[test]
    fn closure_guards() {
        let sing = Matrix::from_i64(QQ, 2, 2, &[1, 1, 1, 1]);
        assert!(matches!(
            close_group(QQ, &[sing], DEFAULT_CAP),
            Err(Error::NotAUnit(_))
        ));
        let g = d4_gens();
        assert!(matches!(
            close_group(QQ, &g, 3),
            Err(Error::CapExceeded(3))
        ));
    }

    #[test]
    fn semisimple_parts() {
        // unipotent -> identity
        let u = Matrix::from_i64(QQ, 2, 2, &[1, 1, 0, 1]);
        assert!(semisimple_part(&u).unwrap().is_identity());
        // already semisimple -> itself
        let d = Matrix::diag(QQ, vec![rat_int(2), rat_int(5)]);
        assert_eq!(semisimple_part(&d).unwrap(), d);
        // Jordan block (+) scalar
        let m = Matrix::from_i64(QQ, 3, 3, &[2, 1, 0, 0, 2, 0, 0, 0, 5]);
        let s = semisimple_part(&m).unwrap();
        assert_eq!(s, Matrix::diag(QQ, vec![rat_int(2), rat_int(2), rat_int(5)]));
    }

    #[test]
    fn regular_semisimple_predicate() {
        assert!(is_regular_semisimple(&Matrix::diag(QQ, vec![rat_int(2), rat_int(5)])).unwrap());
        assert!(!is_regular_semisimple(&Matrix::identity(QQ, 2)).unwrap());
        assert!(is_regular_semisimple(&Matrix::from_i64(QQ, 2, 2, &[0, 1, 1, 0])).unwrap());
    }

    #[test]
    fn spans_and_adequacy() {
        let d4 = close_group(QQ, &d4_gens(), DEFAULT_CAP).unwrap();
        assert_eq!(span_dim(&d4, Predicate::All).unwrap().dim, 4);
        let rep = weak_adequacy_check(&d4).unwrap();
        assert!(rep.adequate && rep.all_semisimple);
        // trivial group in GL1 is adequate
        let triv = close_group(QQ, &[Matrix::identity(QQ, 1)], DEFAULT_CAP).unwrap();
        assert!(weak_adequacy_check(&triv).unwrap().adequate);
        // diag-embedded D4 in GL4 is reducible: span <= 8 < 16
        let gens: Vec<_> = d4_gens().iter().map(|g| g.direct_sum(g)).collect();
        let dd = close_group(QQ, &gens, DEFAULT_CAP).unwrap();
        let rep = weak_adequacy_check(&dd).unwrap();
        assert!(!rep.adequate);
        assert!(rep.span.dim <= 8);
    }

    #[test]
    fn span_dim_conjugation_invariant() {
        let c = Matrix::from_i64(QQ, 2, 2, &[1, 2, 1, 3]);
        let ci = c.inverse().unwrap();
        let gens: Vec<_> = d4_gens()
            .iter()
            .map(|g| c.mul(g).unwrap().mul(&ci).unwrap())
            .collect();
        let d4c = close_group(QQ, &gens, DEFAULT_CAP).unwrap();
        assert_eq!(d4c.order(), 8);
        for p in [Predicate::All, Predicate::Semisimple, Predicate::RegularSemisimple] {
            let d4 = close_group(QQ, &d4_gens(), DEFAULT_CAP).unwrap();
            assert_eq!(
                span_dim(&d4, p).unwrap().dim,
                span_dim(&d4c, p).unwrap().dim
            );
        }
    }

    #[test]
    fn projector_witness_search() {
        let d4 = close_group(QQ, &d4_gens(), DEFAULT_CAP).unwrap();
        let full: Vec<_> = (0..4)
            .map(|k| {
                let mut m = Matrix::zero(QQ, 2, 2);
                *m.at_mut(k / 2, k % 2) = rat_int(1);
                m
            })
            .collect();
        let cands = unit_root_candidates_q();
        let w = eigen_projector_witness(&d4, &full, &cands).unwrap();
        let w = w.expect("witness must exist for irreducible group and W = M_n");
        // the normalized projector is idempotent
        let p = &w.projector;
        assert_eq!(p.mul(p).unwrap(), *p);
        // zero subspace -> no witness
        assert!(eigen_projector_witness(&d4, &[Matrix::zero(QQ, 2, 2)], &cands)
            .unwrap()
            .is_none());
        // non-invariant subspace rejected
        let e01 = full[1].clone();
        assert!(matches!(
            eigen_projector_witness(&d4, &[e01], &cands),
            Err(Error::NotInvariant(_))
        ));
    }

    #[test]
    fn tensor_counterexample() {
        let (h4, rep) = build_tensor_example().unwrap();
        assert_eq!(h4.order(), 64);
        assert_eq!(rep.full_span_dim, 16);
        assert!(rep.rss_contained_in_antidiagonal_zero);
        assert!(rep.rss_span_dim <= 12);
    }
}

