//! The partially symmetrized ring B = Q[x_1..x_n]^{S_{n1} x S_{n2}} as a
//! free module over A = Q[x_1..x_n]^{S_n}.
//!
//! Signed coordinate convention throughout: the coordinates a_i, b_j, e_k
//! are the coefficients of the monic products
//!     prod_{i <= n1} (T - x_i)      = T^{n1} + a_1 T^{n1-1} + ... + a_{n1},
//!     prod_{j > n1} (T - x_j)       = T^{n2} + b_1 T^{n2-1} + ... + b_{n2},
//!     prod_all     (T - x_i)        = T^n   + e_1 T^{n-1}  + ... + e_n,
//! so a_i = (-1)^i sigma_i(x_1..x_{n1}) and e is the convolution of
//! (1, a) with (1, b).
//!
//! Variable layout: x-space polynomials have n variables x_1..x_n;
//! ab-space polynomials have n variables a_1..a_{n1}, b_1..b_{n2};
//! e-space polynomials have n variables e_1..e_n.

use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::ring::{rat_int, Rat};
use num_traits::{One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockShape {
    pub n1: usize,
    pub n2: usize,
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc: usize = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

impl BlockShape {
    pub fn new(n1: usize, n2: usize) -> Self {
        assert!(n1 >= 1 && n2 >= 1);
        BlockShape { n1, n2 }
    }

    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }

    /// Rank of B as a free A-module.
    pub fn rank(&self) -> usize {
        binomial(self.n(), self.n1)
    }

    pub fn block1(&self) -> Vec<usize> {
        (0..self.n1).collect()
    }

    pub fn block2(&self) -> Vec<usize> {
        (self.n1..self.n()).collect()
    }

    /// Weights of the ab-coordinates: a_i and b_j have weight i and j.
    pub fn ab_weights(&self) -> Vec<i64> {
        (1..=self.n1 as i64).chain(1..=self.n2 as i64).collect()
    }

    pub fn e_weights(&self) -> Vec<i64> {
        (1..=self.n() as i64).collect()
    }
}

/// Signed elementary symmetric polynomials of the listed variables:
/// entry i is the coefficient of T^{k-i} in prod (T - x_v), so entry 0
/// is 1 and entry i equals (-1)^i sigma_i.
pub fn signed_elementaries(num_vars: usize, vars: &[usize]) -> Vec<QPoly> {
    let mut coeffs = vec![QPoly::one(num_vars)];
    for &v in vars {
        let xv = QPoly::var(num_vars, v);
        let mut next = Vec::with_capacity(coeffs.len() + 1);
        for i in 0..=coeffs.len() {
            let keep = if i < coeffs.len() {
                coeffs[i].clone()
            } else {
                QPoly::zero(num_vars)
            };
            let carry = if i > 0 {
                coeffs[i - 1].mul(&xv).unwrap().neg()
            } else {
                QPoly::zero(num_vars)
            };
            next.push(keep.add(&carry).unwrap());
        }
        coeffs = next;
    }
    coeffs
}

/// a_1..a_{n1} expanded in x-space.
pub fn a_expanded(shape: BlockShape) -> Vec<QPoly> {
    signed_elementaries(shape.n(), &shape.block1())[1..].to_vec()
}

/// b_1..b_{n2} expanded in x-space.
pub fn b_expanded(shape: BlockShape) -> Vec<QPoly> {
    signed_elementaries(shape.n(), &shape.block2())[1..].to_vec()
}

/// e_1..e_n expanded in x-space.
pub fn e_expanded(n: usize) -> Vec<QPoly> {
    let vars: Vec<usize> = (0..n).collect();
    signed_elementaries(n, &vars)[1..].to_vec()
}

/// e_1..e_n written in ab-coordinates: e_k = sum_{i+j=k} a_i b_j with
/// a_0 = b_0 = 1.
pub fn e_in_ab(shape: BlockShape) -> Vec<QPoly> {
    let n = shape.n();
    let coord = |exp: Vec<i32>| QPoly::monomial(n, exp, Rat::one());
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = QPoly::zero(n);
        for i in 0..=k.min(shape.n1) {
            let j = k - i;
            if j > shape.n2 {
                continue;
            }
            let mut e = vec![0i32; n];
            if i > 0 {
                e[i - 1] = 1;
            }
            if j > 0 {
                e[shape.n1 + j - 1] += 1;
            }
            acc = acc.add(&coord(e)).unwrap();
        }
        out.push(acc);
    }
    out
}

/// Substitute the expanded e_k into an e-space polynomial.
pub fn expand_e(n: usize, p_e: &QPoly) -> Result<QPoly> {
    p_e.substitute_all(&e_expanded(n))
}

/// Substitute the expanded a_i, b_j into an ab-space polynomial.
pub fn expand_ab(shape: BlockShape, p_ab: &QPoly) -> Result<QPoly> {
    let mut vals = a_expanded(shape);
    vals.extend(b_expanded(shape));
    p_ab.substitute_all(&vals)
}

/// Express a block-symmetric x-space polynomial in the signed elementary
/// coordinates of the given blocks (leading-term subtraction). The output
/// lives in sum(block sizes) variables, ordered block by block. Fails with
/// `NotInvariant` when the input is not symmetric within every block.
pub fn express_in_blocks(p: &QPoly, blocks: &[Vec<usize>]) -> Result<QPoly> {
    if p.laurent {
        return Err(Error::Unsupported(
            "symmetric expression of Laurent polynomials".into(),
        ));
    }
    let nx = p.num_vars;
    let covered: usize = blocks.iter().map(|b| b.len()).sum();
    assert_eq!(covered, nx, "blocks must partition the variables");

    // expanded signed elementaries per block
    let elems: Vec<Vec<QPoly>> = blocks
        .iter()
        .map(|b| signed_elementaries(nx, b))
        .collect();

    let out_vars = covered;
    let mut out = QPoly::zero(out_vars);
    let mut rem = p.clone();
    while !rem.is_zero() {
        let le = rem.leading_exp_lex().unwrap().clone();
        let c = rem.coeff(&le);
        // per-block partitions lambda; each must be weakly decreasing
        let mut out_exp = vec![0i32; out_vars];
        let mut weight: i64 = 0;
        let mut offset = 0usize;
        let mut prod = QPoly::one(nx);
        for (bi, block) in blocks.iter().enumerate() {
            let lambda: Vec<i32> = block.iter().map(|&v| le[v]).collect();
            if lambda.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::NotInvariant(format!(
                    "leading exponent {:?} is not dominant in block {:?}",
                    le, block
                )));
            }
            for i in 0..block.len() {
                let next = if i + 1 < block.len() { lambda[i + 1] } else { 0 };
                let m = lambda[i] - next;
                out_exp[offset + i] = m;
                if m > 0 {
                    prod = prod.mul(&elems[bi][i + 1].pow(m as u32)?)?;
                }
            }
            weight += lambda.iter().map(|&k| k as i64).sum::<i64>();
            offset += block.len();
        }
        // prod has leading coefficient (-1)^weight at exponent le
        let sign = if weight % 2 == 0 {
            Rat::one()
        } else {
            -Rat::one()
        };
        let coef = &c * &sign;
        out = out.add(&QPoly::monomial(out_vars, out_exp, coef.clone()))?;
        rem = rem.sub(&prod.scale(&coef))?;
        if let Some(ne) = rem.leading_exp_lex() {
            if *ne >= le {
                return Err(Error::NotInvariant(
                    "reduction failed to decrease the leading term".into(),
                ));
            }
        }
    }
    Ok(out)
}

/// Express a fully symmetric x-space polynomial in e_1..e_n.
pub fn express_in_e_basis(p: &QPoly) -> Result<QPoly> {
    express_in_blocks(p, &[(0..p.num_vars).collect()])
}

/// Express an (S_{n1} x S_{n2})-invariant x-space polynomial in the
/// ab-coordinates.
pub fn express_in_ab_basis(shape: BlockShape, p: &QPoly) -> Result<QPoly> {
    assert_eq!(p.num_vars, shape.n());
    express_in_blocks(p, &[shape.block1(), shape.block2()])
}

/// Minimal-length representatives of S_n / (S_{n1} x S_{n2}), as image
/// vectors w with w(i) = i-th element of an n1-subset. The identity comes
/// first. A polynomial is moved by w via x_i -> x_{w(i)}.
pub fn coset_representatives(shape: BlockShape) -> Vec<Vec<usize>> {
    let n = shape.n();
    let mut reps = Vec::with_capacity(shape.rank());
    let mut subset: Vec<usize> = (0..shape.n1).collect();
    loop {
        let in_subset: std::collections::BTreeSet<usize> = subset.iter().cloned().collect();
        let mut w = subset.clone();
        w.extend((0..n).filter(|i| !in_subset.contains(i)));
        reps.push(w);
        // next n1-subset of {0..n-1} in lexicographic order
        let k = shape.n1;
        let mut i = k;
        loop {
            if i == 0 {
                return sort_identity_first(reps);
            }
            i -= 1;
            if subset[i] != i + n - k {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn sort_identity_first(reps: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    // lexicographic subset order already places the identity first
    debug_assert!(reps[0].iter().enumerate().all(|(i, &w)| i == w));
    reps
}

/// Trace of B over A: the sum of all coset translates. The result is
/// fully symmetric in x-space.
pub fn trace_b_over_a(shape: BlockShape, p_x: &QPoly) -> QPoly {
    let mut acc = QPoly::zero(shape.n());
    for w in coset_representatives(shape) {
        acc = acc.add(&p_x.permute_vars(&w)).unwrap();
    }
    acc
}

/// Complete homogeneous symmetric polynomial of degree k in the listed
/// variables.
pub fn complete_homogeneous(num_vars: usize, vars: &[usize], k: usize) -> QPoly {
    // h_k over the first m variables, by h_k(m) = sum_j x_m^j h_{k-j}(m-1)
    let mut h = vec![QPoly::zero(num_vars); k + 1];
    h[0] = QPoly::one(num_vars);
    for &v in vars {
        let xv = QPoly::var(num_vars, v);
        let mut nh = h.clone();
        for d in 1..=k {
            nh[d] = nh[d].add(&nh[d - 1].mul(&xv).unwrap()).unwrap();
        }
        h = nh;
    }
    h[k].clone()
}

/// Schur polynomial s_lambda of the listed variables (Jacobi-Trudi
/// determinant in the complete homogeneous basis).
pub fn schur(num_vars: usize, vars: &[usize], lambda: &[usize]) -> QPoly {
    let l = lambda.len();
    if l == 0 {
        return QPoly::one(num_vars);
    }
    let maxdeg: usize = lambda.iter().sum::<usize>() + l;
    let h: Vec<QPoly> = (0..=maxdeg)
        .map(|k| complete_homogeneous(num_vars, vars, k))
        .collect();
    let ring = crate::poly::PolyRing::new(num_vars);
    let mut m = crate::matrix::Matrix::zero(ring, l, l);
    for i in 0..l {
        for j in 0..l {
            let d = lambda[i] as i64 - i as i64 + j as i64;
            *m.at_mut(i, j) = if d < 0 {
                QPoly::zero(num_vars)
            } else {
                h[d as usize].clone()
            };
        }
    }
    m.det().unwrap()
}

/// Partitions fitting in an (n2 rows) x (n1 columns) box, sorted by size
/// then lexicographically. There are C(n, n1) of them.
pub fn box_partitions(shape: BlockShape) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(all: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, rows_left: usize, max_part: usize) {
        all.push(cur.clone());
        if rows_left == 0 {
            return;
        }
        for p in (1..=max_part).rev() {
            cur.push(p);
            rec(all, cur, rows_left - 1, p);
            cur.pop();
        }
    }
    rec(&mut all, &mut cur, shape.n2, shape.n1);
    all.sort_by(|a, b| {
        let (sa, sb) = (a.iter().sum::<usize>(), b.iter().sum::<usize>());
        sa.cmp(&sb).then(a.cmp(b))
    });
    all
}

/// The free A-module basis of B: f_lambda = (-1)^{|lambda|} s_lambda of
/// the second-block variables, for lambda in the n2 x n1 box. Returned in
/// x-space, together with the partitions, in ascending degree order.
pub fn free_basis(shape: BlockShape) -> (Vec<QPoly>, Vec<Vec<usize>>) {
    let parts = box_partitions(shape);
    let vars = shape.block2();
    let basis = parts
        .iter()
        .map(|lam| {
            let s = schur(shape.n(), &vars, lam);
            let w: usize = lam.iter().sum();
            if w % 2 == 0 {
                s
            } else {
                s.neg()
            }
        })
        .collect();
    (basis, parts)
}

/// Certify linear independence of the coset translates of the basis by a
/// random rational specialization: det (w(f_i)) evaluated at a point with
/// distinct coordinates must be nonzero.
pub fn free_basis_certificate(shape: BlockShape, seed: u64) -> Result<Rat> {
    use rand::{Rng, SeedableRng};
    let (basis, _) = free_basis(shape);
    let reps = coset_representatives(shape);
    let nn = basis.len();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..16 {
        let point: Vec<Rat> = (0..shape.n()).map(|_| rat_int(rng.gen_range(-50..=50))).collect();
        let mut m = crate::matrix::Matrix::zero(crate::ring::QQ, nn, nn);
        let mut ok = true;
        for (r, w) in reps.iter().enumerate() {
            for (c, f) in basis.iter().enumerate() {
                match f.permute_vars(w).eval(&point) {
                    Ok(v) => *m.at_mut(r, c) = v,
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if !ok {
            continue;
        }
        let d = m.det_field()?;
        if !d.is_zero() {
            return Ok(d);
        }
    }
    Err(Error::VerificationFailed(
        "coset translates of the free basis look dependent at 16 random points".into(),
    ))
}

/// Coordinates of an ab-space element of B in the free basis: returns
/// z_1..z_N in e-space with p = sum z_i f_i. Solved as an exact linear
/// system in ab-monomial coefficients; the solution is unique because the
/// products e^m f_i are Q-linearly independent.
pub fn express_in_free_basis(shape: BlockShape, p_ab: &QPoly) -> Result<Vec<QPoly>> {
    let n = shape.n();
    assert_eq!(p_ab.num_vars, n);
    let (basis_x, parts) = free_basis(shape);
    let basis_ab: Vec<QPoly> = basis_x
        .iter()
        .map(|f| express_in_ab_basis(shape, f))
        .collect::<Result<_>>()?;
    let e_ab = e_in_ab(shape);
    let weights = shape.ab_weights();
    let degree = p_ab.weighted_degree(&weights).unwrap_or(0).max(0);

    // unknowns: one rational per (basis index, e-monomial of weight
    // <= degree - |lambda_i|)
    let mut unknowns: Vec<(usize, Vec<i32>)> = Vec::new();
    let mut columns: Vec<QPoly> = Vec::new();
    for (i, lam) in parts.iter().enumerate() {
        let bound = degree - lam.iter().sum::<usize>() as i64;
        if bound < 0 {
            continue;
        }
        for m in weighted_monomials(n, bound) {
            let mut prod = basis_ab[i].clone();
            for (k, &mk) in m.iter().enumerate() {
                if mk > 0 {
                    prod = prod.mul(&e_ab[k].pow(mk as u32)?)?;
                }
            }
            unknowns.push((i, m));
            columns.push(prod);
        }
    }

    // row space: every ab-monomial appearing in any column or in p
    let mut rows: std::collections::BTreeSet<Vec<i32>> = std::collections::BTreeSet::new();
    for c in columns.iter().chain(std::iter::once(p_ab)) {
        for (e, _) in c.terms() {
            rows.insert(e.clone());
        }
    }
    let rows: Vec<Vec<i32>> = rows.into_iter().collect();
    let mut mat = crate::matrix::Matrix::zero(crate::ring::QQ, rows.len(), columns.len());
    for (j, c) in columns.iter().enumerate() {
        for (e, v) in c.terms() {
            let r = rows.binary_search(e).unwrap();
            *mat.at_mut(r, j) = v.clone();
        }
    }
    let rhs: Vec<Rat> = rows.iter().map(|e| p_ab.coeff(e)).collect();
    let sol = mat.solve(&rhs).ok_or_else(|| {
        Error::InconsistentSystem("element is not an A-combination of the free basis".into())
    })?;

    let mut z = vec![QPoly::zero(n); basis_ab.len()];
    for ((i, m), c) in unknowns.iter().zip(&sol) {
        if c.is_zero() {
            continue;
        }
        z[*i] = z[*i].add(&QPoly::monomial(n, m.clone(), c.clone()))?;
    }

    // exact verification in ab-space
    let mut check = QPoly::zero(n);
    for (zi, fi) in z.iter().zip(&basis_ab) {
        let zi_ab = zi.substitute_all(&e_ab)?;
        check = check.add(&zi_ab.mul(fi)?)?;
    }
    if check != *p_ab {
        return Err(Error::VerificationFailed(
            "free-basis coordinates failed to reproduce the element".into(),
        ));
    }
    Ok(z)
}

/// All exponent vectors m with sum k*m_k (1-based weights) <= bound.
pub fn weighted_monomials(n: usize, bound: i64) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let mut cur = vec![0i32; n];
    fn rec(out: &mut Vec<Vec<i32>>, cur: &mut Vec<i32>, k: usize, left: i64, n: usize) {
        if k == n {
            out.push(cur.clone());
            return;
        }
        let w = (k + 1) as i64;
        let max = left / w;
        for m in 0..=max {
            cur[k] = m as i32;
            rec(out, cur, k + 1, left - m * w, n);
        }
        cur[k] = 0;
    }
    rec(&mut out, &mut cur, 0, bound, n);
    out
}
