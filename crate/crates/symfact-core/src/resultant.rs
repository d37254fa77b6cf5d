//! Resultant calculus on the partially symmetrized ring: the universal
//! resultant and q-resultant, the Gram/trace form, the canonical tensor
//! element R~ with its certificate, the Jacobian determinant identity,
//! universal Bezout cofactors, and matrix spectral projectors.
//!
//! Universal polynomials in ab-coordinates:
//!     F1 = X^{n1} + a_1 X^{n1-1} + ... + a_{n1},
//!     F2 = X^{n2} + b_1 X^{n2-1} + ... + b_{n2},
//! so Res = resultant(F1, F2) = prod (x_i - x_{n1+j}).

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{PolyRing, QPoly};
use crate::ring::{rat_int, Field, Rat, Ring, QQ};
use crate::symring::{
    self, coset_representatives, expand_ab, express_in_ab_basis, express_in_e_basis, free_basis,
    trace_b_over_a, BlockShape,
};
use crate::sylvester::{bezout_solve, resultant_uni};
use crate::unipoly::UniPoly;
use num_traits::Zero;

/// The universal first factor F1 in ab-coordinates (n variables).
pub fn universal_f1(shape: BlockShape) -> UniPoly<PolyRing> {
    let n = shape.n();
    let ring = PolyRing::new(n);
    // ascending: coeff of X^j is a_{n1-j}, top coefficient 1
    let mut coeffs: Vec<QPoly> = (0..shape.n1)
        .map(|j| QPoly::var(n, shape.n1 - 1 - j))
        .collect();
    coeffs.push(QPoly::one(n));
    UniPoly::new(ring, coeffs)
}

/// The universal second factor F2 in ab-coordinates.
pub fn universal_f2(shape: BlockShape) -> UniPoly<PolyRing> {
    let n = shape.n();
    let ring = PolyRing::new(n);
    let mut coeffs: Vec<QPoly> = (0..shape.n2)
        .map(|j| QPoly::var(n, shape.n1 + shape.n2 - 1 - j))
        .collect();
    coeffs.push(QPoly::one(n));
    UniPoly::new(ring, coeffs)
}

/// Res_{n1,n2} = prod (x_i - x_{n1+j}) in ab-coordinates, computed as the
/// Sylvester determinant of the universal factors.
pub fn res_symbolic(shape: BlockShape) -> Result<QPoly> {
    resultant_uni(&universal_f1(shape), &universal_f2(shape))
}

/// Res in x-space, straight from the product formula.
pub fn res_x(shape: BlockShape) -> QPoly {
    let n = shape.n();
    let mut acc = QPoly::one(n);
    for i in 0..shape.n1 {
        for j in shape.n1..n {
            let d = QPoly::var(n, i).sub(&QPoly::var(n, j)).unwrap();
            acc = acc.mul(&d).unwrap();
        }
    }
    acc
}

/// The q-resultant prod (q x_i - x_{n1+j}) in ab-coordinates with one
/// extra final variable q: Res(sum T^{n1-i} q^i a_i, F2).
pub fn q_res_symbolic(shape: BlockShape) -> Result<QPoly> {
    let n = shape.n();
    let nv = n + 1; // ab-variables then q
    let ring = PolyRing::new(nv);
    let q = QPoly::var(nv, n);
    // coeff of X^j in the q-twisted F1 is a_{n1-j} q^{n1-j}
    let mut c1: Vec<QPoly> = Vec::with_capacity(shape.n1 + 1);
    for j in 0..shape.n1 {
        let i = shape.n1 - j;
        c1.push(QPoly::var(nv, i - 1).mul(&q.pow(i as u32)?)?);
    }
    c1.push(QPoly::one(nv));
    let f1q = UniPoly::new(ring, c1);
    let mut c2: Vec<QPoly> = (0..shape.n2)
        .map(|j| QPoly::var(nv, shape.n1 + shape.n2 - 1 - j))
        .collect();
    c2.push(QPoly::one(nv));
    let f2 = UniPoly::new(ring, c2);
    resultant_uni(&f1q, &f2)
}

/// Gram matrix of the free basis: G_ij = tr_{B/A}(f_i f_j), entries in
/// e-coordinates.
pub fn gram_matrix(shape: BlockShape) -> Result<Vec<Vec<QPoly>>> {
    let (basis, _) = free_basis(shape);
    let nn = basis.len();
    let mut g = vec![vec![QPoly::zero(shape.n()); nn]; nn];
    for i in 0..nn {
        for j in i..nn {
            let tr = trace_b_over_a(shape, &basis[i].mul(&basis[j])?);
            let e = express_in_e_basis(&tr)?;
            g[i][j] = e.clone();
            g[j][i] = e;
        }
    }
    Ok(g)
}

/// An element of B (x) _A B relative to the free basis on the left slot:
/// coords c_1..c_N (ab-space) denote sum_i f_i (x) c_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorBB {
    pub shape: BlockShape,
    pub coords: Vec<QPoly>,
}

impl TensorBB {
    pub fn new(shape: BlockShape, coords: Vec<QPoly>) -> Self {
        assert_eq!(coords.len(), shape.rank());
        TensorBB { shape, coords }
    }

    /// The multiplication map mu: sum f_i c_i, in ab-space.
    pub fn mu(&self) -> Result<QPoly> {
        let (basis_x, _) = free_basis(self.shape);
        let mut acc = QPoly::zero(self.shape.n());
        for (f, c) in basis_x.iter().zip(&self.coords) {
            let f_ab = express_in_ab_basis(self.shape, f)?;
            acc = acc.add(&f_ab.mul(c)?)?;
        }
        Ok(acc)
    }

    /// Swap the two slots and re-express in the left-slot basis.
    pub fn swap(&self) -> Result<TensorBB> {
        let nn = self.coords.len();
        let (basis_x, _) = free_basis(self.shape);
        let basis_ab: Vec<QPoly> = basis_x
            .iter()
            .map(|f| express_in_ab_basis(self.shape, f))
            .collect::<Result<_>>()?;
        let e_ab = symring::e_in_ab(self.shape);
        let mut out = vec![QPoly::zero(self.shape.n()); nn];
        for (i, c) in self.coords.iter().enumerate() {
            // c_i (x) f_i with c_i = sum_k d_ik f_k, d in A
            let d = symring::express_in_free_basis(self.shape, c)?;
            for (k, dk) in d.iter().enumerate() {
                let dk_ab = dk.substitute_all(&e_ab)?;
                out[k] = out[k].add(&dk_ab.mul(&basis_ab[i])?)?;
            }
        }
        Ok(TensorBB::new(self.shape, out))
    }
}

/// (s (x) 1) * t: rewrite s*f_i in the basis and redistribute.
pub fn tensor_mul_left(s: &QPoly, t: &TensorBB) -> Result<TensorBB> {
    let shape = t.shape;
    let (basis_x, _) = free_basis(shape);
    let e_ab = symring::e_in_ab(shape);
    let mut out = vec![QPoly::zero(shape.n()); t.coords.len()];
    for (i, c) in t.coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let f_ab = express_in_ab_basis(shape, &basis_x[i])?;
        let sf = s.mul(&f_ab)?;
        let d = symring::express_in_free_basis(shape, &sf)?;
        for (k, dk) in d.iter().enumerate() {
            let dk_ab = dk.substitute_all(&e_ab)?;
            out[k] = out[k].add(&dk_ab.mul(c)?)?;
        }
    }
    Ok(TensorBB::new(shape, out))
}

/// (1 (x) s) * t: scales the coordinates.
pub fn tensor_mul_right(s: &QPoly, t: &TensorBB) -> Result<TensorBB> {
    let coords = t
        .coords
        .iter()
        .map(|c| c.mul(s))
        .collect::<std::result::Result<_, _>>()?;
    Ok(TensorBB::new(t.shape, coords))
}

/// Certificate for the canonical element R~ = sum_i f_i (x) z_i.
#[derive(Clone, Debug)]
pub struct ResTildeCertificate {
    pub shape: BlockShape,
    pub partitions: Vec<Vec<usize>>,
    /// z_i in ab-coordinates; R~ = sum f_i (x) z_i.
    pub z_ab: Vec<QPoly>,
    pub res_ab: QPoly,
    /// mu(R~) - Res, expected zero.
    pub property1_residual: QPoly,
    /// per nontrivial coset rep w: (w, sum f_i w(z_i), sum w(f_i) z_i),
    /// both expected zero (x-space).
    pub coset_residuals: Vec<(Vec<usize>, QPoly, QPoly)>,
    pub property1_ok: bool,
    pub property2_ok: bool,
    /// full rank of the Gram system at a random specialization.
    pub uniqueness_ok: bool,
    /// jacobian_det = sign * Res.
    pub jacobian_sign: i8,
}

impl ResTildeCertificate {
    pub fn all_ok(&self) -> bool {
        self.property1_ok && self.property2_ok && self.uniqueness_ok
    }

    pub fn tensor(&self) -> TensorBB {
        TensorBB::new(self.shape, self.z_ab.clone())
    }
}

/// Solve G z = Res * f for the canonical element of Prop-2.2 type and
/// certify both defining properties by direct expansion.
pub fn res_tilde(shape: BlockShape, seed: u64) -> Result<ResTildeCertificate> {
    let n = shape.n();
    let (basis_x, parts) = free_basis(shape);
    let nn = basis_x.len();
    let basis_ab: Vec<QPoly> = basis_x
        .iter()
        .map(|f| express_in_ab_basis(shape, f))
        .collect::<Result<_>>()?;
    let res_ab = res_symbolic(shape)?;
    let d_total = (shape.n1 * shape.n2) as i64;
    let weights = shape.ab_weights();

    // Gram matrix directly in ab-coordinates
    let mut g_ab = vec![vec![QPoly::zero(n); nn]; nn];
    for i in 0..nn {
        for j in i..nn {
            let tr = trace_b_over_a(shape, &basis_x[i].mul(&basis_x[j])?);
            let e = express_in_ab_basis(shape, &tr)?;
            g_ab[i][j] = e.clone();
            g_ab[j][i] = e;
        }
    }

    // unknowns: coefficients of z_i on ab-monomials of weighted degree
    // exactly n1*n2 - |lambda_i| (R~ is homogeneous of degree n1*n2)
    let mut unknowns: Vec<(usize, Vec<i32>)> = Vec::new();
    for (i, lam) in parts.iter().enumerate() {
        let d = d_total - lam.iter().sum::<usize>() as i64;
        for m in symring::weighted_monomials(n, d) {
            let w: i64 = m
                .iter()
                .zip(&weights)
                .map(|(&k, &wt)| k as i64 * wt)
                .sum();
            if w == d {
                unknowns.push((i, m));
            }
        }
    }

    // rows: (equation index k, ab-monomial); column (i, m) contributes
    // G_ki * X^m to equation k
    let mut row_keys: std::collections::BTreeSet<(usize, Vec<i32>)> = std::collections::BTreeSet::new();
    let mut cols: Vec<Vec<(usize, Vec<i32>, Rat)>> = Vec::with_capacity(unknowns.len());
    for (i, m) in &unknowns {
        let mut col = Vec::new();
        for k in 0..nn {
            for (e, c) in g_ab[k][*i].terms() {
                let shifted: Vec<i32> = e.iter().zip(m).map(|(a, b)| a + b).collect();
                row_keys.insert((k, shifted.clone()));
                col.push((k, shifted, c.clone()));
            }
        }
        cols.push(col);
    }
    let mut rhs_polys = Vec::with_capacity(nn);
    for k in 0..nn {
        let p = res_ab.mul(&basis_ab[k])?;
        for (e, _) in p.terms() {
            row_keys.insert((k, e.clone()));
        }
        rhs_polys.push(p);
    }
    let row_keys: Vec<(usize, Vec<i32>)> = row_keys.into_iter().collect();
    let mut mat = Matrix::zero(QQ, row_keys.len(), unknowns.len());
    for (j, col) in cols.iter().enumerate() {
        for (k, e, c) in col {
            let r = row_keys.binary_search(&(*k, e.clone())).unwrap();
            *mat.at_mut(r, j) = QQ.add(mat.at(r, j), c);
        }
    }
    let rhs: Vec<Rat> = row_keys
        .iter()
        .map(|(k, e)| rhs_polys[*k].coeff(e))
        .collect();
    let sol = mat
        .solve(&rhs)
        .ok_or_else(|| Error::InconsistentSystem("Gram system for R~ has no solution".into()))?;

    let mut z_ab = vec![QPoly::zero(n); nn];
    for ((i, m), c) in unknowns.iter().zip(&sol) {
        if c.is_zero() {
            continue;
        }
        z_ab[*i] = z_ab[*i].add(&QPoly::monomial(n, m.clone(), c.clone()))?;
    }
    for z in &z_ab {
        if !z.is_integral() {
            return Err(Error::NonIntegral(format!("z coordinate {}", z)));
        }
    }

    // property 1: sum f_i z_i = Res, exactly in ab-space
    let mut mu = QPoly::zero(n);
    for (f, z) in basis_ab.iter().zip(&z_ab) {
        mu = mu.add(&f.mul(z)?)?;
    }
    let property1_residual = mu.sub(&res_ab)?;
    let property1_ok = property1_residual.is_zero();

    // property 2, both orientations, per nontrivial coset rep (x-space)
    let z_x: Vec<QPoly> = z_ab
        .iter()
        .map(|z| expand_ab(shape, z))
        .collect::<Result<_>>()?;
    let mut coset_residuals = Vec::new();
    let mut property2_ok = true;
    for w in coset_representatives(shape).into_iter().skip(1) {
        let mut r1 = QPoly::zero(n); // sum f_i w(z_i)
        let mut r2 = QPoly::zero(n); // sum w(f_i) z_i
        for (f, z) in basis_x.iter().zip(&z_x) {
            r1 = r1.add(&f.mul(&z.permute_vars(&w))?)?;
            r2 = r2.add(&f.permute_vars(&w).mul(z)?)?;
        }
        property2_ok &= r1.is_zero() && r2.is_zero();
        coset_residuals.push((w, r1, r2));
    }

    // uniqueness: Gram matrix is nonsingular at a random specialization
    // with Res != 0
    let uniqueness_ok = {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut ok = false;
        for _ in 0..16 {
            let point: Vec<Rat> = (0..n).map(|_| rat_int(rng.gen_range(-30..=30))).collect();
            if res_ab.eval(&point)?.is_zero() {
                continue;
            }
            let mut gm = Matrix::zero(QQ, nn, nn);
            for i in 0..nn {
                for j in 0..nn {
                    *gm.at_mut(i, j) = g_ab[i][j].eval(&point)?;
                }
            }
            if !gm.det_field()?.is_zero() {
                ok = true;
                break;
            }
        }
        ok
    };

    // Jacobian sign
    let jac = jacobian_det(shape)?;
    let jacobian_sign = if jac == res_ab {
        1
    } else if jac == res_ab.neg() {
        -1
    } else {
        return Err(Error::VerificationFailed(
            "Jacobian determinant is not +/- Res".into(),
        ));
    };

    Ok(ResTildeCertificate {
        shape,
        partitions: parts,
        z_ab,
        res_ab,
        property1_residual,
        coset_residuals,
        property1_ok,
        property2_ok,
        uniqueness_ok,
        jacobian_sign,
    })
}

/// det d(e_1..e_n)/d(a_1..a_{n1}, b_1..b_{n2}), an ab-space polynomial.
pub fn jacobian_det(shape: BlockShape) -> Result<QPoly> {
    let n = shape.n();
    let e_ab = symring::e_in_ab(shape);
    let ring = PolyRing::new(n);
    let mut jac = Matrix::zero(ring, n, n);
    for (k, e) in e_ab.iter().enumerate() {
        for v in 0..n {
            *jac.at_mut(k, v) = e.derivative(v);
        }
    }
    jac.det()
}

/// Universal Bezout cofactors and the projector polynomials:
/// G1 F1 + G2 F2 = Res in B[X]; e1 = G2 F2, e2 = G1 F1.
#[derive(Clone, Debug)]
pub struct ProjectorPair {
    pub shape: BlockShape,
    pub g1: UniPoly<PolyRing>,
    pub g2: UniPoly<PolyRing>,
    pub e1: UniPoly<PolyRing>,
    pub e2: UniPoly<PolyRing>,
    pub res: QPoly,
}

pub fn universal_cofactors(shape: BlockShape) -> Result<ProjectorPair> {
    let f1 = universal_f1(shape);
    let f2 = universal_f2(shape);
    let ring = PolyRing::new(shape.n());
    let (g1, g2, delta) = bezout_solve(&f1, &f2, &UniPoly::one(ring))?;
    let res = res_symbolic(shape)?;
    if delta != res {
        return Err(Error::VerificationFailed(
            "Bezout delta disagrees with the symbolic resultant".into(),
        ));
    }
    // verify the identity by full expansion
    let lhs = g1.mul(&f1).add(&g2.mul(&f2));
    if lhs != UniPoly::constant(ring, res.clone()) {
        return Err(Error::VerificationFailed(
            "universal Bezout identity failed to expand to Res".into(),
        ));
    }
    if g1.deg_or_zero() + 1 > shape.n2 || g2.deg_or_zero() + 1 > shape.n1 {
        return Err(Error::VerificationFailed(
            "cofactor degree bounds violated".into(),
        ));
    }
    let e1 = g2.mul(&f2);
    let e2 = g1.mul(&f1);
    Ok(ProjectorPair {
        shape,
        g1,
        g2,
        e1,
        e2,
        res,
    })
}

/// Numeric Bezout cofactors over a coefficient ring: g1 f1 + g2 f2 = delta.
pub fn numeric_bezout<R: Ring>(
    f1: &UniPoly<R>,
    f2: &UniPoly<R>,
) -> Result<(UniPoly<R>, UniPoly<R>, R::Elem)> {
    let ring = f1.ring.clone();
    let (g1, g2, delta) = bezout_solve(f1, f2, &UniPoly::one(ring.clone()))?;
    if ring.is_zero(&delta) {
        return Err(Error::ZeroResultant);
    }
    Ok((g1, g2, delta))
}

/// Spectral projectors of a matrix from a coprime factorization of its
/// characteristic polynomial: E1 = g2(M) f2(M), E2 = g1(M) f1(M), with
/// E1 + E2 = delta I, E1 E2 = 0, Ei^2 = delta Ei.
#[derive(Clone, Debug)]
pub struct Projectors<R: Ring> {
    pub e1: Matrix<R>,
    pub e2: Matrix<R>,
    pub delta: R::Elem,
}

pub fn matrix_projectors<R: Field>(
    m: &Matrix<R>,
    f1: &UniPoly<R>,
    f2: &UniPoly<R>,
) -> Result<Projectors<R>> {
    let ring = m.ring.clone();
    let cp = m.charpoly()?;
    if cp != f1.mul(f2) {
        return Err(Error::InvalidInput(
            "charpoly(M) is not the product of the given factors".into(),
        ));
    }
    let (g1, g2, delta) = numeric_bezout(f1, f2)?;
    let e1 = m.apply_poly(&g2.mul(f2))?;
    let e2 = m.apply_poly(&g1.mul(f1))?;
    let n = m.rows;
    let di = Matrix::identity(ring.clone(), n).scale(&delta);
    if e1.add(&e2)? != di
        || !e1.mul(&e2)?.is_zero_matrix()
        || e1.mul(&e1)? != e1.scale(&delta)
        || e2.mul(&e2)? != e2.scale(&delta)
    {
        return Err(Error::VerificationFailed(
            "projector identities failed".into(),
        ));
    }
    Ok(Projectors { e1, e2, delta })
}
