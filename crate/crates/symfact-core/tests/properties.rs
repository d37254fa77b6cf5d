//! Property tests for the structural invariants: ring axioms, resultant
//! calculus laws, basis round trips, Cayley-Hamilton, and valuation
//! additivity. All checks are exact.

use proptest::prelude::*;
use symfact_core::local::{valuation, Val};
use symfact_core::matrix::Matrix;
use symfact_core::poly::QPoly;
use symfact_core::ring::{rat, rat_int, Rat, QQ};
use symfact_core::symring::{expand_ab, expand_e, express_in_ab_basis, express_in_e_basis, BlockShape};
use symfact_core::sylvester::{bezout_solve, resultant_uni};
use symfact_core::unipoly::UniPoly;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn arb_poly(n_vars: usize, max_deg: i32) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(
        (
            prop::collection::vec(0..=max_deg, n_vars),
            arb_rat(),
        ),
        0..5,
    )
    .prop_map(move |terms| {
        let mut p = QPoly::zero(n_vars);
        for (e, c) in terms {
            p = p.add(&QPoly::monomial(n_vars, e, c)).unwrap();
        }
        p
    })
}

fn arb_unipoly(max_deg: usize) -> impl Strategy<Value = UniPoly<QQ>> {
    prop::collection::vec(-6i64..=6, 1..=max_deg)
        .prop_map(|roots| UniPoly::from_roots(QQ, &roots.iter().map(|&r| rat_int(r)).collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms(a in arb_poly(3, 3), b in arb_poly(3, 3), c in arb_poly(3, 3)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.sub(&a).unwrap(), QPoly::zero(3));
        prop_assert_eq!(a.mul(&QPoly::one(3)).unwrap(), a);
    }

    #[test]
    fn resultant_swap_and_multiplicativity(
        f in arb_unipoly(3),
        g in arb_unipoly(3),
        h in arb_unipoly(2),
    ) {
        let rfg = resultant_uni(&f, &g).unwrap();
        let rgf = resultant_uni(&g, &f).unwrap();
        let sign = if (f.deg_or_zero() * g.deg_or_zero()) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(rfg.clone(), rgf * rat_int(sign));
        // Res(f g, h) = Res(f, h) Res(g, h)
        let lhs = resultant_uni(&f.mul(&g), &h).unwrap();
        let rhs = resultant_uni(&f, &h).unwrap() * resultant_uni(&g, &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bezout_identity_holds(
        f in arb_unipoly(3),
        g in arb_unipoly(3),
        t in arb_unipoly(2),
    ) {
        prop_assume!(f.deg_or_zero() >= 1 && g.deg_or_zero() >= 1);
        prop_assume!(t.deg_or_zero() < f.deg_or_zero() + g.deg_or_zero());
        let (g1, g2, delta) = bezout_solve(&f, &g, &t).unwrap();
        let lhs = g1.mul(&f).add(&g2.mul(&g));
        let rhs = t.map_coeffs(QQ, |c| c.clone() * delta.clone());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(delta, resultant_uni(&f, &g).unwrap());
    }

    #[test]
    fn cayley_hamilton(entries in prop::collection::vec(-5i64..=5, 9)) {
        let m = Matrix::from_i64(QQ, 3, 3, &entries);
        let chi = m.charpoly().unwrap();
        prop_assert!(m.apply_poly(&chi).unwrap().is_zero_matrix());
    }

    #[test]
    fn e_basis_round_trip(p_e in arb_poly(3, 2)) {
        // expand an e-coordinate polynomial into x-space and re-express
        let p_x = expand_e(3, &p_e).unwrap();
        let back = express_in_e_basis(&p_x).unwrap();
        prop_assert_eq!(back, p_e);
    }

    #[test]
    fn ab_basis_round_trip(p_ab in arb_poly(3, 2)) {
        let shape = BlockShape::new(1, 2);
        let p_x = expand_ab(shape, &p_ab).unwrap();
        let back = express_in_ab_basis(shape, &p_x).unwrap();
        prop_assert_eq!(back, p_ab);
    }

    #[test]
    fn valuation_additive(a in arb_rat(), b in arb_rat(), p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let va = valuation(&a, p);
        let vb = valuation(&b, p);
        let vab = valuation(&(a * b), p);
        match (va, vb, vab) {
            (Val::Finite(x), Val::Finite(y), Val::Finite(z)) => prop_assert_eq!(x + y, z),
            (_, _, Val::Infinity) => prop_assert!(
                matches!(va, Val::Infinity) || matches!(vb, Val::Infinity)
            ),
            _ => prop_assert!(false, "finite product from infinite factor"),
        }
    }

    #[test]
    fn symmetric_expansion_is_invariant(p_e in arb_poly(3, 2)) {
        let p_x = expand_e(3, &p_e).unwrap();
        for w in [[1usize, 0, 2], [0, 2, 1], [2, 0, 1]] {
            prop_assert_eq!(p_x.permute_vars(&w), p_x.clone());
        }
    }
}
