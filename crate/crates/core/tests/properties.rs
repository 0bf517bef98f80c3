//! Property tests for the invariants of the arithmetic, super linear algebra,
//! root data and invariant-tensor layers.

use std::sync::OnceLock;

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use supertrace::exactnum::{int, rat, HSeries, Rational};
use supertrace::invtensor::{permutations, AdjointData, TensorElement};
use supertrace::linalg::{nullspace, Matrix, RowEchelon};
use supertrace::par::Strategy as LoopStrategy;
use supertrace::rootdata::{build_root_system, Family, Weight};
use supertrace::superlin::{koszul_sign, ptr, str, super_permutation, super_transpose, tensor_map, Parity, SuperMap, SuperSpace};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

fn space() -> impl Strategy<Value = SuperSpace> {
    prop::collection::vec(parity(), 1..=4).prop_map(SuperSpace::new)
}

fn sl21_adjoint() -> &'static AdjointData {
    static A: OnceLock<AdjointData> = OnceLock::new();
    A.get_or_init(|| AdjointData::new(&build_root_system(Family::Sl, 2, 1).unwrap()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_division_inverts_multiplication(a in prop::collection::vec(rational(), 6), b0 in rational(), b in prop::collection::vec(rational(), 5)) {
        prop_assume!(!b0.is_zero());
        let mut bc = vec![b0];
        bc.extend(b);
        let (sa, sb) = (HSeries::new(a), HSeries::new(bc));
        let q = (&sa * &sb).checked_div(&sb).unwrap();
        prop_assert_eq!(q, sa);
    }

    #[test]
    fn q_powers_multiply(z in rational(), w in rational()) {
        let prod = &HSeries::q_power(&z, 6) * &HSeries::q_power(&w, 6);
        prop_assert_eq!(prod, HSeries::q_power(&(&z + &w), 6));
    }

    #[test]
    fn nullspace_vectors_solve_the_system(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..4)) {
        let eqs: Vec<Vec<(usize, Rational)>> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, x)| **x != 0).map(|(j, x)| (j, int(*x))).collect())
            .collect();
        let m = Matrix::from_rows(eqs.len(), 5, eqs.clone());
        let kernel = nullspace(&eqs, 5, LoopStrategy::Sequential);
        prop_assert_eq!(kernel.len() + m.rank(), 5);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).is_empty());
        }
        let mut ech = RowEchelon::new(5);
        for v in kernel {
            prop_assert!(ech.insert(v));
        }
    }

    #[test]
    fn supertrace_is_supercyclic(u in space(), pf in parity(), pg in parity(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = SuperMap::random(&u, &u, pf, &mut rng);
        let g = SuperMap::random(&u, &u, pg, &mut rng);
        prop_assert_eq!(str(&f.compose(&g)), koszul_sign(pf, pg) * str(&g.compose(&f)));
    }

    #[test]
    fn tensor_maps_follow_the_interchange_law(u in space(), v in space(), ps in prop::collection::vec(parity(), 4), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = SuperMap::random(&u, &u, ps[0], &mut rng);
        let g = SuperMap::random(&v, &v, ps[1], &mut rng);
        let f2 = SuperMap::random(&u, &u, ps[2], &mut rng);
        let g2 = SuperMap::random(&v, &v, ps[3], &mut rng);
        let lhs = tensor_map(&f, &g).compose(&tensor_map(&f2, &g2));
        let rhs = tensor_map(&f.compose(&f2), &g.compose(&g2)).scale(&koszul_sign(ps[1], ps[2]));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn braiding_is_natural_and_involutive(u in space(), v in space(), pf in parity(), pg in parity(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = SuperMap::random(&u, &u, pf, &mut rng);
        let g = SuperMap::random(&v, &v, pg, &mut rng);
        let tau = super_permutation(&u, &v);
        let back = super_permutation(&v, &u);
        prop_assert_eq!(back.compose(&tau), SuperMap::identity(&u.tensor(&v)));
        prop_assert_eq!(tau.compose(&tensor_map(&f, &g)), tensor_map(&g, &f).compose(&tau).scale(&koszul_sign(pf, pg)));
    }

    #[test]
    fn partial_supertrace_preserves_supertrace(u in space(), v in space(), p in parity(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let uv = u.tensor(&v);
        let h = SuperMap::random(&uv, &uv, p, &mut rng);
        prop_assert_eq!(str(&ptr(&h, &u, &v).unwrap()), str(&h));
    }

    #[test]
    fn super_transpose_is_antimultiplicative(u in space(), pf in parity(), pg in parity(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = SuperMap::random(&u, &u, pf, &mut rng);
        let g = SuperMap::random(&u, &u, pg, &mut rng);
        prop_assert_eq!(
            super_transpose(&f.compose(&g)),
            super_transpose(&g).compose(&super_transpose(&f)).scale(&koszul_sign(pf, pg))
        );
    }

    #[test]
    fn sl21_modified_dimension_closed_form(a1 in 0i64..6, a in rational()) {
        let rs = build_root_system(Family::Sl, 2, 1).unwrap();
        let w = Weight::new(vec![int(a1), a.clone()]);
        let poles = a.is_zero() || a == int(-a1 - 1);
        prop_assert_eq!(rs.is_typical(&w).unwrap(), !poles);
        prop_assert_eq!(rs.odd_product(&w).is_zero(), poles);
        if !poles {
            let d = rs.mod_sdim(&w).unwrap();
            prop_assert_eq!(&d, &(int(a1 + 1) / (&a * (&a + int(a1 + 1)))));
            let q = rs.qmod_sdim(&w, 5).unwrap();
            prop_assert_eq!(q.coeff(0), &d);
            prop_assert!(q.is_even_in_h());
        } else {
            prop_assert!(rs.mod_sdim(&w).is_err());
        }
    }

    #[test]
    fn extended_form_is_supersymmetric(n in 1usize..=3, ds in prop::collection::vec((0usize..8, 0usize..8, 0usize..8, -3i64..=3), 1..5), es in prop::collection::vec((0usize..8, 0usize..8, 0usize..8, -3i64..=3), 1..5)) {
        let adj = sl21_adjoint();
        let build = |terms: &[(usize, usize, usize, i64)]| {
            terms.iter().fold(TensorElement::zero(n), |t, &(i, j, k, c)| {
                t.add_scaled(&int(c), &adj.basis_tensor(&[i, j, k][..n]))
            })
        };
        let (t, u) = (build(&ds), build(&es));
        // Split into homogeneous parts; the form is supersymmetric on each pair.
        let split = |t: &TensorElement, p: Parity| TensorElement {
            degree: n,
            coords: t.coords.iter().filter(|(i, _)| adj.index_parity(*i, n) == p).cloned().collect(),
        };
        for p in [Parity::Even, Parity::Odd] {
            for q in [Parity::Even, Parity::Odd] {
                let (tp, uq) = (split(&t, p), split(&u, q));
                prop_assert_eq!(adj.extended_form(&tp, &uq), koszul_sign(p, q) * adj.extended_form(&uq, &tp));
            }
        }
    }

    #[test]
    fn permutations_preserve_the_extended_form(perm_index in 0usize..6, seed in any::<u64>()) {
        use rand::Rng;
        let adj = sl21_adjoint();
        let perm = &permutations(3)[perm_index];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut random = || {
            (0..4).fold(TensorElement::zero(3), |t, _| {
                let ds: Vec<usize> = (0..3).map(|_| rng.gen_range(0..8)).collect();
                t.add_scaled(&int(rng.gen_range(-3..=3)), &adj.basis_tensor(&ds))
            })
        };
        let (t, u) = (random(), random());
        prop_assert_eq!(adj.extended_form(&adj.sn_action(perm, &t), &adj.sn_action(perm, &u)), adj.extended_form(&t, &u));
    }
}

#[test]
fn identity_has_unit_bracket_scalar() {
    let v = SuperSpace::standard(2, 1);
    assert_eq!(SuperMap::identity(&v).scalar_value(), Some(Rational::one()));
}
