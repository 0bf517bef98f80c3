//! Structural checks on constructed modules and the super linear algebra
//! primitives: relations, Kac dimensions, zig-zags and Koszul sign laws.

use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{int, Rational};
use crate::linalg::Matrix;
use crate::mtrace::{roster_weights, TraceRoster};
use crate::report::CheckRecord;
use crate::repmod::{end_g, GModule};
use crate::rootdata::{RootSystem, Weight};
use crate::superlin::{
    coev, coev_right, dual_space, ev, ev_right, koszul_sign, ptr, ptr_categorical, str, super_permutation, super_transpose,
    tensor_map, Parity, SuperMap, SuperSpace,
};

const SUITE: &str = "superlin";

/// `dim V₀(λ)` by the Weyl dimension formula for the even part.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Rational {
    rs.pos_even
        .iter()
        .map(|al| {
            let v = RootSystem::root_vector(al);
            let rho0 = rs.form(&rs.rho0, &v);
            (rs.pair_weight_root(lambda, &v) + &rho0) / rho0
        })
        .product()
}

/// The four zig-zag identities and `ev_right∘coev = sdim` on `v`.
pub fn zigzag_checks(v: &SuperSpace, label: &str) -> Vec<CheckRecord> {
    let id = SuperMap::identity(v);
    let dv = dual_space(v);
    let idd = SuperMap::identity(&dv);
    let vvv = v.tensor(&dv).tensor(v);
    let left = tensor_map(&id, &ev(v))
        .retype(vvv.clone(), v.clone())
        .map(|a| a.compose(&tensor_map(&coev(v), &id).retype(v.clone(), vvv.clone()).expect("shape")));
    let dual = tensor_map(&ev(v), &idd).compose(&tensor_map(&idd, &coev(v)));
    let right = tensor_map(&ev_right(v), &id).compose(&tensor_map(&id, &coev_right(v)));
    let dual_right = tensor_map(&idd, &ev_right(v)).compose(&tensor_map(&coev_right(v), &idd));
    let ident = Matrix::identity(v.dim());
    let mut out = vec![
        CheckRecord::predicate(SUITE, "zig-zag (Id⊗ev)(coev⊗Id) = Id_V", label, left.map(|a| a.matrix() == &ident).unwrap_or(false)),
        CheckRecord::predicate(SUITE, "zig-zag (ev⊗Id)(Id⊗coev) = Id_V*", label, dual.matrix() == &ident),
        CheckRecord::predicate(SUITE, "zig-zag (ev_right⊗Id)(Id⊗coev_right) = Id_V", label, right.matrix() == &ident),
        CheckRecord::predicate(SUITE, "zig-zag (Id⊗ev_right)(coev_right⊗Id) = Id_V*", label, dual_right.matrix() == &ident),
    ];
    out.push(CheckRecord::compare(SUITE, "ev_right∘coev equals sdim", label, &int(v.sdim()), &ev_right(v).compose(&coev(v)).matrix().get(0, 0)));
    out
}

/// Relation check and, for Kac modules, `dim K(λ) = 2^{mn}·dim V₀(λ)` against the Weyl formula.
pub fn module_checks(v: &GModule, kac_weight: Option<&Weight>) -> Vec<CheckRecord> {
    let mut out = vec![match v.check_relations() {
        Ok(()) => CheckRecord::predicate(SUITE, "generator relations hold", v.name(), true),
        Err(e) => CheckRecord::error(SUITE, "generator relations hold", v.name(), e),
    }];
    if let Some(w) = kac_weight {
        let rs = v.root_system();
        let expected = int(1 << (rs.m * rs.n)) * weyl_dimension(rs, w);
        out.push(CheckRecord::compare(SUITE, "dim K(λ) = 2^{mn}·dim V₀(λ)", v.name(), &expected, &int(v.dim() as i64)));
        out.push(CheckRecord::compare(SUITE, "typical Kac module has sdim 0", v.name(), &0, &v.sdim()));
    }
    out
}

/// Koszul sign laws for random homogeneous maps on the given spaces.
pub fn sign_law_checks(spaces: &[(&str, SuperSpace)], seed: u64) -> Vec<CheckRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (label, u) in spaces {
        for (pf, pg) in [(Parity::Even, Parity::Even), (Parity::Even, Parity::Odd), (Parity::Odd, Parity::Odd)] {
            let f = SuperMap::random(u, u, pf, &mut rng);
            let g = SuperMap::random(u, u, pg, &mut rng);
            let f2 = SuperMap::random(u, u, pg, &mut rng);
            let g2 = SuperMap::random(u, u, pf, &mut rng);
            let inputs = format!("{label}, parities ({pf}, {pg})");
            out.push(CheckRecord::compare(
                SUITE,
                "str(fg) = (−1)^{p(f)p(g)} str(gf)",
                inputs.clone(),
                &(koszul_sign(pf, pg) * str(&g.compose(&f))),
                &str(&f.compose(&g)),
            ));
            let lhs = tensor_map(&f, &g).compose(&tensor_map(&f2, &g2));
            let rhs = tensor_map(&f.compose(&f2), &g.compose(&g2)).scale(&koszul_sign(g.parity(), f2.parity()));
            out.push(CheckRecord::predicate(SUITE, "(f⊗g)(f′⊗g′) = (−1)^{p(g)p(f′)} ff′⊗gg′", inputs.clone(), lhs == rhs));
            let tau = super_permutation(u, u);
            let nat_l = tau.compose(&tensor_map(&f, &g));
            let nat_r = tensor_map(&g, &f).compose(&tau).scale(&koszul_sign(pf, pg));
            out.push(CheckRecord::predicate(SUITE, "τ(f⊗g) = (−1)^{p(f)p(g)} (g⊗f)τ", inputs.clone(), nat_l == nat_r));
            out.push(CheckRecord::predicate(SUITE, "τ is an involution", inputs.clone(), tau.compose(&tau) == SuperMap::identity(&u.tensor(u))));
            let st_l = super_transpose(&f.compose(&g));
            let st_r = super_transpose(&g).compose(&super_transpose(&f)).scale(&koszul_sign(pf, pg));
            out.push(CheckRecord::predicate(SUITE, "(fg)* = (−1)^{p(f)p(g)} g*f*", inputs.clone(), st_l == st_r));
            out.push(CheckRecord::compare(SUITE, "str(f*) = str(f)", inputs.clone(), &str(&f), &str(&super_transpose(&f))));
            let h = SuperMap::random(&u.tensor(u), &u.tensor(u), pf, &mut rng);
            let routes = match (ptr(&h, u, u), ptr_categorical(&h, u, u, u)) {
                (Ok(a), Ok(b)) => a == b && str(&a) == str(&h),
                _ => false,
            };
            out.push(CheckRecord::predicate(SUITE, "partial supertrace routes agree and preserve str", inputs, routes));
        }
    }
    out
}

/// All structural checks over the trace roster.
pub fn verify_structural_properties(roster: &TraceRoster, seed: u64) -> Vec<CheckRecord> {
    let (l0, l1) = roster_weights(&roster.rs);
    let mut out = Vec::new();
    out.extend(module_checks(&roster.standard, None));
    out.extend(module_checks(roster.k0.module(), Some(&l0)));
    out.extend(module_checks(roster.k1.module(), Some(&l1)));
    for e in [&roster.k0_std, &roster.k0_op, &roster.k0_sum, &roster.k0_copy] {
        out.extend(module_checks(e.module(), None));
    }
    for e in roster.entries() {
        for w in &e.witnesses {
            out.extend(module_checks(&w.w, None));
        }
    }
    out.extend(zigzag_checks(roster.standard.space(), roster.standard.name()));
    for e in roster.entries() {
        out.extend(zigzag_checks(e.module().space(), e.module().name()));
    }
    let std = roster.standard.space().clone();
    out.extend(sign_law_checks(
        &[("standard", std.clone()), ("K(λ₀)", roster.k0.module().space().clone()), ("odd line", SuperSpace::standard(0, 1))],
        seed,
    ));
    let end_std = end_g(&roster.standard, Parity::Even);
    out.push(CheckRecord::compare(SUITE, "End_g(standard) is one-dimensional", roster.standard.name(), &1usize, &end_std.len()));
    out.push(CheckRecord::compare(SUITE, "str(Id) on the standard module", roster.standard.name(), &int(std.sdim()), &str(&SuperMap::scalar(&std, &Rational::one()))));
    out
}
