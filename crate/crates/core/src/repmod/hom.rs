//! Spaces of `g`-linear maps as exact nullspaces.

use std::collections::HashMap;

use num_traits::Zero;

use crate::exactnum::Rational;
use crate::linalg::{nullspace, sparse_from_pairs, Matrix, SparseVec};
use crate::par::{self, Strategy};
use crate::rootdata::Weight;
use crate::superlin::{koszul, Parity, SuperMap};

use super::{trivial_module, GModule, Gen};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityFilter {
    Even,
    Odd,
    Both,
}

/// `f(x·u) = (−1)^{p(x)p(f)} x·f(u)` for every generator.
pub fn is_g_linear(f: &SuperMap, u: &GModule, v: &GModule) -> bool {
    if f.domain() != u.space() || f.codomain() != v.space() {
        return false;
    }
    u.generators().iter().zip(v.generators()).all(|((_, _, xu), (_, _, xv))| {
        let lhs = f.compose(xu);
        let rhs = xv.compose(f);
        if koszul(xu.parity(), f.parity()) {
            lhs.add(&rhs).is_zero()
        } else {
            lhs.sub(&rhs).is_zero()
        }
    })
}

/// Basis of `Hom_g(U, V)` restricted by parity.
pub fn hom_space(u: &GModule, v: &GModule, filter: ParityFilter) -> Vec<SuperMap> {
    let parities: &[Parity] = match filter {
        ParityFilter::Even => &[Parity::Even],
        ParityFilter::Odd => &[Parity::Odd],
        ParityFilter::Both => &[Parity::Even, Parity::Odd],
    };
    parities.iter().flat_map(|&p| hom_space_with(u, v, p, Strategy::default())).collect()
}

/// `End_g(V)` of the given parity.
pub fn end_g(v: &GModule, parity: Parity) -> Vec<SuperMap> {
    hom_space_with(v, v, parity, Strategy::default())
}

/// Basis of `Hom_g(U, V)_p`. Unknowns are the matrix entries joining basis
/// vectors of equal weight and compatible parity; the equations are
/// `X x_U − (−1)^{p(x)p} x_V X = 0` for `x ∈ {e_i, f_i}`. The Cartan relations
/// then hold automatically because `h_i = [e_i, f_i]`.
pub fn hom_space_with(u: &GModule, v: &GModule, parity: Parity, strategy: Strategy) -> Vec<SuperMap> {
    assert_eq!(u.root_system(), v.root_system(), "Hom between modules over different algebras");
    let mut by_weight: HashMap<&Weight, Vec<usize>> = HashMap::new();
    for (j, w) in u.weights().iter().enumerate() {
        by_weight.entry(w).or_default().push(j);
    }
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    for (i, w) in v.weights().iter().enumerate() {
        if let Some(js) = by_weight.get(w) {
            for &j in js {
                if v.space().parity(i) == u.space().parity(j) + parity {
                    unknowns.push((i, j));
                }
            }
        }
    }
    if unknowns.is_empty() {
        return Vec::new();
    }
    // Unknowns grouped by row and by column of X.
    let mut by_row: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    let mut by_col: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (k, &(i, j)) in unknowns.iter().enumerate() {
        by_row.entry(i).or_default().push((j, k));
        by_col.entry(j).or_default().push((i, k));
    }

    let pairs: Vec<(&SuperMap, &SuperMap)> = u
        .generators()
        .into_iter()
        .zip(v.generators())
        .filter(|((kind, _, _), _)| *kind != Gen::H)
        .map(|((_, _, xu), (_, _, xv))| (xu, xv))
        .collect();

    let blocks: Vec<Vec<SparseVec>> = par::map_slice(&pairs, strategy, |(xu, xv)| {
        let negate = koszul(xu.parity(), parity);
        let xv_t = xv.matrix().transpose();
        let mut eqs: HashMap<(usize, usize), Vec<(usize, Rational)>> = HashMap::new();
        // (X x_U)_{ij} = Σ_k X_{ik} (x_U)_{kj}
        for (k_row, row) in xu.matrix().rows().iter().enumerate() {
            for (j, val) in row {
                if let Some(cols) = by_col.get(&k_row) {
                    for &(i, unk) in cols {
                        eqs.entry((i, *j)).or_default().push((unk, val.clone()));
                    }
                }
            }
        }
        // (x_V X)_{ij} = Σ_k (x_V)_{ik} X_{kj}
        for (k_col, col) in xv_t.rows().iter().enumerate() {
            for (i, val) in col {
                if let Some(row) = by_row.get(&k_col) {
                    for &(j, unk) in row {
                        let c = if negate { val.clone() } else { -val.clone() };
                        eqs.entry((*i, j)).or_default().push((unk, c));
                    }
                }
            }
        }
        let mut keys: Vec<(usize, usize)> = eqs.keys().copied().collect();
        keys.sort_unstable();
        keys.into_iter()
            .map(|key| sparse_from_pairs(eqs.remove(&key).unwrap()))
            .filter(|r| !r.is_empty())
            .collect()
    });
    let equations: Vec<SparseVec> = blocks.into_iter().flatten().collect();
    nullspace(&equations, unknowns.len(), strategy)
        .into_iter()
        .map(|sol| {
            let m = Matrix::from_triplets(
                v.dim(),
                u.dim(),
                sol.into_iter().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (unknowns[k].0, unknowns[k].1, x)),
            );
            SuperMap::new(u.space().clone(), v.space().clone(), parity, m).expect("unknowns respect parity")
        })
        .collect()
}

/// Basis of the invariant vectors `{v : x·v = 0 for all x}`, both parities.
pub fn invariant_subspace(v: &GModule) -> Vec<SparseVec> {
    let c = trivial_module(v.root_system());
    hom_space(&c, v, ParityFilter::Both).into_iter().map(|f| f.matrix().column(0)).collect()
}
