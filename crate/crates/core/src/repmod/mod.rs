//! Explicit finite-dimensional `sl(m|n)`-modules.
//!
//! A [`GModule`] stores the matrices of the Chevalley generators `e_i, f_i, h_i`
//! on a based super-space. `e_s` and `f_s` are odd maps, every other generator
//! is even. Construction always re-checks the defining relations.

mod cache;
mod hom;
mod kac;
mod witness;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exactnum::{fmt_rational, int, Rational};
use crate::linalg::Matrix;
use crate::rootdata::{build_root_system, Family, RootError, RootSystem, Weight};
use crate::superlin::{
    direct_sum_map, dual_space, koszul, parity_shift, super_transpose, tensor_map, Parity, SuperError, SuperMap, SuperSpace,
};

pub use cache::{CacheError, ModuleCache, ModuleRecord, CACHE_VERSION};
pub use hom::{end_g, hom_space, hom_space_with, invariant_subspace, is_g_linear, ParityFilter};
pub use kac::{gl_irrep_dim, kac_module, GlWeight};
pub use witness::{
    ideal_witness, trivial_witness, witness_dsum, witness_parity_shift, witness_tensor, witness_transport, IdealWitness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error(transparent)]
    Super(#[from] SuperError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("module {module}: relation {relation} fails")]
    Relation { module: String, relation: String },
    #[error("module {0}: Cartan generators are not diagonal in the chosen basis")]
    NotDiagonal(String),
    #[error("module {module}: generator {generator} has parity {got}, expected {expected}")]
    GeneratorParity { module: String, generator: String, got: Parity, expected: Parity },
    #[error("only sl(m|n) modules are constructed, got {0}")]
    UnsupportedFamily(String),
    #[error("weight {0} is not dominant (a_i must be natural numbers for i != s)")]
    NotDominant(String),
    #[error("weight {0} is atypical")]
    Atypical(String),
    #[error("module {0} is not irreducible")]
    NotIrreducible(String),
    #[error("{0} has no recorded typical highest weight")]
    NoHighestWeight(String),
    #[error("not witnessed: {0}")]
    NotWitnessed(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Which generator family a matrix belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    E,
    F,
    H,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gen::E => "e",
            Gen::F => "f",
            Gen::H => "h",
        })
    }
}

/// Parity of `e_i`/`f_i`: odd exactly at the odd simple index.
pub fn generator_parity(rs: &RootSystem, kind: Gen, i: usize) -> Parity {
    if kind != Gen::H && i == rs.s() {
        Parity::Odd
    } else {
        Parity::Even
    }
}

/// `[x, y] = xy − (−1)^{p(x)p(y)} yx`.
pub fn super_commutator(x: &SuperMap, y: &SuperMap) -> SuperMap {
    let xy = x.compose(y);
    let yx = y.compose(x);
    if koszul(x.parity(), y.parity()) {
        xy.add(&yx)
    } else {
        xy.sub(&yx)
    }
}

/// Formats a weight as `(a_1,…|a_s,…)` with the bar before the odd index.
pub fn fmt_weight(rs: &RootSystem, lambda: &Weight) -> String {
    let s = rs.s();
    let left: Vec<String> = lambda.a[..s].iter().map(fmt_rational).collect();
    let right: Vec<String> = lambda.a[s..].iter().map(fmt_rational).collect();
    format!("({}|{})", left.join(","), right.join(","))
}

#[derive(Debug, Clone)]
pub struct GModule {
    name: String,
    rs: RootSystem,
    space: SuperSpace,
    e: Vec<SuperMap>,
    f: Vec<SuperMap>,
    h: Vec<SuperMap>,
    weights: Vec<Weight>,
    highest_weight: Option<Weight>,
}

impl PartialEq for GModule {
    fn eq(&self, other: &Self) -> bool {
        self.rs == other.rs && self.space == other.space && self.e == other.e && self.f == other.f && self.h == other.h
    }
}

impl GModule {
    /// Validates parities, diagonal Cartan action and all defining relations.
    pub fn new(
        name: impl Into<String>,
        rs: &RootSystem,
        space: SuperSpace,
        e: Vec<SuperMap>,
        f: Vec<SuperMap>,
        h: Vec<SuperMap>,
    ) -> Result<Self, RepError> {
        let name = name.into();
        if rs.family != Family::Sl {
            return Err(RepError::UnsupportedFamily(rs.name()));
        }
        let r = rs.rank();
        if e.len() != r || f.len() != r || h.len() != r {
            return Err(RepError::Shape(format!("{name}: expected {r} generators of each kind")));
        }
        for (kind, maps) in [(Gen::E, &e), (Gen::F, &f), (Gen::H, &h)] {
            for (i, x) in maps.iter().enumerate() {
                if x.domain() != &space || x.codomain() != &space {
                    return Err(RepError::Shape(format!("{name}: {kind}_{} acts on the wrong space", i + 1)));
                }
                let expected = generator_parity(rs, kind, i);
                if x.parity() != expected && !x.is_zero() {
                    return Err(RepError::GeneratorParity {
                        module: name.clone(),
                        generator: format!("{kind}_{}", i + 1),
                        got: x.parity(),
                        expected,
                    });
                }
            }
        }
        if h.iter().any(|x| !x.matrix().is_diagonal()) {
            return Err(RepError::NotDiagonal(name));
        }
        let weights = (0..space.dim()).map(|k| Weight::new(h.iter().map(|x| x.matrix().get(k, k)).collect())).collect();
        let e = Self::fix_parities(rs, Gen::E, e)?;
        let f = Self::fix_parities(rs, Gen::F, f)?;
        let module = GModule { name, rs: rs.clone(), space, e, f, h, weights, highest_weight: None };
        module.check_relations()?;
        Ok(module)
    }

    fn fix_parities(rs: &RootSystem, kind: Gen, maps: Vec<SuperMap>) -> Result<Vec<SuperMap>, RepError> {
        maps.into_iter()
            .enumerate()
            .map(|(i, x)| Ok(x.with_parity(generator_parity(rs, kind, i))?))
            .collect()
    }

    /// Builds from raw matrices, tagging generator parities automatically.
    pub fn from_matrices(
        name: impl Into<String>,
        rs: &RootSystem,
        space: SuperSpace,
        e: Vec<Matrix>,
        f: Vec<Matrix>,
        h: Vec<Matrix>,
    ) -> Result<Self, RepError> {
        let wrap = |kind: Gen, ms: Vec<Matrix>| -> Result<Vec<SuperMap>, RepError> {
            ms.into_iter()
                .enumerate()
                .map(|(i, m)| Ok(SuperMap::new(space.clone(), space.clone(), generator_parity(rs, kind, i), m)?))
                .collect()
        };
        let e = wrap(Gen::E, e)?;
        let f = wrap(Gen::F, f)?;
        let h = wrap(Gen::H, h)?;
        Self::new(name, rs, space, e, f, h)
    }

    /// Checks `[e_i,f_j] = δ_ij h_i`, `[h_i,h_j] = 0`, `[h_i,e_j] = a_ij e_j`,
    /// `[h_i,f_j] = −a_ij f_j` and `e_s² = f_s² = 0`.
    pub fn check_relations(&self) -> Result<(), RepError> {
        let r = self.rs.rank();
        let fail = |relation: String| RepError::Relation { module: self.name.clone(), relation };
        for i in 0..r {
            for j in 0..r {
                let ef = super_commutator(&self.e[i], &self.f[j]);
                let want = if i == j { self.h[i].clone() } else { SuperMap::zero(&self.space, &self.space, ef.parity()) };
                if ef.matrix() != want.matrix() {
                    return Err(fail(format!("[e_{},f_{}]", i + 1, j + 1)));
                }
                if !super_commutator(&self.h[i], &self.h[j]).is_zero() {
                    return Err(fail(format!("[h_{},h_{}]", i + 1, j + 1)));
                }
                let a = int(self.rs.cartan.a[i][j]);
                let he = super_commutator(&self.h[i], &self.e[j]);
                if he.matrix() != self.e[j].scale(&a).matrix() {
                    return Err(fail(format!("[h_{},e_{}]", i + 1, j + 1)));
                }
                let hf = super_commutator(&self.h[i], &self.f[j]);
                if hf.matrix() != self.f[j].scale(&-a).matrix() {
                    return Err(fail(format!("[h_{},f_{}]", i + 1, j + 1)));
                }
            }
        }
        let s = self.rs.s();
        if !self.e[s].compose(&self.e[s]).is_zero() || !self.f[s].compose(&self.f[s]).is_zero() {
            return Err(fail("odd generator squares".into()));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn sdim(&self) -> i64 {
        self.space.sdim()
    }

    pub fn e(&self, i: usize) -> &SuperMap {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &SuperMap {
        &self.f[i]
    }

    pub fn h(&self, i: usize) -> &SuperMap {
        &self.h[i]
    }

    /// All generators with their kind and index.
    pub fn generators(&self) -> Vec<(Gen, usize, &SuperMap)> {
        let mut out = Vec::with_capacity(3 * self.e.len());
        for (kind, maps) in [(Gen::E, &self.e), (Gen::F, &self.f), (Gen::H, &self.h)] {
            for (i, x) in maps.iter().enumerate() {
                out.push((kind, i, x));
            }
        }
        out
    }

    /// Weight of each basis vector.
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn highest_weight(&self) -> Option<&Weight> {
        self.highest_weight.as_ref()
    }

    pub(crate) fn set_highest_weight(&mut self, w: Weight) {
        self.highest_weight = Some(w);
    }

    /// Weight multiset as a sorted list of `(weight, even count, odd count)`.
    pub fn weight_multiset(&self) -> Vec<(Weight, usize, usize)> {
        let mut map: BTreeMap<Vec<Rational>, (usize, usize)> = BTreeMap::new();
        for (k, w) in self.weights.iter().enumerate() {
            let entry = map.entry(w.a.clone()).or_default();
            if self.space.parity(k).is_odd() {
                entry.1 += 1;
            } else {
                entry.0 += 1;
            }
        }
        map.into_iter().map(|(a, (e, o))| (Weight::new(a), e, o)).collect()
    }

    /// The module transported along an even, weight-preserving invertible `p`:
    /// every generator `x` becomes `p x p⁻¹`.
    pub fn conjugate(&self, p: &Matrix, name: impl Into<String>) -> Result<(GModule, SuperMap), RepError> {
        let pmap = SuperMap::new(self.space.clone(), self.space.clone(), Parity::Even, p.clone())?;
        let pinv = p.inverse().ok_or_else(|| RepError::Shape("conjugating matrix is singular".into()))?;
        let conj = |x: &SuperMap| -> Result<Matrix, RepError> { Ok(p.mul(x.matrix()).mul(&pinv)) };
        let e = self.e.iter().map(conj).collect::<Result<_, _>>()?;
        let f = self.f.iter().map(conj).collect::<Result<_, _>>()?;
        let h = self.h.iter().map(conj).collect::<Result<_, _>>()?;
        let mut out = GModule::from_matrices(name, &self.rs, self.space.clone(), e, f, h)?;
        out.highest_weight = self.highest_weight.clone();
        Ok((out, pmap))
    }

    /// The vectors reachable from `seeds` under all generators, as an echelon basis.
    pub fn generated_submodule(&self, seeds: &[crate::linalg::SparseVec]) -> crate::linalg::RowEchelon {
        let mut ech = crate::linalg::RowEchelon::new(self.dim());
        let mut queue: Vec<crate::linalg::SparseVec> = seeds.to_vec();
        let gens: Vec<&SuperMap> = self.generators().into_iter().filter(|(k, _, _)| *k != Gen::H).map(|(_, _, x)| x).collect();
        while let Some(v) = queue.pop() {
            if ech.insert(v.clone()) {
                for x in &gens {
                    let w = x.matrix().mul_vec(&v);
                    if !w.is_empty() {
                        queue.push(w);
                    }
                }
            }
        }
        ech
    }

    /// `End_g(V)₀` is one-dimensional and every singular or cosingular vector
    /// generates the whole module.
    pub fn is_irreducible(&self) -> bool {
        if end_g(self, Parity::Even).len() != 1 {
            return false;
        }
        for kind in [Gen::E, Gen::F] {
            let maps: Vec<&SuperMap> = self.generators().into_iter().filter(|(k, _, _)| *k == kind).map(|(_, _, x)| x).collect();
            let eqs: Vec<crate::linalg::SparseVec> = maps.iter().flat_map(|x| x.matrix().rows().to_vec()).collect();
            for v in crate::linalg::nullspace(&eqs, self.dim(), crate::par::Strategy::default()) {
                if self.generated_submodule(&[v]).rank() != self.dim() {
                    return false;
                }
            }
        }
        true
    }
}

/// The one-dimensional even trivial module.
pub fn trivial_module(rs: &RootSystem) -> GModule {
    let space = SuperSpace::unit();
    let r = rs.rank();
    let z = |kind: Gen| (0..r).map(|i| SuperMap::zero(&space, &space, generator_parity(rs, kind, i))).collect();
    GModule::new("C", rs, space.clone(), z(Gen::E), z(Gen::F), z(Gen::H)).expect("trivial module satisfies the relations")
}

/// `ℂ^{m|n}` with `e_i = E_{i,i+1}`, `f_i = E_{i+1,i}`, `h_i = E_ii − E_{i+1,i+1}`
/// for `i != s` and `h_s = E_ss + E_{s+1,s+1}`.
pub fn standard_module(m: usize, n: usize) -> Result<GModule, RepError> {
    let rs = build_root_system(Family::Sl, m, n)?;
    let d = m + n;
    let r = rs.rank();
    let space = SuperSpace::standard(m, n);
    let unit = |i: usize, j: usize| Matrix::from_triplets(d, d, [(i, j, int(1))]);
    let e = (0..r).map(|i| unit(i, i + 1)).collect();
    let f = (0..r).map(|i| unit(i + 1, i)).collect();
    let h = (0..r)
        .map(|i| {
            let sign = if i == rs.s() { 1 } else { -1 };
            Matrix::from_triplets(d, d, [(i, i, int(1)), (i + 1, i + 1, int(sign))])
        })
        .collect();
    GModule::from_matrices(format!("C^{{{m}|{n}}}"), &rs, space, e, f, h)
}

/// `x·φ = −(−1)^{p(x)p(φ)} φ∘x`, i.e. every generator acts by `−xᵗ` (super transpose).
pub fn dual_module(v: &GModule) -> GModule {
    let space = dual_space(&v.space);
    let dualize = |xs: &[SuperMap]| xs.iter().map(|x| super_transpose(x).scale(&int(-1))).collect();
    GModule::new(format!("{}*", v.name), &v.rs, space, dualize(&v.e), dualize(&v.f), dualize(&v.h))
        .expect("dual of a module is a module")
}

/// `x·(v⊗w) = (x·v)⊗w + (−1)^{p(x)p(v)} v⊗(x·w)`.
pub fn tensor_module(v: &GModule, w: &GModule) -> GModule {
    assert_eq!(v.rs, w.rs, "tensor product of modules over different algebras");
    let iv = SuperMap::identity(&v.space);
    let iw = SuperMap::identity(&w.space);
    let act = |xv: &SuperMap, xw: &SuperMap| tensor_map(xv, &iw).add(&tensor_map(&iv, xw));
    let comb = |a: &[SuperMap], b: &[SuperMap]| a.iter().zip(b).map(|(x, y)| act(x, y)).collect();
    let space = v.space.tensor(&w.space);
    GModule::new(format!("{}⊗{}", v.name, w.name), &v.rs, space, comb(&v.e, &w.e), comb(&v.f, &w.f), comb(&v.h, &w.h))
        .expect("tensor product of modules is a module")
}

/// `op-V` together with the odd `g`-linear isomorphism `σ_V: V → op-V`.
/// Odd generators act by `−x`, which makes `σ_V(x·v) = (−1)^{p(x)} x·σ_V(v)`.
pub fn parity_shift_module(v: &GModule) -> (GModule, SuperMap) {
    let (op, sigma) = parity_shift(&v.space);
    let target = op.clone();
    let shift = |xs: &[SuperMap]| {
        xs.iter()
            .map(|x| {
                let m = if x.parity().is_odd() { x.matrix().scale(&int(-1)) } else { x.matrix().clone() };
                SuperMap::new_unchecked(target.clone(), target.clone(), x.parity(), m)
            })
            .collect()
    };
    let mut out = GModule::new(format!("op({})", v.name), &v.rs, op, shift(&v.e), shift(&v.f), shift(&v.h))
        .expect("parity shift of a module is a module");
    out.highest_weight = None;
    (out, sigma)
}

pub fn direct_sum_module(v: &GModule, w: &GModule) -> GModule {
    assert_eq!(v.rs, w.rs, "direct sum of modules over different algebras");
    let comb = |a: &[SuperMap], b: &[SuperMap]| a.iter().zip(b).map(|(x, y)| direct_sum_map(x, y)).collect();
    GModule::new(
        format!("{}⊕{}", v.name, w.name),
        &v.rs,
        v.space.direct_sum(&w.space),
        comb(&v.e, &w.e),
        comb(&v.f, &w.f),
        comb(&v.h, &w.h),
    )
    .expect("direct sum of modules is a module")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_data() {
        let v = standard_module(2, 1).unwrap();
        assert_eq!(v.h(1).matrix().diagonal(), vec![int(0), int(1), int(1)]);
        assert_eq!(v.sdim(), 1);
        assert_eq!(v.weights()[0], Weight::from_ints(&[1, 0]));
        assert!(v.e(0).matrix().column(0).is_empty() && v.e(1).matrix().column(0).is_empty());
        assert!(standard_module(2, 2).is_err());
    }

    #[test]
    fn derived_modules_are_modules() {
        let v = standard_module(2, 1).unwrap();
        let vv = tensor_module(&v, &v);
        assert_eq!(vv.dim(), 9);
        let dd = dual_module(&dual_module(&v));
        assert_eq!(dd.weight_multiset(), v.weight_multiset());
        let vd = tensor_module(&v, &dual_module(&v));
        assert_eq!(vd.sdim(), v.sdim() * v.sdim());
        let (op, sigma) = parity_shift_module(&v);
        assert_eq!(op.sdim(), -1);
        assert!(is_g_linear(&sigma, &v, &op));
        let s = direct_sum_module(&v, &op);
        assert_eq!(s.dim(), 6);
    }

    #[test]
    fn tensor_weights_add() {
        let v = standard_module(2, 1).unwrap();
        let vd = tensor_module(&v, &dual_module(&v));
        let d = dual_module(&v);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(vd.weights()[i * 3 + j], v.weights()[i].add(&d.weights()[j]));
            }
        }
    }

    #[test]
    fn broken_relation_rejected() {
        let v = standard_module(2, 1).unwrap();
        let mut e: Vec<Matrix> = (0..2).map(|i| v.e(i).matrix().clone()).collect();
        e[0] = e[0].scale(&int(2));
        let f = (0..2).map(|i| v.f(i).matrix().clone()).collect();
        let h = (0..2).map(|i| v.h(i).matrix().clone()).collect();
        assert!(matches!(
            GModule::from_matrices("bad", v.root_system(), v.space().clone(), e, f, h),
            Err(RepError::Relation { .. })
        ));
    }
}
