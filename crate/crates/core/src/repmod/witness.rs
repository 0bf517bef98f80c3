//! Certificates `(V₀, W, α, β)` with `α∘β = Id_V` showing that `V` splits
//! through `V₀⊗W` for a typical `V₀`.

use num_traits::{One, Zero};

use crate::exactnum::Rational;
use crate::linalg::Matrix;
use crate::rootdata::Weight;
use crate::superlin::{tensor_map, Parity, SuperMap};

use super::{
    dual_module, fmt_weight, hom_space_with, is_g_linear, parity_shift_module, tensor_module, trivial_module, direct_sum_module,
    GModule, RepError,
};
use crate::par::Strategy;

#[derive(Debug, Clone)]
pub struct IdealWitness {
    pub label: String,
    pub v: GModule,
    pub v0: GModule,
    pub lambda0: Weight,
    pub w: GModule,
    /// `V₀⊗W → V`.
    pub alpha: SuperMap,
    /// `V → V₀⊗W`.
    pub beta: SuperMap,
}

impl IdealWitness {
    /// The module `V₀⊗W`.
    pub fn v0_w(&self) -> GModule {
        tensor_module(&self.v0, &self.w)
    }

    /// Checks typicality of `λ₀`, evenness and `g`-linearity of `α`, `β`, and `α∘β = Id_V`.
    pub fn verify(&self) -> Result<(), RepError> {
        let rs = self.v0.root_system();
        if !rs.is_typical(&self.lambda0)? {
            return Err(RepError::InvalidWitness(format!("{}: V0 weight is atypical", self.label)));
        }
        if self.alpha.parity() != Parity::Even || self.beta.parity() != Parity::Even {
            return Err(RepError::InvalidWitness(format!("{}: alpha and beta must be even", self.label)));
        }
        let vw = self.v0_w();
        if !is_g_linear(&self.alpha, &vw, &self.v) || !is_g_linear(&self.beta, &self.v, &vw) {
            return Err(RepError::InvalidWitness(format!("{}: alpha or beta is not g-linear", self.label)));
        }
        if self.alpha.compose(&self.beta) != SuperMap::identity(self.v.space()) {
            return Err(RepError::InvalidWitness(format!("{}: alpha∘beta != Id", self.label)));
        }
        Ok(())
    }

    /// `β∘α ∈ End_g(V₀⊗W)` is idempotent.
    pub fn splitting_is_idempotent(&self) -> bool {
        let p = self.beta.compose(&self.alpha);
        p.compose(&p) == p
    }
}

fn typical_weight(v0: &GModule) -> Result<Weight, RepError> {
    let lambda = v0.highest_weight().cloned().ok_or_else(|| RepError::NoHighestWeight(v0.name().to_string()))?;
    if !v0.root_system().is_typical(&lambda)? {
        return Err(RepError::Atypical(fmt_weight(v0.root_system(), &lambda)));
    }
    Ok(lambda)
}

/// `V = V₀`, `W = ℂ`, `α = β = Id`.
pub fn trivial_witness(v0: &GModule) -> Result<IdealWitness, RepError> {
    let lambda0 = typical_weight(v0)?;
    let w = trivial_module(v0.root_system());
    let id = SuperMap::identity(v0.space());
    let vw = v0.space().tensor(w.space());
    Ok(IdealWitness {
        label: format!("{} via itself", v0.name()),
        v: v0.clone(),
        v0: v0.clone(),
        lambda0,
        alpha: id.retype(vw.clone(), v0.space().clone())?,
        beta: id.retype(v0.space().clone(), vw)?,
        w,
    })
}

/// Searches `Hom_g(V₀⊗W, V)₀ × Hom_g(V, V₀⊗W)₀` with `W = V₀*⊗V` for a pair
/// composing to a nonzero multiple of `Id_V`.
pub fn ideal_witness(v: &GModule, v0: &GModule) -> Result<IdealWitness, RepError> {
    if v == v0 {
        return trivial_witness(v0);
    }
    let lambda0 = typical_weight(v0)?;
    if !v.is_irreducible() {
        return Err(RepError::NotIrreducible(v.name().to_string()));
    }
    let w = tensor_module(&dual_module(v0), v);
    let vw = tensor_module(v0, &w);
    let alphas = hom_space_with(&vw, v, Parity::Even, Strategy::default());
    let betas = hom_space_with(v, &vw, Parity::Even, Strategy::default());
    for a in &alphas {
        for b in &betas {
            let comp = a.compose(b);
            if let Some(c) = comp.scalar_value().filter(|c| !c.is_zero()) {
                let beta = b.scale(&(Rational::one() / c));
                let wit = IdealWitness {
                    label: format!("{} via {}", v.name(), v0.name()),
                    v: v.clone(),
                    v0: v0.clone(),
                    lambda0,
                    w,
                    alpha: a.clone(),
                    beta,
                };
                wit.verify()?;
                return Ok(wit);
            }
        }
    }
    Err(RepError::NotWitnessed(format!(
        "{} through {} with W = {}*⊗{} ({} alphas, {} betas, all composites zero)",
        v.name(),
        v0.name(),
        v0.name(),
        v.name(),
        alphas.len(),
        betas.len()
    )))
}

/// Witness for `V⊗U` with `W' = W⊗U`, `α' = α⊗Id_U`, `β' = β⊗Id_U`.
pub fn witness_tensor(w: &IdealWitness, u: &GModule) -> Result<IdealWitness, RepError> {
    let idu = SuperMap::identity(u.space());
    let w2 = tensor_module(&w.w, u);
    let vw2 = w.v0.space().tensor(w2.space());
    let v2 = tensor_module(&w.v, u);
    let alpha = tensor_map(&w.alpha, &idu).retype(vw2.clone(), v2.space().clone())?;
    let beta = tensor_map(&w.beta, &idu).retype(v2.space().clone(), vw2)?;
    let out = IdealWitness {
        label: format!("({})⊗{}", w.label, u.name()),
        v: v2,
        v0: w.v0.clone(),
        lambda0: w.lambda0.clone(),
        w: w2,
        alpha,
        beta,
    };
    out.verify()?;
    Ok(out)
}

/// Column/row index map from `V₀⊗Wₖ` into `V₀⊗(W₁⊕W₂)`.
fn embed_index(i0: usize, k: usize, dw1: usize, dw2: usize, summand: usize) -> usize {
    let dw = dw1 + dw2;
    i0 * dw + if summand == 0 { k } else { dw1 + k }
}

/// Witness for `V₁⊕V₂` over a shared `V₀` with `W = W₁⊕W₂` and block maps.
pub fn witness_dsum(w1: &IdealWitness, w2: &IdealWitness) -> Result<IdealWitness, RepError> {
    if w1.v0 != w2.v0 {
        return Err(RepError::InvalidWitness("direct sum needs a common V0".into()));
    }
    let (dw1, dw2) = (w1.w.dim(), w2.w.dim());
    let (dv1, dv2) = (w1.v.dim(), w2.v.dim());
    let d0 = w1.v0.dim();
    let w = direct_sum_module(&w1.w, &w2.w);
    let v = direct_sum_module(&w1.v, &w2.v);
    let vw = w1.v0.space().tensor(w.space());
    let mut alpha_t = Vec::new();
    let mut beta_t = Vec::new();
    for (summand, wit, dwk, voff) in [(0, w1, dw1, 0), (1, w2, dw2, dv1)] {
        for (i, j, x) in wit.alpha.matrix().entries() {
            let col = embed_index(j / dwk, j % dwk, dw1, dw2, summand);
            alpha_t.push((i + voff, col, x.clone()));
        }
        for (i, j, x) in wit.beta.matrix().entries() {
            let row = embed_index(i / dwk, i % dwk, dw1, dw2, summand);
            beta_t.push((row, j + voff, x.clone()));
        }
    }
    let dvw = d0 * (dw1 + dw2);
    let alpha = SuperMap::new(vw.clone(), v.space().clone(), Parity::Even, Matrix::from_triplets(dv1 + dv2, dvw, alpha_t))?;
    let beta = SuperMap::new(v.space().clone(), vw, Parity::Even, Matrix::from_triplets(dvw, dv1 + dv2, beta_t))?;
    let out = IdealWitness {
        label: format!("({})⊕({})", w1.label, w2.label),
        v,
        v0: w1.v0.clone(),
        lambda0: w1.lambda0.clone(),
        w,
        alpha,
        beta,
    };
    out.verify()?;
    Ok(out)
}

/// Witness for `op-V` with `W' = op-W`, `β' = (Id⊗σ_W)∘β∘σ_V⁻¹`, `α' = σ_V∘α∘(Id⊗σ_W⁻¹)`.
pub fn witness_parity_shift(w: &IdealWitness) -> Result<IdealWitness, RepError> {
    let (opv, sigma_v) = parity_shift_module(&w.v);
    let (opw, sigma_w) = parity_shift_module(&w.w);
    let inv = |s: &SuperMap| SuperMap::new(s.codomain().clone(), s.domain().clone(), Parity::Odd, s.matrix().clone());
    let sigma_v_inv = inv(&sigma_v)?;
    let sigma_w_inv = inv(&sigma_w)?;
    let id0 = SuperMap::identity(w.v0.space());
    let vw = w.v0.space().tensor(w.w.space());
    let vw2 = w.v0.space().tensor(opw.space());
    let beta = tensor_map(&id0, &sigma_w).retype(vw.clone(), vw2.clone())?.compose(&w.beta).compose(&sigma_v_inv);
    let alpha = sigma_v.compose(&w.alpha).compose(&tensor_map(&id0, &sigma_w_inv).retype(vw2, vw)?);
    let out = IdealWitness {
        label: format!("op({})", w.label),
        v: opv,
        v0: w.v0.clone(),
        lambda0: w.lambda0.clone(),
        w: opw,
        alpha,
        beta,
    };
    out.verify()?;
    Ok(out)
}

/// Witness for a module `V'` isomorphic to `V` through an even `g`-linear `p: V → V'`.
pub fn witness_transport(w: &IdealWitness, target: &GModule, p: &SuperMap) -> Result<IdealWitness, RepError> {
    let pinv = p
        .matrix()
        .inverse()
        .ok_or_else(|| RepError::InvalidWitness("transport map is singular".into()))?;
    let pinv = SuperMap::new(target.space().clone(), w.v.space().clone(), Parity::Even, pinv)?;
    let out = IdealWitness {
        label: format!("{} transported to {}", w.label, target.name()),
        v: target.clone(),
        v0: w.v0.clone(),
        lambda0: w.lambda0.clone(),
        w: w.w.clone(),
        alpha: p.compose(&w.alpha),
        beta: w.beta.compose(&pinv),
    };
    out.verify()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::{kac_module, standard_module};
    use crate::rootdata::{build_root_system, Family};

    fn k(a: &[i64]) -> GModule {
        let rs = build_root_system(Family::Sl, 2, 1).unwrap();
        kac_module(&rs, &Weight::from_ints(a)).unwrap()
    }

    #[test]
    fn trivial_and_searched_witnesses() {
        let k01 = k(&[0, 1]);
        let t = trivial_witness(&k01).unwrap();
        t.verify().unwrap();
        assert!(t.splitting_is_idempotent());
        let w = ideal_witness(&k(&[1, 1]), &k01).unwrap();
        assert_eq!(w.w.dim(), 32);
        assert!(w.splitting_is_idempotent());
    }

    #[test]
    fn closure_constructions() {
        let k01 = k(&[0, 1]);
        let t = trivial_witness(&k01).unwrap();
        let std = standard_module(2, 1).unwrap();
        let tt = witness_tensor(&t, &std).unwrap();
        assert_eq!(tt.v.dim(), 12);
        let ds = witness_dsum(&t, &t).unwrap();
        assert_eq!(ds.v.dim(), 8);
        let op = witness_parity_shift(&t).unwrap();
        assert_eq!(op.w.space().dims(), (0, 1));
        let nested = witness_dsum(&tt, &witness_tensor(&op, &std).unwrap()).unwrap();
        assert!(nested.splitting_is_idempotent());
    }
}
