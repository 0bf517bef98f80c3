//! The modified supertrace `str′` on modules that split through a typical
//! module, and exact checks of its trace properties.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactnum::{int, Rational};
use crate::linalg::Matrix;
use crate::par::{self, Strategy};
use crate::report::CheckRecord;
use crate::repmod::{
    end_g, hom_space_with, ideal_witness, is_g_linear, kac_module, standard_module, tensor_module, dual_module,
    trivial_witness, witness_dsum, witness_parity_shift, witness_tensor, witness_transport, CacheError, GModule,
    IdealWitness, ModuleCache, RepError,
};
use crate::rootdata::{RootError, RootSystem, Weight};
use crate::superlin::{ptr, ptr_general, str, super_permutation, tensor_map, Parity, SuperError, SuperMap, SuperSpace};

const SUITE: &str = "trace";

#[derive(Debug, Error)]
pub enum TraceError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Super(#[from] SuperError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("map is not a g-linear endomorphism of {0}")]
    NotGLinear(String),
    #[error("{label}: partial trace is not a multiple of the identity (residual {residual})")]
    NotProportional { label: String, residual: Rational },
    #[error("{label}: odd map has nonzero bracket {c}")]
    OddBracket { label: String, c: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketResult {
    pub c: Rational,
    /// Largest `|entry|` of `ptr(β∘f∘α) − c·Id`; zero whenever a result is returned.
    pub residual: Rational,
}

/// `⟨f;α;β⟩`: the scalar `c` with `ptr_W(β∘f∘α) = c·Id_{V₀}`.
pub fn bracket(f: &SuperMap, w: &IdealWitness) -> Result<BracketResult, TraceError> {
    if !f.is_endomorphism() || f.domain() != w.v.space() || !is_g_linear(f, &w.v, &w.v) {
        return Err(TraceError::NotGLinear(w.v.name().to_string()));
    }
    let inner = w.beta.compose(f).compose(&w.alpha);
    let v0 = w.v0.space();
    let reduced = ptr_general(&inner, v0, v0, w.w.space())?;
    let m = reduced.matrix();
    let c = m.get(0, 0);
    let residual = m
        .sub(&Matrix::scalar(v0.dim(), &c))
        .entries()
        .map(|(_, _, x)| x.abs())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    if !residual.is_zero() {
        return Err(TraceError::NotProportional { label: w.label.clone(), residual });
    }
    Ok(BracketResult { c, residual })
}

/// `str′_V(f) = d(V₀)·⟨f;α;β⟩`. Odd maps give 0 once their bracket is confirmed to vanish.
pub fn modified_trace(f: &SuperMap, w: &IdealWitness) -> Result<Rational, TraceError> {
    let b = bracket(f, w)?;
    if f.parity().is_odd() {
        if !b.c.is_zero() {
            return Err(TraceError::OddBracket { label: w.label.clone(), c: b.c });
        }
        return Ok(Rational::zero());
    }
    let d = w.v0.root_system().mod_sdim(&w.lambda0)?;
    Ok(d * b.c)
}

/// Whether the ordinary supertrace of `f ∈ End(V)` vanishes.
pub fn classical_str_is_zero(w: &IdealWitness, f: &SuperMap) -> bool {
    assert_eq!(f.domain(), w.v.space(), "map is not an endomorphism of the witnessed module");
    str(f).is_zero()
}

/// For `h: A⊗B → C⊗D` returns `τ_{C,D}∘h∘τ_{B,A}: B⊗A → D⊗C`.
pub fn psi_sharp(h: &SuperMap, a: &SuperSpace, b: &SuperSpace, c: &SuperSpace, d: &SuperSpace) -> Result<SuperMap, TraceError> {
    let h = h.retype(a.tensor(b), c.tensor(d))?;
    Ok(super_permutation(c, d).compose(&h).compose(&super_permutation(b, a)))
}

/// `Ψ(f) = ptr_{U′}(h∘(Id_U⊗f))` for `h: U⊗V′ → V⊗U′` and `f: U′ → V′`.
pub fn psi_apply(h: &SuperMap, f: &SuperMap, u: &SuperSpace, v: &SuperSpace) -> Result<SuperMap, TraceError> {
    let up = f.domain().clone();
    let lifted = tensor_map(&SuperMap::identity(u), f);
    Ok(ptr_general(&h.compose(&lifted), u, v, &up)?)
}

/// A module of the ideal together with every witness known for it.
#[derive(Debug, Clone)]
pub struct RosterEntry {
    pub witnesses: Vec<IdealWitness>,
}

impl RosterEntry {
    pub fn module(&self) -> &GModule {
        &self.witnesses[0].v
    }

    pub fn witness(&self) -> &IdealWitness {
        &self.witnesses[0]
    }
}

/// The modules, maps and witnesses exercised by [`verify_trace_properties`].
#[derive(Debug, Clone)]
pub struct TraceRoster {
    pub rs: RootSystem,
    pub standard: GModule,
    /// `K(λ₀)` with trivial witness.
    pub k0: RosterEntry,
    /// `K(λ₁)` with the trivial witness and a witness through `K(λ₀)`.
    pub k1: RosterEntry,
    /// `K(λ₀)⊗standard`.
    pub k0_std: RosterEntry,
    /// The parity shift of `K(λ₀)`.
    pub k0_op: RosterEntry,
    /// `K(λ₀)⊕op-K(λ₀)`.
    pub k0_sum: RosterEntry,
    /// A conjugated copy of `K(λ₀)`, transported witness and searched witness.
    pub k0_copy: RosterEntry,
    /// The isomorphism `K(λ₀) → copy`.
    pub copy_iso: SuperMap,
}

fn kac(rs: &RootSystem, lambda: &Weight, cache: Option<&ModuleCache>) -> Result<GModule, TraceError> {
    match cache {
        Some(c) => Ok(c.kac(rs, lambda)?),
        None => Ok(kac_module(rs, lambda)?),
    }
}

/// `λ₀ = (0,…,0|1,0,…)` and `λ₁` adds 1 on the first even index next to `s`.
pub fn roster_weights(rs: &RootSystem) -> (Weight, Weight) {
    let r = rs.rank();
    let s = rs.s();
    let mut a0 = vec![0i64; r];
    a0[s] = 1;
    let mut a1 = a0.clone();
    let k = if s > 0 { 0 } else { (s + 1).min(r - 1) };
    a1[k] += 1;
    (Weight::from_ints(&a0), Weight::from_ints(&a1))
}

impl TraceRoster {
    pub fn build(rs: &RootSystem, cache: Option<&ModuleCache>) -> Result<Self, TraceError> {
        let (l0, l1) = roster_weights(rs);
        let k0m = kac(rs, &l0, cache)?;
        let k1m = kac(rs, &l1, cache)?;
        let standard = standard_module(rs.m, rs.n)?;

        let w0 = trivial_witness(&k0m)?;
        let k1 = RosterEntry { witnesses: vec![trivial_witness(&k1m)?, ideal_witness(&k1m, &k0m)?] };
        let k0_std = RosterEntry { witnesses: vec![witness_tensor(&w0, &standard)?] };
        let wop = witness_parity_shift(&w0)?;
        let k0_sum = RosterEntry { witnesses: vec![witness_dsum(&w0, &wop)?] };
        let k0_op = RosterEntry { witnesses: vec![wop] };

        let d = k0m.dim();
        let p = Matrix::from_triplets(d, d, (0..d).map(|i| (i, i, int(i as i64 + 1))));
        let name = format!("{}'", k0m.name());
        let (copy, copy_iso) = k0m.conjugate(&p, name)?;
        let k0_copy = RosterEntry { witnesses: vec![witness_transport(&w0, &copy, &copy_iso)?, ideal_witness(&copy, &k0m)?] };

        Ok(TraceRoster {
            rs: rs.clone(),
            standard,
            k0: RosterEntry { witnesses: vec![w0] },
            k1,
            k0_std,
            k0_op,
            k0_sum,
            k0_copy,
            copy_iso,
        })
    }

    pub fn entries(&self) -> Vec<&RosterEntry> {
        vec![&self.k0, &self.k1, &self.k0_std, &self.k0_op, &self.k0_sum, &self.k0_copy]
    }
}

/// Random nonzero combination of `basis` with coefficients in `−3..=3`.
pub fn random_combination<R: Rng>(basis: &[SuperMap], rng: &mut R) -> Option<SuperMap> {
    if basis.is_empty() {
        return None;
    }
    loop {
        let coeffs: Vec<Rational> = basis.iter().map(|_| int(rng.gen_range(-3..=3))).collect();
        let f = SuperMap::combination(&coeffs, basis);
        if !f.is_zero() {
            return Some(f);
        }
    }
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let num: i64 = rng.gen_range(-9..=9);
    let den: i64 = rng.gen_range(1..=5);
    Rational::new(num.into(), den.into())
}

fn both_parities(u: &GModule, v: &GModule) -> [(Parity, Vec<SuperMap>); 2] {
    [Parity::Even, Parity::Odd].map(|p| (p, hom_space_with(u, v, p, Strategy::default())))
}

fn sign(a: Parity, b: Parity) -> Rational {
    crate::superlin::koszul_sign(a, b)
}

/// Evaluates a check, turning an error into a failed record.
fn check(name: &str, inputs: String, body: impl FnOnce() -> Result<(Rational, Rational), TraceError>) -> CheckRecord {
    match body() {
        Ok((expected, actual)) => CheckRecord::compare(SUITE, name, inputs, &expected, &actual),
        Err(e) => CheckRecord::error(SUITE, name, inputs, e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Group {
    Basics,
    WitnessIndependence,
    OddVanishing,
    ClassicalVanishing,
    TypicalScalar,
    Linearity,
    Cyclicity,
    TensorFactor,
    PartialTrace,
    Invariance,
}

const GROUPS: [Group; 10] = [
    Group::Basics,
    Group::WitnessIndependence,
    Group::OddVanishing,
    Group::ClassicalVanishing,
    Group::TypicalScalar,
    Group::Linearity,
    Group::Cyclicity,
    Group::TensorFactor,
    Group::PartialTrace,
    Group::Invariance,
];

/// Runs every trace check on the roster. Check groups run in parallel and
/// each group draws from its own seeded generator.
pub fn verify_trace_properties(roster: &TraceRoster, seed: u64, invariance_trials: usize) -> Vec<CheckRecord> {
    par::map_slice(&GROUPS, Strategy::default(), |&g| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(g as u64));
        match g {
            Group::Basics => basics(roster),
            Group::WitnessIndependence => witness_independence(roster),
            Group::OddVanishing => odd_vanishing(roster),
            Group::ClassicalVanishing => classical_vanishing(roster, &mut rng),
            Group::TypicalScalar => typical_scalar(roster, &mut rng),
            Group::Linearity => linearity(roster, &mut rng),
            Group::Cyclicity => cyclicity(roster, &mut rng),
            Group::TensorFactor => tensor_factor(roster, &mut rng),
            Group::PartialTrace => partial_trace(roster),
            Group::Invariance => invariance(roster, invariance_trials, &mut rng),
        }
    })
    .into_iter()
    .flatten()
    .collect()
}

fn basics(r: &TraceRoster) -> Vec<CheckRecord> {
    let w = r.k0.witness();
    let id = SuperMap::identity(w.v.space());
    let mut out = vec![
        check("bracket of identity", w.label.clone(), || Ok((Rational::one(), bracket(&id, w)?.c))),
        check("bracket of 2·identity", w.label.clone(), || Ok((int(2), bracket(&id.scale(&int(2)), w)?.c))),
    ];
    for entry in r.entries() {
        for w in &entry.witnesses {
            out.push(match w.verify() {
                Ok(()) => CheckRecord::predicate(SUITE, "witness is a g-linear splitting", w.label.clone(), w.splitting_is_idempotent()),
                Err(e) => CheckRecord::error(SUITE, "witness is a g-linear splitting", w.label.clone(), e),
            });
        }
    }
    let (a, b, c, d) = (r.k0.module().space(), r.standard.space(), r.k0.module().space(), r.standard.space());
    let idh = SuperMap::identity(&a.tensor(b));
    out.push(CheckRecord::predicate(
        SUITE,
        "psi_sharp of identity is identity",
        "Id on K⊗standard",
        psi_sharp(&idh, a, b, c, d).map(|s| s == SuperMap::identity(&b.tensor(a))).unwrap_or(false),
    ));
    out
}

fn witness_independence(r: &TraceRoster) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for entry in r.entries().into_iter().filter(|e| e.witnesses.len() >= 2) {
        for (k, f) in end_g(entry.module(), Parity::Even).iter().enumerate() {
            let first = &entry.witnesses[0];
            for other in &entry.witnesses[1..] {
                let inputs = format!("End_g({})₀ basis[{k}]: {} vs {}", entry.module().name(), first.label, other.label);
                out.push(check("witness independence", inputs, || Ok((modified_trace(f, first)?, modified_trace(f, other)?))));
            }
        }
    }
    out
}

fn odd_vanishing(r: &TraceRoster) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for entry in r.entries() {
        for (k, f) in end_g(entry.module(), Parity::Odd).iter().enumerate() {
            for w in &entry.witnesses {
                let inputs = format!("End_g({})₁ basis[{k}] via {}", entry.module().name(), w.label);
                out.push(check("odd bracket vanishes", inputs.clone(), || Ok((Rational::zero(), bracket(f, w)?.c))));
                out.push(check("str′ vanishes on odd maps", inputs, || Ok((Rational::zero(), modified_trace(f, w)?))));
            }
        }
    }
    out
}

fn classical_vanishing<R: Rng>(r: &TraceRoster, rng: &mut R) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for entry in r.entries() {
        let w = entry.witness();
        for p in [Parity::Even, Parity::Odd] {
            for (k, f) in end_g(entry.module(), p).iter().enumerate() {
                let inputs = format!("End_g({})_{} basis[{k}]", entry.module().name(), p);
                out.push(CheckRecord::predicate(SUITE, "str vanishes on End_g(V)", inputs, classical_str_is_zero(w, f)));
            }
        }
        out.push(CheckRecord::compare(SUITE, "sdim vanishes", entry.module().name(), &0i64, &entry.module().sdim()));
    }
    // Control: a generic endomorphism has nonzero supertrace and is not g-linear.
    let w = r.k0.witness();
    let f = SuperMap::random(w.v.space(), w.v.space(), Parity::Even, rng);
    out.push(CheckRecord::predicate(
        SUITE,
        "control: random endomorphism is not g-linear and has str != 0",
        format!("random even endomorphism of {}", w.v.name()),
        !is_g_linear(&f, &w.v, &w.v) && !classical_str_is_zero(w, &f),
    ));
    out
}

fn typical_scalar<R: Rng>(r: &TraceRoster, rng: &mut R) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for entry in [&r.k0, &r.k1, &r.k0_copy] {
        let v = entry.module();
        let lambda = entry.witness().lambda0.clone();
        let c = random_rational(rng);
        let f = SuperMap::scalar(v.space(), &c);
        for w in &entry.witnesses {
            let inputs = format!("{}·Id on {} via {}", c, v.name(), w.label);
            out.push(check("str′ of a scalar is d(λ)·scalar", inputs, || {
                Ok((r.rs.mod_sdim(&lambda)? * &c, modified_trace(&f, w)?))
            }));
        }
    }
    out
}

fn linearity<R: Rng>(r: &TraceRoster, rng: &mut R) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for entry in r.entries() {
        let w = entry.witness();
        for p in [Parity::Even, Parity::Odd] {
            let basis = end_g(entry.module(), p);
            if basis.is_empty() {
                continue;
            }
            let f1 = random_combination(&basis, rng).unwrap();
            let f2 = random_combination(&basis, rng).unwrap();
            let (a, b) = (random_rational(rng), random_rational(rng));
            let inputs = format!("{a}·f1 + {b}·f2 in End_g({})_{}", entry.module().name(), p);
            out.push(check("linearity", inputs, || {
                let lhs = modified_trace(&f1.scale(&a).add_scaled(&b, &f2), w)?;
                let rhs = a.clone() * modified_trace(&f1, w)? + b.clone() * modified_trace(&f2, w)?;
                Ok((rhs, lhs))
            }));
        }
    }
    out
}

fn cyclicity<R: Rng>(r: &TraceRoster, rng: &mut R) -> Vec<CheckRecord> {
    let pairs = [(&r.k0, &r.k0_copy), (&r.k0, &r.k0_op), (&r.k1, &r.k0_std), (&r.k0_sum, &r.k0_sum), (&r.k0_std, &r.k0_std)];
    let mut out = Vec::new();
    for (a, b) in pairs {
        let (v, vp) = (a.module(), b.module());
        let forward = both_parities(v, vp);
        let backward = both_parities(vp, v);
        for (pf, fs) in &forward {
            for (pg, gs) in &backward {
                let (Some(f), Some(g)) = (random_combination(fs, rng), random_combination(gs, rng)) else {
                    continue;
                };
                let inputs = format!("f: {} → {} ({pf}), g: {} → {} ({pg})", v.name(), vp.name(), vp.name(), v.name());
                out.push(check("cyclicity str′(f∘g) = ±str′(g∘f)", inputs, || {
                    let lhs = modified_trace(&f.compose(&g), b.witness())?;
                    let rhs = sign(*pf, *pg) * modified_trace(&g.compose(&f), a.witness())?;
                    Ok((rhs, lhs))
                }));
            }
        }
    }
    let inv = r.copy_iso.matrix().inverse().expect("copy isomorphism is invertible");
    let g = SuperMap::new(r.k0_copy.module().space().clone(), r.k0.module().space().clone(), Parity::Even, inv);
    out.push(check("cyclicity with mutually inverse isomorphisms", "K and its conjugated copy".into(), || {
        let g = g?;
        let lhs = modified_trace(&r.copy_iso.compose(&g), r.k0_copy.witness())?;
        let rhs = modified_trace(&g.compose(&r.copy_iso), r.k0.witness())?;
        Ok((rhs, lhs))
    }));
    out
}

fn tensor_factor<R: Rng>(r: &TraceRoster, rng: &mut R) -> Vec<CheckRecord> {
    let std = &r.standard;
    let std_end = tensor_module(std, &dual_module(std)).with_name("standard⊗standard*");
    let k0 = r.k0.module().clone();
    let mut out = Vec::new();
    for entry in [&r.k0, &r.k0_sum] {
        for u in [std, &std_end, &k0] {
            let wt = match witness_tensor(entry.witness(), u) {
                Ok(wt) => wt,
                Err(e) => {
                    out.push(CheckRecord::error(SUITE, "tensor factorization", format!("{}⊗{}", entry.module().name(), u.name()), e));
                    continue;
                }
            };
            for pf in [Parity::Even, Parity::Odd] {
                let Some(f) = random_combination(&end_g(entry.module(), pf), rng) else { continue };
                let Some(g) = random_combination(&end_g(u, Parity::Even), rng) else { continue };
                let inputs = format!("f ∈ End_g({})_{pf}, g ∈ End_g({})₀", entry.module().name(), u.name());
                out.push(check("tensor factorization str′(f⊗g) = str′(f)·str(g)", inputs.clone(), || {
                    let lhs = modified_trace(&tensor_map(&f, &g), &wt)?;
                    Ok((modified_trace(&f, entry.witness())? * str(&g), lhs))
                }));
                if u.name() == k0.name() {
                    out.push(check("tensor factor in the ideal gives zero", inputs, || {
                        Ok((Rational::zero(), modified_trace(&tensor_map(&f, &g), &wt)?))
                    }));
                }
            }
        }
    }
    let id = SuperMap::identity(&r.k0.module().space().tensor(std.space()));
    out.push(check("str′ of Id on K⊗standard", "f = Id".into(), || {
        Ok((r.rs.mod_sdim(&r.k0.witness().lambda0)? * int(std.sdim()), modified_trace(&id, r.k0_std.witness())?))
    }));
    out
}

fn partial_trace(r: &TraceRoster) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let base = r.k0.witness();
    for u in [&r.standard, r.k0.module()] {
        let wt = match witness_tensor(base, u) {
            Ok(wt) => wt,
            Err(e) => {
                out.push(CheckRecord::error(SUITE, "partial trace", u.name(), e));
                continue;
            }
        };
        for p in [Parity::Even, Parity::Odd] {
            for (k, f) in end_g(&wt.v, p).iter().enumerate() {
                let inputs = format!("End_g({}⊗{})_{p} basis[{k}]", base.v.name(), u.name());
                out.push(check("partial trace str′(f) = str′(ptr f)", inputs, || {
                    let reduced = ptr(f, base.v.space(), u.space())?;
                    Ok((modified_trace(&reduced, base)?, modified_trace(f, &wt)?))
                }));
            }
        }
    }
    out
}

fn invariance<R: Rng>(r: &TraceRoster, trials: usize, rng: &mut R) -> Vec<CheckRecord> {
    // U = U′ = K(λ₀), V = V′ = K(λ₀)⊕op-K(λ₀).
    let u = r.k0.module();
    let wv = r.k0_sum.witness();
    let v = &wv.v;
    let uv = tensor_module(u, v);
    let vu = tensor_module(v, u);
    let hs = both_parities(&uv, &vu);
    let fs = both_parities(u, v);
    let gs = both_parities(v, u);
    let mut out = Vec::new();
    let mut done = 0;
    let mut attempts = 0;
    while done < trials && attempts < 20 * trials.max(1) {
        // Odd total parity makes both sides vanish trivially, so only even patterns are drawn.
        let (ph, pf, pg) = [(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)][attempts % 4];
        attempts += 1;
        let (Some(h), Some(f), Some(g)) =
            (random_combination(&hs[ph].1, rng), random_combination(&fs[pf].1, rng), random_combination(&gs[pg].1, rng))
        else {
            continue;
        };
        done += 1;
        let inputs = format!("Ψ {}, f {}, g {} over U = {}, V = {}", h.parity(), f.parity(), g.parity(), u.name(), v.name());
        out.push(check("invariance str′(Ψ(f)∘g) = ±str′(f∘Ψ#(g))", inputs, || {
            // h: U⊗V′ → V⊗U′, h#: V′⊗U → U′⊗V.
            let hsharp = psi_sharp(&h, u.space(), v.space(), v.space(), u.space())?;
            let psi_f = psi_apply(&h, &f, u.space(), v.space())?;
            let psi_sharp_g = psi_apply(&hsharp, &g, v.space(), u.space())?;
            let lhs = modified_trace(&psi_f.compose(&g), wv)?;
            let rhs = sign(h.parity(), f.parity()) * modified_trace(&f.compose(&psi_sharp_g), wv)?;
            Ok((rhs, lhs))
        }));
        let involutive = psi_sharp(&h, u.space(), v.space(), v.space(), u.space())
            .and_then(|s| psi_sharp(&s, v.space(), u.space(), u.space(), v.space()))
            .map(|back| back == h.retype(back.domain().clone(), back.codomain().clone()).unwrap())
            .unwrap_or(false);
        out.push(CheckRecord::predicate(SUITE, "psi_sharp is involutive", format!("h of parity {}", h.parity()), involutive));
    }
    if done < trials {
        out.push(CheckRecord::predicate(SUITE, "invariance trials", format!("{done} of {trials} triples found"), false));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_system, Family};
    use std::sync::OnceLock;

    fn roster() -> &'static TraceRoster {
        static R: OnceLock<TraceRoster> = OnceLock::new();
        R.get_or_init(|| {
            let rs = build_root_system(Family::Sl, 2, 1).unwrap();
            TraceRoster::build(&rs, None).unwrap()
        })
    }

    #[test]
    fn identity_traces() {
        let r = roster();
        let id = |e: &RosterEntry| SuperMap::identity(e.module().space());
        assert_eq!(modified_trace(&id(&r.k0), r.k0.witness()).unwrap(), Rational::new(1.into(), 2.into()));
        for w in &r.k1.witnesses {
            assert_eq!(modified_trace(&id(&r.k1), w).unwrap(), Rational::new(2.into(), 3.into()));
        }
        assert_eq!(modified_trace(&id(&r.k0_op), r.k0_op.witness()).unwrap(), Rational::new((-1).into(), 2.into()));
        assert_eq!(modified_trace(&id(&r.k0_sum), r.k0_sum.witness()).unwrap(), Rational::zero());
    }

    #[test]
    fn non_linear_map_is_rejected() {
        let r = roster();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = SuperMap::random(r.k0.module().space(), r.k0.module().space(), Parity::Even, &mut rng);
        assert!(matches!(bracket(&f, r.k0.witness()), Err(TraceError::NotGLinear(_))));
    }

    #[test]
    fn psi_sharp_is_an_involution_on_random_maps() {
        let a = SuperSpace::standard(1, 1);
        let b = SuperSpace::standard(2, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let h = SuperMap::random(&a.tensor(&b), &b.tensor(&a), Parity::Even, &mut rng);
        let s = psi_sharp(&h, &a, &b, &b, &a).unwrap();
        assert_eq!(psi_sharp(&s, &b, &a, &a, &b).unwrap(), h);
    }

    #[test]
    fn all_trace_checks_pass() {
        let checks = verify_trace_properties(roster(), 7, 10);
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert!(checks.len() > 40);
    }
}
