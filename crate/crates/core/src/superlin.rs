//! ℤ₂-graded linear algebra: super-spaces, parity-tagged maps, the Koszul
//! signed tensor product, duality morphisms, supertrace and partial supertrace.
//!
//! Tensor bases are ordered left-factor-major. Every sign is computed from the
//! stored basis parities, never from index positions.

use std::fmt;
use std::ops::Add;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{int, Rational};
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: usize) -> Self {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Self {
        Parity::from_bit(self.bit() + 1)
    }

    /// `(-1)^p`.
    pub fn sign(self) -> Rational {
        int(if self.is_odd() { -1 } else { 1 })
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// True when `(-1)^{a·b} = -1`.
pub fn koszul(a: Parity, b: Parity) -> bool {
    a.is_odd() && b.is_odd()
}

/// `(-1)^{a·b}` as a rational.
pub fn koszul_sign(a: Parity, b: Parity) -> Rational {
    int(if koszul(a, b) { -1 } else { 1 })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuperError {
    #[error("map is not homogeneous of parity {parity}: entry ({row},{col}) links parities {codomain} and {domain}")]
    NotHomogeneous { parity: Parity, row: usize, col: usize, codomain: Parity, domain: Parity },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("factor dimensions {factors:?} inconsistent with a space of dimension {dim}")]
    Factorization { factors: Vec<usize>, dim: usize },
    #[error("parities of the given factors do not reproduce the space")]
    FactorParities,
}

/// A based super-space given by the parity of each basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SuperSpace {
    parities: Vec<Parity>,
}

impl SuperSpace {
    pub fn new(parities: Vec<Parity>) -> Self {
        SuperSpace { parities }
    }

    /// `ℂ^{m|n}`: `m` even basis vectors followed by `n` odd ones.
    pub fn standard(m: usize, n: usize) -> Self {
        let mut p = vec![Parity::Even; m];
        p.extend(std::iter::repeat(Parity::Odd).take(n));
        SuperSpace { parities: p }
    }

    /// The ground field `ℂ^{1|0}`.
    pub fn unit() -> Self {
        Self::standard(1, 0)
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    /// `(dim V₀, dim V₁)`.
    pub fn dims(&self) -> (usize, usize) {
        let odd = self.parities.iter().filter(|p| p.is_odd()).count();
        (self.dim() - odd, odd)
    }

    pub fn sdim(&self) -> i64 {
        let (e, o) = self.dims();
        e as i64 - o as i64
    }

    pub fn tensor(&self, other: &SuperSpace) -> SuperSpace {
        tensor_space(self, other)
    }

    pub fn direct_sum(&self, other: &SuperSpace) -> SuperSpace {
        let mut p = self.parities.clone();
        p.extend_from_slice(&other.parities);
        SuperSpace { parities: p }
    }
}

pub fn tensor_space(u: &SuperSpace, v: &SuperSpace) -> SuperSpace {
    let mut p = Vec::with_capacity(u.dim() * v.dim());
    for &a in &u.parities {
        for &b in &v.parities {
            p.push(a + b);
        }
    }
    SuperSpace { parities: p }
}

/// Dual basis vectors keep their parities.
pub fn dual_space(v: &SuperSpace) -> SuperSpace {
    v.clone()
}

/// A homogeneous linear map between based super-spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperMap {
    domain: SuperSpace,
    codomain: SuperSpace,
    parity: Parity,
    matrix: Matrix,
}

impl SuperMap {
    /// Checks shape and homogeneity.
    pub fn new(domain: SuperSpace, codomain: SuperSpace, parity: Parity, matrix: Matrix) -> Result<Self, SuperError> {
        if matrix.nrows() != codomain.dim() || matrix.ncols() != domain.dim() {
            return Err(SuperError::Shape(format!(
                "matrix {}x{} for map of dimension {} -> {}",
                matrix.nrows(),
                matrix.ncols(),
                domain.dim(),
                codomain.dim()
            )));
        }
        for (i, j, _) in matrix.entries() {
            if codomain.parity(i) != domain.parity(j) + parity {
                return Err(SuperError::NotHomogeneous {
                    parity,
                    row: i,
                    col: j,
                    codomain: codomain.parity(i),
                    domain: domain.parity(j),
                });
            }
        }
        Ok(SuperMap { domain, codomain, parity, matrix })
    }

    /// Constructor for internally produced maps whose homogeneity holds by construction.
    pub(crate) fn new_unchecked(domain: SuperSpace, codomain: SuperSpace, parity: Parity, matrix: Matrix) -> Self {
        debug_assert!(Self::new(domain.clone(), codomain.clone(), parity, matrix.clone()).is_ok());
        SuperMap { domain, codomain, parity, matrix }
    }

    /// Splits an arbitrary matrix into its even and odd homogeneous parts.
    pub fn homogeneous_parts(domain: &SuperSpace, codomain: &SuperSpace, matrix: &Matrix) -> (SuperMap, SuperMap) {
        let part = |p: Parity| {
            let m = matrix.map_entries(|i, j, x| {
                if codomain.parity(i) == domain.parity(j) + p {
                    x.clone()
                } else {
                    Rational::zero()
                }
            });
            SuperMap::new_unchecked(domain.clone(), codomain.clone(), p, m)
        };
        (part(Parity::Even), part(Parity::Odd))
    }

    pub fn identity(v: &SuperSpace) -> Self {
        Self::scalar(v, &Rational::one())
    }

    pub fn scalar(v: &SuperSpace, c: &Rational) -> Self {
        SuperMap { domain: v.clone(), codomain: v.clone(), parity: Parity::Even, matrix: Matrix::scalar(v.dim(), c) }
    }

    pub fn zero(domain: &SuperSpace, codomain: &SuperSpace, parity: Parity) -> Self {
        SuperMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            parity,
            matrix: Matrix::zeros(codomain.dim(), domain.dim()),
        }
    }

    pub fn domain(&self) -> &SuperSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &SuperSpace {
        &self.codomain
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    /// Re-labels the parity tag. Only valid for the zero map or when
    /// homogeneity is preserved.
    pub fn with_parity(&self, parity: Parity) -> Result<Self, SuperError> {
        Self::new(self.domain.clone(), self.codomain.clone(), parity, self.matrix.clone())
    }

    /// Same matrix over new (parity-compatible) spaces.
    pub fn retype(&self, domain: SuperSpace, codomain: SuperSpace) -> Result<Self, SuperError> {
        Self::new(domain, codomain, self.parity, self.matrix.clone())
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &SuperMap) -> SuperMap {
        assert_eq!(self.domain, g.codomain, "composition of incompatible maps");
        SuperMap {
            domain: g.domain.clone(),
            codomain: self.codomain.clone(),
            parity: self.parity + g.parity,
            matrix: self.matrix.mul(&g.matrix),
        }
    }

    fn same_type(&self, other: &SuperMap) {
        assert_eq!(self.domain, other.domain, "domain mismatch");
        assert_eq!(self.codomain, other.codomain, "codomain mismatch");
    }

    fn sum_parity(&self, other: &SuperMap) -> Parity {
        if self.is_zero() {
            other.parity
        } else if other.is_zero() || self.parity == other.parity {
            self.parity
        } else {
            panic!("sum of nonzero maps of different parity is not homogeneous")
        }
    }

    pub fn add(&self, other: &SuperMap) -> SuperMap {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn sub(&self, other: &SuperMap) -> SuperMap {
        self.add_scaled(&-Rational::one(), other)
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: &Rational, other: &SuperMap) -> SuperMap {
        self.same_type(other);
        let parity = self.sum_parity(other);
        SuperMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            parity,
            matrix: self.matrix.add_scaled(c, &other.matrix),
        }
    }

    pub fn scale(&self, c: &Rational) -> SuperMap {
        SuperMap { matrix: self.matrix.scale(c), ..self.clone() }
    }

    /// Linear combination `Σ cᵢ·fᵢ` of maps sharing domain, codomain and parity.
    pub fn combination(coeffs: &[Rational], maps: &[SuperMap]) -> SuperMap {
        assert!(!maps.is_empty() && coeffs.len() == maps.len());
        let mut acc = SuperMap::zero(&maps[0].domain, &maps[0].codomain, maps[0].parity);
        for (c, f) in coeffs.iter().zip(maps) {
            acc = acc.add_scaled(c, f);
        }
        acc
    }

    /// `Some(c)` iff the map is `c·Id`.
    pub fn scalar_value(&self) -> Option<Rational> {
        if !self.is_endomorphism() {
            return None;
        }
        self.matrix.scalar_multiple_of_identity()
    }

    /// Random homogeneous map with small integer entries, about `density` nonzero.
    pub fn random<R: Rng>(domain: &SuperSpace, codomain: &SuperSpace, parity: Parity, rng: &mut R) -> SuperMap {
        let mut entries = Vec::new();
        for i in 0..codomain.dim() {
            for j in 0..domain.dim() {
                if codomain.parity(i) == domain.parity(j) + parity {
                    let x: i64 = rng.gen_range(-3..=3);
                    if x != 0 {
                        entries.push((i, j, int(x)));
                    }
                }
            }
        }
        let matrix = Matrix::from_triplets(codomain.dim(), domain.dim(), entries);
        SuperMap::new_unchecked(domain.clone(), codomain.clone(), parity, matrix)
    }
}

/// `(f⊗g)(x⊗y) = (-1)^{p(g)p(x)} f(x)⊗g(y)`.
pub fn tensor_map(f: &SuperMap, g: &SuperMap) -> SuperMap {
    let pg = g.parity;
    let dom = &f.domain;
    let matrix = f.matrix.kron_signed(&g.matrix, |jf, _| koszul(pg, dom.parity(jf)));
    SuperMap {
        domain: tensor_space(&f.domain, &g.domain),
        codomain: tensor_space(&f.codomain, &g.codomain),
        parity: f.parity + g.parity,
        matrix,
    }
}

/// `τ_{U,V}(u⊗v) = (-1)^{p(u)p(v)} v⊗u`.
pub fn super_permutation(u: &SuperSpace, v: &SuperSpace) -> SuperMap {
    let (du, dv) = (u.dim(), v.dim());
    let entries = (0..du).flat_map(|i| {
        (0..dv).map(move |j| {
            let s = if koszul(u.parity(i), v.parity(j)) { -1 } else { 1 };
            (j * du + i, i * dv + j, int(s))
        })
    });
    SuperMap {
        domain: tensor_space(u, v),
        codomain: tensor_space(v, u),
        parity: Parity::Even,
        matrix: Matrix::from_triplets(du * dv, du * dv, entries),
    }
}

/// `f*(φ) = (-1)^{p(f)p(φ)} φ∘f`, as a map `W* → V*` for `f: V → W`.
pub fn super_transpose(f: &SuperMap) -> SuperMap {
    let pf = f.parity;
    let dom = &f.domain;
    // Entry (j,i) of f* is (-1)^{p(f)·p(w_i*)} f_{ij}, and p(w_i*) = p(v_j) + p(f).
    let matrix = f.matrix.transpose().map_entries(|j, _, x| {
        let p_phi = dom.parity(j) + pf;
        if koszul(pf, p_phi) {
            -x.clone()
        } else {
            x.clone()
        }
    });
    SuperMap { domain: dual_space(&f.codomain), codomain: dual_space(&f.domain), parity: pf, matrix }
}

/// Left evaluation `V*⊗V → ℂ`, `φ⊗x ↦ φ(x)`.
pub fn ev(v: &SuperSpace) -> SuperMap {
    let d = v.dim();
    let entries = (0..d).map(|i| (0, i * d + i, Rational::one()));
    SuperMap {
        domain: tensor_space(&dual_space(v), v),
        codomain: SuperSpace::unit(),
        parity: Parity::Even,
        matrix: Matrix::from_triplets(1, d * d, entries),
    }
}

/// Right evaluation `V⊗V* → ℂ`, `x⊗φ ↦ (-1)^{p(φ)p(x)} φ(x)`.
pub fn ev_right(v: &SuperSpace) -> SuperMap {
    let d = v.dim();
    let entries = (0..d).map(|i| (0, i * d + i, v.parity(i).sign()));
    SuperMap {
        domain: tensor_space(v, &dual_space(v)),
        codomain: SuperSpace::unit(),
        parity: Parity::Even,
        matrix: Matrix::from_triplets(1, d * d, entries),
    }
}

/// `ℂ → V⊗V*`, `1 ↦ Σ vᵢ⊗vᵢ*`.
pub fn coev(v: &SuperSpace) -> SuperMap {
    let d = v.dim();
    let entries = (0..d).map(|i| (i * d + i, 0, Rational::one()));
    SuperMap {
        domain: SuperSpace::unit(),
        codomain: tensor_space(v, &dual_space(v)),
        parity: Parity::Even,
        matrix: Matrix::from_triplets(d * d, 1, entries),
    }
}

/// `ℂ → V*⊗V`, `1 ↦ Σ (-1)^{p(vᵢ)} vᵢ*⊗vᵢ`, the partner of [`ev_right`].
pub fn coev_right(v: &SuperSpace) -> SuperMap {
    let d = v.dim();
    let entries = (0..d).map(|i| (i * d + i, 0, v.parity(i).sign()));
    SuperMap {
        domain: SuperSpace::unit(),
        codomain: tensor_space(&dual_space(v), v),
        parity: Parity::Even,
        matrix: Matrix::from_triplets(d * d, 1, entries),
    }
}

/// `Σᵢ (-1)^{p(vᵢ)} fᵢᵢ`.
pub fn str(f: &SuperMap) -> Rational {
    assert!(f.is_endomorphism(), "supertrace of a non-endomorphism");
    let mut s = Rational::zero();
    for i in 0..f.domain.dim() {
        let x = f.matrix.get(i, i);
        if f.domain.parity(i).is_odd() {
            s -= x;
        } else {
            s += x;
        }
    }
    s
}

/// Checks that `space` is `left ⊗ right` in the left-major order.
fn check_factorization(space: &SuperSpace, left: &SuperSpace, right: &SuperSpace) -> Result<(), SuperError> {
    if left.dim() * right.dim() != space.dim() {
        return Err(SuperError::Factorization { factors: vec![left.dim(), right.dim()], dim: space.dim() });
    }
    if tensor_space(left, right) != *space {
        return Err(SuperError::FactorParities);
    }
    Ok(())
}

/// Partial supertrace over the right factor `c` of `h: A⊗C → B⊗C`:
/// `ptr(h)_{a,b} = Σ_k (-1)^{p(c_k)} h_{(a,k),(b,k)}`.
pub fn ptr_general(h: &SuperMap, a: &SuperSpace, b: &SuperSpace, c: &SuperSpace) -> Result<SuperMap, SuperError> {
    check_factorization(&h.domain, a, c)?;
    check_factorization(&h.codomain, b, c)?;
    let dc = c.dim();
    let mut entries = Vec::new();
    for (row, col, x) in h.matrix.entries() {
        let (ib, kr) = (row / dc, row % dc);
        let (ja, kc) = (col / dc, col % dc);
        if kr == kc {
            let v = if c.parity(kr).is_odd() { -x.clone() } else { x.clone() };
            entries.push((ib, ja, v));
        }
    }
    Ok(SuperMap::new_unchecked(a.clone(), b.clone(), h.parity, Matrix::from_triplets(b.dim(), a.dim(), entries)))
}

/// Partial supertrace of an endomorphism of `U⊗V` over `V`.
pub fn ptr(f: &SuperMap, u: &SuperSpace, v: &SuperSpace) -> Result<SuperMap, SuperError> {
    ptr_general(f, u, u, v)
}

/// `(Id_B⊗ev_right)∘(h⊗Id_{C*})∘(Id_A⊗coev)`, composed literally.
pub fn ptr_categorical(h: &SuperMap, a: &SuperSpace, b: &SuperSpace, c: &SuperSpace) -> Result<SuperMap, SuperError> {
    check_factorization(&h.domain, a, c)?;
    check_factorization(&h.codomain, b, c)?;
    let cd = dual_space(c);
    let first = tensor_map(&SuperMap::identity(a), &coev(c));
    let h_ext = tensor_map(h, &SuperMap::identity(&cd)).retype(first.codomain.clone(), tensor_space(b, &tensor_space(c, &cd)))?;
    let last = tensor_map(&SuperMap::identity(b), &ev_right(c));
    let out = last.compose(&h_ext).compose(&first);
    out.retype(a.clone(), b.clone())
}

/// The parity-flipped space and the odd isomorphism `σ_V: V → op-V`.
pub fn parity_shift(v: &SuperSpace) -> (SuperSpace, SuperMap) {
    let op = SuperSpace::new(v.parities.iter().map(|p| p.flip()).collect());
    let sigma = SuperMap::new_unchecked(v.clone(), op.clone(), Parity::Odd, Matrix::identity(v.dim()));
    (op, sigma)
}

/// Block inclusion of the `k`-th summand of a direct sum.
pub fn inclusion(summands: &[&SuperSpace], k: usize) -> SuperMap {
    let total = summands.iter().skip(1).fold(summands[0].clone(), |acc, s| acc.direct_sum(s));
    let offset: usize = summands[..k].iter().map(|s| s.dim()).sum();
    let d = summands[k].dim();
    let m = Matrix::from_triplets(total.dim(), d, (0..d).map(|i| (offset + i, i, Rational::one())));
    SuperMap::new_unchecked(summands[k].clone(), total, Parity::Even, m)
}

/// Block projection onto the `k`-th summand of a direct sum.
pub fn projection(summands: &[&SuperSpace], k: usize) -> SuperMap {
    let inc = inclusion(summands, k);
    SuperMap::new_unchecked(inc.codomain.clone(), inc.domain.clone(), Parity::Even, inc.matrix.transpose())
}

/// `f ⊕ g` as a block-diagonal map.
pub fn direct_sum_map(f: &SuperMap, g: &SuperMap) -> SuperMap {
    let parity = f.sum_parity(g);
    SuperMap::new_unchecked(
        f.domain.direct_sum(&g.domain),
        f.codomain.direct_sum(&g.codomain),
        parity,
        f.matrix.direct_sum(&g.matrix),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c21() -> SuperSpace {
        SuperSpace::standard(2, 1)
    }

    #[test]
    fn tensor_space_counts() {
        let t = tensor_space(&c21(), &c21());
        assert_eq!(t.dim(), 9);
        assert_eq!(t.dims(), (5, 4));
        assert_eq!(tensor_space(&SuperSpace::standard(1, 1), &SuperSpace::standard(1, 1)).dims(), (2, 2));
        assert_eq!(tensor_space(&SuperSpace::unit(), &SuperSpace::unit()).dims(), (1, 0));
    }

    #[test]
    fn odd_swap_tensor_sign() {
        let v = SuperSpace::standard(1, 1);
        let g = SuperMap::new(v.clone(), v.clone(), Parity::Odd, Matrix::from_triplets(2, 2, [(0, 1, int(1)), (1, 0, int(1))])).unwrap();
        let t = tensor_map(&SuperMap::identity(&v), &g);
        // x = v_1 (odd): (Id⊗g)(v_1⊗v_0) = -v_1⊗v_1.
        assert_eq!(t.matrix().get(3, 2), int(-1));
        assert_eq!(t.matrix().get(1, 0), int(1));
    }

    #[test]
    fn permutation_signs() {
        let odd = SuperSpace::standard(0, 1);
        assert_eq!(super_permutation(&odd, &odd).matrix().get(0, 0), int(-1));
        let p = super_permutation(&c21(), &c21());
        assert_eq!(p.compose(&p), SuperMap::identity(&tensor_space(&c21(), &c21())));
    }

    #[test]
    fn duality_zigzags() {
        for v in [c21(), SuperSpace::standard(1, 2), SuperSpace::new(vec![Parity::Odd, Parity::Even, Parity::Odd])] {
            let id = SuperMap::identity(&v);
            let idd = SuperMap::identity(&dual_space(&v));
            let a = tensor_map(&id, &ev(&v)).compose(&tensor_map(&coev(&v), &id).retype(v.clone(), tensor_space(&v, &tensor_space(&v, &v))).unwrap());
            assert_eq!(a.matrix(), &Matrix::identity(v.dim()));
            let b = tensor_map(&ev(&v), &idd).compose(&tensor_map(&idd, &coev(&v)));
            assert_eq!(b.matrix(), &Matrix::identity(v.dim()));
            let c = tensor_map(&ev_right(&v), &id).compose(&tensor_map(&id, &coev_right(&v)));
            assert_eq!(c.matrix(), &Matrix::identity(v.dim()));
            assert_eq!(ev_right(&v).compose(&coev(&v)).matrix().get(0, 0), int(v.sdim()));
        }
    }

    #[test]
    fn supertrace_and_ptr() {
        assert_eq!(str(&SuperMap::identity(&c21())), int(1));
        assert_eq!(str(&SuperMap::identity(&SuperSpace::standard(2, 2))), int(0));
        let u = c21();
        let uv = tensor_space(&u, &u);
        assert_eq!(ptr(&SuperMap::identity(&uv), &u, &u).unwrap(), SuperMap::identity(&u));
        let o = SuperSpace::standard(0, 1);
        assert_eq!(ptr(&SuperMap::identity(&tensor_space(&u, &o)), &u, &o).unwrap(), SuperMap::scalar(&u, &int(-1)));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [Parity::Even, Parity::Odd] {
            let f = SuperMap::random(&uv, &uv, p, &mut rng);
            let direct = ptr(&f, &u, &u).unwrap();
            assert_eq!(direct, ptr_categorical(&f, &u, &u, &u).unwrap());
            assert_eq!(str(&direct), str(&f));
        }
        assert!(ptr(&SuperMap::identity(&uv), &u, &o).is_err());
    }

    #[test]
    fn transpose_rules() {
        let v = c21();
        assert_eq!(super_transpose(&SuperMap::identity(&v)), SuperMap::identity(&v));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = SuperMap::random(&v, &v, Parity::Odd, &mut rng);
        let g = SuperMap::random(&v, &v, Parity::Odd, &mut rng);
        let lhs = super_transpose(&f.compose(&g));
        let rhs = super_transpose(&g).compose(&super_transpose(&f));
        assert!(lhs.add(&rhs).is_zero());
        let e = SuperMap::random(&v, &v, Parity::Even, &mut rng);
        assert_eq!(super_transpose(&e).matrix(), &e.matrix().transpose());
    }

    #[test]
    fn parity_shift_basics() {
        let (op, s) = parity_shift(&c21());
        assert_eq!(op.dims(), (1, 2));
        assert_eq!(s.parity(), Parity::Odd);
        assert_eq!(op.sdim(), -1);
        let (_, back) = parity_shift(&op);
        let ss = back.compose(&s);
        assert_eq!(ss.parity(), Parity::Even);
        assert_eq!(ss, SuperMap::identity(&c21()));
    }

    #[test]
    fn homogeneity_rejected() {
        let v = c21();
        let bad = Matrix::from_triplets(3, 3, [(2, 0, int(1))]);
        assert!(SuperMap::new(v.clone(), v, Parity::Even, bad).is_err());
    }
}
