//! Kac modules `K(λ) = Λ(g₋₁) ⊗ V₀(λ)` for `sl(m|n)`.
//!
//! `V₀(λ)` is the simple `gl(m)⊕gl(n)` module generated by a highest weight
//! vector inside tensor powers of the two standard representations, shifted
//! by a scalar on the `gl(m)` Cartan. The odd lowering part
//! `g₋₁ = span{E_cd : c ≥ m > d}` acts by wedge multiplication and the odd
//! raising part is computed through `z·(y ξ) = [z,y]·ξ − y·(z·ξ)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactnum::{int, Rational};
use crate::linalg::{axpy, sparse_from_pairs, Matrix, RowEchelon, SparseVec};
use crate::rootdata::{RootSystem, Weight};
use crate::superlin::{Parity, SuperSpace};

use super::{fmt_weight, GModule, RepError};

/// `gl(m|n)` diagonal data lifting an `sl(m|n)` weight: a partition for each
/// even block plus a scalar added to every `E_aa` with `a < m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlWeight {
    pub upper: Vec<usize>,
    pub lower: Vec<usize>,
    pub shift: Rational,
}

impl GlWeight {
    /// `upper_i = Σ_{j≥i} a_j` over the even indices of the first block,
    /// `lower_j = Σ_{k≥j} a_{m+k}`, and `shift = a_s − lower_1`.
    pub fn lift(rs: &RootSystem, lambda: &Weight) -> Result<Self, RepError> {
        let (m, n) = (rs.m, rs.n);
        let nat = |x: &Rational| -> Result<usize, RepError> {
            if x.is_integer() && *x >= Rational::zero() {
                Ok(x.to_integer().try_into().map_err(|_| RepError::NotDominant(fmt_weight(rs, lambda)))?)
            } else {
                Err(RepError::NotDominant(fmt_weight(rs, lambda)))
            }
        };
        let mut upper = vec![0usize; m];
        for i in (0..m.saturating_sub(1)).rev() {
            upper[i] = upper[i + 1] + nat(&lambda.a[i])?;
        }
        let mut lower = vec![0usize; n];
        for j in (0..n.saturating_sub(1)).rev() {
            lower[j] = lower[j + 1] + nat(&lambda.a[m + j])?;
        }
        let shift = &lambda.a[m - 1] - int(lower[0] as i64);
        Ok(GlWeight { upper, lower, shift })
    }
}

/// Simple `gl(k)` module of highest weight `partition`, with the matrices of every `E_ab`.
struct GlIrrep {
    dim: usize,
    /// `images[a][b][v]` is `E_ab · v` in the irrep basis.
    images: Vec<Vec<Vec<SparseVec>>>,
}

fn conjugate_partition(p: &[usize]) -> Vec<usize> {
    let top = p.first().copied().unwrap_or(0);
    (0..top).map(|c| p.iter().filter(|&&x| x > c).count()).collect()
}

fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    if k == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (perm, odd) in permutations(k - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, k - 1);
            // Inserting the largest element at `pos` adds `len - pos` inversions.
            out.push((p, odd ^ ((perm.len() - pos) % 2 == 1)));
        }
    }
    out
}

/// Action of `E_ab` on a vector of `(ℂ^k)^{⊗N}`; index digits are base `k`, slot 0 most significant.
fn tensor_power_act(k: usize, slots: usize, a: usize, b: usize, v: &SparseVec) -> SparseVec {
    let mut pairs = Vec::new();
    for (idx, x) in v {
        let mut rest = *idx;
        let mut place = 1usize;
        for _ in 0..slots {
            let digit = rest % k;
            if digit == b {
                let new = idx - b * place + a * place;
                pairs.push((new, x.clone()));
            }
            rest /= k;
            place *= k;
        }
    }
    sparse_from_pairs(pairs)
}

impl GlIrrep {
    fn new(k: usize, partition: &[usize]) -> Self {
        let slots: usize = partition.iter().sum();
        let cols = conjugate_partition(partition);
        // Highest weight vector: tensor product of column antisymmetrizers.
        let mut hw: BTreeMap<usize, Rational> = BTreeMap::new();
        hw.insert(0, Rational::one());
        for &c in &cols {
            let mut next = BTreeMap::new();
            let perms = permutations(c);
            for (idx, x) in &hw {
                for (perm, odd) in &perms {
                    let mut id = *idx;
                    for &p in perm {
                        id = id * k + p;
                    }
                    let val = if *odd { -x.clone() } else { x.clone() };
                    *next.entry(id).or_insert_with(Rational::zero) += val;
                }
            }
            hw = next;
        }
        let hw: SparseVec = hw.into_iter().filter(|(_, x)| !x.is_zero()).collect();

        let mut ech = RowEchelon::new(k.pow(slots as u32));
        let mut queue = vec![hw];
        while let Some(v) = queue.pop() {
            if ech.insert(v.clone()) {
                for a in 0..k.saturating_sub(1) {
                    let w = tensor_power_act(k, slots, a + 1, a, &v);
                    if !w.is_empty() {
                        queue.push(w);
                    }
                }
            }
        }
        let basis: Vec<SparseVec> = ech.rows().cloned().collect();
        let pivot_index: BTreeMap<usize, usize> = ech.pivot_columns().enumerate().map(|(i, c)| (c, i)).collect();
        let images = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        basis
                            .iter()
                            .map(|v| {
                                let w = tensor_power_act(k, slots, a, b, v);
                                let coords = ech.coordinates(&w).expect("irrep is closed under gl(k)");
                                sparse_from_pairs(coords.into_iter().map(|(c, x)| (pivot_index[&c], x)))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        GlIrrep { dim: basis.len(), images }
    }
}

/// Dimension of the simple `gl(k)` module with the given highest weight partition.
pub fn gl_irrep_dim(k: usize, partition: &[usize]) -> usize {
    GlIrrep::new(k, partition).dim
}

/// `gl(m|n)` element as a sparse combination of elementary matrices.
type GlElem = Vec<((usize, usize), Rational)>;

struct KacBuilder {
    m: usize,
    v0_dim: usize,
    upper: GlIrrep,
    lower: GlIrrep,
    shift: Rational,
    ys: Vec<(usize, usize)>,
}

type KVec = BTreeMap<(u32, usize), Rational>;

fn add_into(acc: &mut KVec, key: (u32, usize), x: Rational) {
    if x.is_zero() {
        return;
    }
    let e = acc.entry(key).or_insert_with(Rational::zero);
    *e += x;
    if e.is_zero() {
        acc.remove(&key);
    }
}

impl KacBuilder {
    fn p(&self, a: usize) -> usize {
        usize::from(a >= self.m)
    }

    /// `[E_ab, E_cd] = δ_bc E_ad − (−1)^{(p_a+p_b)(p_c+p_d)} δ_da E_cb`.
    fn bracket(&self, (a, b): (usize, usize), (c, d): (usize, usize)) -> GlElem {
        let px = (self.p(a) + self.p(b)) % 2;
        let py = (self.p(c) + self.p(d)) % 2;
        let mut out: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        if b == c {
            *out.entry((a, d)).or_insert_with(Rational::zero) += Rational::one();
        }
        if d == a {
            let s = if px * py == 1 { 1 } else { -1 };
            *out.entry((c, b)).or_insert_with(Rational::zero) += int(s);
        }
        out.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    fn y_index(&self, e: (usize, usize)) -> usize {
        self.ys.iter().position(|&y| y == e).expect("element of the odd lowering part")
    }

    /// Sorts a product of odd lowering elements into a wedge monomial.
    fn wedge(seq: &[usize]) -> Option<(u32, bool)> {
        let mut mask = 0u32;
        let mut odd = false;
        for (i, &x) in seq.iter().enumerate() {
            if mask & (1 << x) != 0 {
                return None;
            }
            mask |= 1 << x;
            odd ^= seq[i + 1..].iter().filter(|&&y| y < x).count() % 2 == 1;
        }
        Some((mask, odd))
    }

    fn bits(mask: u32) -> Vec<usize> {
        (0..32).filter(|i| mask & (1 << i) != 0).collect()
    }

    /// `E_ab` on `V₀` for `(a, b)` in one of the two even blocks.
    fn v0_act(&self, (a, b): (usize, usize), v: usize) -> SparseVec {
        let dl = self.lower.dim;
        let (iu, il) = (v / dl, v % dl);
        if a < self.m {
            let mut out: SparseVec =
                self.upper.images[a][b][iu].iter().map(|(j, x)| (j * dl + il, x.clone())).collect();
            if a == b {
                out = axpy(&out, &self.shift, &vec![(v, Rational::one())]);
            }
            out
        } else {
            let (a, b) = (a - self.m, b - self.m);
            self.lower.images[a][b][il].iter().map(|(j, x)| (iu * dl + j, x.clone())).collect()
        }
    }

    fn act(&self, e: (usize, usize), mask: u32, v: usize) -> KVec {
        let (a, b) = e;
        match (a < self.m, b < self.m) {
            (false, true) => self.act_lower(e, mask, v),
            (true, false) => self.act_raise(e, mask, v),
            _ => self.act_even(e, mask, v),
        }
    }

    fn act_lower(&self, e: (usize, usize), mask: u32, v: usize) -> KVec {
        let j = self.y_index(e);
        let mut out = KVec::new();
        if mask & (1 << j) == 0 {
            let before = (mask & ((1u32 << j) - 1)).count_ones();
            let s = if before % 2 == 1 { -1 } else { 1 };
            out.insert((mask | (1 << j), v), int(s));
        }
        out
    }

    fn act_even(&self, e: (usize, usize), mask: u32, v: usize) -> KVec {
        let mut out = KVec::new();
        let s = Self::bits(mask);
        for t in 0..s.len() {
            for (y, c) in self.bracket(e, self.ys[s[t]]) {
                let mut seq = s.clone();
                seq[t] = self.y_index(y);
                if let Some((m2, odd)) = Self::wedge(&seq) {
                    add_into(&mut out, (m2, v), if odd { -c.clone() } else { c.clone() });
                }
            }
        }
        for (w, x) in self.v0_act(e, v) {
            add_into(&mut out, (mask, w), x);
        }
        out
    }

    fn act_raise(&self, z: (usize, usize), mask: u32, v: usize) -> KVec {
        let mut out = KVec::new();
        if mask == 0 {
            return out;
        }
        let i1 = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i1);
        for (g, c) in self.bracket(z, self.ys[i1]) {
            for (key, x) in self.act_even(g, rest, v) {
                add_into(&mut out, key, &c * x);
            }
        }
        for ((m2, w), x) in self.act_raise(z, rest, v) {
            for (key, y) in self.act_lower(self.ys[i1], m2, w) {
                add_into(&mut out, key, -(&x * y));
            }
        }
        out
    }

    fn matrix(&self, elem: &GlElem, dim: usize) -> Matrix {
        let mut triplets = Vec::new();
        for mask in 0..(1u32 << self.ys.len()) {
            for v in 0..self.v0_dim {
                let col = mask as usize * self.v0_dim + v;
                for (e, c) in elem {
                    for ((m2, w), x) in self.act(*e, mask, v) {
                        triplets.push((m2 as usize * self.v0_dim + w, col, c * x));
                    }
                }
            }
        }
        Matrix::from_triplets(dim, dim, triplets)
    }
}

/// `K(λ)` for a dominant typical `λ` of `sl(m|n)`.
pub fn kac_module(rs: &RootSystem, lambda: &Weight) -> Result<GModule, RepError> {
    let label = fmt_weight(rs, lambda);
    if !rs.is_dominant_finite(lambda)? {
        return Err(RepError::NotDominant(label));
    }
    if !rs.is_typical(lambda)? {
        return Err(RepError::Atypical(label));
    }
    let (m, n) = (rs.m, rs.n);
    let gw = GlWeight::lift(rs, lambda)?;
    let upper = GlIrrep::new(m, &gw.upper);
    let lower = GlIrrep::new(n, &gw.lower);
    let v0_dim = upper.dim * lower.dim;
    let ys: Vec<(usize, usize)> = (m..m + n).flat_map(|c| (0..m).map(move |d| (c, d))).collect();
    let builder = KacBuilder { m, v0_dim, upper, lower, shift: gw.shift, ys };
    let dim = (1usize << builder.ys.len()) * v0_dim;
    let parities = (0..dim).map(|k| Parity::from_bit(((k / v0_dim) as u32).count_ones() as usize)).collect();
    let space = SuperSpace::new(parities);
    let r = rs.rank();
    let one = Rational::one();
    let e = (0..r).map(|i| builder.matrix(&vec![((i, i + 1), one.clone())], dim)).collect();
    let f = (0..r).map(|i| builder.matrix(&vec![((i + 1, i), one.clone())], dim)).collect();
    let h = (0..r)
        .map(|i| {
            let sign = if i == rs.s() { one.clone() } else { -one.clone() };
            builder.matrix(&vec![((i, i), one.clone()), ((i + 1, i + 1), sign)], dim)
        })
        .collect();
    let mut module = GModule::from_matrices(format!("K{label}"), rs, space, e, f, h)?;
    module.set_highest_weight(lambda.clone());
    Ok(module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_system, Family};

    #[test]
    fn gl_irrep_dims() {
        assert_eq!(gl_irrep_dim(2, &[1, 0]), 2);
        assert_eq!(gl_irrep_dim(2, &[2, 0]), 3);
        assert_eq!(gl_irrep_dim(3, &[1, 1, 0]), 3);
        assert_eq!(gl_irrep_dim(3, &[2, 1, 0]), 8);
        assert_eq!(gl_irrep_dim(1, &[0]), 1);
    }

    #[test]
    fn kac_small() {
        let rs = build_root_system(Family::Sl, 2, 1).unwrap();
        let k = kac_module(&rs, &Weight::from_ints(&[0, 1])).unwrap();
        assert_eq!(k.dim(), 4);
        assert_eq!(k.sdim(), 0);
        let mut h2: Vec<Rational> = k.weights().iter().map(|w| w.a[1].clone()).collect();
        h2.sort();
        assert_eq!(h2, vec![int(1), int(1), int(2), int(2)]);
        let k11 = kac_module(&rs, &Weight::from_ints(&[1, 1])).unwrap();
        assert_eq!((k11.dim(), k11.sdim()), (8, 0));
        assert!(matches!(kac_module(&rs, &Weight::from_ints(&[0, 0])), Err(RepError::Atypical(_))));
        assert!(matches!(kac_module(&rs, &Weight::from_ints(&[-1, 1])), Err(RepError::NotDominant(_))));
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(KacBuilder::wedge(&[0, 1]), Some((3, false)));
        assert_eq!(KacBuilder::wedge(&[1, 0]), Some((3, true)));
        assert_eq!(KacBuilder::wedge(&[1, 1]), None);
        assert_eq!(KacBuilder::wedge(&[2, 0, 1]), Some((7, false)));
    }
}
