//! Distinguished root data for `sl(m|n)` and `osp(2|2n)`.
//!
//! Roots are stored in simple-root coordinates, weights by their values
//! `a_i = λ(h_i)` on the Cartan generators. The invariant form on `h*` is the
//! symmetrized Cartan matrix `(d_i a_ij)`; a weight pairs with a simple root
//! as `⟨λ, α_i⟩ = d_i a_i`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{fmt_rational, int, is_natural, parse_rational, serde_rational, ArithError, HSeries, Rational};
use crate::linalg::solve_dense;
use crate::superlin::Parity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sl,
    Osp2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Sl => "sl",
            Family::Osp2 => "osp2",
        })
    }
}

impl FromStr for Family {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, RootError> {
        match s.to_ascii_lowercase().as_str() {
            "sl" => Ok(Family::Sl),
            "osp2" | "osp" => Ok(Family::Osp2),
            other => Err(RootError::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("unknown family {0:?} (expected sl or osp2)")]
    UnknownFamily(String),
    #[error("sl(m|n) requires m != n, got m = n = {0}")]
    EqualRanks(usize),
    #[error("invalid rank: {0}")]
    InvalidRank(String),
    #[error("weight has {got} coordinates, algebra has rank {rank}")]
    WeightLength { got: usize, rank: usize },
    #[error("weight {0} is atypical")]
    Atypical(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Cartan matrix with its unique odd index `s` (zero-based) and symmetrizers `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperCartanData {
    pub rank: usize,
    pub a: Vec<Vec<i64>>,
    pub s: usize,
    pub d: Vec<i64>,
}

impl SuperCartanData {
    /// `(d_i a_ij)`.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        (0..self.rank).map(|i| (0..self.rank).map(|j| self.d[i] * self.a[i][j]).collect()).collect()
    }

    pub fn is_symmetrizable(&self) -> bool {
        let b = self.symmetrized();
        (0..self.rank).all(|i| (0..self.rank).all(|j| b[i][j] == b[j][i]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub parity: Parity,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| if *c == 1 { format!("a{}", i + 1) } else { format!("{c}a{}", i + 1) })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

/// `a_i = λ(h_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    #[serde(with = "serde_rational::vec")]
    pub a: Vec<Rational>,
}

impl Weight {
    pub fn new(a: Vec<Rational>) -> Self {
        Weight { a }
    }

    pub fn from_ints(a: &[i64]) -> Self {
        Weight { a: a.iter().map(|&x| int(x)).collect() }
    }

    pub fn zero(rank: usize) -> Self {
        Weight { a: vec![Rational::zero(); rank] }
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// Parses a comma separated list such as `0,1` or `1,-1/2`.
    pub fn parse(s: &str) -> Result<Self, ArithError> {
        let a = s.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
        Ok(Weight { a })
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight { a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect() }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.a.iter().map(fmt_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystem {
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub cartan: SuperCartanData,
    pub pos_even: Vec<Root>,
    pub pos_odd: Vec<Root>,
    #[serde(with = "serde_rational::vec")]
    pub rho0: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub rho1: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub rho: Vec<Rational>,
}

fn half_sum(roots: &[Root], rank: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); rank];
    for r in roots {
        for (acc, c) in v.iter_mut().zip(&r.coeffs) {
            *acc += int(*c);
        }
    }
    v.into_iter().map(|x| x / int(2)).collect()
}

fn sort_roots(roots: &mut [Root]) {
    roots.sort_by(|x, y| x.height().cmp(&y.height()).then_with(|| y.coeffs.cmp(&x.coeffs)));
}

/// Builds the root system of `sl(m|n)` (`m != n`) or `osp(2|2n)` (`m` ignored).
pub fn build_root_system(family: Family, m: usize, n: usize) -> Result<RootSystem, RootError> {
    let (cartan, mut pos_even, mut pos_odd) = match family {
        Family::Sl => sl_data(m, n)?,
        Family::Osp2 => osp2_data(n)?,
    };
    sort_roots(&mut pos_even);
    sort_roots(&mut pos_odd);
    let rank = cartan.rank;
    let rho0 = half_sum(&pos_even, rank);
    let rho1 = half_sum(&pos_odd, rank);
    let rho = rho0.iter().zip(&rho1).map(|(x, y)| x - y).collect();
    let (m, n) = match family {
        Family::Sl => (m, n),
        Family::Osp2 => (2, 2 * n),
    };
    let rs = RootSystem { family, m, n, cartan, pos_even, pos_odd, rho0, rho1, rho };
    if !rs.cartan.is_symmetrizable() {
        return Err(RootError::Inconsistent("(d_i a_ij) is not symmetric".into()));
    }
    Ok(rs)
}

fn sl_data(m: usize, n: usize) -> Result<(SuperCartanData, Vec<Root>, Vec<Root>), RootError> {
    if m == 0 || n == 0 {
        return Err(RootError::InvalidRank(format!("sl({m}|{n}) needs m, n >= 1")));
    }
    if m == n {
        return Err(RootError::EqualRanks(m));
    }
    let r = m + n - 1;
    let s = m - 1;
    let mut a = vec![vec![0i64; r]; r];
    for i in 0..r {
        if i == s {
            if i + 1 < r {
                a[i][i + 1] = 1;
            }
            if i > 0 {
                a[i][i - 1] = -1;
            }
        } else {
            a[i][i] = 2;
            if i + 1 < r {
                a[i][i + 1] = -1;
            }
            if i > 0 {
                a[i][i - 1] = -1;
            }
        }
    }
    let d = (0..r).map(|i| if i <= s { 1 } else { -1 }).collect();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for i in 0..r {
        for j in i..r {
            let coeffs = (0..r).map(|k| i64::from(i <= k && k <= j)).collect();
            if i <= s && s <= j {
                odd.push(Root { coeffs, parity: Parity::Odd });
            } else {
                even.push(Root { coeffs, parity: Parity::Even });
            }
        }
    }
    Ok((SuperCartanData { rank: r, a, s, d }, even, odd))
}

/// Ambient coordinates `(ε, δ_1..δ_n)` with `(ε,ε) = 1`, `(δ_i,δ_i) = -1`.
fn osp2_data(n: usize) -> Result<(SuperCartanData, Vec<Root>, Vec<Root>), RootError> {
    if n == 0 {
        return Err(RootError::InvalidRank("osp(2|2n) needs n >= 1".into()));
    }
    let dim = n + 1;
    let metric = |x: &[i64], y: &[i64]| x[0] * y[0] - (1..dim).map(|k| x[k] * y[k]).sum::<i64>();
    let unit = |k: usize| -> Vec<i64> { (0..dim).map(|j| i64::from(j == k)).collect() };
    let comb = |x: &[i64], cx: i64, y: &[i64], cy: i64| -> Vec<i64> { x.iter().zip(y).map(|(a, b)| cx * a + cy * b).collect() };

    let mut simple = vec![comb(&unit(0), 1, &unit(1), -1)];
    for k in 1..n {
        simple.push(comb(&unit(k), 1, &unit(k + 1), -1));
    }
    simple.push(comb(&unit(n), 2, &unit(n), 0));
    let r = n + 1;
    let mut d: Vec<i64> = simple.iter().map(|x| metric(x, x) / 2).collect();
    d[0] = 1;
    let mut a = vec![vec![0i64; r]; r];
    for i in 0..r {
        for j in 0..r {
            let b = metric(&simple[i], &simple[j]);
            if b % d[i] != 0 {
                return Err(RootError::Inconsistent("non-integral osp Cartan entry".into()));
            }
            a[i][j] = b / d[i];
        }
    }

    // Simple-root coordinates of an ambient vector: solve Σ c_i simple_i = v.
    let st: Vec<Vec<Rational>> = (0..dim).map(|row| (0..r).map(|i| int(simple[i][row])).collect()).collect();
    let to_simple = |v: &[i64], parity: Parity| -> Result<Root, RootError> {
        let rhs: Vec<Rational> = v.iter().map(|&x| int(x)).collect();
        let c = solve_dense(&st, &rhs).ok_or_else(|| RootError::Inconsistent("singular osp simple roots".into()))?;
        let coeffs = c
            .iter()
            .map(|x| {
                if x.is_integer() && *x >= Rational::zero() {
                    Ok(x.to_integer().try_into().expect("small coefficient"))
                } else {
                    Err(RootError::Inconsistent(format!("positive root with coordinate {x}")))
                }
            })
            .collect::<Result<Vec<i64>, _>>()?;
        Ok(Root { coeffs, parity })
    };

    let mut even = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            even.push(to_simple(&comb(&unit(i), 1, &unit(j), -1), Parity::Even)?);
            even.push(to_simple(&comb(&unit(i), 1, &unit(j), 1), Parity::Even)?);
        }
        even.push(to_simple(&comb(&unit(i), 2, &unit(i), 0), Parity::Even)?);
    }
    let mut odd = Vec::new();
    for i in 1..=n {
        odd.push(to_simple(&comb(&unit(0), 1, &unit(i), -1), Parity::Odd)?);
        odd.push(to_simple(&comb(&unit(0), 1, &unit(i), 1), Parity::Odd)?);
    }
    Ok((SuperCartanData { rank: r, a, s: 0, d }, even, odd))
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    /// Odd simple index, zero-based.
    pub fn s(&self) -> usize {
        self.cartan.s
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::Sl => format!("sl({}|{})", self.m, self.n),
            Family::Osp2 => format!("osp(2|{})", self.n),
        }
    }

    fn check_weight(&self, lambda: &Weight) -> Result<(), RootError> {
        if lambda.rank() != self.rank() {
            return Err(RootError::WeightLength { got: lambda.rank(), rank: self.rank() });
        }
        Ok(())
    }

    /// Form on vectors in simple-root coordinates.
    pub fn form(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let b = self.cartan.symmetrized();
        let mut s = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if b[i][j] != 0 {
                    s += xi * yj * int(b[i][j]);
                }
            }
        }
        s
    }

    pub fn root_vector(root: &Root) -> Vec<Rational> {
        root.coeffs.iter().map(|&c| int(c)).collect()
    }

    /// `⟨λ, α⟩ = Σ c_k d_k a_k`.
    pub fn pair_weight_root(&self, lambda: &Weight, root: &[Rational]) -> Rational {
        root.iter().enumerate().map(|(k, c)| c * int(self.cartan.d[k]) * &lambda.a[k]).sum()
    }

    /// `⟨λ + ρ, α⟩`.
    pub fn shifted_pairing(&self, lambda: &Weight, root: &Root) -> Rational {
        let v = Self::root_vector(root);
        self.pair_weight_root(lambda, &v) + self.form(&self.rho, &v)
    }

    /// `⟨ρ, α⟩`.
    pub fn rho_pairing(&self, root: &Root) -> Rational {
        self.form(&self.rho, &Self::root_vector(root))
    }

    /// Simple-root coordinates of a weight, when the symmetrized Cartan matrix is invertible.
    pub fn weight_to_root_coords(&self, lambda: &Weight) -> Option<Vec<Rational>> {
        let b: Vec<Vec<Rational>> = self.cartan.symmetrized().iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        let rhs: Vec<Rational> = (0..self.rank()).map(|i| int(self.cartan.d[i]) * &lambda.a[i]).collect();
        solve_dense(&b, &rhs)
    }

    /// `a_i = Σ_j a_ij c_j` for a vector in simple-root coordinates.
    pub fn root_coords_to_weight(&self, c: &[Rational]) -> Weight {
        let a = (0..self.rank())
            .map(|i| c.iter().enumerate().map(|(j, cj)| cj * int(self.cartan.a[i][j])).sum())
            .collect();
        Weight { a }
    }

    pub fn is_typical(&self, lambda: &Weight) -> Result<bool, RootError> {
        self.check_weight(lambda)?;
        Ok(self.pos_odd.iter().all(|al| !self.shifted_pairing(lambda, al).is_zero()))
    }

    /// `a_i ∈ ℕ` for every `i != s`.
    pub fn is_dominant_finite(&self, lambda: &Weight) -> Result<bool, RootError> {
        self.check_weight(lambda)?;
        Ok(lambda.a.iter().enumerate().all(|(i, x)| i == self.s() || is_natural(x)))
    }

    /// `∏_{α∈Δ₀⁺} ⟨λ+ρ,α⟩/⟨ρ,α⟩ ÷ ∏_{α∈Δ₁⁺} ⟨λ+ρ,α⟩`.
    pub fn mod_sdim(&self, lambda: &Weight) -> Result<Rational, RootError> {
        if !self.is_typical(lambda)? {
            return Err(RootError::Atypical(lambda.to_string()));
        }
        let mut d = Rational::one();
        for al in &self.pos_even {
            let den = self.rho_pairing(al);
            if den.is_zero() {
                return Err(RootError::Inconsistent(format!("<rho, {al}> = 0 for an even root")));
            }
            d *= self.shifted_pairing(lambda, al) / den;
        }
        for al in &self.pos_odd {
            d /= self.shifted_pairing(lambda, al);
        }
        Ok(d)
    }

    /// `h^{|Δ₁⁺|} ∏_{Δ₀⁺} (q^x − q^{−x})/(q^y − q^{−y}) ÷ ∏_{Δ₁⁺} (q^z − q^{−z})` to `O(h^{order+1})`.
    pub fn qmod_sdim(&self, lambda: &Weight, order: usize) -> Result<HSeries, RootError> {
        if !self.is_typical(lambda)? {
            return Err(RootError::Atypical(lambda.to_string()));
        }
        let k = order + self.pos_even.len() + self.pos_odd.len();
        let mut num = HSeries::monomial(Rational::one(), self.pos_odd.len(), k);
        let mut den = HSeries::one(k);
        for al in &self.pos_even {
            num = &num * &HSeries::q_difference(&self.shifted_pairing(lambda, al), k);
            den = &den * &HSeries::q_difference(&self.rho_pairing(al), k);
        }
        for al in &self.pos_odd {
            den = &den * &HSeries::q_difference(&self.shifted_pairing(lambda, al), k);
        }
        let q = num.checked_div(&den)?;
        Ok(q.truncate(order))
    }

    /// `∏_{α∈Δ₁⁺} ⟨λ+ρ,α⟩`, whose zero set is the atypical locus.
    pub fn odd_product(&self, lambda: &Weight) -> Rational {
        self.pos_odd.iter().map(|al| self.shifted_pairing(lambda, al)).product()
    }

    /// JSON line describing the system.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("root system serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn sl21() -> RootSystem {
        build_root_system(Family::Sl, 2, 1).unwrap()
    }

    #[test]
    fn sl21_data() {
        let rs = sl21();
        assert_eq!(rs.cartan.a, vec![vec![2, -1], vec![-1, 0]]);
        assert_eq!(rs.pos_even.len(), 1);
        assert_eq!(rs.pos_odd.len(), 2);
        assert_eq!(rs.s(), 1);
        assert_eq!(rs.rho, vec![int(0), int(-1)]);
        assert_eq!(rs.form(&[int(0), int(1)], &[int(0), int(1)]), int(0));
        let a12 = Root { coeffs: vec![1, 1], parity: Parity::Odd };
        assert_eq!(rs.rho_pairing(&a12), int(1));
    }

    #[test]
    fn counts() {
        let rs = build_root_system(Family::Sl, 3, 1).unwrap();
        assert_eq!((rs.pos_even.len(), rs.pos_odd.len()), (3, 3));
        assert!(build_root_system(Family::Sl, 2, 2).is_err());
        let osp = build_root_system(Family::Osp2, 0, 3).unwrap();
        assert_eq!((osp.pos_even.len(), osp.pos_odd.len()), (9, 6));
    }

    #[test]
    fn rho_simple_consistency() {
        for rs in [sl21(), build_root_system(Family::Sl, 1, 3).unwrap(), build_root_system(Family::Osp2, 0, 1).unwrap(), build_root_system(Family::Osp2, 0, 3).unwrap()] {
            for i in 0..rs.rank() {
                let e: Vec<Rational> = (0..rs.rank()).map(|k| int(i64::from(k == i))).collect();
                assert_eq!(rs.form(&rs.rho, &e), rs.form(&e, &e) / int(2), "{} simple {i}", rs.name());
            }
        }
    }

    #[test]
    fn osp_cartan() {
        let rs = build_root_system(Family::Osp2, 0, 1).unwrap();
        assert_eq!(rs.cartan.a, vec![vec![0, 2], vec![-1, 2]]);
        assert_eq!(rs.cartan.d, vec![1, -2]);
        let rs = build_root_system(Family::Osp2, 0, 2).unwrap();
        assert_eq!(rs.cartan.a, vec![vec![0, 1, 0], vec![-1, 2, -2], vec![0, -1, 2]]);
    }

    #[test]
    fn d_values() {
        let rs = sl21();
        assert_eq!(rs.mod_sdim(&Weight::from_ints(&[0, 1])).unwrap(), rat(1, 2));
        assert_eq!(rs.mod_sdim(&Weight::from_ints(&[1, 1])).unwrap(), rat(2, 3));
        assert!(rs.mod_sdim(&Weight::from_ints(&[0, 0])).is_err());
        let rs3 = build_root_system(Family::Sl, 3, 1).unwrap();
        assert_eq!(rs3.mod_sdim(&Weight::from_ints(&[0, 0, 2])).unwrap(), rat(1, 24));
        assert!(!rs3.is_typical(&Weight::from_ints(&[0, 0, -2])).unwrap());
    }

    #[test]
    fn dominance() {
        let rs = sl21();
        assert!(rs.is_dominant_finite(&Weight::new(vec![int(3), rat(7, 2)])).unwrap());
        assert!(!rs.is_dominant_finite(&Weight::from_ints(&[-1, 0])).unwrap());
        let rs3 = build_root_system(Family::Sl, 3, 1).unwrap();
        assert!(rs3.is_dominant_finite(&Weight::from_ints(&[0, 2, -5])).unwrap());
    }

    #[test]
    fn q_series() {
        let rs = sl21();
        let s = rs.qmod_sdim(&Weight::from_ints(&[0, 1]), 4).unwrap();
        assert_eq!(s.coeffs(), &[rat(1, 2), int(0), rat(-5, 48), int(0), rat(53, 3840)]);
    }

    #[test]
    fn weight_coordinate_roundtrip() {
        let rs = sl21();
        let lam = Weight::new(vec![int(2), rat(-3, 2)]);
        let c = rs.weight_to_root_coords(&lam).unwrap();
        assert_eq!(rs.root_coords_to_weight(&c), lam);
    }
}
