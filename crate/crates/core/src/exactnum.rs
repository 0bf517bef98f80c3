//! Exact scalars: arbitrary-precision rationals and truncated power series
//! in the deformation parameter `h`.
//!
//! There is no floating point anywhere in this crate. Every weight, matrix
//! entry and form value is a [`Rational`], always kept in lowest terms with a
//! positive denominator (guaranteed by `num_rational`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational scalar.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("series division: divisor has valuation {divisor} but dividend has a nonzero h^{dividend} coefficient")]
    UnresolvableValuation { dividend: usize, divisor: usize },
    #[error("series division: divisor is zero to order {0}")]
    ZeroSeries(usize),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// `n/d` as a rational. Panics on `d == 0`; use [`rat_arith`] for checked division.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"`, or a terminating decimal such as `"-1.25"`.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let err = || ArithError::Parse(s.to_string());
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let mut p: BigInt = digits.parse().map_err(|_| err())?;
        if neg {
            p = -p;
        }
        let q = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(p, q));
    }
    let p: BigInt = t.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(p))
}

/// `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn is_natural(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(a: &Rational, b: &Rational, op: RatOp) -> Result<Rational, ArithError> {
    Ok(match op {
        RatOp::Add => a + b,
        RatOp::Sub => a - b,
        RatOp::Mul => a * b,
        RatOp::Div => {
            if b.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            a / b
        }
    })
}

/// Serde adapters writing rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|r| r.to_string()))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}

/// Truncated power series `c_0 + c_1 h + ... + c_order h^order + O(h^{order+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HSeries {
    #[serde(with = "serde_rational::vec")]
    coeffs: Vec<Rational>,
}

impl HSeries {
    /// Builds a series from its coefficients; `order = coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "an HSeries needs at least the constant coefficient");
        HSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        HSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c·h^k` truncated at `order`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        HSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        HSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// True when every odd-degree coefficient vanishes.
    pub fn is_even_in_h(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// `q^z = e^{z h / 2}`: the coefficient of `h^k` is `z^k / (2^k k!)`.
    pub fn q_power(z: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = Rational::one();
        coeffs.push(c.clone());
        for k in 1..=order {
            c = c * z / int(2 * k as i64);
            coeffs.push(c.clone());
        }
        HSeries { coeffs }
    }

    /// `q^z - q^{-z}`.
    pub fn q_difference(z: &Rational, order: usize) -> Self {
        &Self::q_power(z, order) - &Self::q_power(&-z, order)
    }

    /// Exact quotient. When the divisor vanishes to order `v` at `h = 0` the
    /// dividend must vanish to at least the same order; both are shifted down
    /// by `h^v` and the quotient is known to order `min(orders) - v`.
    pub fn checked_div(&self, rhs: &HSeries) -> Result<HSeries, ArithError> {
        let order = self.order().min(rhs.order());
        let v = rhs.valuation().filter(|&v| v <= order).ok_or(ArithError::ZeroSeries(order))?;
        if let Some(k) = self.coeffs[..v].iter().position(|c| !c.is_zero()) {
            return Err(ArithError::UnresolvableValuation { dividend: k, divisor: v });
        }
        let out_order = order - v;
        let num = &self.coeffs[v..=order];
        let den = &rhs.coeffs[v..=order];
        let lead = &den[0];
        let mut q: Vec<Rational> = Vec::with_capacity(out_order + 1);
        for k in 0..=out_order {
            let mut acc = num[k].clone();
            for j in 1..=k {
                acc -= &den[j] * &q[k - j];
            }
            q.push(acc / lead);
        }
        Ok(HSeries { coeffs: q })
    }
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, abs) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                1 => write!(f, "{abs}*h")?,
                _ => write!(f, "{abs}*h^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(h^{})", self.order() + 1)
    }
}

fn zip_min<'a>(a: &'a HSeries, b: &'a HSeries) -> impl Iterator<Item = (&'a Rational, &'a Rational)> {
    a.coeffs.iter().zip(b.coeffs.iter())
}

impl Add for &HSeries {
    type Output = HSeries;
    fn add(self, rhs: &HSeries) -> HSeries {
        HSeries { coeffs: zip_min(self, rhs).map(|(x, y)| x + y).collect() }
    }
}

impl Sub for &HSeries {
    type Output = HSeries;
    fn sub(self, rhs: &HSeries) -> HSeries {
        HSeries { coeffs: zip_min(self, rhs).map(|(x, y)| x - y).collect() }
    }
}

impl Mul for &HSeries {
    type Output = HSeries;
    fn mul(self, rhs: &HSeries) -> HSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        HSeries { coeffs }
    }
}

impl Neg for &HSeries {
    type Output = HSeries;
    fn neg(self) -> HSeries {
        HSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Div,
}

pub fn series_arith(a: &HSeries, b: &HSeries, op: SeriesOp) -> Result<HSeries, ArithError> {
    match op {
        SeriesOp::Add => Ok(a + b),
        SeriesOp::Mul => Ok(a * b),
        SeriesOp::Div => a.checked_div(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[(i64, i64)]) -> HSeries {
        HSeries::new(v.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn rational_examples() {
        assert_eq!(rat_arith(&rat(1, 2), &rat(1, 3), RatOp::Add).unwrap(), rat(5, 6));
        assert_eq!(rat_arith(&rat(2, 3), &rat(2, 3), RatOp::Sub).unwrap(), int(0));
        assert_eq!(
            rat_arith(&rat(5, 48), &int(0), RatOp::Div),
            Err(ArithError::DivisionByZero)
        );
        assert_eq!(rat(6, -4), rat(-3, 2));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-7/2").unwrap(), rat(-7, 2));
        assert_eq!(parse_rational(" 3 ").unwrap(), int(3));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational("1/0"), Err(ArithError::DivisionByZero));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn q_power_examples() {
        assert_eq!(HSeries::q_power(&int(0), 4), HSeries::one(4));
        assert_eq!(HSeries::q_power(&int(2), 2), s(&[(1, 1), (1, 1), (1, 2)]));
        let diff = HSeries::q_difference(&int(1), 3);
        assert_eq!(diff, s(&[(0, 1), (1, 1), (0, 1), (1, 24)]));
    }

    #[test]
    fn series_division_examples() {
        let x = s(&[(0, 1), (1, 1), (0, 1), (1, 24)]);
        assert_eq!(x.checked_div(&x).unwrap(), HSeries::one(2));

        let a = HSeries::monomial(int(1), 2, 6);
        let b1 = HSeries::q_difference(&int(1), 6);
        let b2 = HSeries::q_difference(&int(2), 6);
        let q = a.checked_div(&(&b1 * &b2)).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.coeff(0), &rat(1, 2));
        assert_eq!(q.coeff(1), &int(0));
        assert_eq!(q.coeff(2), &rat(-5, 48));
        assert_eq!(q.coeff(3), &int(0));
    }

    #[test]
    fn series_mul_difference_of_squares() {
        let p = s(&[(1, 1), (1, 1), (0, 1)]);
        let m = s(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(series_arith(&p, &m, SeriesOp::Mul).unwrap(), s(&[(1, 1), (0, 1), (-1, 1)]));
    }

    #[test]
    fn unresolvable_division() {
        let a = s(&[(1, 1), (0, 1), (0, 1)]);
        let b = s(&[(0, 1), (1, 1), (0, 1)]);
        assert!(matches!(a.checked_div(&b), Err(ArithError::UnresolvableValuation { .. })));
        assert!(matches!(a.checked_div(&HSeries::zero(2)), Err(ArithError::ZeroSeries(2))));
    }

    #[test]
    fn display() {
        let q = HSeries::q_difference(&int(1), 3);
        assert_eq!(q.to_string(), "1*h + 1/24*h^3 + O(h^4)");
    }
}
