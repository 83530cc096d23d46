//! Exact scalars and Chern-character algebra.
//!
//! Components follow the convention where `ch_i` already carries the factor
//! `H^{3-i}`, so the degree of the threefold never enters a formula. Lattice
//! vectors live in `Z x Z x 1/2 Z x 1/6 Z`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `n/d`; panics on `d == 0`, so only use it with literal denominators.
pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse(s.to_string()));
    }
    // Ratio::from_str panics on a zero denominator in some versions; guard it.
    if let Some((_, d)) = t.split_once('/') {
        if d.trim()
            .parse::<BigInt>()
            .map(|d| d.is_zero())
            .unwrap_or(true)
        {
            return Err(Error::Parse(s.to_string()));
        }
    }
    Scalar::from_str(t).map_err(|_| Error::Parse(s.to_string()))
}

pub fn checked_div(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    if b.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

pub(crate) fn is_integer(x: &Scalar) -> bool {
    x.denom().is_one()
}

/// Serde adapters that encode a [`Scalar`] as its lowest-terms string.
pub mod scalar_str {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        parse_scalar(&s).map_err(de::Error::custom)
    }
}

/// A slope value: a rational, or `+inf` which compares above every rational.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slope {
    Finite(Scalar),
    Infinite,
}

impl Slope {
    pub fn ratio(num: Scalar, den: &Scalar) -> Slope {
        if den.is_zero() {
            Slope::Infinite
        } else {
            Slope::Finite(num / den)
        }
    }

    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            Slope::Finite(x) => Some(x),
            Slope::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Slope::Infinite)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(x) => write!(f, "{x}"),
            Slope::Infinite => f.write_str("+inf"),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "+inf" {
            Ok(Slope::Infinite)
        } else {
            parse_scalar(&s)
                .map(Slope::Finite)
                .map_err(de::Error::custom)
        }
    }
}

/// Anything exposing four Chern components `ch_0..ch_3`.
pub trait Components {
    fn ch(&self, i: usize) -> &Scalar;
}

/// A lattice Chern vector `(v0, v1, v2, v3)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChernCharacter {
    v: [Scalar; 4],
}

fn on_lattice(v: &[Scalar; 4]) -> bool {
    is_integer(&v[0])
        && is_integer(&v[1])
        && is_integer(&(&v[2] * int(2)))
        && is_integer(&(&v[3] * int(6)))
}

fn join(v: &[Scalar; 4]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl ChernCharacter {
    pub fn new(v0: Scalar, v1: Scalar, v2: Scalar, v3: Scalar) -> Result<Self> {
        Self::from_array([v0, v1, v2, v3])
    }

    pub fn from_array(v: [Scalar; 4]) -> Result<Self> {
        if on_lattice(&v) {
            Ok(ChernCharacter { v })
        } else {
            Err(Error::Lattice(join(&v)))
        }
    }

    /// A class with `ch_{<=2} = (v0, v1, v2)` and `ch_3 = 0`.
    pub fn truncated(v0: Scalar, v1: Scalar, v2: Scalar) -> Result<Self> {
        Self::new(v0, v1, v2, Scalar::zero())
    }

    /// Parses `"2,-1,-1/2,-1/6"`. Three entries are accepted and padded with `ch_3 = 0`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s.split(',').map(parse_scalar).collect::<Result<Vec<_>>>()?;
        match parts.len() {
            3 | 4 => {
                let mut it = parts.into_iter();
                let v0 = it.next().unwrap();
                let v1 = it.next().unwrap();
                let v2 = it.next().unwrap();
                let v3 = it.next().unwrap_or_else(Scalar::zero);
                Self::new(v0, v1, v2, v3)
            }
            _ => Err(Error::Parse(s.to_string())),
        }
    }

    pub fn v0(&self) -> &Scalar {
        &self.v[0]
    }
    pub fn v1(&self) -> &Scalar {
        &self.v[1]
    }
    pub fn v2(&self) -> &Scalar {
        &self.v[2]
    }
    pub fn v3(&self) -> &Scalar {
        &self.v[3]
    }

    pub fn as_array(&self) -> &[Scalar; 4] {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.v.iter().all(Zero::is_zero)
    }

    /// Same class with `ch_3` replaced.
    pub fn with_ch3(&self, v3: Scalar) -> Result<Self> {
        Self::new(self.v[0].clone(), self.v[1].clone(), self.v[2].clone(), v3)
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = int(k);
        ChernCharacter {
            v: self.v.clone().map(|x| x * &k),
        }
    }

    /// `ch(O(d)) = (1, d, d^2/2, d^3/6)` on a threefold with `H^3 = 1`.
    pub fn line_bundle(d: i64) -> Self {
        let d = int(d);
        ChernCharacter {
            v: [
                Scalar::one(),
                d.clone(),
                &d * &d / int(2),
                &d * &d * &d / int(6),
            ],
        }
    }

    pub fn skyscraper() -> Self {
        ChernCharacter {
            v: [
                Scalar::zero(),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::one(),
            ],
        }
    }
}

impl Components for ChernCharacter {
    fn ch(&self, i: usize) -> &Scalar {
        &self.v[i]
    }
}

impl fmt::Display for ChernCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.v))
    }
}

impl Add for &ChernCharacter {
    type Output = ChernCharacter;
    fn add(self, o: &ChernCharacter) -> ChernCharacter {
        ChernCharacter {
            v: std::array::from_fn(|i| &self.v[i] + &o.v[i]),
        }
    }
}

impl Sub for &ChernCharacter {
    type Output = ChernCharacter;
    fn sub(self, o: &ChernCharacter) -> ChernCharacter {
        ChernCharacter {
            v: std::array::from_fn(|i| &self.v[i] - &o.v[i]),
        }
    }
}

impl Neg for &ChernCharacter {
    type Output = ChernCharacter;
    fn neg(self) -> ChernCharacter {
        negate(self)
    }
}

impl Serialize for ChernCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(4))?;
        for x in &self.v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ChernCharacter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        if raw.len() != 4 {
            return Err(de::Error::invalid_length(raw.len(), &"4 components"));
        }
        let v = raw
            .iter()
            .map(|s| parse_scalar(s))
            .collect::<Result<Vec<_>>>()
            .map_err(de::Error::custom)?;
        let v: [Scalar; 4] = v.try_into().expect("length checked");
        ChernCharacter::from_array(v).map_err(de::Error::custom)
    }
}

/// `ch^beta = exp(-beta H) ch` evaluated at a rational `beta`. No lattice check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedChern {
    pub c: [Scalar; 4],
    pub beta: Scalar,
}

impl TwistedChern {
    /// Multiplies back by `exp(beta H)`.
    pub fn untwist(&self) -> [Scalar; 4] {
        twist_components(&self.c, &-&self.beta)
    }

    pub fn to_chern(&self) -> Result<ChernCharacter> {
        ChernCharacter::from_array(self.untwist())
    }

    pub fn c0(&self) -> &Scalar {
        &self.c[0]
    }
    pub fn c1(&self) -> &Scalar {
        &self.c[1]
    }
    pub fn c2(&self) -> &Scalar {
        &self.c[2]
    }
    pub fn c3(&self) -> &Scalar {
        &self.c[3]
    }

    /// `c1^2 - 2 c0 c2`; equal to the untwisted discriminant.
    pub fn discriminant(&self) -> Scalar {
        &self.c[1] * &self.c[1] - int(2) * &self.c[0] * &self.c[2]
    }
}

impl Components for TwistedChern {
    fn ch(&self, i: usize) -> &Scalar {
        &self.c[i]
    }
}

fn twist_components(v: &[Scalar; 4], beta: &Scalar) -> [Scalar; 4] {
    let b2 = beta * beta;
    let b3 = &b2 * beta;
    [
        v[0].clone(),
        &v[1] - beta * &v[0],
        &v[2] - beta * &v[1] + &b2 * &v[0] / int(2),
        &v[3] - beta * &v[2] + &b2 * &v[1] / int(2) - &b3 * &v[0] / int(6),
    ]
}

pub fn twist(v: &ChernCharacter, beta: &Scalar) -> TwistedChern {
    TwistedChern {
        c: twist_components(&v.v, beta),
        beta: beta.clone(),
    }
}

/// `delta_ij(F, A) = ch_i(F) ch_j(A) - ch_j(F) ch_i(A)`.
pub fn delta<C: Components>(f: &C, a: &C, i: usize, j: usize) -> Scalar {
    assert!(i < 4 && j < 4, "delta index out of range");
    f.ch(i) * a.ch(j) - f.ch(j) * a.ch(i)
}

/// Bogomolov discriminant `v1^2 - 2 v0 v2`.
pub fn discriminant(v: &ChernCharacter) -> Scalar {
    v.v1() * v.v1() - int(2) * v.v0() * v.v2()
}

pub fn mu(v: &ChernCharacter) -> Slope {
    Slope::ratio(v.v1().clone(), v.v0())
}

/// `ch_3 / ch_2`, infinite on `ch_2 = 0`.
pub fn hat_mu(v: &ChernCharacter) -> Slope {
    Slope::ratio(v.v3().clone(), v.v2())
}

pub fn dual(v: &ChernCharacter) -> ChernCharacter {
    ChernCharacter {
        v: [v.v[0].clone(), -&v.v[1], v.v[2].clone(), -&v.v[3]],
    }
}

pub fn negate(v: &ChernCharacter) -> ChernCharacter {
    ChernCharacter {
        v: v.v.clone().map(|x| -x),
    }
}

/// `sum m * ch(O(d))` over `(m, d)`; negative multiplicities give alternating sums.
pub fn from_twists(terms: &[(i64, i64)]) -> ChernCharacter {
    let zero = ChernCharacter {
        v: std::array::from_fn(|_| Scalar::zero()),
    };
    terms.iter().fold(zero, |acc, &(m, d)| {
        &acc + &ChernCharacter::line_bundle(d).scale(m)
    })
}

/// Exact sign of a scalar as an `Ordering` against zero.
pub(crate) fn sign(x: &Scalar) -> Ordering {
    if x.is_positive() {
        Ordering::Greater
    } else if x.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}
