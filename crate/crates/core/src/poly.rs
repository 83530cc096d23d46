//! Small exact polynomial types: univariate over `Q` and bivariate in `(beta, t)`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::chern::{int, ChernCharacter, Scalar};
use crate::roots::QuadSurd;

/// Dense univariate polynomial, coefficients from the constant term up.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    c: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn constant(x: Scalar) -> Self {
        Self::new(vec![x])
    }

    /// `x - r`.
    pub fn linear_root(r: &Scalar) -> Self {
        Self::new(vec![-r, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.c.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.c.last()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.c
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, k| acc * x + k)
    }

    pub fn eval_surd(&self, x: &QuadSurd) -> QuadSurd {
        self.c
            .iter()
            .rev()
            .fold(QuadSurd::rational(Scalar::zero()), |acc, k| {
                acc.mul(x).add_rational(k)
            })
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Self::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&(Scalar::one() / l)),
            None => self.clone(),
        }
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.lead().unwrap().clone();
        let mut rem = self.c.clone();
        let n = rem.len();
        if n <= dd {
            return (UniPoly::default(), self.clone());
        }
        let mut quot = vec![Scalar::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let f = &rem[k + dd] / &lead;
            if !f.is_zero() {
                for (i, dc) in d.c.iter().enumerate() {
                    rem[k + i] -= &f * dc;
                }
            }
            quot[k] = f;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::default();
        }
        let mut c = vec![Scalar::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        UniPoly::new(c)
    }
}

/// Sparse polynomial `sum c_ij beta^i t^j`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(x: Scalar) -> Self {
        Self::monomial(0, 0, x)
    }

    pub fn monomial(i: u32, j: u32, c: Scalar) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn beta() -> Self {
        Self::monomial(1, 0, Scalar::one())
    }

    pub fn t() -> Self {
        Self::monomial(0, 1, Scalar::one())
    }

    /// Polynomial in beta only.
    pub fn from_beta_poly(p: &UniPoly) -> Self {
        let mut out = BiPoly::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(i as u32, 0, c.clone());
        }
        out
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn degree_beta(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn degree_t(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, c * k);
        }
        out
    }

    pub fn eval(&self, beta: &Scalar, t: &Scalar) -> Scalar {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * pow(beta, i) * pow(t, j))
            .sum()
    }

    pub fn eval_surd(&self, beta: &QuadSurd, t: &QuadSurd) -> QuadSurd {
        let mut acc = QuadSurd::rational(Scalar::zero());
        for (&(i, j), c) in &self.terms {
            acc = acc.add(&surd_pow(beta, i).mul(&surd_pow(t, j)).scale(c));
        }
        acc
    }

    /// Coefficients in `t` at a fixed `beta`.
    pub fn at_beta(&self, beta: &Scalar) -> UniPoly {
        let mut c = vec![Scalar::zero(); self.degree_t() as usize + 1];
        for (&(i, j), k) in &self.terms {
            c[j as usize] += k * pow(beta, i);
        }
        UniPoly::new(c)
    }

    /// `P(beta, q(beta))` as a polynomial in `beta`.
    pub fn substitute_t(&self, q: &UniPoly) -> UniPoly {
        let mut out = UniPoly::default();
        let mut qpow = vec![UniPoly::constant(Scalar::one())];
        for j in 1..=self.degree_t() as usize {
            let next = &qpow[j - 1] * q;
            qpow.push(next);
        }
        for (&(i, j), c) in &self.terms {
            let mut mono = vec![Scalar::zero(); i as usize + 1];
            mono[i as usize] = c.clone();
            out = &out + &(&UniPoly::new(mono) * &qpow[j as usize]);
        }
        out
    }

    /// Positive rational content: gcd of numerators over lcm of denominators.
    pub fn content(&self) -> Scalar {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            Scalar::one()
        } else {
            Scalar::new(g.abs(), l)
        }
    }

    /// Divides out the positive content; signs are preserved.
    pub fn primitive(&self) -> Self {
        self.scale(&(Scalar::one() / self.content()))
    }
}

fn pow(x: &Scalar, n: u32) -> Scalar {
    (0..n).fold(Scalar::one(), |acc, _| acc * x)
}

fn surd_pow(x: &QuadSurd, n: u32) -> QuadSurd {
    (0..n).fold(QuadSurd::rational(Scalar::one()), |acc, _| acc.mul(x))
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&int(-1))
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &o.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

/// `ch_k^beta(v)` as polynomials in `beta`, `k = 0..3`.
pub fn twisted_polys(v: &ChernCharacter) -> [UniPoly; 4] {
    let [v0, v1, v2, v3] = v.as_array();
    [
        UniPoly::new(vec![v0.clone()]),
        UniPoly::new(vec![v1.clone(), -v0]),
        UniPoly::new(vec![v2.clone(), -v1, v0 / int(2)]),
        UniPoly::new(vec![v3.clone(), -v2, v1 / int(2), -v0 / int(6)]),
    ]
}
